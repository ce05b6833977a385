#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "chuasync/errors.hpp"
#include "chuasync/rng.hpp"
#include "chuasync/topology.hpp"

using namespace chuasync;

namespace {

Topology random_graph(std::size_t n, std::uint64_t seed, bool symmetric = true) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    Splitmix64 stream(seed);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = symmetric ? i + 1 : 0; j < n; ++j) {
            if (i == j) continue;
            if (stream.next_unit() < 0.5) edges.emplace_back(i, j);
        }
    return Topology::from_edges(n, edges, !symmetric);
}

} // namespace

TEST_CASE("degrees") {
    const Topology complete = Topology::complete(20);
    for (std::size_t i = 0; i < 20; ++i) CHECK(complete.degree(i) == 19);

    const Topology empty(5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(empty.degree(i) == 0);

    const Topology path = Topology::from_edges(3, {{0, 1}, {1, 2}});
    CHECK(path.degree(0) == 1);
    CHECK(path.degree(1) == 2);
    CHECK(path.degree(2) == 1);

    CHECK_THROWS_AS(path.degree(3), IndexOutOfRange);
}

TEST_CASE("construction validates") {
    CHECK_THROWS_AS(Topology(0), TooFewNodes);
    CHECK_THROWS_AS(Topology::from_edges(3, {{0, 3}}), IndexOutOfRange);
    CHECK_THROWS_AS(Topology::from_edges(3, {{1, 1}}), ValidationError);
    CHECK_THROWS_AS(Topology::from_matrix(2, {0, 1, 1}), ValidationError);   // wrong length
    CHECK_THROWS_AS(Topology::from_matrix(2, {0, 2, 2, 0}), ValidationError); // non-binary
    CHECK_THROWS_AS(Topology::from_matrix(2, {1, 0, 0, 0}), ValidationError); // diagonal
}

TEST_CASE("directed input is accepted and flagged") {
    const Topology directed = Topology::from_edges(3, {{0, 1}}, true);
    CHECK(directed.edge(0, 1));
    CHECK_FALSE(directed.edge(1, 0));
    CHECK_FALSE(directed.symmetric());
    CHECK(random_graph(8, 3).symmetric());
}

TEST_CASE("residual coefficients") {
    SUBCASE("empty graph: all zeros") {
        const ResidualCoefficients rc = residual_coefficients(Topology(4), 0);
        for (int v : rc.values) CHECK(v == 0);
    }
    SUBCASE("complete graph: the four-case table") {
        const Topology t = Topology::complete(5);
        const std::size_t pivot = 2;
        const ResidualCoefficients rc = residual_coefficients(t, pivot);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j) {
                const int expected =
                    static_cast<int>(t.edge(pivot, j)) - static_cast<int>(t.edge(i, j));
                CHECK(rc.at(i, j) == expected);
                CHECK(std::abs(rc.at(i, j)) <= 1);
            }
        // both edges exist for distinct i, j, pivot: residual 0
        CHECK(rc.at(0, 1) == 0);
        // i == j != pivot: edge (pivot, j) exists, (j, j) does not
        CHECK(rc.at(1, 1) == 1);
        // j == pivot: (pivot, pivot) missing, (i, pivot) present
        CHECK(rc.at(0, 2) == -1);
    }
    SUBCASE("star centered at the pivot: leaf-to-leaf residual is 1") {
        const Topology star = Topology::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
        const ResidualCoefficients rc = residual_coefficients(star, 0);
        CHECK(rc.at(1, 2) == 1); // (0,2) in E, (1,2) not
        CHECK(rc.at(2, 3) == 1);
        CHECK(rc.at(1, 0) == -1); // (0,0) not in E, (1,0) in E
    }
    CHECK_THROWS_AS(residual_coefficients(Topology(3), 5), IndexOutOfRange);
}

TEST_CASE("auxiliary matrices") {
    SUBCASE("complete graph: a1 = ones - I, a2 = 0") {
        const AuxMatrices aux = build_aux_matrices(Topology::complete(20), 0);
        for (std::size_t r = 0; r < 19; ++r)
            for (std::size_t c = 0; c < 19; ++c) {
                CHECK(aux.a1(r, c) == (r == c ? 0.0 : 1.0));
                CHECK(aux.a2(r, c) == 0.0);
            }
    }
    SUBCASE("empty graph: both zero") {
        const AuxMatrices aux = build_aux_matrices(Topology(6), 3);
        for (std::size_t r = 0; r < 5; ++r)
            for (std::size_t c = 0; c < 5; ++c) {
                CHECK(aux.a1(r, c) == 0.0);
                CHECK(aux.a2(r, c) == 0.0);
            }
    }
    SUBCASE("two nodes: 1x1 zero diagonals") {
        const AuxMatrices aux = build_aux_matrices(Topology::from_edges(2, {{0, 1}}), 0);
        CHECK(aux.a1.rows() == 1);
        CHECK(aux.a1(0, 0) == 0.0);
        CHECK(aux.a2(0, 0) == 0.0);
    }
    SUBCASE("node ordering is ascending with the pivot removed") {
        const AuxMatrices aux = build_aux_matrices(Topology::complete(5), 2);
        CHECK(aux.node_order == std::vector<std::size_t>{0, 1, 3, 4});
    }
    CHECK_THROWS_AS(build_aux_matrices(Topology(1), 0), TooFewNodes);
    CHECK_THROWS_AS(build_aux_matrices(Topology(3), 4), IndexOutOfRange);
}

TEST_CASE("a2 agrees with the residual coefficients") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const Topology t = random_graph(9, seed, seed != 3);
        for (std::size_t pivot = 0; pivot < t.size(); ++pivot) {
            const AuxMatrices aux = build_aux_matrices(t, pivot);
            const ResidualCoefficients rc = residual_coefficients(t, pivot);
            for (std::size_t r = 0; r < aux.a2.rows(); ++r)
                for (std::size_t c = 0; c < aux.a2.cols(); ++c) {
                    if (r == c) continue;
                    const std::size_t i = aux.node_order[r];
                    const std::size_t j = aux.node_order[c];
                    CHECK(aux.a2(r, c) == std::abs(rc.at(i, j)));
                }
        }
    }
}

TEST_CASE("symmetric adjacency gives symmetric a1") {
    const Topology t = random_graph(10, 7);
    for (std::size_t pivot = 0; pivot < 10; ++pivot) {
        const AuxMatrices aux = build_aux_matrices(t, pivot);
        for (std::size_t r = 0; r < 9; ++r)
            for (std::size_t c = 0; c < 9; ++c) CHECK(aux.a1(r, c) == aux.a1(c, r));
    }
}

TEST_CASE("complete graph: a2 vanishes for every pivot") {
    const Topology t = Topology::complete(7);
    for (std::size_t pivot = 0; pivot < 7; ++pivot) {
        const AuxMatrices aux = build_aux_matrices(t, pivot);
        CHECK(aux.a2.max_abs() == 0.0);
    }
}

TEST_CASE("edge list round-trips") {
    const Topology t = random_graph(8, 21);
    const Topology back = Topology::from_edges(8, t.edge_list());
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) CHECK(t.edge(i, j) == back.edge(i, j));
}
