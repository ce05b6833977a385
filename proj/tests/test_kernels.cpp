#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "chuasync/coupling.hpp"
#include "chuasync/kernels.hpp"
#include "chuasync/matrix.hpp"
#include "chuasync/rng.hpp"
#include "chuasync/simulate.hpp"
#include "chuasync/topology.hpp"

using namespace chuasync;

namespace {

Topology random_graph(std::size_t n, std::uint64_t seed) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    Splitmix64 stream(seed);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (stream.next_unit() < 0.4) edges.emplace_back(i, j);
    return Topology::from_edges(n, edges);
}

} // namespace

TEST_CASE("max scan: parallel equals serial exactly") {
    const auto f = [](std::size_t i) { return draw_symmetric(31, i); };
    for (std::size_t n : {1ul, 7ul, 1023ul, 1024ul, 100000ul})
        CHECK(kernels::max_scan_serial(n, f) == kernels::max_scan_parallel(n, f));
}

TEST_CASE("find first: parallel equals serial") {
    const auto f = [](std::size_t i) { return draw_symmetric(37, i); };
    const std::size_t n = 50000;
    const double target = kernels::max_scan_serial(n, f);
    CHECK(kernels::find_first_serial(n, target, f) == kernels::find_first_parallel(n, target, f));
    CHECK(kernels::find_first_parallel(n, 2.0, f) == kernels::kScanNotFound);
}

TEST_CASE("map scan: parallel equals serial exactly") {
    const auto f = [](std::size_t i) { return draw_symmetric(41, i) * 3.0; };
    const std::size_t n = 10000;
    std::vector<double> a(n), b(n);
    kernels::map_scan_serial(n, a, f);
    kernels::map_scan_parallel(n, b, f);
    CHECK(a == b);
}

TEST_CASE("network rhs: parallel equals serial bitwise") {
    const ChuaParams params(15.61, 25.581, 0.0, -1.142, -0.715);
    const Topology topo = random_graph(50, 5);
    const NetworkSystem system(params, topo, make_linear_plus_arctan(3.0));
    std::vector<double> x(system.dim()), da(system.dim()), db(system.dim());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = 3.0 * draw_symmetric(43, i);
    system.rhs_serial(x, da);
    system.rhs_parallel(x, db);
    CHECK(da == db);
}

TEST_CASE("full trajectories: parallel equals serial bitwise") {
    const ChuaParams params(10.0, 15.0, 0.1, -1.31, -0.75);
    const Topology topo = Topology::complete(20);
    const SectorCoupling coupling = make_linear_plus_arctan(3.0);
    const NetworkState init = seeded_initial_states(20, 1, 1.0);
    const Trajectory serial = simulate_network(params, topo, coupling, init, 1e-3, 1.0, false);
    const Trajectory parallel = simulate_network(params, topo, coupling, init, 1e-3, 1.0, true);
    CHECK(serial.data == parallel.data);
}

TEST_CASE("matvec: parallel equals serial bitwise") {
    const std::size_t n = 128;
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = draw_symmetric(47, i * n + j);
    std::vector<double> x(n), ya(n), yb(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = draw_symmetric(53, i);
    matvec_serial(m, x, ya);
    matvec_parallel(m, x, yb);
    CHECK(ya == yb);
}

#ifdef _OPENMP
TEST_CASE("sector scan result does not depend on the thread count") {
    const SectorCoupling c = make_coupling("linear_plus_arctan", {{"c", 3.0}}, 3.2, 4.0);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const SectorReport one = verify_sector(c, 200.0, 50000, 1e-12);
    omp_set_num_threads(saved);
    const SectorReport many = verify_sector(c, 200.0, 50000, 1e-12);
    CHECK(one.worst_violation == many.worst_violation);
    CHECK(one.verified == many.verified);
    REQUIRE(one.violating_input.has_value() == many.violating_input.has_value());
    if (one.violating_input) CHECK(*one.violating_input == *many.violating_input);
}
#endif
