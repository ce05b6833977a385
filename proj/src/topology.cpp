#include "chuasync/topology.hpp"

#include <string>

#include "chuasync/errors.hpp"

namespace chuasync {

Topology::Topology(std::size_t n) : n_(n), adj_(n * n, 0) {
    if (n == 0) throw TooFewNodes("Topology: need at least one node");
    finalize();
}

Topology Topology::complete(std::size_t n) {
    Topology t(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j) t.adj_[i * n + j] = 1;
    t.finalize();
    return t;
}

Topology Topology::from_edges(std::size_t n,
                              const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                              bool directed) {
    Topology t(n);
    for (const auto& [i, j] : edges) {
        if (i >= n || j >= n)
            throw IndexOutOfRange("Topology: edge (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ") out of range for n = " + std::to_string(n));
        if (i == j)
            throw ValidationError("Topology: self-loop at node " + std::to_string(i));
        t.adj_[i * n + j] = 1;
        if (!directed) t.adj_[j * n + i] = 1;
    }
    t.finalize();
    return t;
}

Topology Topology::from_matrix(std::size_t n, const std::vector<int>& row_major) {
    if (row_major.size() != n * n)
        throw ValidationError("Topology: matrix must have n*n entries");
    Topology t(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const int v = row_major[i * n + j];
            if (v != 0 && v != 1)
                throw ValidationError("Topology: adjacency entries must be 0 or 1");
            if (i == j && v != 0)
                throw ValidationError("Topology: diagonal must be zero");
            t.adj_[i * n + j] = static_cast<std::uint8_t>(v);
        }
    t.finalize();
    return t;
}

void Topology::finalize() {
    neighbors_.assign(n_, {});
    symmetric_ = true;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
            if (adj_[i * n_ + j]) neighbors_[i].push_back(j);
            if (adj_[i * n_ + j] != adj_[j * n_ + i]) symmetric_ = false;
        }
}

bool Topology::edge(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw IndexOutOfRange("Topology::edge: index out of range");
    return adj_[i * n_ + j] != 0;
}

std::size_t Topology::degree(std::size_t i) const {
    if (i >= n_) throw IndexOutOfRange("Topology::degree: node " + std::to_string(i) +
                                       " out of range for n = " + std::to_string(n_));
    return neighbors_[i].size();
}

const std::vector<std::size_t>& Topology::neighbors(std::size_t i) const {
    if (i >= n_) throw IndexOutOfRange("Topology::neighbors: index out of range");
    return neighbors_[i];
}

std::vector<std::pair<std::size_t, std::size_t>> Topology::edge_list() const {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j : neighbors_[i])
            if (symmetric_ ? i < j : true) edges.emplace_back(i, j);
    return edges;
}

ResidualCoefficients residual_coefficients(const Topology& t, std::size_t pivot) {
    const std::size_t n = t.size();
    if (pivot >= n) throw IndexOutOfRange("residual_coefficients: pivot out of range");
    ResidualCoefficients rc{pivot, n, std::vector<int>(n * n, 0)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rc.values[i * n + j] =
                static_cast<int>(t.edge(pivot, j)) - static_cast<int>(t.edge(i, j));
    return rc;
}

std::vector<std::size_t> non_pivot_order(std::size_t n, std::size_t pivot) {
    std::vector<std::size_t> order;
    order.reserve(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        if (i != pivot) order.push_back(i);
    return order;
}

AuxMatrices build_aux_matrices(const Topology& t, std::size_t pivot) {
    const std::size_t n = t.size();
    if (n < 2) throw TooFewNodes("build_aux_matrices: need at least two nodes");
    if (pivot >= n) throw IndexOutOfRange("build_aux_matrices: pivot out of range");

    AuxMatrices aux{Matrix(n - 1, n - 1), Matrix(n - 1, n - 1), non_pivot_order(n, pivot)};
    for (std::size_t r = 0; r < n - 1; ++r) {
        const std::size_t i = aux.node_order[r];
        for (std::size_t c = 0; c < n - 1; ++c) {
            if (r == c) continue;
            const std::size_t j = aux.node_order[c];
            aux.a1(r, c) = t.edge(i, j) ? 1.0 : 0.0;
            aux.a2(r, c) = std::abs(static_cast<int>(t.edge(i, j)) -
                                    static_cast<int>(t.edge(pivot, j)));
        }
    }
    return aux;
}

} // namespace chuasync
