#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "chuasync/matrix.hpp"

namespace chuasync {

/**
 * Interconnection graph of the oscillator network: n nodes, binary adjacency
 * with zero diagonal. Directed input is accepted (the derivation never uses
 * symmetry); the CLI warns on asymmetric input since the reference examples
 * are all symmetric. Immutable after construction.
 */
class Topology {
public:
    /// Empty graph on n nodes (n >= 1).
    explicit Topology(std::size_t n);

    static Topology complete(std::size_t n);
    static Topology from_edges(std::size_t n,
                               const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                               bool directed = false);
    /// Row-major 0/1 entries, length n*n, zero diagonal required.
    static Topology from_matrix(std::size_t n, const std::vector<int>& row_major);

    std::size_t size() const noexcept { return n_; }
    bool edge(std::size_t i, std::size_t j) const;

    /// kappa_i = sum_j adjacency(i, j). Throws IndexOutOfRange.
    std::size_t degree(std::size_t i) const;

    /// Neighbors of i in ascending order (fixed summation order for kernels).
    const std::vector<std::size_t>& neighbors(std::size_t i) const;

    bool symmetric() const noexcept { return symmetric_; }

    std::vector<std::pair<std::size_t, std::size_t>> edge_list() const;

private:
    void finalize();

    std::size_t n_ = 0;
    std::vector<std::uint8_t> adj_; // row-major n*n
    std::vector<std::vector<std::size_t>> neighbors_;
    bool symmetric_ = true;
};

/// Residual connectivity coefficients with respect to a reference (pivot)
/// node: values[i][j] = adjacency(pivot, j) - adjacency(i, j), in {-1, 0, 1}.
struct ResidualCoefficients {
    std::size_t pivot = 0;
    std::size_t n = 0;
    std::vector<int> values; // row-major n*n

    int at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

ResidualCoefficients residual_coefficients(const Topology& t, std::size_t pivot);

/// The (N-1)x(N-1) auxiliary matrices entering the comparison matrix:
/// a1(r,c) = |adjacency(i,j)| and a2(r,c) = |adjacency(i,j) - adjacency(pivot,j)|
/// over the non-pivot nodes i, j, both with zero diagonal. node_order lists
/// the non-pivot nodes in ascending original index; this ordering is part of
/// the public contract and is shared with the certificate module.
struct AuxMatrices {
    Matrix a1;
    Matrix a2;
    std::vector<std::size_t> node_order;
};

AuxMatrices build_aux_matrices(const Topology& t, std::size_t pivot);

/// Ascending node indices with the pivot removed.
std::vector<std::size_t> non_pivot_order(std::size_t n, std::size_t pivot);

} // namespace chuasync
