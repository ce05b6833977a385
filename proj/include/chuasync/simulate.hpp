#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "chuasync/chua.hpp"
#include "chuasync/coupling.hpp"
#include "chuasync/errors.hpp"
#include "chuasync/matrix.hpp"
#include "chuasync/topology.hpp"

namespace chuasync {

using NetworkState = std::vector<NodeState>;

/// Coordinates beyond this magnitude (or non-finite) abort integration with
/// NonFiniteState instead of silently producing garbage.
inline constexpr double kDivergenceGuard = 1e12;

/// Fixed-step trajectory on the uniform grid t_k = k dt. States are stored
/// flattened (node-major for networks: x1, x2, x3 per node).
struct Trajectory {
    double dt = 0.0;
    std::size_t dim = 0;
    std::vector<double> data; // samples x dim

    std::size_t samples() const noexcept { return dim == 0 ? 0 : data.size() / dim; }
    double time(std::size_t k) const noexcept { return static_cast<double>(k) * dt; }
    std::span<const double> state(std::size_t k) const noexcept {
        return {data.data() + k * dim, dim};
    }
    std::size_t nodes() const noexcept { return dim / 3; }
    NodeState node(std::size_t k, std::size_t i) const;
};

/// Euclidean norms of the per-node errors x_j - x_pivot over time, j != pivot
/// in ascending original index.
struct ErrorSeries {
    double dt = 0.0;
    std::size_t pivot = 0;
    std::vector<std::size_t> node_order;
    std::vector<double> norms; // samples x (N-1)

    std::size_t series() const noexcept { return node_order.size(); }
    std::size_t samples() const noexcept {
        return node_order.empty() ? 0 : norms.size() / node_order.size();
    }
    double time(std::size_t k) const noexcept { return static_cast<double>(k) * dt; }
    double norm(std::size_t k, std::size_t j) const noexcept {
        return norms[k * node_order.size() + j];
    }
    /// Max over nodes at sample k.
    double envelope(std::size_t k) const;
};

namespace detail {
void ensure_finite(std::span<const double> x, std::size_t step, double dt);
}

/**
 * Classical fixed-step RK4 over a given number of steps. rhs must be callable
 * as rhs(std::span<const double> x, std::span<double> dxdt) and side-effect
 * free. Deterministic given identical inputs.
 */
template <class Rhs>
Trajectory integrate_steps(Rhs&& rhs, std::span<const double> initial, double dt,
                           std::size_t steps) {
    if (!(dt > 0.0)) throw ValidationError("integrate: dt must be positive");
    const std::size_t dim = initial.size();
    if (dim == 0) throw ValidationError("integrate: empty state");

    Trajectory traj;
    traj.dt = dt;
    traj.dim = dim;
    traj.data.reserve((steps + 1) * dim);

    std::vector<double> x(initial.begin(), initial.end());
    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), stage(dim);
    detail::ensure_finite(x, 0, dt);
    traj.data.insert(traj.data.end(), x.begin(), x.end());

    for (std::size_t s = 0; s < steps; ++s) {
        rhs(std::span<const double>(x), std::span<double>(k1));
        for (std::size_t i = 0; i < dim; ++i) stage[i] = x[i] + 0.5 * dt * k1[i];
        rhs(std::span<const double>(stage), std::span<double>(k2));
        for (std::size_t i = 0; i < dim; ++i) stage[i] = x[i] + 0.5 * dt * k2[i];
        rhs(std::span<const double>(stage), std::span<double>(k3));
        for (std::size_t i = 0; i < dim; ++i) stage[i] = x[i] + dt * k3[i];
        rhs(std::span<const double>(stage), std::span<double>(k4));
        for (std::size_t i = 0; i < dim; ++i)
            x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        detail::ensure_finite(x, s + 1, dt);
        traj.data.insert(traj.data.end(), x.begin(), x.end());
    }
    return traj;
}

/// RK4 up to t_end (rounded to a whole number of steps, t_end >= dt).
template <class Rhs>
Trajectory integrate(Rhs&& rhs, std::span<const double> initial, double dt, double t_end) {
    if (!(dt > 0.0)) throw ValidationError("integrate: dt must be positive");
    if (!(t_end >= dt)) throw ValidationError("integrate: t_end must be at least dt");
    const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
    return integrate_steps(rhs, initial, dt, steps);
}

/**
 * The coupled network vector field as a reusable system: adjacency is kept as
 * flattened neighbor lists in ascending order so per-node sums have a fixed
 * summation order. rhs_parallel distributes nodes over threads and is bitwise
 * identical to rhs_serial (one writer per node, same inner order).
 */
class NetworkSystem {
public:
    NetworkSystem(const ChuaParams& p, const Topology& t, SectorCoupling coupling);

    std::size_t node_count() const noexcept { return n_; }
    std::size_t dim() const noexcept { return 3 * n_; }

    void rhs_serial(std::span<const double> x, std::span<double> dx) const;
    void rhs_parallel(std::span<const double> x, std::span<double> dx) const;

private:
    void node_rhs(std::size_t i, std::span<const double> x, std::span<double> dx) const;

    ChuaParams params_;
    SectorCoupling coupling_;
    std::size_t n_;
    std::vector<std::size_t> offsets_;   // n_ + 1
    std::vector<std::size_t> neighbors_; // ascending per node
};

/// Per-node derivative of the coupled network (coupling enters x1 only).
NetworkState network_rhs(const NetworkState& s, const ChuaParams& p, const Topology& t,
                         const SectorCoupling& c);

/// Relative state of a non-pivot node: e = x1 - x1_pivot, eta = (x2, x3)
/// difference.
struct ErrorState {
    double e = 0.0;
    double eta1 = 0.0;
    double eta2 = 0.0;
};

/// Error dynamics evaluated directly (coupling differences plus the shifted
/// nonlinearity f(z1 + e) - f(z1)); errors are indexed by ascending non-pivot
/// node, z1 is the pivot's first coordinate.
std::vector<ErrorState> error_rhs(std::span<const ErrorState> errors, double z1,
                                  const ChuaParams& p, const Topology& t,
                                  const SectorCoupling& c, std::size_t pivot);

/// Same field rewritten through the shifted coupling and the residual
/// connectivity coefficients; agrees with error_rhs to rounding.
std::vector<ErrorState> error_rhs_residual_form(std::span<const ErrorState> errors, double z1,
                                                const ChuaParams& p, const Topology& t,
                                                const SectorCoupling& c, std::size_t pivot);

/// RK4 simulation of the coupled network.
Trajectory simulate_network(const ChuaParams& p, const Topology& t, const SectorCoupling& c,
                            const NetworkState& initial, double dt, double t_end,
                            bool parallel = true);

ErrorSeries error_series(const Trajectory& traj, std::size_t pivot);

/**
 * Least-squares slope of log(envelope) versus t over [t_begin, t_end].
 * Throws DegenerateWindow when the envelope sits at the floating floor
 * anywhere in the window.
 */
double fit_decay_rate(const ErrorSeries& series, double t_begin, double t_end);

/**
 * Integrates the comparison system z' = M z on the trajectory's grid from
 * sigma_i(0) = |e_i(0)|, chi_i(0) = ||eta_i(0)|| and returns the worst signed
 * excess max over t, i of (|e_i(t)| - sigma_i(t)) and (||eta_i(t)|| -
 * chi_i(t)). Nonpositive means the comparison dominates the simulation.
 */
double dominance_check(const Trajectory& traj, const Matrix& m, std::size_t pivot, double dt);

/// Fixed-seed uniform initial states on [-scale, scale]^3 per node, from the
/// counter-based splitmix64 stream (index 3 i + coordinate).
NetworkState seeded_initial_states(std::size_t n, std::uint64_t seed, double scale);

} // namespace chuasync
