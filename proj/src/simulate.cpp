#include "chuasync/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "chuasync/rng.hpp"

namespace chuasync {

NodeState Trajectory::node(std::size_t k, std::size_t i) const {
    const std::span<const double> s = state(k);
    return {s[3 * i], s[3 * i + 1], s[3 * i + 2]};
}

double ErrorSeries::envelope(std::size_t k) const {
    double worst = 0.0;
    for (std::size_t j = 0; j < series(); ++j) worst = std::max(worst, norm(k, j));
    return worst;
}

namespace detail {

void ensure_finite(std::span<const double> x, std::size_t step, double dt) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double v = x[i];
        if (!std::isfinite(v) || std::abs(v) > kDivergenceGuard)
            throw NonFiniteState("integration diverged at t = " +
                                 std::to_string(static_cast<double>(step) * dt) +
                                 " (coordinate " + std::to_string(i) + " = " +
                                 std::to_string(v) + ")");
    }
}

} // namespace detail

NetworkSystem::NetworkSystem(const ChuaParams& p, const Topology& t, SectorCoupling coupling)
    : params_(p), coupling_(std::move(coupling)), n_(t.size()) {
    offsets_.reserve(n_ + 1);
    offsets_.push_back(0);
    for (std::size_t i = 0; i < n_; ++i) {
        const auto& nb = t.neighbors(i);
        neighbors_.insert(neighbors_.end(), nb.begin(), nb.end());
        offsets_.push_back(neighbors_.size());
    }
}

void NetworkSystem::node_rhs(std::size_t i, std::span<const double> x,
                             std::span<double> dx) const {
    const double x1 = x[3 * i];
    const double x2 = x[3 * i + 1];
    const double x3 = x[3 * i + 2];
    double u = 0.0;
    for (std::size_t idx = offsets_[i]; idx < offsets_[i + 1]; ++idx)
        u -= coupling_.evaluator(x1 - x[3 * neighbors_[idx]]);
    dx[3 * i] = params_.alpha * (-x1 + x2 - chua_nonlinearity(x1, params_)) + u;
    dx[3 * i + 1] = x1 - x2 + x3;
    dx[3 * i + 2] = -params_.beta * x2 - params_.gamma * x3;
}

void NetworkSystem::rhs_serial(std::span<const double> x, std::span<double> dx) const {
    if (x.size() != dim() || dx.size() != dim())
        throw DimensionMismatch("NetworkSystem: state length mismatch");
    for (std::size_t i = 0; i < n_; ++i) node_rhs(i, x, dx);
}

void NetworkSystem::rhs_parallel(std::span<const double> x, std::span<double> dx) const {
    if (x.size() != dim() || dx.size() != dim())
        throw DimensionMismatch("NetworkSystem: state length mismatch");
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(n_);
#pragma omp parallel for schedule(static) if (count >= 8)
    for (std::ptrdiff_t i = 0; i < count; ++i) node_rhs(static_cast<std::size_t>(i), x, dx);
}

NetworkState network_rhs(const NetworkState& s, const ChuaParams& p, const Topology& t,
                         const SectorCoupling& c) {
    if (s.size() != t.size())
        throw DimensionMismatch("network_rhs: " + std::to_string(s.size()) + " states for " +
                                std::to_string(t.size()) + " nodes");
    std::vector<double> x(3 * s.size()), dx(3 * s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        x[3 * i] = s[i].x1;
        x[3 * i + 1] = s[i].x2;
        x[3 * i + 2] = s[i].x3;
    }
    NetworkSystem system(p, t, c);
    system.rhs_serial(x, dx);
    NetworkState out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        out[i] = {dx[3 * i], dx[3 * i + 1], dx[3 * i + 2]};
    return out;
}

namespace {

/// Full-length error vector with 0 at the pivot, for sums over all nodes.
std::vector<double> spread_errors(std::span<const ErrorState> errors, std::size_t n,
                                  std::size_t pivot) {
    std::vector<double> e(n, 0.0);
    std::size_t r = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == pivot) continue;
        e[i] = errors[r++].e;
    }
    return e;
}

void check_error_args(std::span<const ErrorState> errors, const Topology& t, std::size_t pivot) {
    if (pivot >= t.size()) throw IndexOutOfRange("error_rhs: pivot out of range");
    if (errors.size() + 1 != t.size())
        throw DimensionMismatch("error_rhs: expected " + std::to_string(t.size() - 1) +
                                " error states, got " + std::to_string(errors.size()));
}

} // namespace

std::vector<ErrorState> error_rhs(std::span<const ErrorState> errors, double z1,
                                  const ChuaParams& p, const Topology& t,
                                  const SectorCoupling& c, std::size_t pivot) {
    check_error_args(errors, t, pivot);
    const std::size_t n = t.size();
    const std::vector<double> e = spread_errors(errors, n, pivot);
    const double f_pivot = chua_nonlinearity(z1, p);

    std::vector<ErrorState> out(errors.size());
    std::size_t r = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == pivot) continue;
        const ErrorState& s = errors[r];
        const double f_shift = chua_nonlinearity(z1 + s.e, p) - f_pivot;
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (t.edge(i, j)) sum += c.evaluator(s.e - e[j]);
            if (t.edge(pivot, j)) sum -= c.evaluator(-e[j]);
        }
        out[r].e = -p.alpha * s.e - p.alpha * f_shift + p.alpha * s.eta1 - sum;
        out[r].eta1 = s.e - s.eta1 + s.eta2;
        out[r].eta2 = -p.beta * s.eta1 - p.gamma * s.eta2;
        ++r;
    }
    return out;
}

std::vector<ErrorState> error_rhs_residual_form(std::span<const ErrorState> errors, double z1,
                                                const ChuaParams& p, const Topology& t,
                                                const SectorCoupling& c, std::size_t pivot) {
    check_error_args(errors, t, pivot);
    const std::size_t n = t.size();
    const std::vector<double> e = spread_errors(errors, n, pivot);
    const double f_pivot = chua_nonlinearity(z1, p);

    std::vector<ErrorState> out(errors.size());
    std::size_t r = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == pivot) continue;
        const ErrorState& s = errors[r];
        const double f_shift = chua_nonlinearity(z1 + s.e, p) - f_pivot;
        const double kappa = static_cast<double>(t.degree(i));
        double sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double a_ij = t.edge(i, j) ? 1.0 : 0.0;
            const double residual = (t.edge(pivot, j) ? 1.0 : 0.0) - a_ij;
            if (a_ij != 0.0) sum += tilde_k(c, s.e - e[j]) + tilde_k(c, e[j]);
            if (residual != 0.0) sum += residual * c.evaluator(e[j]);
        }
        out[r].e = -p.alpha * s.e - kappa * c.k2 * s.e - p.alpha * f_shift + p.alpha * s.eta1 - sum;
        out[r].eta1 = s.e - s.eta1 + s.eta2;
        out[r].eta2 = -p.beta * s.eta1 - p.gamma * s.eta2;
        ++r;
    }
    return out;
}

Trajectory simulate_network(const ChuaParams& p, const Topology& t, const SectorCoupling& c,
                            const NetworkState& initial, double dt, double t_end, bool parallel) {
    if (initial.size() != t.size())
        throw DimensionMismatch("simulate_network: initial state count does not match topology");
    const NetworkSystem system(p, t, c);
    std::vector<double> x0(3 * initial.size());
    for (std::size_t i = 0; i < initial.size(); ++i) {
        x0[3 * i] = initial[i].x1;
        x0[3 * i + 1] = initial[i].x2;
        x0[3 * i + 2] = initial[i].x3;
    }
    if (parallel)
        return integrate([&system](std::span<const double> x,
                                   std::span<double> dx) { system.rhs_parallel(x, dx); },
                         x0, dt, t_end);
    return integrate([&system](std::span<const double> x,
                               std::span<double> dx) { system.rhs_serial(x, dx); },
                     x0, dt, t_end);
}

ErrorSeries error_series(const Trajectory& traj, std::size_t pivot) {
    const std::size_t n = traj.nodes();
    if (traj.dim != 3 * n || n == 0)
        throw DimensionMismatch("error_series: trajectory is not a 3-coordinate network");
    if (pivot >= n) throw IndexOutOfRange("error_series: pivot out of range");

    ErrorSeries series;
    series.dt = traj.dt;
    series.pivot = pivot;
    series.node_order = non_pivot_order(n, pivot);
    series.norms.reserve(traj.samples() * series.node_order.size());
    for (std::size_t k = 0; k < traj.samples(); ++k) {
        const std::span<const double> x = traj.state(k);
        const double p1 = x[3 * pivot], p2 = x[3 * pivot + 1], p3 = x[3 * pivot + 2];
        for (std::size_t j : series.node_order) {
            const double d1 = x[3 * j] - p1;
            const double d2 = x[3 * j + 1] - p2;
            const double d3 = x[3 * j + 2] - p3;
            series.norms.push_back(std::sqrt(d1 * d1 + d2 * d2 + d3 * d3));
        }
    }
    return series;
}

double fit_decay_rate(const ErrorSeries& series, double t_begin, double t_end) {
    if (!(t_end > t_begin)) throw ValidationError("fit_decay_rate: empty window");
    const std::size_t samples = series.samples();
    if (samples < 2) throw ValidationError("fit_decay_rate: series too short");
    const auto k_begin = static_cast<std::size_t>(std::ceil(t_begin / series.dt - 1e-9));
    const auto k_end = static_cast<std::size_t>(std::floor(t_end / series.dt + 1e-9));
    if (k_end >= samples || k_begin + 1 >= k_end)
        throw ValidationError("fit_decay_rate: window outside the series");

    constexpr double kNormFloor = 1e-280;
    double sum_t = 0.0, sum_y = 0.0, sum_tt = 0.0, sum_ty = 0.0;
    const double count = static_cast<double>(k_end - k_begin + 1);
    for (std::size_t k = k_begin; k <= k_end; ++k) {
        const double env = series.envelope(k);
        if (!(env > kNormFloor))
            throw DegenerateWindow("fit_decay_rate: envelope at the floating floor at t = " +
                                   std::to_string(series.time(k)));
        const double tt = series.time(k);
        const double y = std::log(env);
        sum_t += tt;
        sum_y += y;
        sum_tt += tt * tt;
        sum_ty += tt * y;
    }
    const double denom = count * sum_tt - sum_t * sum_t;
    return (count * sum_ty - sum_t * sum_y) / denom;
}

double dominance_check(const Trajectory& traj, const Matrix& m, std::size_t pivot, double dt) {
    const std::size_t n = traj.nodes();
    if (traj.dim != 3 * n || n < 2)
        throw DimensionMismatch("dominance_check: trajectory is not a coupled network");
    if (pivot >= n) throw IndexOutOfRange("dominance_check: pivot out of range");
    if (!m.square() || m.rows() != 2 * (n - 1))
        throw DimensionMismatch("dominance_check: comparison matrix must have dimension 2(N-1)");
    if (dt != traj.dt)
        throw DimensionMismatch("dominance_check: dt does not match the trajectory grid");

    const std::size_t d = n - 1;
    const std::vector<std::size_t> order = non_pivot_order(n, pivot);

    const auto error_parts = [&](std::size_t k, std::size_t r, double& abs_e, double& eta_norm) {
        const std::span<const double> x = traj.state(k);
        const std::size_t j = order[r];
        abs_e = std::abs(x[3 * j] - x[3 * pivot]);
        const double d2 = x[3 * j + 1] - x[3 * pivot + 1];
        const double d3 = x[3 * j + 2] - x[3 * pivot + 2];
        eta_norm = std::sqrt(d2 * d2 + d3 * d3);
    };

    std::vector<double> z0(2 * d);
    for (std::size_t r = 0; r < d; ++r) error_parts(0, r, z0[r], z0[d + r]);

    const Trajectory comparison = integrate_steps(
        [&m](std::span<const double> z, std::span<double> dz) { matvec_parallel(m, z, dz); }, z0,
        dt, traj.samples() - 1);

    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < traj.samples(); ++k) {
        const std::span<const double> z = comparison.state(k);
        for (std::size_t r = 0; r < d; ++r) {
            double abs_e = 0.0, eta_norm = 0.0;
            error_parts(k, r, abs_e, eta_norm);
            worst = std::max(worst, abs_e - z[r]);
            worst = std::max(worst, eta_norm - z[d + r]);
        }
    }
    return worst;
}

NetworkState seeded_initial_states(std::size_t n, std::uint64_t seed, double scale) {
    NetworkState states(n);
    for (std::size_t i = 0; i < n; ++i)
        states[i] = {scale * draw_symmetric(seed, 3 * i),
                     scale * draw_symmetric(seed, 3 * i + 1),
                     scale * draw_symmetric(seed, 3 * i + 2)};
    return states;
}

} // namespace chuasync
