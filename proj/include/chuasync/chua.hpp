#pragma once

namespace chuasync {

/**
 * Constants of the extended Chua oscillator
 *
 *   x1' = alpha (-x1 + x2 - f(x1)) + u
 *   x2' = x1 - x2 + x3
 *   x3' = -beta x2 - gamma x3
 *
 * with f the odd piecewise-linear diode characteristic: slope a on the inner
 * segment |x| <= 1, slope b outside. Validated at construction; everything
 * downstream assumes a valid parameter set.
 */
struct ChuaParams {
    double alpha;
    double beta;
    double gamma;
    double a; ///< inner slope of f (|x| <= 1)
    double b; ///< outer slope of f (|x| > 1)

    ChuaParams(double alpha, double beta, double gamma, double a, double b);
};

struct NodeState {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;
};

/// The piecewise-linear diode characteristic, evaluated in closed form with
/// absolute values (no per-region branching, so the breakpoints need no
/// tie-breaking): f(x) = b x + (a - b)(|x+1| - |x-1|)/2.
double chua_nonlinearity(double x, const ChuaParams& p);

/// Single-node vector field with external input u injected into x1.
NodeState node_vector_field(const NodeState& s, double u, const ChuaParams& p);

/// Lipschitz constant of the diode characteristic: |a| (= max slope magnitude,
/// since a < b < 0).
double lipschitz_constant(const ChuaParams& p);

/**
 * Decay rate of the stable 2x2 subsystem A0 = [[-1, 1], [-beta, -gamma]]
 * governing (x2, x3):
 *
 *   mu0 = (1+gamma)/2 - Re sqrt((1+gamma)^2/4 - (gamma+beta))
 *
 * computed by the quadratic formula with an explicit discriminant branch.
 * Throws NonPositiveDecayRate if mu0 <= 0 (unreachable for beta > 0,
 * gamma >= 0, kept as a guard).
 */
double mu0(const ChuaParams& p);

} // namespace chuasync
