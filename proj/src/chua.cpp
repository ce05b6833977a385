#include "chuasync/chua.hpp"

#include <cmath>
#include <string>

#include "chuasync/errors.hpp"

namespace chuasync {

ChuaParams::ChuaParams(double alpha_, double beta_, double gamma_, double a_, double b_)
    : alpha(alpha_), beta(beta_), gamma(gamma_), a(a_), b(b_) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw InvalidParams("ChuaParams: alpha must be positive, got " + std::to_string(alpha));
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw InvalidParams("ChuaParams: beta must be positive, got " + std::to_string(beta));
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw InvalidParams("ChuaParams: gamma must be nonnegative, got " + std::to_string(gamma));
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b) || !(b < 0.0))
        throw InvalidParams("ChuaParams: slopes must satisfy a < b < 0");
}

double chua_nonlinearity(double x, const ChuaParams& p) {
    return p.b * x + 0.5 * (p.a - p.b) * (std::abs(x + 1.0) - std::abs(x - 1.0));
}

NodeState node_vector_field(const NodeState& s, double u, const ChuaParams& p) {
    return {
        p.alpha * (-s.x1 + s.x2 - chua_nonlinearity(s.x1, p)) + u,
        s.x1 - s.x2 + s.x3,
        -p.beta * s.x2 - p.gamma * s.x3,
    };
}

double lipschitz_constant(const ChuaParams& p) {
    return std::abs(p.a);
}

double mu0(const ChuaParams& p) {
    const double half_trace = 0.5 * (1.0 + p.gamma);
    const double disc = half_trace * half_trace - (p.gamma + p.beta);
    // disc < 0: complex pair, real part -half_trace. disc >= 0: two real
    // eigenvalues, the slower one at -half_trace + sqrt(disc).
    const double value = disc < 0.0 ? half_trace : half_trace - std::sqrt(disc);
    if (!(value > 0.0))
        throw NonPositiveDecayRate("mu0: A0 is not Hurwitz with margin (mu0 = " +
                                   std::to_string(value) + ")");
    return value;
}

} // namespace chuasync
