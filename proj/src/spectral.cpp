#include "chuasync/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "chuasync/errors.hpp"

namespace chuasync {

namespace {

/// EISPACK-style diagonal balancing with radix-2 scale factors (exact in
/// floating point, so it cannot perturb the spectrum beyond similarity).
void balance(Matrix& a) {
    const std::size_t n = a.rows();
    constexpr double radix = 2.0;
    constexpr double radix2 = radix * radix;
    bool again = true;
    while (again) {
        again = false;
        for (std::size_t i = 0; i < n; ++i) {
            double col = 0.0, row = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                col += std::abs(a(j, i));
                row += std::abs(a(i, j));
            }
            if (col == 0.0 || row == 0.0) continue;
            const double total = col + row;
            double f = 1.0;
            double g = row / radix;
            while (col < g) {
                f *= radix;
                col *= radix2;
            }
            g = row * radix;
            while (col > g) {
                f /= radix;
                col /= radix2;
            }
            if ((col + row) / f < 0.95 * total) {
                again = true;
                for (std::size_t j = 0; j < n; ++j) a(i, j) /= f;
                for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
}

/// Householder reduction to upper Hessenberg form, in place.
void hessenberg_reduce(Matrix& h) {
    const std::size_t n = h.rows();
    if (n < 3) return;
    std::vector<double> v(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double norm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) norm2 += h(i, k) * h(i, k);
        const double sigma = std::sqrt(norm2);
        if (sigma == 0.0) continue;

        const double x0 = h(k + 1, k);
        const double alpha = x0 >= 0.0 ? -sigma : sigma;
        v[k + 1] = x0 - alpha;
        for (std::size_t i = k + 2; i < n; ++i) v[i] = h(i, k);
        const double vtv = v[k + 1] * v[k + 1] + (norm2 - x0 * x0);
        if (vtv == 0.0) continue;
        const double tau = 2.0 / vtv;

        // Left: H <- (I - tau v v^T) H on rows k+1..n-1 (columns < k are
        // already zero below the subdiagonal).
        for (std::size_t j = k; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) s += v[i] * h(i, j);
            s *= tau;
            for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= s * v[i];
        }
        // Right: H <- H (I - tau v v^T) on columns k+1..n-1.
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) s += h(i, j) * v[j];
            s *= tau;
            for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= s * v[j];
        }
        h(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
    }
}

/**
 * Francis double-shift QR iteration on an upper Hessenberg matrix (the
 * classic EISPACK hqr scheme). Eigenvalues land in (wr, wi). Returns false if
 * any eigenvalue exceeds the iteration cap.
 */
bool hqr(Matrix& h, std::vector<double>& wr, std::vector<double>& wi, double tol,
         std::size_t cap, std::size_t& total_iterations) {
    const int n = static_cast<int>(h.rows());
    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(h(i, j));
    if (anorm == 0.0) {
        std::fill(wr.begin(), wr.end(), 0.0);
        std::fill(wi.begin(), wi.end(), 0.0);
        return true;
    }

    int nn = n - 1;
    double t = 0.0; // accumulated exceptional shifts
    while (nn >= 0) {
        std::size_t its = 0;
        for (;;) {
            int l;
            for (l = nn; l >= 1; --l) {
                double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(h(l, l - 1)) <= tol * s) break;
            }

            double x = h(nn, nn);
            if (l == nn) {
                // one real eigenvalue deflates
                wr[nn] = x + t;
                wi[nn] = 0.0;
                --nn;
                break;
            }
            double y = h(nn - 1, nn - 1);
            double w = h(nn, nn - 1) * h(nn - 1, nn);
            if (l == nn - 1) {
                // 2x2 block deflates: real pair or conjugate pair
                double p = 0.5 * (y - x);
                double q = p * p + w;
                double z = std::sqrt(std::abs(q));
                x += t;
                if (q >= 0.0) {
                    z = p + std::copysign(z, p);
                    wr[nn - 1] = wr[nn] = x + z;
                    if (z != 0.0) wr[nn] = x - w / z;
                    wi[nn - 1] = wi[nn] = 0.0;
                } else {
                    wr[nn - 1] = wr[nn] = x + p;
                    wi[nn - 1] = -z;
                    wi[nn] = z;
                }
                nn -= 2;
                break;
            }

            if (its == cap) return false;
            if (its != 0 && its % 10 == 0) {
                // exceptional shift to break symmetric stalls
                t += x;
                for (int i = 0; i <= nn; ++i) h(i, i) -= x;
                const double s = std::abs(h(nn, nn - 1)) + std::abs(h(nn - 1, nn - 2));
                y = x = 0.75 * s;
                w = -0.4375 * s * s;
            }
            ++its;
            ++total_iterations;

            // shift vector (p, q, r); search for two consecutive small
            // subdiagonals to start the bulge chase at row m
            int m;
            double p = 0.0, q = 0.0, r = 0.0;
            for (m = nn - 2; m >= l; --m) {
                const double z = h(m, m);
                const double rr = x - z;
                const double ss = y - z;
                p = (rr * ss - w) / h(m + 1, m) + h(m, m + 1);
                q = h(m + 1, m + 1) - z - rr - ss;
                r = h(m + 2, m + 1);
                const double scale = std::abs(p) + std::abs(q) + std::abs(r);
                p /= scale;
                q /= scale;
                r /= scale;
                if (m == l) break;
                const double u = std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r));
                const double v =
                    std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(z) + std::abs(h(m + 1, m + 1)));
                if (u <= tol * v) break;
            }
            for (int i = m + 2; i <= nn; ++i) {
                h(i, i - 2) = 0.0;
                if (i != m + 2) h(i, i - 3) = 0.0;
            }

            // double QR sweep over rows l..nn
            for (int k = m; k <= nn - 1; ++k) {
                if (k != m) {
                    p = h(k, k - 1);
                    q = h(k + 1, k - 1);
                    r = k != nn - 1 ? h(k + 2, k - 1) : 0.0;
                    x = std::abs(p) + std::abs(q) + std::abs(r);
                    if (x != 0.0) {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                const double s = std::copysign(std::sqrt(p * p + q * q + r * r), p);
                if (s == 0.0) continue;
                if (k == m) {
                    if (l != m) h(k, k - 1) = -h(k, k - 1);
                } else {
                    h(k, k - 1) = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                double z = r / s;
                q /= p;
                r /= p;
                for (int j = k; j <= nn; ++j) { // row modification
                    double pp = h(k, j) + q * h(k + 1, j);
                    if (k != nn - 1) {
                        pp += r * h(k + 2, j);
                        h(k + 2, j) -= pp * z;
                    }
                    h(k + 1, j) -= pp * y;
                    h(k, j) -= pp * x;
                }
                const int mmin = std::min(nn, k + 3);
                for (int i = l; i <= mmin; ++i) { // column modification
                    double pp = x * h(i, k) + y * h(i, k + 1);
                    if (k != nn - 1) {
                        pp += z * h(i, k + 2);
                        h(i, k + 2) -= pp * r;
                    }
                    h(i, k + 1) -= pp * q;
                    h(i, k) -= pp;
                }
            }
        }
    }
    return true;
}

bool complex_less(const std::complex<double>& a, const std::complex<double>& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

} // namespace

Spectrum eigenvalues(const Matrix& m, const EigenOptions& options) {
    if (!m.square() || m.rows() == 0)
        throw DimensionMismatch("eigenvalues: need a nonempty square matrix");
    if (!m.all_finite()) throw NonFiniteInput("eigenvalues: matrix has non-finite entries");

    const std::size_t n = m.rows();
    Matrix h = m;
    if (options.balance) balance(h);
    hessenberg_reduce(h);

    std::vector<double> wr(n, 0.0), wi(n, 0.0);
    Spectrum spectrum;
    spectrum.converged = hqr(h, wr, wi, options.tolerance,
                             options.max_iterations_per_eigenvalue, spectrum.iterations);

    spectrum.eigenvalues.reserve(n);
    const std::size_t found = spectrum.converged ? n : 0;
    for (std::size_t i = 0; i < found; ++i) spectrum.eigenvalues.emplace_back(wr[i], wi[i]);
    if (!spectrum.converged) {
        // best effort: return the (shifted) diagonal of the partially reduced matrix
        for (std::size_t i = 0; i < n; ++i) spectrum.eigenvalues.emplace_back(h(i, i), 0.0);
    }
    std::sort(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(), complex_less);
    return spectrum;
}

double spectral_abscissa(const Matrix& m, const EigenOptions& options) {
    const Spectrum s = eigenvalues(m, options);
    if (!s.converged)
        throw EigensolverFailure("spectral_abscissa: QR iteration did not converge");
    double worst = s.eigenvalues.front().real();
    for (const auto& ev : s.eigenvalues) worst = std::max(worst, ev.real());
    return worst;
}

namespace {

using Complex = std::complex<double>;

Complex horner(const std::vector<double>& monic_tail, Complex z) {
    // monic polynomial z^n + c[0] z^(n-1) + ... + c[n-1]
    Complex acc = 1.0;
    for (double c : monic_tail) acc = acc * z + c;
    return acc;
}

std::vector<Complex> quadratic_roots(double b, double c) {
    const double disc = b * b - 4.0 * c;
    if (disc >= 0.0) {
        const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
        // q and c/q avoid cancellation; q == 0 only when b == 0 and disc == 0
        if (q == 0.0) return {Complex(0.0, 0.0), Complex(0.0, 0.0)};
        return {Complex(q, 0.0), Complex(c / q, 0.0)};
    }
    const double im = 0.5 * std::sqrt(-disc);
    return {Complex(-0.5 * b, -im), Complex(-0.5 * b, im)};
}

std::vector<Complex> durand_kerner(const std::vector<double>& monic_tail) {
    const std::size_t deg = monic_tail.size();
    double radius = 0.0;
    for (double c : monic_tail) radius = std::max(radius, std::abs(c));
    radius += 1.0;

    std::vector<Complex> z(deg);
    const Complex seed(0.4, 0.9);
    Complex power = seed;
    for (std::size_t i = 0; i < deg; ++i) {
        z[i] = radius * power;
        power *= seed;
    }
    for (int iter = 0; iter < 1000; ++iter) {
        double worst_update = 0.0;
        for (std::size_t i = 0; i < deg; ++i) {
            Complex denom = 1.0;
            for (std::size_t j = 0; j < deg; ++j)
                if (j != i) denom *= z[i] - z[j];
            if (denom == Complex(0.0, 0.0)) denom = Complex(1e-300, 0.0);
            const Complex delta = horner(monic_tail, z[i]) / denom;
            z[i] -= delta;
            worst_update = std::max(worst_update, std::abs(delta) / (1.0 + std::abs(z[i])));
        }
        if (worst_update < 1e-15) break;
    }
    return z;
}

} // namespace

std::vector<std::complex<double>> charpoly_roots_oracle(const Matrix& m) {
    if (!m.square() || m.rows() == 0)
        throw DimensionMismatch("charpoly_roots_oracle: need a nonempty square matrix");
    if (m.rows() > 4)
        throw DimensionTooLarge("charpoly_roots_oracle: dimension must be <= 4");
    if (!m.all_finite())
        throw NonFiniteInput("charpoly_roots_oracle: matrix has non-finite entries");

    const std::size_t n = m.rows();
    // Faddeev-LeVerrier: p(z) = z^n + a[0] z^(n-1) + ... + a[n-1]
    std::vector<double> coeff(n);
    Matrix mk = Matrix::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        mk = m * mk;
        coeff[k - 1] = -mk.trace() / static_cast<double>(k);
        if (k < n)
            for (std::size_t i = 0; i < n; ++i) mk(i, i) += coeff[k - 1];
    }

    std::vector<Complex> roots;
    if (n == 1) {
        roots = {Complex(-coeff[0], 0.0)};
    } else if (n == 2) {
        roots = quadratic_roots(coeff[0], coeff[1]);
    } else {
        roots = durand_kerner(coeff);
    }
    std::sort(roots.begin(), roots.end(), complex_less);
    return roots;
}

} // namespace chuasync
