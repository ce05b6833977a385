#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "chuasync/matrix.hpp"

namespace chuasync {

struct Spectrum {
    /// All eigenvalues, sorted by (real, imag). Complex values occur in
    /// conjugate pairs for real input.
    std::vector<std::complex<double>> eigenvalues;
    /// Total QR iterations spent.
    std::size_t iterations = 0;
    /// False if the iteration cap was reached before full deflation; the
    /// eigenvalue list is then best-effort.
    bool converged = false;
};

struct EigenOptions {
    /// Relative subdiagonal deflation threshold: h(i+1,i) is negligible when
    /// |h(i+1,i)| <= tolerance * (|h(i,i)| + |h(i+1,i+1)|).
    double tolerance = 1e-12;
    std::size_t max_iterations_per_eigenvalue = 100;
    /// Diagonal balancing before reduction. Off by default; worth trying when
    /// entries span many orders of magnitude.
    bool balance = false;
};

/**
 * Eigenvalues of a real square matrix: orthogonal reduction to upper
 * Hessenberg form followed by Francis double-shift QR iteration with
 * deflation. Robust on the nonsymmetric matrices of small-to-moderate size
 * used here. Throws NonFiniteInput for non-finite entries.
 */
Spectrum eigenvalues(const Matrix& m, const EigenOptions& options = {});

/// Max real part over the spectrum. Throws EigensolverFailure on
/// non-convergence.
double spectral_abscissa(const Matrix& m, const EigenOptions& options = {});

/**
 * Independent small-matrix oracle (dimension <= 4, DimensionTooLarge beyond):
 * characteristic-polynomial coefficients by Faddeev-LeVerrier, roots by the
 * closed-form quadratic for degree <= 2 and Durand-Kerner iteration for
 * degrees 3-4. Shares no code path with the QR solver; used by tests.
 */
std::vector<std::complex<double>> charpoly_roots_oracle(const Matrix& m);

} // namespace chuasync
