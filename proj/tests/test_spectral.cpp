#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

#include "chuasync/certificate.hpp"
#include "chuasync/errors.hpp"
#include "chuasync/matrix.hpp"
#include "chuasync/rng.hpp"
#include "chuasync/spectral.hpp"
#include "chuasync/topology.hpp"

using namespace chuasync;
using Complex = std::complex<double>;

namespace {

Matrix random_matrix(std::size_t n, std::uint64_t seed, double scale = 10.0) {
    Matrix m(n, n);
    Splitmix64 stream(seed);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = stream.next_in(-scale, scale);
    return m;
}

/// Best matching (over permutations, n <= 4) of two eigenvalue multisets;
/// returns the minimized maximum pairwise distance.
double match_distance(std::vector<Complex> a, std::vector<Complex> b) {
    REQUIRE(a.size() == b.size());
    REQUIRE(a.size() <= 4);
    std::vector<std::size_t> perm(a.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// Sorted elementwise distance, for larger spectra with separated clusters.
double sorted_distance(std::vector<Complex> a, std::vector<Complex> b) {
    REQUIRE(a.size() == b.size());
    const auto less = [](const Complex& x, const Complex& y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    };
    std::sort(a.begin(), a.end(), less);
    std::sort(b.begin(), b.end(), less);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

} // namespace

TEST_CASE("small fixed spectra") {
    SUBCASE("identity") {
        const Spectrum s = eigenvalues(Matrix::identity(3));
        REQUIRE(s.converged);
        REQUIRE(s.eigenvalues.size() == 3);
        for (const Complex& ev : s.eigenvalues) CHECK(std::abs(ev - 1.0) < 1e-12);
    }
    SUBCASE("rotation has eigenvalues +-i") {
        Matrix m(2, 2);
        m(0, 1) = -1.0;
        m(1, 0) = 1.0;
        const Spectrum s = eigenvalues(m);
        REQUIRE(s.converged);
        CHECK(std::abs(s.eigenvalues[0] - Complex(0, -1)) < 1e-12);
        CHECK(std::abs(s.eigenvalues[1] - Complex(0, 1)) < 1e-12);
    }
    SUBCASE("diagonal abscissa") {
        Matrix m(3, 3);
        m(0, 0) = -1.0;
        m(1, 1) = -2.0;
        m(2, 2) = -3.0;
        CHECK(spectral_abscissa(m) == doctest::Approx(-1.0).epsilon(1e-14));
    }
    SUBCASE("zero matrix") {
        const Spectrum s = eigenvalues(Matrix(4, 4));
        REQUIRE(s.converged);
        for (const Complex& ev : s.eigenvalues) CHECK(std::abs(ev) == 0.0);
    }
    SUBCASE("1x1") {
        Matrix m(1, 1);
        m(0, 0) = 2.5;
        CHECK(spectral_abscissa(m) == 2.5);
    }
}

TEST_CASE("input validation") {
    Matrix bad(2, 2);
    bad(0, 0) = std::nan("");
    CHECK_THROWS_AS(eigenvalues(bad), NonFiniteInput);
    CHECK_THROWS_AS(eigenvalues(Matrix(2, 3)), DimensionMismatch);
    CHECK_THROWS_AS(charpoly_roots_oracle(Matrix(5, 5)), DimensionTooLarge);
}

TEST_CASE("charpoly oracle fixed cases") {
    SUBCASE("companion of l^2 + 3l + 2") {
        Matrix m(2, 2);
        m(0, 1) = 1.0;
        m(1, 0) = -2.0;
        m(1, 1) = -3.0;
        const auto roots = charpoly_roots_oracle(m);
        CHECK(std::abs(roots[0] - Complex(-2, 0)) < 1e-12);
        CHECK(std::abs(roots[1] - Complex(-1, 0)) < 1e-12);
    }
    SUBCASE("1x1") {
        Matrix m(1, 1);
        m(0, 0) = 4.25;
        CHECK(charpoly_roots_oracle(m)[0] == Complex(4.25, 0));
    }
    SUBCASE("two-node comparison matrix at the threshold has a root at ~0") {
        const ChuaParams p(10.0, 15.0, 0.1, -1.31, -0.75);
        const Topology pair = Topology::from_edges(2, {{0, 1}});
        const Matrix m = build_m(p, pair, 0, 21.282, 21.282);
        const auto roots = charpoly_roots_oracle(m);
        double closest = 1e9;
        for (const Complex& r : roots) closest = std::min(closest, std::abs(r));
        CHECK(closest < 1e-4);
    }
}

TEST_CASE("eigensolver agrees with the charpoly oracle on random small matrices") {
    Splitmix64 seeds(101);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(seeds.next_in(0.0, 4.0));
        const Matrix m = random_matrix(n, seeds.next_u64());
        const Spectrum s = eigenvalues(m);
        REQUIRE(s.converged);
        worst = std::max(worst, match_distance(s.eigenvalues, charpoly_roots_oracle(m)));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("trace and determinant identities") {
    Splitmix64 seeds(103);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(seeds.next_in(0.0, 5.0));
        const Matrix m = random_matrix(n, seeds.next_u64());
        const Spectrum s = eigenvalues(m);
        REQUIRE(s.converged);
        Complex sum = 0.0, prod = 1.0;
        for (const Complex& ev : s.eigenvalues) {
            sum += ev;
            prod *= ev;
        }
        CHECK(std::abs(sum.imag()) < 1e-8);
        CHECK(std::abs(sum.real() - m.trace()) <
              1e-8 * static_cast<double>(n) * std::max(1.0, m.max_abs()));
        const double det = m.determinant();
        CHECK(std::abs(prod - det) <= 1e-6 * std::max({std::abs(det), std::abs(prod), 1e-12}));
    }
}

TEST_CASE("similarity invariance under positive diagonal scaling") {
    Splitmix64 seeds(107);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(seeds.next_in(0.0, 3.0));
        const Matrix m = random_matrix(n, seeds.next_u64());
        std::vector<double> d(n);
        for (double& v : d) v = seeds.next_in(0.25, 4.0);
        Matrix scaled(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) scaled(i, j) = m(i, j) * d[j] / d[i];
        CHECK(match_distance(eigenvalues(m).eigenvalues, eigenvalues(scaled).eigenvalues) < 1e-6);
    }
}

TEST_CASE("balancing does not change the spectrum") {
    Matrix m = random_matrix(6, 113, 1.0);
    // spread the magnitudes over a few orders
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) m(i, j) *= std::pow(10.0, double(i) - double(j));
    EigenOptions balanced;
    balanced.balance = true;
    CHECK(sorted_distance(eigenvalues(m).eigenvalues, eigenvalues(m, balanced).eigenvalues) <
          1e-6);
}

TEST_CASE("iterations are reported") {
    const Matrix m = random_matrix(12, 127);
    const Spectrum s = eigenvalues(m);
    CHECK(s.converged);
    CHECK(s.iterations > 0);
    CHECK(s.iterations < 12 * 100);
}
