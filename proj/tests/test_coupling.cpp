#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "chuasync/coupling.hpp"
#include "chuasync/errors.hpp"
#include "chuasync/rng.hpp"

using namespace chuasync;

namespace {

std::vector<SectorCoupling> registered() {
    return {make_linear(2.0), make_linear_plus_arctan(3.0), make_saturated_linear(2.0, 1.5)};
}

} // namespace

TEST_CASE("linear coupling") {
    const SectorCoupling c = make_linear(21.3);
    CHECK(c(1.0) == 21.3);
    CHECK(c.k1 == 21.3);
    CHECK(c.k2 == 21.3);
    CHECK(make_linear(5.0)(0.0) == 0.0);
    CHECK(make_linear(2.0)(-3.0) == -6.0);
    CHECK_THROWS_AS(make_linear(0.0), NonPositiveGain);
    CHECK_THROWS_AS(make_linear(-1.0), NonPositiveGain);
}

TEST_CASE("linear-plus-arctan coupling") {
    const SectorCoupling c = make_linear_plus_arctan(3.0);
    CHECK(c.k1 == 3.0);
    CHECK(c.k2 == 4.0);
    CHECK(c(0.0) == 0.0);
    CHECK(c(1.0) == doctest::Approx(3.7853981633974483).epsilon(1e-15));
    CHECK_THROWS_AS(make_linear_plus_arctan(0.0), NonPositiveGain);
}

TEST_CASE("saturated-linear coupling") {
    const SectorCoupling c = make_saturated_linear(2.0, 1.5);
    CHECK(c.k1 == 0.0);
    CHECK(c.k2 == 2.0);
    CHECK(c(1.0) == 2.0);
    CHECK(c(10.0) == 3.0); // clamped at s = 1.5
    CHECK(c(-10.0) == -3.0);
    CHECK_THROWS_AS(make_saturated_linear(-1.0, 1.0), NonPositiveGain);
    CHECK_THROWS_AS(make_saturated_linear(1.0, 0.0), ValidationError);
}

TEST_CASE("registry") {
    const SectorCoupling c = make_coupling("linear_plus_arctan", {{"c", 3.0}});
    CHECK(c.k2 == 4.0);
    CHECK_THROWS_AS(make_coupling("spline", {}), ValidationError);
    CHECK_THROWS_AS(make_coupling("linear", {}), ValidationError); // missing k
    CHECK_THROWS_AS(make_coupling("linear", {{"k", 2.0}}, 3.0, 1.0), ValidationError);
    const SectorCoupling overridden = make_coupling("linear", {{"k", 2.0}}, 1.0, 2.5);
    CHECK(overridden.k1 == 1.0);
    CHECK(overridden.k2 == 2.5);
}

TEST_CASE("shifted coupling tilde_k") {
    const SectorCoupling lin = make_linear(4.0);
    Splitmix64 stream(5);
    for (int i = 0; i < 1000; ++i) CHECK(tilde_k(lin, stream.next_in(-50, 50)) == 0.0);

    const SectorCoupling at = make_linear_plus_arctan(3.0);
    CHECK(tilde_k(at, 0.0) == 0.0);
    CHECK(tilde_k(at, 1.0) == doctest::Approx(-0.21460183660255172).epsilon(1e-14));
}

TEST_CASE("tilde_k lies in the second-fourth quadrants") {
    for (const SectorCoupling& c : registered()) {
        Splitmix64 stream(23);
        for (int i = 0; i < 100000; ++i) {
            const double e = stream.next_in(-1e3, 1e3);
            CHECK(tilde_k(c, e) * e <= 1e-12 * (1.0 + e * e));
        }
    }
}

TEST_CASE("registered couplings are odd (exactly, sampled)") {
    for (const SectorCoupling& c : registered()) {
        Splitmix64 stream(29);
        for (int i = 0; i < 100000; ++i) {
            const double e = stream.next_in(-1e3, 1e3);
            CHECK(c(-e) == -c(e));
        }
    }
}

TEST_CASE("verify_sector confirms the declared sectors") {
    CHECK(verify_sector(make_linear(2.0), 100.0, 10001, 1e-12).verified);
    const SectorReport arctan = verify_sector(make_linear_plus_arctan(3.0), 100.0, 100000, 1e-12);
    CHECK(arctan.verified);
    CHECK(arctan.worst_violation <= 0.0);
    CHECK(arctan.samples_tested == 100000);
    CHECK_FALSE(arctan.violating_input.has_value());
    CHECK(verify_sector(make_saturated_linear(2.0, 1.5), 1e3, 100000, 1e-12).verified);
}

TEST_CASE("verify_sector rejects a wrong lower-slope claim") {
    // claim k1 = 5 for 3e + arctan(e): 3e + arctan(e) < 5e for every e > 0
    const SectorCoupling wrong = make_coupling("linear_plus_arctan", {{"c", 3.0}}, 5.0, 5.0);
    const SectorReport report = verify_sector(wrong, 100.0, 100000, 1e-12);
    CHECK_FALSE(report.verified);
    CHECK(report.worst_violation > 1.0);
    REQUIRE(report.violating_input.has_value());
    const double e = *report.violating_input;
    CHECK(5.0 * std::abs(e) - std::abs(3.0 * e + std::atan(e)) > 1.0);
}

TEST_CASE("verify_sector is reproducible") {
    const SectorCoupling c = make_linear_plus_arctan(3.0);
    const SectorReport a = verify_sector(c, 50.0, 20000, 1e-12, 77);
    const SectorReport b = verify_sector(c, 50.0, 20000, 1e-12, 77);
    CHECK(a.worst_violation == b.worst_violation);
    CHECK(a.verified == b.verified);
}

TEST_CASE("verify_sector preconditions") {
    CHECK_THROWS_AS(verify_sector(make_linear(1.0), 10.0, 1, 1e-12), ValidationError);
    CHECK_THROWS_AS(verify_sector(make_linear(1.0), 0.0, 100, 1e-12), ValidationError);
}

TEST_CASE("coupling inequality residual is nonpositive for genuine sectors") {
    // linear: tilde_k vanishes identically, residual strictly below zero off origin
    CHECK(check_lemma1(make_linear(2.0), 100000, 10.0) <= 0.0);
    // nonlinear couplings: guaranteed by the sector bounds, sampled here
    CHECK(check_lemma1(make_linear_plus_arctan(3.0), 100000, 10.0) <= 1e-12);
    CHECK(check_lemma1(make_saturated_linear(2.0, 1.5), 100000, 10.0) <= 1e-12);
    // wide range, as in the acceptance run
    for (const SectorCoupling& c : registered())
        CHECK(check_lemma1(c, 100000, 1e3) <= 1e-12);
}

TEST_CASE("coupling inequality at the origin") {
    for (const SectorCoupling& c : registered()) {
        const double lhs = std::abs(tilde_k(c, 0.0) + tilde_k(c, 0.0));
        CHECK(lhs == 0.0);
    }
}

TEST_CASE("check_lemma1 preconditions") {
    CHECK_THROWS_AS(check_lemma1(make_linear(1.0), 0, 10.0), ValidationError);
    CHECK_THROWS_AS(check_lemma1(make_linear(1.0), 10, -1.0), ValidationError);
}
