#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sqz/errors.hpp"
#include "sqz/shg.hpp"

using namespace sqz;

namespace {

double eta_oracle(const ShgParams& p, double pin) {
    return oracle::shg_eta_bisect_sqrt(p.t1, p.l1, p.e_nl, p.gamma_abs_ratio, pin);
}

// Regime in which the implicit equation has no root below unity: lossless,
// no absorption, pumped where rhs(1) = (1 + s) / (2 s) > 1 with s = sqrt(1 - T1).
ShgParams no_root_params() { return ShgParams{0.10, 0.0, 0.023, 0.0}; }
double no_root_power() {
    const double s = std::sqrt(0.9);
    const double y = (2.0 - 2.0 * s) / s;
    return y * y / 0.023;
}

}  // namespace

TEST_CASE("zero input gives the trivial operating point") {
    const auto op = shg_efficiency(reference_shg(), Power(0.0));
    CHECK(op.efficiency.value() == 0.0);
    CHECK(op.shg_power.value() == 0.0);
    CHECK(op.circulating_power.value() == 0.0);
    CHECK(op.absorbed_uv_power.value() == 0.0);
    CHECK(shg_output_power(reference_shg(), Power(0.0)).value() == 0.0);
}

TEST_CASE("small-signal limit") {
    const ShgParams p = reference_shg();
    const double ss = oracle::shg_small_signal(p.t1, p.l1, p.e_nl, 1e-6);
    CHECK(ss == doctest::Approx(1.97e-5).epsilon(2e-3));

    const auto op = shg_efficiency(p, Power(1e-6));
    CHECK(op.efficiency.value() == doctest::Approx(ss).epsilon(1e-3));
    CHECK(shg_output_power(p, Power(1e-6)).value() == doctest::Approx(1.97e-11).epsilon(2e-3));

    for (double pin = 1e-9; pin <= 1e-5; pin *= 1.5) {
        const double eta = shg_efficiency(p, Power(pin)).efficiency.value();
        REQUIRE(eta == doctest::Approx(oracle::shg_small_signal(p.t1, p.l1, p.e_nl, pin))
                           .epsilon(1e-3));
    }
}

TEST_CASE("model efficiency at 191 mW sits above the measured 58.1%") {
    const ShgParams p = reference_shg();
    const auto op = shg_efficiency(p, Power(0.191));
    // Frozen from the sqrt-variable bisection oracle.
    CHECK(op.efficiency.value() == doctest::Approx(0.6727745281).epsilon(1e-8));
    CHECK(op.efficiency.value() == doctest::Approx(eta_oracle(p, 0.191)).epsilon(1e-10));
    CHECK(op.efficiency.value() > 0.581);
    CHECK(shg_output_power(p, Power(0.191)).value() == doctest::Approx(0.1285).epsilon(1e-3));
}

TEST_CASE("solver residual and consistency invariants") {
    const ShgParams p = reference_shg();
    for (double pin = 1e-7; pin <= 0.5; pin *= 1.2) {
        const auto op = shg_efficiency(p, Power(pin));
        const double eta = op.efficiency.value();
        const double rhs = shg_rhs(p, pin, eta);
        REQUIRE(std::abs(std::sqrt(eta) - rhs) <= 1e-10 * std::max(1.0, rhs));
        REQUIRE(std::abs(op.residual) <= 1e-10 * std::max(1.0, rhs));
        REQUIRE(op.shg_power.value() == eta * pin);
        REQUIRE(op.circulating_power.value() == std::sqrt(eta * pin / p.e_nl));
        REQUIRE(eta == doctest::Approx(eta_oracle(p, pin)).epsilon(1e-9));
    }
}

TEST_CASE("absorption only removes power") {
    ShgParams with_abs = reference_shg();
    ShgParams no_abs = with_abs;
    no_abs.gamma_abs_ratio = 0.0;
    for (int i = 1; i <= 250; ++i) {
        const Power pin(1e-3 * i);
        REQUIRE(shg_efficiency(no_abs, pin).efficiency.value() >=
                shg_efficiency(with_abs, pin).efficiency.value());
    }
}

TEST_CASE("circulating and absorbed power") {
    const ShgParams p = reference_shg();
    CHECK(circulating_power(p, Power(0.0)).value() == 0.0);
    CHECK(circulating_power(p, Power(0.111)).value() == doctest::Approx(2.197).epsilon(2e-4));
    CHECK(circulating_power(p, Power(0.023)).value() == doctest::Approx(1.0).epsilon(1e-15));

    CHECK(absorbed_uv_power(p, Power(0.0)).value() == 0.0);
    CHECK(absorbed_uv_power(p, Power(2.197)).value() == doctest::Approx(0.0244).epsilon(2e-3));
    ShgParams no_abs = p;
    no_abs.gamma_abs_ratio = 0.0;
    CHECK(absorbed_uv_power(no_abs, Power(1.0)).value() == 0.0);
}

TEST_CASE("normalized conversion efficiency") {
    CHECK(normalized_conversion_efficiency(Power(0.191), Power(0.111)) ==
          doctest::Approx(3.04).epsilon(2e-3));
    CHECK(normalized_conversion_efficiency(Power(1.0), Power(1.0)) == 1.0);
    CHECK(normalized_conversion_efficiency(Power(0.1), Power(0.001)) ==
          doctest::Approx(0.1).epsilon(1e-14));
    CHECK_THROWS_AS(normalized_conversion_efficiency(Power(0.0), Power(0.1)), DomainError);
}

TEST_CASE("sweep") {
    const ShgParams p = reference_shg();

    SUBCASE("two-point grid") {
        const auto rows = shg_sweep(p, Power(0.0), Power(0.24), 2);
        REQUIRE(rows.size() == 2);
        CHECK(rows[0].efficiency.value() == 0.0);
        CHECK(rows[1].input_power.value() == 0.24);
        CHECK(rows[1].efficiency.value() == shg_efficiency(p, Power(0.24)).efficiency.value());
    }

    SUBCASE("endpoints equal pointwise results") {
        const auto rows = shg_sweep(p, Power(0.013), Power(0.177), 17);
        CHECK(rows.front().input_power.value() == 0.013);
        CHECK(rows.back().input_power.value() == 0.177);
        CHECK(rows.front().efficiency.value() == shg_efficiency(p, Power(0.013)).efficiency.value());
        CHECK(rows.back().efficiency.value() == shg_efficiency(p, Power(0.177)).efficiency.value());
    }

    SUBCASE("efficiency is non-decreasing at 1 mW resolution") {
        const auto rows = shg_sweep(p, Power(0.0), Power(0.25), 251);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            REQUIRE(rows[i].efficiency.value() >= rows[i - 1].efficiency.value());
            REQUIRE(rows[i].input_power.value() > rows[i - 1].input_power.value());
        }
    }

    SUBCASE("argument checks") {
        CHECK_THROWS_AS(shg_sweep(p, Power(0.0), Power(0.24), 1), DomainError);
        CHECK_THROWS_AS(shg_sweep(p, Power(0.24), Power(0.24), 5), DomainError);
    }
}

TEST_CASE("no admissible root is a numerical failure carrying the bracket") {
    const ShgParams p = no_root_params();
    const double pin = no_root_power();
    CHECK(shg_rhs(p, pin, 1.0) > 1.0);
    try {
        shg_efficiency(p, Power(pin));
        FAIL("expected NumericalFailure");
    } catch (const NumericalFailure& e) {
        REQUIRE(e.bracket_lo().has_value());
        REQUIRE(e.bracket_hi().has_value());
        CHECK(*e.bracket_lo() == 0.0);
        CHECK(*e.bracket_hi() == doctest::Approx(1.0 - 1e-9).epsilon(1e-15));
    }

    // Inside a sweep the failing power is named.
    try {
        shg_sweep(p, Power(0.0), Power(pin), 2);
        FAIL("expected NumericalFailure");
    } catch (const NumericalFailure& e) {
        CHECK(std::string(e.what()).find("shg_sweep: grid point") != std::string::npos);
    }
}

TEST_CASE("iteration cap is a numerical failure") {
    ShgSolverSettings s;
    s.max_iterations = 5;
    CHECK_THROWS_AS(shg_efficiency(reference_shg(), Power(0.1), s), NumericalFailure);
}

TEST_CASE("invalid parameters are rejected") {
    ShgParams p = reference_shg();
    p.e_nl = 0.0;
    CHECK_THROWS_AS(shg_efficiency(p, Power(0.1)), DomainError);
}
