#include <doctest.h>

#include <cmath>
#include <limits>

#include "sqz/errors.hpp"
#include "sqz/params.hpp"
#include "sqz/units.hpp"

using namespace sqz;

namespace {

bool has_violation(const std::vector<Violation>& vs, const std::string& field) {
    for (const auto& v : vs) {
        if (v.field == field) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("db_from_linear") {
    CHECK(db_from_linear(1.0) == 0.0);
    CHECK(db_from_linear(10.0) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(db_from_linear(0.202617) == doctest::Approx(-6.934).epsilon(1e-4));

    CHECK_THROWS_AS(db_from_linear(0.0), DomainError);
    CHECK_THROWS_AS(db_from_linear(-1.0), DomainError);
    CHECK_THROWS_AS(db_from_linear(std::numeric_limits<double>::infinity()), DomainError);
    CHECK_THROWS_AS(db_from_linear(std::nan("")), DomainError);
}

TEST_CASE("linear_from_db") {
    CHECK(linear_from_db(0.0) == 1.0);
    CHECK(linear_from_db(10.0) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(linear_from_db(-5.6) == doctest::Approx(0.27542).epsilon(1e-4));
    CHECK_THROWS_AS(linear_from_db(std::numeric_limits<double>::infinity()), DomainError);
    CHECK_THROWS_AS(linear_from_db(std::nan("")), DomainError);
}

TEST_CASE("dB round trip over twelve decades") {
    for (int i = 0; i <= 1200; ++i) {
        const double r = std::pow(10.0, -6.0 + 0.01 * i);
        const double back = linear_from_db(db_from_linear(r));
        REQUIRE(std::abs(back - r) <= 1e-12 * r);
    }
}

TEST_CASE("Power and Fraction reject out-of-range input") {
    CHECK(Power(0.0).value() == 0.0);
    CHECK(Power::milliwatts(84.0).value() == doctest::Approx(0.084));
    CHECK_THROWS_AS(Power(-1e-12), DomainError);
    CHECK_THROWS_AS(Power(std::nan("")), DomainError);
    CHECK_THROWS_AS(Power(std::numeric_limits<double>::infinity()), DomainError);

    CHECK(Fraction(0.0).value() == 0.0);
    CHECK(Fraction(1.0).value() == 1.0);
    CHECK_THROWS_AS(Fraction(1.0000001), DomainError);
    CHECK_THROWS_AS(Fraction(-0.1), DomainError);
    CHECK_THROWS_AS(Fraction(std::nan("")), DomainError);
}

TEST_CASE("reference parameter sets are valid") {
    const ShgParams shg = reference_shg();
    CHECK(shg.t1 == 0.10);
    CHECK(shg.l1 == 0.015);
    CHECK(shg.e_nl == 0.023);
    CHECK(shg.gamma_abs_ratio == 0.22);
    CHECK(shg.gamma() == doctest::Approx(1.22 * 0.023));
    CHECK(validate(shg).empty());
    CHECK(validate(reference_opo()).empty());
    CHECK(validate(reference_detection()).empty());
}

TEST_CASE("validate reports each violated field") {
    ShgParams shg = reference_shg();
    shg.t1 = 0.0;
    auto vs = validate(shg);
    REQUIRE(vs.size() == 1);
    CHECK(vs[0].field == "t1");
    CHECK(vs[0].value == 0.0);
    CHECK_THROWS_AS(require_valid(shg), DomainError);

    OpoParams opo = reference_opo();
    opo.alpha = 1.2;
    CHECK(has_violation(validate(opo), "alpha"));

    opo = reference_opo();
    opo.cavity_length = -0.6;
    opo.e_nl_opo = 0.0;
    opo.loss_slope = -1.0;
    vs = validate(opo);
    CHECK(vs.size() == 3);
    CHECK(has_violation(vs, "cavity_length"));
    CHECK(has_violation(vs, "e_nl_opo"));
    CHECK(has_violation(vs, "loss_slope"));

    DetectionChain det = reference_detection();
    det.visibility = 0.0;
    det.quantum_efficiency = std::nan("");
    vs = validate(det);
    CHECK(vs.size() == 2);
    CHECK(has_violation(vs, "visibility"));
    CHECK(has_violation(vs, "quantum_efficiency"));

    shg = reference_shg();
    shg.t1 = 1.0;
    shg.l1 = 1.0;
    shg.gamma_abs_ratio = -0.1;
    CHECK(validate(shg).size() == 3);
}
