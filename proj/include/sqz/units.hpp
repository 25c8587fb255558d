#pragma once

#include <compare>

namespace sqz {

namespace constants {
inline constexpr double speed_of_light = 299792458.0;  // m/s
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;
}  // namespace constants

/// Optical power in watts. Finite and non-negative.
class Power {
public:
    constexpr Power() = default;
    explicit Power(double watts);

    static Power watts(double w) { return Power(w); }
    static Power milliwatts(double mw) { return Power(mw * 1e-3); }

    constexpr double value() const noexcept { return watts_; }

    friend constexpr auto operator<=>(const Power&, const Power&) = default;

private:
    double watts_ = 0.0;
};

/// Dimensionless ratio in [0, 1].
class Fraction {
public:
    constexpr Fraction() = default;
    explicit Fraction(double v);

    constexpr double value() const noexcept { return value_; }

    friend constexpr auto operator<=>(const Fraction&, const Fraction&) = default;

private:
    double value_ = 0.0;
};

/// 10·log10(ratio) for a variance (power) ratio.
double db_from_linear(double ratio);

/// Inverse of db_from_linear.
double linear_from_db(double db);

}  // namespace sqz
