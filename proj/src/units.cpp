#include "sqz/units.hpp"

#include <cmath>
#include <string>

#include "sqz/errors.hpp"

namespace sqz {

Power::Power(double watts) : watts_(watts) {
    if (!std::isfinite(watts) || watts < 0.0) {
        throw DomainError("power must be finite and non-negative, got " + std::to_string(watts));
    }
}

Fraction::Fraction(double v) : value_(v) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        throw DomainError("fraction must lie in [0, 1], got " + std::to_string(v));
    }
}

double db_from_linear(double ratio) {
    if (!std::isfinite(ratio) || ratio <= 0.0) {
        throw DomainError("db_from_linear: ratio must be finite and positive, got " +
                          std::to_string(ratio));
    }
    return 10.0 * std::log10(ratio);
}

double linear_from_db(double db) {
    if (!std::isfinite(db)) {
        throw DomainError("linear_from_db: value must be finite");
    }
    return std::pow(10.0, db / 10.0);
}

}  // namespace sqz
