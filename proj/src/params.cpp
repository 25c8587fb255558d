#include "sqz/params.hpp"

#include <cmath>
#include <sstream>

#include "sqz/errors.hpp"

namespace sqz {
namespace {

class Checker {
public:
    void finite(const char* field, double v) {
        if (!std::isfinite(v)) add(field, v, "must be finite");
    }
    void open_unit(const char* field, double v) {  // (0, 1)
        if (!std::isfinite(v)) return finite(field, v);
        if (!(v > 0.0 && v < 1.0)) add(field, v, "must lie in (0, 1)");
    }
    void half_open_unit(const char* field, double v) {  // [0, 1)
        if (!std::isfinite(v)) return finite(field, v);
        if (!(v >= 0.0 && v < 1.0)) add(field, v, "must lie in [0, 1)");
    }
    void unit_closed_above(const char* field, double v) {  // (0, 1]
        if (!std::isfinite(v)) return finite(field, v);
        if (!(v > 0.0 && v <= 1.0)) add(field, v, "must lie in (0, 1]");
    }
    void positive(const char* field, double v) {
        if (!std::isfinite(v)) return finite(field, v);
        if (!(v > 0.0)) add(field, v, "must be > 0");
    }
    void non_negative(const char* field, double v) {
        if (!std::isfinite(v)) return finite(field, v);
        if (!(v >= 0.0)) add(field, v, "must be >= 0");
    }
    void add(const char* field, double v, const char* rule) { out_.push_back({field, v, rule}); }

    std::vector<Violation> take() { return std::move(out_); }

private:
    std::vector<Violation> out_;
};

template <typename Record>
void throw_if_invalid(const Record& r, const char* what) {
    auto violations = validate(r);
    if (violations.empty()) return;
    std::ostringstream msg;
    msg << "invalid " << what << ":";
    for (const auto& v : violations) msg << ' ' << v.field << '=' << v.value << " (" << v.rule << ')';
    throw DomainError(msg.str());
}

}  // namespace

std::vector<Violation> validate(const ShgParams& p) {
    Checker c;
    c.open_unit("t1", p.t1);
    c.half_open_unit("l1", p.l1);
    c.positive("e_nl", p.e_nl);
    c.non_negative("gamma_abs_ratio", p.gamma_abs_ratio);
    return c.take();
}

std::vector<Violation> validate(const OpoParams& p) {
    Checker c;
    c.open_unit("t2", p.t2);
    c.half_open_unit("l2_base", p.l2_base);
    c.positive("e_nl_opo", p.e_nl_opo);
    c.unit_closed_above("alpha", p.alpha);
    c.positive("cavity_length", p.cavity_length);
    c.half_open_unit("loss_intercept", p.loss_intercept);
    c.non_negative("loss_slope", p.loss_slope);
    return c.take();
}

std::vector<Violation> validate(const DetectionChain& d) {
    Checker c;
    c.unit_closed_above("quantum_efficiency", d.quantum_efficiency);
    c.unit_closed_above("visibility", d.visibility);
    c.unit_closed_above("propagation", d.propagation);
    return c.take();
}

void require_valid(const ShgParams& p) { throw_if_invalid(p, "ShgParams"); }
void require_valid(const OpoParams& p) { throw_if_invalid(p, "OpoParams"); }
void require_valid(const DetectionChain& d) { throw_if_invalid(d, "DetectionChain"); }

ShgParams reference_shg() {
    return ShgParams{.t1 = 0.10, .l1 = 0.015, .e_nl = 0.023, .gamma_abs_ratio = 0.22};
}

OpoParams reference_opo() {
    return OpoParams{.t2 = 0.115,
                     .l2_base = 0.004,
                     .e_nl_opo = 0.0185,
                     .alpha = 0.93,
                     .cavity_length = 0.6,
                     .loss_intercept = 0.00445,
                     .loss_slope = 0.06767};
}

DetectionChain reference_detection() {
    return DetectionChain{.quantum_efficiency = 0.94, .visibility = 0.997, .propagation = 0.99};
}

}  // namespace sqz
