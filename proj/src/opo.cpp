#include "sqz/opo.hpp"

#include <cmath>
#include <sstream>

#include "sqz/errors.hpp"
#include "sqz/grid.hpp"

namespace sqz {

Power opo_threshold(const OpoParams& params, std::optional<Fraction> l2_override) {
    require_valid(params);
    const double l2 = l2_override ? l2_override->value() : params.l2_base;
    if (l2 >= 1.0) throw DomainError("opo_threshold: L2 override must be < 1");
    const double total = params.t2 + l2;
    return Power(total * total / (4.0 * params.e_nl_opo) / params.alpha);
}

GainPoint parametric_gain(Power pump_power, Power threshold) {
    const double p = pump_power.value();
    const double pth = threshold.value();
    if (pth <= 0.0) throw DomainError("parametric_gain: threshold must be > 0");
    if (p >= pth) {
        std::ostringstream msg;
        msg << "parametric_gain: pump power " << p << " W is at or above threshold " << pth
            << " W";
        throw ThresholdError(msg.str(), p, pth);
    }
    const double x = std::sqrt(p / pth);
    const double one_minus = 1.0 - x;
    return GainPoint{pump_power, 1.0 / (one_minus * one_minus), x, threshold};
}

double pump_parameter_from_gain(double gain) {
    if (!std::isfinite(gain) || gain < 1.0) {
        std::ostringstream msg;
        msg << "pump_parameter_from_gain: gain must be finite and >= 1, got " << gain;
        throw DomainError(msg.str());
    }
    return 1.0 - 1.0 / std::sqrt(gain);
}

Fraction induced_loss(const OpoParams& params, Power pump_power) {
    require_valid(params);
    const double loss = params.loss_intercept + params.loss_slope * pump_power.value();
    if (!(loss < 1.0)) {
        std::ostringstream msg;
        msg << "induced_loss: loss " << loss << " at " << pump_power.value()
            << " W is unphysical (>= 1)";
        throw DomainError(msg.str());
    }
    return Fraction(loss);
}

Fraction loss_from_finesse(double finesse) {
    if (!std::isfinite(finesse) || finesse <= constants::two_pi) {
        std::ostringstream msg;
        msg << "loss_from_finesse: finesse must exceed 2 pi, got " << finesse;
        throw DomainError(msg.str());
    }
    return Fraction(constants::two_pi / finesse);
}

Fraction escape_efficiency(Fraction t2, Fraction l2) {
    if (t2.value() <= 0.0) throw DomainError("escape_efficiency: t2 must be > 0");
    return Fraction(t2.value() / (t2.value() + l2.value()));
}

CavityRates cavity_rates(Fraction t2, Fraction l2, double cavity_length,
                         double analysis_frequency) {
    if (!std::isfinite(cavity_length) || cavity_length <= 0.0) {
        throw DomainError("cavity_rates: cavity length must be > 0");
    }
    if (!std::isfinite(analysis_frequency) || analysis_frequency < 0.0) {
        throw DomainError("cavity_rates: analysis frequency must be >= 0");
    }
    const double total_loss = t2.value() + l2.value();
    if (total_loss <= 0.0) throw DomainError("cavity_rates: T2 + L2 must be > 0");
    const double gamma = constants::speed_of_light * total_loss / cavity_length;
    return CavityRates{gamma, constants::two_pi * analysis_frequency / gamma, analysis_frequency};
}

Power effective_threshold(const OpoParams& params, Power pump_power) {
    return opo_threshold(params, induced_loss(params, pump_power));
}

GainPoint gain_with_induced_loss(const OpoParams& params, Power pump_power) {
    return parametric_gain(pump_power, effective_threshold(params, pump_power));
}

std::vector<GainPoint> gain_sweep(const OpoParams& params, Power p_min, Power p_max, int steps,
                                  Mode mode) {
    if (steps < 2) throw DomainError("gain_sweep: steps must be >= 2");
    if (!(p_min < p_max)) throw DomainError("gain_sweep: p_min must be < p_max");
    require_valid(params);

    const Power ideal_threshold = opo_threshold(params);
    std::vector<GainPoint> rows;
    rows.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const Power p(grid_point(p_min.value(), p_max.value(), steps, i));
        try {
            rows.push_back(mode == Mode::ideal ? parametric_gain(p, ideal_threshold)
                                               : gain_with_induced_loss(params, p));
        } catch (const ThresholdError& e) {
            std::ostringstream msg;
            msg << "gain_sweep: grid power " << p.value() << " W is at or above threshold "
                << e.threshold() << " W";
            throw ThresholdError(msg.str(), e.pump_power(), e.threshold());
        }
    }
    return rows;
}

}  // namespace sqz
