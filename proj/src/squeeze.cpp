#include "sqz/squeeze.hpp"

#include <cmath>
#include <sstream>

#include "sqz/errors.hpp"
#include "sqz/grid.hpp"

namespace sqz {
namespace {

// Pump parameter, intracavity loss and efficiency budget for one pump power
// under the chosen model.
struct PumpState {
    double x;
    Fraction l2;
    EfficiencyBudget budget;
};

PumpState pump_state(const OpoParams& opo, const DetectionChain& chain, Power pump_power,
                     Mode mode) {
    const Fraction t2(opo.t2);
    if (mode == Mode::ideal) {
        const GainPoint g = parametric_gain(pump_power, opo_threshold(opo));
        const Fraction l2(opo.l2_base);
        return {g.pump_parameter, l2, total_detection_efficiency(chain, escape_efficiency(t2, l2))};
    }
    const GainPoint g = gain_with_induced_loss(opo, pump_power);
    const Fraction l2 = induced_loss(opo, pump_power);
    return {g.pump_parameter, l2, total_detection_efficiency(chain, escape_efficiency(t2, l2))};
}

}  // namespace

EfficiencyBudget total_detection_efficiency(const DetectionChain& chain, Fraction escape) {
    require_valid(chain);
    if (escape.value() <= 0.0) throw DomainError("total_detection_efficiency: escape must be > 0");
    const double v2 = chain.visibility * chain.visibility;
    const double total = chain.quantum_efficiency * v2 * chain.propagation * escape.value();
    return EfficiencyBudget{Fraction(chain.quantum_efficiency), Fraction(v2),
                            Fraction(chain.propagation), escape, Fraction(total)};
}

QuadratureNoise noise_variances(double x, double detuning, Fraction total_efficiency) {
    if (!std::isfinite(x) || x < 0.0) {
        throw DomainError("noise_variances: pump parameter must be finite and >= 0");
    }
    if (x >= 1.0) {
        std::ostringstream msg;
        msg << "noise_variances: pump parameter " << x << " is at or above threshold";
        throw ThresholdError(msg.str(), x * x, 1.0);
    }
    if (!std::isfinite(detuning) || detuning < 0.0) {
        throw DomainError("noise_variances: detuning must be finite and >= 0");
    }
    const double eta = total_efficiency.value();
    const double om2 = 4.0 * detuning * detuning;
    const double den_minus = (1.0 + x) * (1.0 + x) + om2;
    const double squeeze = eta * 4.0 * x / den_minus;
    const double anti = eta * 4.0 * x / ((1.0 - x) * (1.0 - x) + om2);

    QuadratureNoise n;
    // 1 - squeeze loses digits as squeeze -> 1 (x -> 1, eta -> 1); there the
    // numerator (1+x)^2 - 4 eta x + 4 Omega^2 is summed from non-negative terms.
    n.r_minus = squeeze <= 0.5
                    ? 1.0 - squeeze
                    : ((1.0 - x) * (1.0 - x) + 4.0 * x * (1.0 - eta) + om2) / den_minus;
    n.r_plus = 1.0 + anti;
    n.r_minus_db = db_from_linear(n.r_minus);
    n.r_plus_db = db_from_linear(n.r_plus);
    n.pump_parameter = x;
    n.detuning = detuning;
    n.total_efficiency = total_efficiency;
    return n;
}

QuadratureNoise predict_from_measured_gain(const OpoParams& opo, const DetectionChain& chain,
                                           double measured_gain, Power pump_power,
                                           double analysis_frequency) {
    require_valid(opo);
    const double x = pump_parameter_from_gain(measured_gain);
    const Fraction t2(opo.t2);
    const Fraction l2 = induced_loss(opo, pump_power);
    const Fraction rho = escape_efficiency(t2, l2);
    const CavityRates rates = cavity_rates(t2, l2, opo.cavity_length, analysis_frequency);
    return noise_variances(x, rates.detuning, total_detection_efficiency(chain, rho).total);
}

QuadratureNoise noise_at_pump(const OpoParams& opo, const DetectionChain& chain, Power pump_power,
                              double analysis_frequency, Mode mode) {
    const PumpState s = pump_state(opo, chain, pump_power, mode);
    const CavityRates rates =
        cavity_rates(Fraction(opo.t2), s.l2, opo.cavity_length, analysis_frequency);
    return noise_variances(s.x, rates.detuning, s.budget.total);
}

std::vector<PumpNoiseRow> squeeze_power_sweep(const OpoParams& opo, const DetectionChain& chain,
                                              Power p_min, Power p_max, int steps,
                                              double analysis_frequency, Mode mode) {
    if (steps < 2) throw DomainError("squeeze_power_sweep: steps must be >= 2");
    if (!(p_min < p_max)) throw DomainError("squeeze_power_sweep: p_min must be < p_max");
    require_valid(opo);
    require_valid(chain);

    std::vector<PumpNoiseRow> rows;
    rows.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const Power p(grid_point(p_min.value(), p_max.value(), steps, i));
        try {
            rows.push_back({p, noise_at_pump(opo, chain, p, analysis_frequency, mode)});
        } catch (const ThresholdError& e) {
            std::ostringstream msg;
            msg << "squeeze_power_sweep: grid power " << p.value()
                << " W is at or above threshold " << e.threshold() << " W";
            throw ThresholdError(msg.str(), e.pump_power(), e.threshold());
        }
    }
    return rows;
}

std::vector<SpectrumRow> frequency_spectrum(const OpoParams& opo, const DetectionChain& chain,
                                            Power pump_power, double f_min, double f_max,
                                            int steps, bool log_spacing, Mode mode) {
    if (steps < 2) throw DomainError("frequency_spectrum: steps must be >= 2");
    if (!std::isfinite(f_min) || !std::isfinite(f_max) || f_min < 0.0 || !(f_min < f_max)) {
        throw DomainError("frequency_spectrum: need 0 <= f_min < f_max");
    }
    if (log_spacing && f_min <= 0.0) {
        throw DomainError("frequency_spectrum: log spacing needs f_min > 0");
    }
    require_valid(opo);

    const PumpState s = pump_state(opo, chain, pump_power, mode);
    const Fraction t2(opo.t2);

    std::vector<SpectrumRow> rows;
    rows.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double f = log_spacing ? log_grid_point(f_min, f_max, steps, i)
                                     : grid_point(f_min, f_max, steps, i);
        const CavityRates rates = cavity_rates(t2, s.l2, opo.cavity_length, f);
        rows.push_back({f, noise_variances(s.x, rates.detuning, s.budget.total)});
    }
    return rows;
}

}  // namespace sqz
