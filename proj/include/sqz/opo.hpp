#pragma once

#include <optional>
#include <vector>

#include "sqz/params.hpp"
#include "sqz/units.hpp"

namespace sqz {

/// Parametric gain at one pump power. gain = 1/(1 - x)^2 with
/// x = sqrt(pump_power / threshold_used).
struct GainPoint {
    Power pump_power;
    double gain = 1.0;
    double pump_parameter = 0.0;
    Power threshold_used;
};

/// Cold-cavity decay rate and the normalized sideband frequency.
struct CavityRates {
    double decay_rate = 0.0;          // rad/s
    double detuning = 0.0;            // 2 pi f / decay_rate
    double analysis_frequency = 0.0;  // Hz
};

enum class Mode { ideal, corrected };

/// (T2 + L2)^2 / (4 E_nl) / alpha. L2 defaults to params.l2_base.
Power opo_threshold(const OpoParams& params, std::optional<Fraction> l2_override = std::nullopt);

/// Throws ThresholdError when pump_power >= threshold.
GainPoint parametric_gain(Power pump_power, Power threshold);

/// x = 1 - 1/sqrt(G).
double pump_parameter_from_gain(double gain);

/// Grey-tracking loss law L2(P) = intercept + slope * P.
Fraction induced_loss(const OpoParams& params, Power pump_power);

/// Round-trip loss 2 pi / F of a cavity closed by high reflectors.
Fraction loss_from_finesse(double finesse);

/// rho = T2 / (T2 + L2).
Fraction escape_efficiency(Fraction t2, Fraction l2);

/// decay_rate = c (T2 + L2) / l, detuning = 2 pi f / decay_rate.
CavityRates cavity_rates(Fraction t2, Fraction l2, double cavity_length,
                         double analysis_frequency);

/// Threshold with L2 taken from the induced-loss law at this pump power.
Power effective_threshold(const OpoParams& params, Power pump_power);

/// Gain against effective_threshold(params, pump_power).
GainPoint gain_with_induced_loss(const OpoParams& params, Power pump_power);

/// Uniform pump grid, both ends included; ideal rows use the base-loss
/// threshold, corrected rows the loss-raised one. The first grid point at or
/// above threshold aborts the sweep with a ThresholdError naming it.
std::vector<GainPoint> gain_sweep(const OpoParams& params, Power p_min, Power p_max, int steps,
                                  Mode mode);

}  // namespace sqz
