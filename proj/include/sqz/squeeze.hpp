#pragma once

#include <vector>

#include "sqz/opo.hpp"
#include "sqz/params.hpp"
#include "sqz/units.hpp"

namespace sqz {

/// Detected quadrature variances relative to shot noise (= 1).
struct QuadratureNoise {
    double r_minus = 1.0;
    double r_plus = 1.0;
    double r_minus_db = 0.0;
    double r_plus_db = 0.0;
    double pump_parameter = 0.0;
    double detuning = 0.0;
    Fraction total_efficiency;
};

struct EfficiencyBudget {
    Fraction photodiode;
    Fraction visibility_squared;
    Fraction propagation;
    Fraction escape;
    Fraction total;
};

struct PumpNoiseRow {
    Power pump_power;
    QuadratureNoise noise;
};

struct SpectrumRow {
    double frequency = 0.0;  // Hz
    QuadratureNoise noise;
};

/// eta* eps^2 zeta rho.
EfficiencyBudget total_detection_efficiency(const DetectionChain& chain, Fraction escape);

/// R(-/+) = 1 -/+ eta 4x / ((1 +/- x)^2 + 4 Omega^2).
/// Throws ThresholdError for x >= 1.
QuadratureNoise noise_variances(double pump_parameter, double detuning, Fraction total_efficiency);

/// Prediction that uses a measured gain for x and the induced-loss law for
/// the escape efficiency and detuning at the given pump power.
QuadratureNoise predict_from_measured_gain(const OpoParams& opo, const DetectionChain& chain,
                                           double measured_gain, Power pump_power,
                                           double analysis_frequency);

/// Noise at one pump power. Ideal mode: x against the base-loss threshold,
/// rho and Omega from l2_base. Corrected mode: x from gain_with_induced_loss,
/// rho and Omega from the induced loss at that power.
QuadratureNoise noise_at_pump(const OpoParams& opo, const DetectionChain& chain, Power pump_power,
                              double analysis_frequency, Mode mode);

std::vector<PumpNoiseRow> squeeze_power_sweep(const OpoParams& opo, const DetectionChain& chain,
                                              Power p_min, Power p_max, int steps,
                                              double analysis_frequency, Mode mode);

/// Sideband spectrum at fixed pump power; Omega is recomputed per frequency.
std::vector<SpectrumRow> frequency_spectrum(const OpoParams& opo, const DetectionChain& chain,
                                            Power pump_power, double f_min, double f_max,
                                            int steps, bool log_spacing, Mode mode);

}  // namespace sqz
