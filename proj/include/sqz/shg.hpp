#pragma once

#include <vector>

#include "sqz/params.hpp"
#include "sqz/units.hpp"

namespace sqz {

/// Steady state of the doubling cavity for one fundamental input power.
struct ShgOperatingPoint {
    Power input_power;
    Fraction efficiency;       // P_2w / P_in
    Power shg_power;           // efficiency * input_power
    Power circulating_power;   // sqrt(shg_power / e_nl)
    Power absorbed_uv_power;   // gamma_abs * P_c^2
    double residual = 0.0;     // sqrt(eta) - rhs(eta) at the returned eta
};

struct ShgSolverSettings {
    double eta_upper = 1.0 - 1e-9;
    double eta_tolerance = 1e-12;   // bracket width on eta
    double residual_tolerance = 1e-10;  // relative to max(1, rhs)
    int max_iterations = 200;
};

/// Right-hand side of the implicit enhancement-cavity equation,
///
///   sqrt(eta) = 4 T1 sqrt(E P) / [2 - sqrt(1 - T1) (2 - L1 - Gamma sqrt(eta P / E))]^2
///
/// evaluated at a trial efficiency.
double shg_rhs(const ShgParams& params, double input_power, double eta);

/// Solves for the doubling efficiency by bisection on rhs(eta)^2 - eta.
/// Throws NumericalFailure when [0, eta_upper] does not bracket a root or the
/// iteration cap is hit.
ShgOperatingPoint shg_efficiency(const ShgParams& params, Power input_power,
                                 const ShgSolverSettings& settings = {});

Power shg_output_power(const ShgParams& params, Power input_power);

/// Intracavity fundamental power from P_2w = E_nl P_c^2.
Power circulating_power(const ShgParams& params, Power shg_power);

Power absorbed_uv_power(const ShgParams& params, Power circulating);

/// P_2w / P_in^2, in 1/W.
double normalized_conversion_efficiency(Power input_power, Power shg_power);

/// Uniform grid of input powers, both ends included. A grid point that fails
/// to solve aborts the sweep; the rethrown NumericalFailure names its power.
std::vector<ShgOperatingPoint> shg_sweep(const ShgParams& params, Power p_min, Power p_max,
                                         int steps);

}  // namespace sqz
