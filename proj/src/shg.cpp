#include "sqz/shg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sqz/errors.hpp"
#include "sqz/grid.hpp"

namespace sqz {

double shg_rhs(const ShgParams& p, double input_power, double eta) {
    const double s = std::sqrt(1.0 - p.t1);
    const double bracket =
        2.0 - s * (2.0 - p.l1 - p.gamma() * std::sqrt(eta * input_power / p.e_nl));
    return 4.0 * p.t1 * std::sqrt(p.e_nl * input_power) / (bracket * bracket);
}

ShgOperatingPoint shg_efficiency(const ShgParams& params, Power input_power,
                                 const ShgSolverSettings& settings) {
    require_valid(params);
    const double pin = input_power.value();

    ShgOperatingPoint op;
    op.input_power = input_power;
    if (pin == 0.0) return op;

    // g is strictly decreasing in eta: the bracket in the denominator grows
    // with eta, so rhs falls while eta rises.
    auto g = [&](double eta) {
        const double r = shg_rhs(params, pin, eta);
        return r * r - eta;
    };

    double lo = 0.0;
    double hi = settings.eta_upper;
    const double g_lo = g(lo);
    const double g_hi = g(hi);
    if (!(g_lo > 0.0 && g_hi < 0.0)) {
        std::ostringstream msg;
        msg << "shg_efficiency: no root of the implicit efficiency equation on [" << lo << ", "
            << hi << "] at P_in = " << pin << " W (g(lo) = " << g_lo << ", g(hi) = " << g_hi
            << ")";
        throw NumericalFailure(msg.str(), lo, hi);
    }

    auto converged = [&](double eta) {
        const double r = shg_rhs(params, pin, eta);
        return std::abs(std::sqrt(eta) - r) <= settings.residual_tolerance * std::max(1.0, r);
    };

    double eta = 0.5 * (lo + hi);
    bool done = false;
    for (int it = 0; it < settings.max_iterations; ++it) {
        eta = 0.5 * (lo + hi);
        if (hi - lo <= settings.eta_tolerance && converged(eta)) {
            done = true;
            break;
        }
        if (g(eta) > 0.0) {
            lo = eta;
        } else {
            hi = eta;
        }
    }
    if (!done) {
        std::ostringstream msg;
        msg << "shg_efficiency: bisection did not converge in " << settings.max_iterations
            << " iterations at P_in = " << pin << " W";
        throw NumericalFailure(msg.str(), lo, hi);
    }

    op.efficiency = Fraction(eta);
    op.shg_power = Power(eta * pin);
    op.circulating_power = circulating_power(params, op.shg_power);
    op.absorbed_uv_power = absorbed_uv_power(params, op.circulating_power);
    op.residual = std::sqrt(eta) - shg_rhs(params, pin, eta);
    return op;
}

Power shg_output_power(const ShgParams& params, Power input_power) {
    return shg_efficiency(params, input_power).shg_power;
}

Power circulating_power(const ShgParams& params, Power shg_power) {
    require_valid(params);
    return Power(std::sqrt(shg_power.value() / params.e_nl));
}

Power absorbed_uv_power(const ShgParams& params, Power circulating) {
    require_valid(params);
    const double pc = circulating.value();
    return Power(params.gamma_abs() * pc * pc);
}

double normalized_conversion_efficiency(Power input_power, Power shg_power) {
    const double pin = input_power.value();
    if (pin <= 0.0) {
        throw DomainError("normalized_conversion_efficiency: input power must be > 0");
    }
    return shg_power.value() / (pin * pin);
}

std::vector<ShgOperatingPoint> shg_sweep(const ShgParams& params, Power p_min, Power p_max,
                                         int steps) {
    if (steps < 2) throw DomainError("shg_sweep: steps must be >= 2");
    if (!(p_min < p_max)) throw DomainError("shg_sweep: p_min must be < p_max");
    require_valid(params);

    std::vector<ShgOperatingPoint> rows;
    rows.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        const double p = grid_point(p_min.value(), p_max.value(), steps, i);
        try {
            rows.push_back(shg_efficiency(params, Power(p)));
        } catch (const NumericalFailure& e) {
            std::ostringstream msg;
            msg << "shg_sweep: grid point P_in = " << p << " W failed: " << e.what();
            throw NumericalFailure(msg.str(), e.bracket_lo(), e.bracket_hi());
        }
    }
    return rows;
}

}  // namespace sqz
