#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sqz/params.hpp"

namespace sqz {

/// Measured (abscissa, ordinate) pairs. Abscissae strictly increasing, all
/// values finite; the meaning of each column depends on the fit.
class DataSeries {
public:
    struct Row {
        double x;
        double y;
    };

    DataSeries() = default;
    /// Throws FitError on non-finite values or non-increasing abscissae.
    explicit DataSeries(std::vector<Row> rows);

    const std::vector<Row>& rows() const noexcept { return rows_; }
    std::size_t size() const noexcept { return rows_.size(); }

private:
    std::vector<Row> rows_;
};

struct FitResult {
    std::map<std::string, double> parameters;
    double residual_norm = 0.0;  // RMS of the residuals
    bool converged = false;
    int evaluations = 0;

    double at(const std::string& name) const { return parameters.at(name); }
};

/// Ordinary least-squares line through (pump W, loss). Parameters
/// {intercept, slope}.
FitResult fit_loss_law(const DataSeries& data);

struct ThresholdFitSettings {
    double upper_factor = 100.0;  // P_th searched in (max P, upper_factor * max P]
    int scan_points = 400;        // log-spaced bracketing scan
    double tolerance = 1e-12;     // relative bracket width for golden section
    int max_iterations = 200;
};

/// Least-squares threshold from (pump W, gain) rows using the sub-threshold
/// gain law. Parameter {p_th}.
FitResult fit_threshold(const DataSeries& data, const ThresholdFitSettings& settings = {});

struct ShgFitSettings {
    double e_nl_min = 1e-4;
    double e_nl_max = 1.0;
    double l1_min = 0.0;
    double l1_max = 0.2;
    int scan_e_nl = 40;  // coarse scan, log-spaced in e_nl
    int scan_l1 = 41;    // coarse scan, linear in l1
    int max_evaluations = 4000;
    double tolerance = 1e-14;  // simplex cost spread
};

/// Estimates {e_nl, l1} from (input W, efficiency) rows with t1 and
/// gamma_abs_ratio held fixed. Coarse grid scan, then Nelder-Mead descent.
/// Trial points at which the efficiency solver fails cost +inf.
FitResult fit_shg_params(const DataSeries& data, double t1, double gamma_abs_ratio,
                         const ShgFitSettings& settings = {});

/// Sum of squared efficiency residuals for one trial (e_nl, l1); +inf when
/// the solver fails at any row.
double shg_fit_cost(const DataSeries& data, const ShgParams& trial);

}  // namespace sqz
