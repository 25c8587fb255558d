#include "sqz/estimation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "sqz/errors.hpp"
#include "sqz/opo.hpp"
#include "sqz/shg.hpp"

namespace sqz {
namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double rms(double sum_squares, std::size_t n) {
    return std::sqrt(sum_squares / static_cast<double>(n));
}

double gain_model(double pump, double p_th) {
    const double one_minus = 1.0 - std::sqrt(pump / p_th);
    return 1.0 / (one_minus * one_minus);
}

double threshold_cost(const DataSeries& data, double p_th) {
    double s = 0.0;
    for (const auto& r : data.rows()) {
        const double d = r.y - gain_model(r.x, p_th);
        s += d * d;
    }
    return std::isfinite(s) ? s : inf;
}

}  // namespace

DataSeries::DataSeries(std::vector<Row> rows) : rows_(std::move(rows)) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (!std::isfinite(rows_[i].x) || !std::isfinite(rows_[i].y)) {
            std::ostringstream msg;
            msg << "data row " << i + 1 << " holds a non-finite value";
            throw FitError(msg.str());
        }
        if (i > 0 && !(rows_[i].x > rows_[i - 1].x)) {
            std::ostringstream msg;
            msg << "data row " << i + 1 << ": abscissae must be strictly increasing ("
                << rows_[i - 1].x << " then " << rows_[i].x << ")";
            throw FitError(msg.str());
        }
    }
}

FitResult fit_loss_law(const DataSeries& data) {
    const auto& rows = data.rows();
    if (rows.size() < 2) throw FitError("fit_loss_law: need at least 2 rows");

    const double n = static_cast<double>(rows.size());
    double mx = 0.0;
    double my = 0.0;
    for (const auto& r : rows) {
        mx += r.x;
        my += r.y;
    }
    mx /= n;
    my /= n;

    double sxx = 0.0;
    double sxy = 0.0;
    for (const auto& r : rows) {
        sxx += (r.x - mx) * (r.x - mx);
        sxy += (r.x - mx) * (r.y - my);
    }
    if (!(sxx > 0.0)) throw FitError("fit_loss_law: abscissae are degenerate");

    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;

    double ss = 0.0;
    for (const auto& r : rows) {
        const double d = r.y - (intercept + slope * r.x);
        ss += d * d;
    }

    FitResult out;
    out.parameters = {{"intercept", intercept}, {"slope", slope}};
    out.residual_norm = rms(ss, rows.size());
    out.converged = true;
    out.evaluations = 1;
    return out;
}

FitResult fit_threshold(const DataSeries& data, const ThresholdFitSettings& settings) {
    const auto& rows = data.rows();
    if (rows.empty()) throw FitError("fit_threshold: no data");
    for (const auto& r : rows) {
        if (!(r.x > 0.0)) throw FitError("fit_threshold: pump powers must be positive");
    }
    if (std::none_of(rows.begin(), rows.end(), [](const auto& r) { return r.y > 1.0; })) {
        throw FitError("fit_threshold: no row with gain > 1; threshold is unconstrained");
    }

    FitResult out;
    if (rows.size() == 1) {
        const double x = pump_parameter_from_gain(rows[0].y);
        const double p_th = rows[0].x / (x * x);
        out.parameters = {{"p_th", p_th}};
        out.residual_norm = rms(threshold_cost(data, p_th), 1);
        out.converged = true;
        out.evaluations = 1;
        return out;
    }

    // Search in u = log(P_th); the feasible set is (log maxP, log(factor maxP)].
    const double p_max = rows.back().x;
    const double u_lo = std::log(p_max);
    const double u_hi = std::log(settings.upper_factor * p_max);
    const int n = settings.scan_points;
    auto u_at = [&](int k) { return u_lo + (u_hi - u_lo) * static_cast<double>(k) / n; };
    auto cost_u = [&](double u) {
        ++out.evaluations;
        return threshold_cost(data, std::exp(u));
    };

    int best_k = 1;
    double best_cost = inf;
    for (int k = 1; k <= n; ++k) {
        const double c = cost_u(u_at(k));
        if (c < best_cost) {
            best_cost = c;
            best_k = k;
        }
    }
    double best_u = u_at(best_k);

    double a = u_at(best_k - 1);
    double b = u_at(std::min(best_k + 1, n));
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = cost_u(c);
    double fd = cost_u(d);
    bool converged = false;
    for (int it = 0; it < settings.max_iterations; ++it) {
        if (b - a <= settings.tolerance * std::max(1.0, std::abs(b))) {
            converged = true;
            break;
        }
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = cost_u(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = cost_u(d);
        }
    }
    for (const auto& [u, f] : {std::pair{c, fc}, std::pair{d, fd}}) {
        if (f < best_cost) {
            best_cost = f;
            best_u = u;
        }
    }

    out.parameters = {{"p_th", std::exp(best_u)}};
    out.residual_norm = rms(best_cost, rows.size());
    out.converged = converged && std::isfinite(best_cost);
    return out;
}

double shg_fit_cost(const DataSeries& data, const ShgParams& trial) {
    if (!validate(trial).empty()) return inf;
    double s = 0.0;
    try {
        for (const auto& r : data.rows()) {
            const double eta = shg_efficiency(trial, Power(r.x)).efficiency.value();
            const double d = r.y - eta;
            s += d * d;
        }
    } catch (const NumericalFailure&) {
        return inf;
    }
    return s;
}

FitResult fit_shg_params(const DataSeries& data, double t1, double gamma_abs_ratio,
                         const ShgFitSettings& settings) {
    const auto& rows = data.rows();
    if (rows.size() < 3) throw FitError("fit_shg_params: need at least 3 rows for two parameters");
    for (const auto& r : rows) {
        if (r.x < 0.0) throw FitError("fit_shg_params: input powers must be >= 0");
    }
    {
        ShgParams probe{t1, 0.0, 1.0, gamma_abs_ratio};
        require_valid(probe);
    }

    FitResult out;
    const double le_lo = std::log(settings.e_nl_min);
    const double le_hi = std::log(settings.e_nl_max);

    // Normalized coordinates: q[0] in [0,1] maps log(e_nl), q[1] maps l1.
    using Point = std::array<double, 2>;
    auto to_params = [&](const Point& q) {
        return ShgParams{t1, settings.l1_min + q[1] * (settings.l1_max - settings.l1_min),
                         std::exp(le_lo + q[0] * (le_hi - le_lo)), gamma_abs_ratio};
    };
    auto cost = [&](const Point& q) {
        ++out.evaluations;
        if (q[0] < 0.0 || q[0] > 1.0 || q[1] < 0.0 || q[1] > 1.0) return inf;
        return shg_fit_cost(data, to_params(q));
    };

    const int ne = settings.scan_e_nl;
    const int nl = settings.scan_l1;
    Point best{0.0, 0.0};
    double best_cost = inf;
    for (int i = 0; i < ne; ++i) {
        for (int j = 0; j < nl; ++j) {
            const Point q{static_cast<double>(i) / (ne - 1), static_cast<double>(j) / (nl - 1)};
            const double c = cost(q);
            if (c < best_cost) {
                best_cost = c;
                best = q;
            }
        }
    }
    if (!std::isfinite(best_cost)) {
        out.parameters = {{"e_nl", to_params(best).e_nl}, {"l1", to_params(best).l1}};
        out.residual_norm = inf;
        out.converged = false;
        return out;
    }

    // Nelder-Mead from the best scan node, initial edges one scan cell long
    // and pointing into the box.
    const std::array<double, 2> cell{1.0 / (ne - 1), 1.0 / (nl - 1)};
    std::array<Point, 3> simplex{best, best, best};
    for (int k = 0; k < 2; ++k) {
        simplex[k + 1][k] += (best[k] + cell[k] <= 1.0) ? cell[k] : -cell[k];
    }
    std::array<double, 3> f{best_cost, cost(simplex[1]), cost(simplex[2])};

    auto combine = [](const Point& a, const Point& b, double t) {
        return Point{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
    };

    bool converged = false;
    while (out.evaluations < settings.max_evaluations) {
        std::array<int, 3> idx{0, 1, 2};
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return f[a] < f[b]; });
        simplex = {simplex[idx[0]], simplex[idx[1]], simplex[idx[2]]};
        f = {f[idx[0]], f[idx[1]], f[idx[2]]};

        double size = 0.0;
        for (int k = 1; k < 3; ++k) {
            size = std::max({size, std::abs(simplex[k][0] - simplex[0][0]),
                             std::abs(simplex[k][1] - simplex[0][1])});
        }
        if (size <= 1e-10 && f[2] - f[0] <= settings.tolerance) {
            converged = true;
            break;
        }

        const Point centroid = combine(simplex[0], simplex[1], 0.5);
        const Point reflected = combine(centroid, simplex[2], -1.0);
        const double fr = cost(reflected);
        if (fr < f[0]) {
            const Point expanded = combine(centroid, simplex[2], -2.0);
            const double fe = cost(expanded);
            if (fe < fr) {
                simplex[2] = expanded;
                f[2] = fe;
            } else {
                simplex[2] = reflected;
                f[2] = fr;
            }
        } else if (fr < f[1]) {
            simplex[2] = reflected;
            f[2] = fr;
        } else {
            const bool outside = fr < f[2];
            const Point contracted =
                outside ? combine(centroid, reflected, 0.5) : combine(centroid, simplex[2], 0.5);
            const double fcon = cost(contracted);
            if (fcon < (outside ? fr : f[2])) {
                simplex[2] = contracted;
                f[2] = fcon;
            } else {
                for (int k = 1; k < 3; ++k) {
                    simplex[k] = combine(simplex[0], simplex[k], 0.5);
                    f[k] = cost(simplex[k]);
                }
            }
        }
    }

    for (int k = 0; k < 3; ++k) {
        if (f[k] < best_cost) {
            best_cost = f[k];
            best = simplex[k];
        }
    }

    const ShgParams fitted = to_params(best);
    out.parameters = {{"e_nl", fitted.e_nl}, {"l1", fitted.l1}};
    out.residual_norm = rms(best_cost, rows.size());
    out.converged = converged;
    return out;
}

}  // namespace sqz
