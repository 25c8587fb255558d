#include <chrono>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "sqz/cli.hpp"
#include "sqz/errors.hpp"
#include "sqz/opo.hpp"
#include "sqz/shg.hpp"
#include "sqz/squeeze.hpp"

namespace sqz::cli {
namespace {

// Accumulates CSV text; rows() excludes the header.
class CsvWriter {
public:
    explicit CsvWriter(std::initializer_list<std::string_view> header) {
        bool first = true;
        for (auto h : header) {
            if (!first) text_ += ',';
            text_ += h;
            first = false;
        }
        text_ += '\n';
    }

    void row(std::initializer_list<double> values) {
        bool first = true;
        for (double v : values) {
            if (!first) text_ += ',';
            text_ += format_number(v);
            first = false;
        }
        text_ += '\n';
        ++rows_;
    }

    void named(std::string_view name, double value) {
        text_ += name;
        text_ += ',';
        text_ += format_number(value);
        text_ += '\n';
        ++rows_;
    }

    void named(std::string_view name, std::string_view value) {
        text_ += name;
        text_ += ',';
        text_ += value;
        text_ += '\n';
        ++rows_;
    }

    const std::string& text() const noexcept { return text_; }
    int rows() const noexcept { return rows_; }

private:
    std::string text_;
    int rows_ = 0;
};

Mode parse_mode(const std::string& s) { return s == "corrected" ? Mode::corrected : Mode::ideal; }

struct Grid {
    double p_min = 0.0;
    double p_max = 0.0;
    int steps = 0;
};

struct Options {
    std::string config_path;
    Grid shg_grid{0.0, 0.24, 49};
    Grid gain_grid{0.0, 0.2, 101};
    Grid sweep_grid{0.0, 0.15, 151};
    int spectrum_steps = 100;
    std::string mode = "ideal";
    std::optional<double> pump;
    std::optional<double> gain;
    double f_min = 2e5;
    double f_max = 1e7;
    bool log = false;
    std::string data_path;
};

CsvWriter cmd_shg_curve(const Config& cfg, const Options& o) {
    CsvWriter csv{"p_in_w", "eta", "p_shg_w", "p_circ_w", "p_abs_w"};
    for (const auto& op : shg_sweep(cfg.shg, Power(o.shg_grid.p_min), Power(o.shg_grid.p_max),
                                       o.shg_grid.steps)) {
        csv.row({op.input_power.value(), op.efficiency.value(), op.shg_power.value(),
                 op.circulating_power.value(), op.absorbed_uv_power.value()});
    }
    return csv;
}

CsvWriter cmd_opo_threshold(const Config& cfg, const Options& o) {
    CsvWriter csv{"parameter", "value"};
    const Fraction t2(cfg.opo.t2);
    const Fraction l2(cfg.opo.l2_base);
    const auto rates = cavity_rates(t2, l2, cfg.opo.cavity_length, cfg.analysis_frequency);
    csv.named("threshold_w", opo_threshold(cfg.opo).value());
    csv.named("escape_efficiency", escape_efficiency(t2, l2).value());
    csv.named("decay_rate_per_s", rates.decay_rate);
    csv.named("omega", rates.detuning);
    if (o.pump) {
        const Power p(*o.pump);
        const Fraction l2p = induced_loss(cfg.opo, p);
        csv.named("induced_loss", l2p.value());
        csv.named("effective_threshold_w", effective_threshold(cfg.opo, p).value());
        csv.named("escape_efficiency_corrected", escape_efficiency(t2, l2p).value());
        csv.named("omega_corrected",
                  cavity_rates(t2, l2p, cfg.opo.cavity_length, cfg.analysis_frequency).detuning);
    }
    return csv;
}

CsvWriter cmd_gain_curve(const Config& cfg, const Options& o) {
    CsvWriter csv{"p_pump_w", "gain", "x", "threshold_w"};
    for (const auto& g :
         gain_sweep(cfg.opo, Power(o.gain_grid.p_min), Power(o.gain_grid.p_max),
                    o.gain_grid.steps, parse_mode(o.mode))) {
        csv.row({g.pump_power.value(), g.gain, g.pump_parameter, g.threshold_used.value()});
    }
    return csv;
}

CsvWriter cmd_squeeze_sweep(const Config& cfg, const Options& o) {
    CsvWriter csv{"p_pump_w", "r_minus_db", "r_plus_db", "x", "omega", "eta_total"};
    for (const auto& r : squeeze_power_sweep(
             cfg.opo, cfg.detection, Power(o.sweep_grid.p_min), Power(o.sweep_grid.p_max),
             o.sweep_grid.steps, cfg.analysis_frequency, parse_mode(o.mode))) {
        csv.row({r.pump_power.value(), r.noise.r_minus_db, r.noise.r_plus_db,
                 r.noise.pump_parameter, r.noise.detuning, r.noise.total_efficiency.value()});
    }
    return csv;
}

CsvWriter cmd_spectrum(const Config& cfg, const Options& o) {
    CsvWriter csv{"f_hz", "r_minus_db", "r_plus_db", "omega"};
    for (const auto& r : frequency_spectrum(cfg.opo, cfg.detection, Power(*o.pump), o.f_min,
                                            o.f_max, o.spectrum_steps, o.log, parse_mode(o.mode))) {
        csv.row({r.frequency, r.noise.r_minus_db, r.noise.r_plus_db, r.noise.detuning});
    }
    return csv;
}

CsvWriter cmd_budget(const Config& cfg, const Options& o) {
    const Power pump(*o.pump);
    const Fraction t2(cfg.opo.t2);
    Fraction l2;
    QuadratureNoise noise;
    if (o.gain) {
        l2 = induced_loss(cfg.opo, pump);
        noise = predict_from_measured_gain(cfg.opo, cfg.detection, *o.gain, pump,
                                           cfg.analysis_frequency);
    } else {
        const Mode mode = parse_mode(o.mode);
        l2 = mode == Mode::ideal ? Fraction(cfg.opo.l2_base) : induced_loss(cfg.opo, pump);
        noise = noise_at_pump(cfg.opo, cfg.detection, pump, cfg.analysis_frequency, mode);
    }
    const auto budget = total_detection_efficiency(cfg.detection, escape_efficiency(t2, l2));
    const double x = noise.pump_parameter;

    CsvWriter csv{"parameter", "value"};
    csv.named("l2", l2.value());
    csv.named("photodiode", budget.photodiode.value());
    csv.named("visibility_squared", budget.visibility_squared.value());
    csv.named("propagation", budget.propagation.value());
    csv.named("escape", budget.escape.value());
    csv.named("eta_total", budget.total.value());
    csv.named("gain", o.gain ? *o.gain : 1.0 / ((1.0 - x) * (1.0 - x)));
    csv.named("x", x);
    csv.named("omega", noise.detuning);
    csv.named("r_minus", noise.r_minus);
    csv.named("r_plus", noise.r_plus);
    csv.named("r_minus_db", noise.r_minus_db);
    csv.named("r_plus_db", noise.r_plus_db);
    return csv;
}

CsvWriter write_fit(const FitResult& fit) {
    CsvWriter csv{"parameter", "value"};
    for (const auto& [name, value] : fit.parameters) csv.named(name, value);
    csv.named("residual_norm", fit.residual_norm);
    csv.named("converged", fit.converged ? "true" : "false");
    return csv;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const auto started = std::chrono::steady_clock::now();

    CLI::App app{"Cavity SHG / sub-threshold OPO squeezing model and parameter estimation",
                 "sqzsim"};
    app.require_subcommand(1);
    Options o;

    auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", o.config_path, "JSON config, or 'paper-defaults'")->required();
    };
    auto add_grid = [&](CLI::App* sub, Grid& grid) {
        sub->add_option("--p-min", grid.p_min, "lowest power, W")->capture_default_str();
        sub->add_option("--p-max", grid.p_max, "highest power, W")->capture_default_str();
        sub->add_option("--steps", grid.steps, "grid points, ends included")->capture_default_str();
    };
    auto add_mode = [&](CLI::App* sub) {
        sub->add_option("--mode", o.mode, "ideal or corrected")
            ->check(CLI::IsMember({"ideal", "corrected"}))
            ->capture_default_str();
    };

    auto* shg = app.add_subcommand("shg-curve", "doubling efficiency versus input power");
    add_config(shg);
    add_grid(shg, o.shg_grid);

    auto* thr = app.add_subcommand("opo-threshold", "OPO threshold and cavity rates");
    add_config(thr);
    thr->add_option("--pump", o.pump, "pump power for loss-corrected values, W");

    auto* gain = app.add_subcommand("gain-curve", "parametric gain versus pump power");
    add_config(gain);
    add_grid(gain, o.gain_grid);
    add_mode(gain);

    auto* sweep = app.add_subcommand("squeeze-sweep", "squeezing versus pump power");
    add_config(sweep);
    add_grid(sweep, o.sweep_grid);
    add_mode(sweep);

    auto* spectrum = app.add_subcommand("spectrum", "squeezing versus sideband frequency");
    add_config(spectrum);
    add_mode(spectrum);
    spectrum->add_option("--pump", o.pump, "pump power, W")->required();
    spectrum->add_option("--f-min", o.f_min, "lowest frequency, Hz")->capture_default_str();
    spectrum->add_option("--f-max", o.f_max, "highest frequency, Hz")->capture_default_str();
    spectrum->add_option("--steps", o.spectrum_steps, "grid points")->capture_default_str();
    spectrum->add_flag("--log", o.log, "log-spaced frequencies");

    auto* budget = app.add_subcommand("budget", "detection efficiency budget and prediction");
    add_config(budget);
    add_mode(budget);
    budget->add_option("--pump", o.pump, "pump power, W")->required();
    budget->add_option("--gain", o.gain, "measured parametric gain");

    auto* fit = app.add_subcommand("fit", "estimate model parameters from data");
    fit->require_subcommand(1);
    auto* fit_loss = fit->add_subcommand("loss", "induced-loss law from (pump W, loss)");
    auto* fit_gain = fit->add_subcommand("gain", "threshold from (pump W, gain)");
    auto* fit_shg = fit->add_subcommand("shg", "e_nl and l1 from (input W, efficiency)");
    for (auto* sub : {fit_loss, fit_gain, fit_shg}) {
        add_config(sub);
        sub->add_option("--data", o.data_path, "two-column CSV with header")->required();
    }

    std::vector<const char*> argv{"sqzsim"};
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "sqzsim: " << e.what() << '\n';
        return exit_input_error;
    }

    std::string command;
    try {
        const Config cfg = parse_config(o.config_path);
        std::optional<CsvWriter> csv;
        if (shg->parsed()) {
            command = "shg-curve";
            csv = cmd_shg_curve(cfg, o);
        } else if (thr->parsed()) {
            command = "opo-threshold";
            csv = cmd_opo_threshold(cfg, o);
        } else if (gain->parsed()) {
            command = "gain-curve";
            csv = cmd_gain_curve(cfg, o);
        } else if (sweep->parsed()) {
            command = "squeeze-sweep";
            csv = cmd_squeeze_sweep(cfg, o);
        } else if (spectrum->parsed()) {
            command = "spectrum";
            csv = cmd_spectrum(cfg, o);
        } else if (budget->parsed()) {
            command = "budget";
            csv = cmd_budget(cfg, o);
        } else if (fit_loss->parsed()) {
            command = "fit loss";
            csv = write_fit(fit_loss_law(read_data_csv(o.data_path)));
        } else if (fit_gain->parsed()) {
            command = "fit gain";
            csv = write_fit(fit_threshold(read_data_csv(o.data_path)));
        } else {
            command = "fit shg";
            csv = write_fit(fit_shg_params(read_data_csv(o.data_path), cfg.shg.t1,
                                           cfg.shg.gamma_abs_ratio));
        }

        out << csv->text();
        out.flush();
        const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - started;
        err << "sqzsim: command=" << command << " config_digest=" << config_digest(cfg)
            << " rows=" << csv->rows() << " wall_time_s=" << wall.count() << '\n';
        return exit_ok;
    } catch (const ConfigError& e) {
        err << "sqzsim: " << e.what() << '\n';
        for (const auto& p : e.problems()) err << "  " << p << '\n';
        return exit_input_error;
    } catch (const ThresholdError& e) {
        err << "sqzsim: " << e.what() << '\n';
        return exit_numerical_failure;
    } catch (const NumericalFailure& e) {
        err << "sqzsim: " << e.what() << '\n';
        return exit_numerical_failure;
    } catch (const DomainError& e) {
        err << "sqzsim: " << e.what() << '\n';
        return exit_input_error;
    } catch (const FitError& e) {
        err << "sqzsim: " << e.what() << '\n';
        return exit_input_error;
    }
}

}  // namespace sqz::cli
