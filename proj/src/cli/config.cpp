#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "paper_defaults.hpp"
#include "sqz/cli.hpp"

namespace sqz::cli {
namespace {

using nlohmann::json;

// Walks one object section, collecting problems instead of stopping at the
// first one.
class Section {
public:
    Section(const json& parent, std::string path, std::vector<std::string>& problems)
        : path_(std::move(path)), problems_(problems) {
        if (!parent.contains(path_)) {
            problems_.push_back(path_ + ": required section is missing");
            return;
        }
        node_ = &parent.at(path_);
        if (!node_->is_object()) {
            problems_.push_back(path_ + ": must be an object");
            node_ = nullptr;
        }
    }

    void number(const char* key, double& target) {
        seen_.push_back(key);
        if (node_ == nullptr) return;
        if (!node_->contains(key)) {
            problems_.push_back(path_ + "." + key + ": required key is missing");
            return;
        }
        const json& v = node_->at(key);
        if (!v.is_number()) {
            problems_.push_back(path_ + "." + key + ": must be a number");
            return;
        }
        target = v.get<double>();
    }

    void reject_unknown() {
        if (node_ == nullptr) return;
        for (const auto& [key, _] : node_->items()) {
            if (std::find(seen_.begin(), seen_.end(), key) == seen_.end()) {
                problems_.push_back(path_ + "." + key + ": unknown key");
            }
        }
    }

private:
    std::string path_;
    std::vector<std::string>& problems_;
    const json* node_ = nullptr;
    std::vector<std::string> seen_;
};

void append_violations(const std::string& prefix, const std::vector<Violation>& vs,
                       std::vector<std::string>& problems) {
    for (const auto& v : vs) {
        std::ostringstream line;
        line << prefix << '.' << v.field << ": " << v.rule << " (got " << v.value << ")";
        problems.push_back(line.str());
    }
}

json to_json(const Config& cfg) {
    return json{
        {"shg",
         {{"t1", cfg.shg.t1},
          {"l1", cfg.shg.l1},
          {"e_nl", cfg.shg.e_nl},
          {"gamma_abs_ratio", cfg.shg.gamma_abs_ratio}}},
        {"opo",
         {{"t2", cfg.opo.t2},
          {"l2_base", cfg.opo.l2_base},
          {"e_nl_opo", cfg.opo.e_nl_opo},
          {"alpha", cfg.opo.alpha},
          {"cavity_length", cfg.opo.cavity_length},
          {"loss_intercept", cfg.opo.loss_intercept},
          {"loss_slope", cfg.opo.loss_slope}}},
        {"detection",
         {{"quantum_efficiency", cfg.detection.quantum_efficiency},
          {"visibility", cfg.detection.visibility},
          {"propagation", cfg.detection.propagation}}},
        {"analysis_frequency", cfg.analysis_frequency},
    };
}

}  // namespace

std::string_view paper_defaults_json() { return detail::paper_defaults_json; }

Config parse_config_text(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const bool blank = text.find_first_not_of(" \t\r\n") == std::string_view::npos;
        if (blank) {
            std::vector<std::string> problems{
                "shg: required section is missing", "opo: required section is missing",
                "detection: required section is missing"};
            throw ConfigError("config is empty", std::move(problems));
        }
        throw ConfigError("config is not valid JSON", {std::string("<root>: ") + e.what()});
    }
    if (!doc.is_object()) {
        throw ConfigError("config must be a JSON object", {"<root>: must be an object"});
    }

    Config cfg;
    std::vector<std::string> problems;

    Section shg(doc, "shg", problems);
    shg.number("t1", cfg.shg.t1);
    shg.number("l1", cfg.shg.l1);
    shg.number("e_nl", cfg.shg.e_nl);
    shg.number("gamma_abs_ratio", cfg.shg.gamma_abs_ratio);
    shg.reject_unknown();

    Section opo(doc, "opo", problems);
    opo.number("t2", cfg.opo.t2);
    opo.number("l2_base", cfg.opo.l2_base);
    opo.number("e_nl_opo", cfg.opo.e_nl_opo);
    opo.number("alpha", cfg.opo.alpha);
    opo.number("cavity_length", cfg.opo.cavity_length);
    opo.number("loss_intercept", cfg.opo.loss_intercept);
    opo.number("loss_slope", cfg.opo.loss_slope);
    opo.reject_unknown();

    Section det(doc, "detection", problems);
    det.number("quantum_efficiency", cfg.detection.quantum_efficiency);
    det.number("visibility", cfg.detection.visibility);
    det.number("propagation", cfg.detection.propagation);
    det.reject_unknown();

    if (doc.contains("analysis_frequency")) {
        const json& f = doc.at("analysis_frequency");
        if (!f.is_number()) {
            problems.push_back("analysis_frequency: must be a number");
        } else {
            cfg.analysis_frequency = f.get<double>();
            if (!(cfg.analysis_frequency >= 0.0)) {
                problems.push_back("analysis_frequency: must be >= 0");
            }
        }
    }
    for (const auto& [key, _] : doc.items()) {
        if (key != "shg" && key != "opo" && key != "detection" && key != "analysis_frequency") {
            problems.push_back(key + ": unknown key");
        }
    }

    if (problems.empty()) {
        append_violations("shg", validate(cfg.shg), problems);
        append_violations("opo", validate(cfg.opo), problems);
        append_violations("detection", validate(cfg.detection), problems);
    }
    if (!problems.empty()) throw ConfigError("config failed schema validation", std::move(problems));
    return cfg;
}

Config parse_config(const std::string& path) {
    namespace fs = std::filesystem;
    if (path == paper_defaults_name && !fs::exists(path)) {
        return parse_config_text(paper_defaults_json());
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path + "'", {path + ": unreadable"});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string config_digest(const Config& cfg) {
    const std::string canonical = to_json(cfg).dump();
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : canonical) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

}  // namespace sqz::cli
