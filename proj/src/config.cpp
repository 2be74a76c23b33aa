#include "otto/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace otto::cli {

namespace {

using nlohmann::json;

model::ZConvention parse_zconv(const std::string& s) {
    if (s == "transport") return model::ZConvention::transport;
    if (s == "stroke_local") return model::ZConvention::stroke_local;
    throw ConfigError("z_convention must be \"transport\" or \"stroke_local\", got \"" + s + "\"");
}

std::vector<double> parse_tau_list(const json& v) {
    if (!v.is_array()) throw ConfigError("tau_list must be an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) throw ConfigError("tau_list must be an array of numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

void apply_json_key(RunConfig& cfg, const std::string& key, const json& v) {
    auto num = [&](double& field) {
        if (!v.is_number()) throw ConfigError("config key \"" + key + "\" must be a number");
        field = v.get<double>();
    };
    if (key == "g") num(cfg.g);
    else if (key == "b_h") num(cfg.b_h);
    else if (key == "b_l") num(cfg.b_l);
    else if (key == "omega") num(cfg.omega);
    else if (key == "k") num(cfg.k);
    else if (key == "kt_hot") num(cfg.kt_hot);
    else if (key == "tau") num(cfg.tau);
    else if (key == "steps") {
        if (!v.is_number_integer()) throw ConfigError("steps must be an integer");
        cfg.steps = v.get<int>();
    } else if (key == "meas_cost") {
        double m = 0.0;
        num(m);
        cfg.meas_cost = m;
    } else if (key == "z_convention") {
        if (!v.is_string()) throw ConfigError("z_convention must be a string");
        cfg.z_convention = parse_zconv(v.get<std::string>());
    } else if (key == "b_h_min") num(cfg.b_h_min);
    else if (key == "b_h_max") num(cfg.b_h_max);
    else if (key == "n_points") {
        if (!v.is_number_integer()) throw ConfigError("n_points must be an integer");
        cfg.n_points = v.get<int>();
    } else if (key == "tau_list") {
        cfg.tau_list = parse_tau_list(v);
    } else if (key == "output_path") {
        if (!v.is_string()) throw ConfigError("output_path must be a string");
        cfg.output_path = v.get<std::string>();
    } else if (key == "output_format") {
        if (!v.is_string()) throw ConfigError("output_format must be a string");
        cfg.output_format = v.get<std::string>();
    } else if (key == "seed") {
        if (!v.is_number_integer()) throw ConfigError("seed must be an integer");
        cfg.seed = v.get<std::uint64_t>();
    } else {
        throw ConfigError("unknown config key \"" + key + "\"");
    }
}

} // namespace

RunConfig RunConfig::defaults(Command cmd) {
    RunConfig cfg;
    if (cmd == Command::adiabatic) cfg.b_l = 1.0; // reference ramp ends at b = 1
    if (cmd == Command::cycle) cfg.output_format = "json";
    return cfg;
}

void RunConfig::validate() const {
    if (n_points < 1) throw ConfigError("n_points must be >= 1");
    if (output_format != "csv" && output_format != "json")
        throw ConfigError("output_format must be \"csv\" or \"json\"");
    if (tau_list.empty()) throw ConfigError("tau_list must not be empty");
    for (double t : tau_list)
        if (!(t > 0.0)) throw ConfigError("tau_list entries must be > 0");
    if (!(b_h_min <= b_h_max)) throw ConfigError("b_h_min must be <= b_h_max");
    try {
        engine_params().validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

double RunConfig::resolved_meas_cost() const {
    return meas_cost.value_or(kt_hot * std::numbers::ln2);
}

model::EngineParams RunConfig::engine_params() const {
    model::EngineParams p;
    p.g = g;
    p.b_h = b_h;
    p.b_l = b_l;
    p.omega = omega;
    p.k = k;
    p.kt_hot = kt_hot;
    p.tau = tau;
    p.steps = steps;
    p.meas_cost = resolved_meas_cost();
    p.zconv = z_convention;
    return p;
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config file must hold a flat JSON object");
    for (const auto& [key, value] : j.items()) apply_json_key(cfg, key, value);
}

void apply_set(RunConfig& cfg, const std::string& assignment) {
    const auto pos = assignment.find('=');
    if (pos == std::string::npos)
        throw ConfigError("--set expects key=value, got \"" + assignment + "\"");
    const std::string key = assignment.substr(0, pos);
    const std::string value = assignment.substr(pos + 1);

    json v;
    if (key == "z_convention" || key == "output_path" || key == "output_format") {
        v = value;
    } else if (key == "tau_list") {
        v = json::array();
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                v.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw ConfigError("tau_list entries must be numbers, got \"" + item + "\"");
            }
        }
    } else if (key == "steps" || key == "n_points" || key == "seed") {
        try {
            std::size_t used = 0;
            const long long i = std::stoll(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
            v = i;
        } catch (const std::exception&) {
            throw ConfigError("config key \"" + key + "\" must be an integer, got \"" + value + "\"");
        }
    } else {
        try {
            std::size_t used = 0;
            const double d = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
            v = d;
        } catch (const std::exception&) {
            throw ConfigError("config key \"" + key + "\" must be a number, got \"" + value + "\"");
        }
    }
    apply_json_key(cfg, key, v);
}

std::string to_string(model::ZConvention c) {
    return c == model::ZConvention::transport ? "transport" : "stroke_local";
}

} // namespace otto::cli
