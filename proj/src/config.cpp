#include "euler1d/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace euler1d {

namespace {

using nlohmann::json;

bool is_power_of_two(long long n) { return n > 0 && (n & (n - 1)) == 0; }

[[noreturn]] void fail(const std::string& message) { throw ConfigError("config: " + message); }

class StrictObject {
  public:
    StrictObject(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
        if (!obj.is_object()) fail(path_ + " must be a JSON object");
    }

    bool has(const std::string& key) {
        seen_.insert(key);
        return obj_.contains(key);
    }

    const json& get(const std::string& key) {
        seen_.insert(key);
        if (!obj_.contains(key)) fail("missing required key '" + qualified(key) + "'");
        return obj_.at(key);
    }

    double number(const std::string& key) {
        const json& v = get(key);
        if (!v.is_number()) fail("key '" + qualified(key) + "' must be a number");
        return v.get<double>();
    }
    double number_or(const std::string& key, double fallback) {
        return has(key) ? number(key) : fallback;
    }

    long long integer(const std::string& key) {
        const json& v = get(key);
        if (!v.is_number_integer()) fail("key '" + qualified(key) + "' must be an integer");
        return v.get<long long>();
    }
    long long integer_or(const std::string& key, long long fallback) {
        return has(key) ? integer(key) : fallback;
    }

    bool boolean_or(const std::string& key, bool fallback) {
        if (!has(key)) return fallback;
        const json& v = get(key);
        if (!v.is_boolean()) fail("key '" + qualified(key) + "' must be a boolean");
        return v.get<bool>();
    }

    std::string string(const std::string& key) {
        const json& v = get(key);
        if (!v.is_string()) fail("key '" + qualified(key) + "' must be a string");
        return v.get<std::string>();
    }
    std::string string_or(const std::string& key, const std::string& fallback) {
        return has(key) ? string(key) : fallback;
    }

    void reject_unknown() {
        for (auto it = obj_.begin(); it != obj_.end(); ++it) {
            if (!seen_.count(it.key())) fail("unknown key '" + qualified(it.key()) + "'");
        }
    }

  private:
    std::string qualified(const std::string& key) const {
        return path_.empty() ? key : path_ + "." + key;
    }
    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

std::vector<ModeEntry> parse_modes(const json& arr, const std::string& path) {
    if (!arr.is_array()) fail("key '" + path + "' must be an array of mode entries");
    std::vector<ModeEntry> modes;
    int index = 0;
    for (const json& item : arr) {
        StrictObject entry(item, path + "[" + std::to_string(index) + "]");
        ModeEntry m;
        m.k = static_cast<int>(entry.integer("k"));
        m.cos_amp = entry.number_or("cos", 0.0);
        m.sin_amp = entry.number_or("sin", 0.0);
        entry.reject_unknown();
        if (m.k < 1) fail("key '" + path + "[" + std::to_string(index) + "].k' must be >= 1");
        modes.push_back(m);
        ++index;
    }
    return modes;
}

}  // namespace

SimConfig parse_config(const std::string& text) {
    json root_json;
    try {
        root_json = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
    StrictObject root(root_json, "");
    SimConfig cfg;

    cfg.model.kind = [&] {
        const std::string name = root.string("model");
        try {
            return model_kind_from_string(name);
        } catch (const std::invalid_argument&) {
            fail("key 'model' has unknown value '" + name + "'");
        }
    }();

    if (cfg.model.kind == ModelKind::osw) {
        if (!root.has("osw_a")) fail("model 'osw' requires key 'osw_a'");
        cfg.model.osw_a = root.number("osw_a");
        if (!std::isfinite(cfg.model.osw_a)) fail("key 'osw_a' must be finite");
        cfg.model.osw_stretching = root.boolean_or("osw_stretching", true);
    } else {
        if (root.has("osw_a")) fail("key 'osw_a' is only valid for model 'osw'");
        if (root.has("osw_stretching")) fail("key 'osw_stretching' is only valid for model 'osw'");
    }

    const long long grid_n = root.integer("grid_n");
    if (grid_n < 8 || grid_n > (1LL << 24) || !is_power_of_two(grid_n)) {
        fail("key 'grid_n' must be a power of two in [8, 2^24], got " + std::to_string(grid_n));
    }
    cfg.grid_n = static_cast<int>(grid_n);

    cfg.domain_length = root.number("domain_length");
    if (!(cfg.domain_length > 0.0) || !std::isfinite(cfg.domain_length)) {
        fail("key 'domain_length' must be positive and finite");
    }

    {
        StrictObject initial(root.get("initial"), "initial");
        const std::string kind = initial.string("kind");
        if (kind == "paper_blowup") {
            cfg.initial.kind = InitialKind::paper_blowup;
            cfg.initial.amplitude = initial.number("a");
            if (!(cfg.initial.amplitude > 0.0)) fail("key 'initial.a' must be positive");
        } else if (kind == "custom_modes") {
            cfg.initial.kind = InitialKind::custom_modes;
            cfg.initial.u_modes = parse_modes(initial.get("u_modes"), "initial.u_modes");
            cfg.initial.omega_modes =
                parse_modes(initial.get("omega_modes"), "initial.omega_modes");
        } else {
            fail("key 'initial.kind' has unknown value '" + kind + "'");
        }
        initial.reject_unknown();
    }

    cfg.t_end = root.number("t_end");
    if (!(cfg.t_end >= 0.0) || !std::isfinite(cfg.t_end)) fail("key 't_end' must be >= 0");

    cfg.control.cfl_number = root.number_or("cfl", 0.4);
    if (!(cfg.control.cfl_number > 0.0 && cfg.control.cfl_number <= 1.0)) {
        fail("key 'cfl' must lie in (0, 1]");
    }
    cfg.control.dt_max = root.number_or("dt_max", 1e-2);
    cfg.control.dt_min = root.number_or("dt_min", 1e-9);
    if (!(cfg.control.dt_min > 0.0 && cfg.control.dt_min < cfg.control.dt_max)) {
        fail("keys 'dt_min'/'dt_max' must satisfy 0 < dt_min < dt_max");
    }
    cfg.control.fixed_dt = root.number_or("fixed_dt", 0.0);
    if (cfg.control.fixed_dt < 0.0) fail("key 'fixed_dt' must be >= 0");
    if (cfg.control.fixed_dt > 0.0 && cfg.control.fixed_dt < cfg.control.dt_min) {
        fail("key 'fixed_dt' must be >= dt_min");
    }
    cfg.control.dealias = root.boolean_or("dealias", true);
    cfg.control.tail_fraction_limit = root.number_or("tail_fraction_limit", 1e-6);
    if (!(cfg.control.tail_fraction_limit > 0.0 && cfg.control.tail_fraction_limit < 1.0)) {
        fail("key 'tail_fraction_limit' must lie in (0, 1)");
    }
    cfg.control.omega_max_limit = root.number_or("omega_max_limit", 1e8);
    if (!(cfg.control.omega_max_limit > 0.0)) fail("key 'omega_max_limit' must be positive");

    cfg.diag_cadence = static_cast<int>(root.integer_or("diag_cadence", 10));
    if (cfg.diag_cadence < 1) fail("key 'diag_cadence' must be >= 1");
    cfg.snapshot_count = static_cast<int>(root.integer_or("snapshot_count", 20));
    if (cfg.snapshot_count < 0) fail("key 'snapshot_count' must be >= 0");

    cfg.diag.coarse_m = static_cast<int>(
        root.integer_or("diag_coarse_m", std::min<long long>(64, cfg.grid_n / 2)));
    if (cfg.diag.coarse_m < 2 || cfg.diag.coarse_m > cfg.grid_n / 2) {
        fail("key 'diag_coarse_m' must lie in [2, grid_n/2]");
    }
    cfg.diag.uz_floor = root.number_or("diag_uz_floor", 1e-3);
    if (!(cfg.diag.uz_floor > 0.0)) fail("key 'diag_uz_floor' must be positive");
    cfg.diag.k_max = static_cast<int>(root.integer_or("diag_k_max", 2));
    if (cfg.diag.k_max < 0 || cfg.diag.k_max > 4) fail("key 'diag_k_max' must lie in [0, 4]");

    cfg.output_dir = root.string_or("output_dir", ".");
    cfg.seed = root.integer_or("seed", 0);

    // Custom modes must fit the grid band.
    if (cfg.initial.kind == InitialKind::custom_modes) {
        for (const auto& m : cfg.initial.u_modes) {
            if (m.k >= cfg.grid_n / 2) fail("key 'initial.u_modes': mode k exceeds grid Nyquist");
        }
        for (const auto& m : cfg.initial.omega_modes) {
            if (m.k >= cfg.grid_n / 2) {
                fail("key 'initial.omega_modes': mode k exceeds grid Nyquist");
            }
        }
    }

    root.reject_unknown();
    return cfg;
}

SimConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string config_to_json(const SimConfig& cfg, int indent) {
    json j;
    j["model"] = to_string(cfg.model.kind);
    if (cfg.model.kind == ModelKind::osw) {
        j["osw_a"] = cfg.model.osw_a;
        j["osw_stretching"] = cfg.model.osw_stretching;
    }
    j["grid_n"] = cfg.grid_n;
    j["domain_length"] = cfg.domain_length;
    json initial;
    if (cfg.initial.kind == InitialKind::paper_blowup) {
        initial["kind"] = "paper_blowup";
        initial["a"] = cfg.initial.amplitude;
    } else {
        initial["kind"] = "custom_modes";
        auto modes_json = [](const std::vector<ModeEntry>& modes) {
            json arr = json::array();
            for (const auto& m : modes) {
                arr.push_back(json{{"k", m.k}, {"cos", m.cos_amp}, {"sin", m.sin_amp}});
            }
            return arr;
        };
        initial["u_modes"] = modes_json(cfg.initial.u_modes);
        initial["omega_modes"] = modes_json(cfg.initial.omega_modes);
    }
    j["initial"] = initial;
    j["t_end"] = cfg.t_end;
    j["cfl"] = cfg.control.cfl_number;
    j["dt_max"] = cfg.control.dt_max;
    j["dt_min"] = cfg.control.dt_min;
    j["fixed_dt"] = cfg.control.fixed_dt;
    j["dealias"] = cfg.control.dealias;
    j["tail_fraction_limit"] = cfg.control.tail_fraction_limit;
    j["omega_max_limit"] = cfg.control.omega_max_limit;
    j["diag_cadence"] = cfg.diag_cadence;
    j["snapshot_count"] = cfg.snapshot_count;
    j["diag_coarse_m"] = cfg.diag.coarse_m;
    j["diag_uz_floor"] = cfg.diag.uz_floor;
    j["diag_k_max"] = cfg.diag.k_max;
    j["output_dir"] = cfg.output_dir;
    j["seed"] = cfg.seed;
    return j.dump(indent);
}

}  // namespace euler1d
