#include "qusense/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "qusense/threadpool.hpp"

namespace qusense {

using nlohmann::json;

std::vector<double> GridSpec::build() const {
    if (points < 1) throw ConfigError("grid: points must be >= 1");
    if (!(max >= min)) throw ConfigError("grid: max must be >= min");
    if (log_scale && !(min > 0.0))
        throw ConfigError("grid: log scale needs min > 0");
    std::vector<double> g(points);
    if (points == 1) {
        g[0] = min;
        return g;
    }
    for (int i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / (points - 1);
        g[i] = log_scale ? min * std::pow(max / min, f)
                         : min + f * (max - min);
    }
    return g;
}

int RunConfig::resolved_threads() const {
    return threads > 0 ? threads : default_threads();
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config error at " + path + ": " + what);
}

std::string join_path(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

void require_keys(const json& obj, const std::string& path,
                  const std::set<std::string>& allowed) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& item : obj.items())
        if (!allowed.count(item.key()))
            fail(path.empty() ? item.key() : path + "." + item.key(),
                 "unknown field");
}

double get_num(const json& obj, const std::string& path, const std::string& key,
               double fallback, bool required = false) {
    if (!obj.contains(key)) {
        if (required) fail(join_path(path, key), "missing required field");
        return fallback;
    }
    const json& v = obj.at(key);
    if (!v.is_number()) fail(join_path(path, key), "expected a number");
    return v.get<double>();
}

std::int64_t get_int(const json& obj, const std::string& path,
                     const std::string& key, std::int64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) fail(join_path(path, key), "expected an integer");
    return v.get<std::int64_t>();
}

std::string get_str(const json& obj, const std::string& path,
                    const std::string& key, const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) fail(join_path(path, key), "expected a string");
    return v.get<std::string>();
}

bool get_bool(const json& obj, const std::string& path, const std::string& key,
              bool fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) fail(join_path(path, key), "expected a boolean");
    return v.get<bool>();
}

BaseNoise parse_base_noise(const json& obj, const std::string& path);

NoiseModel parse_noise(const json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    const std::string type = get_str(obj, path, "type", "");
    if (type.empty()) fail(path + ".type", "missing required field");
    if (type == "scaled") {
        require_keys(obj, path, {"type", "inner", "schedule"});
        if (!obj.contains("inner")) fail(path + ".inner", "missing required field");
        if (!obj.contains("schedule"))
            fail(path + ".schedule", "missing required field");
        ScaledNoise sn;
        sn.inner = parse_base_noise(obj.at("inner"), path + ".inner");
        const json& sched = obj.at("schedule");
        if (!sched.is_array() || sched.empty())
            fail(path + ".schedule", "expected a non-empty array");
        for (std::size_t i = 0; i < sched.size(); ++i) {
            const std::string sp = path + ".schedule[" + std::to_string(i) + "]";
            require_keys(sched[i], sp, {"duration", "factor"});
            ScheduleSegment seg;
            seg.duration = get_num(sched[i], sp, "duration", 0.0, true);
            seg.factor = get_num(sched[i], sp, "factor", 1.0, true);
            if (!(seg.duration > 0.0)) fail(sp + ".duration", "must be > 0");
            sn.schedule.push_back(seg);
        }
        return sn;
    }
    return std::visit([](const auto& b) { return NoiseModel(b); },
                      parse_base_noise(obj, path));
}

BaseNoise parse_base_noise(const json& obj, const std::string& path) {
    const std::string type = get_str(obj, path, "type", "");
    if (type == "none") {
        require_keys(obj, path, {"type"});
        return NoNoise{};
    }
    if (type == "white") {
        require_keys(obj, path, {"type", "S_C"});
        WhiteNoise w;
        w.S_C = get_num(obj, path, "S_C", 0.0, true);
        if (!(w.S_C >= 0.0)) fail(path + ".S_C", "must be >= 0");
        return w;
    }
    if (type == "ou") {
        require_keys(obj, path, {"type", "sigma2", "tau_c"});
        OUNoise ou;
        ou.sigma2 = get_num(obj, path, "sigma2", 0.0, true);
        ou.tau_c = get_num(obj, path, "tau_c", 0.0, true);
        if (!(ou.sigma2 >= 0.0)) fail(path + ".sigma2", "must be >= 0");
        if (!(ou.tau_c > 0.0)) fail(path + ".tau_c", "must be > 0");
        return ou;
    }
    if (type == "telegraph") {
        require_keys(obj, path, {"type", "b", "gamma_f"});
        TelegraphNoise tn;
        tn.b = get_num(obj, path, "b", 0.0, true);
        tn.gamma_f = get_num(obj, path, "gamma_f", 0.0, true);
        if (!(tn.gamma_f > 0.0)) fail(path + ".gamma_f", "must be > 0");
        return tn;
    }
    fail(path + ".type",
         "unknown noise type '" + type +
             "' (expected none, white, ou, telegraph or scaled)");
}

GridSpec parse_grid(const json& obj, const std::string& path,
                    const GridSpec& fallback) {
    require_keys(obj, path, {"min", "max", "points", "scale"});
    GridSpec g = fallback;
    g.min = get_num(obj, path, "min", g.min, true);
    g.max = get_num(obj, path, "max", g.max, true);
    g.points = static_cast<int>(get_int(obj, path, "points", g.points));
    const std::string scale = get_str(obj, path, "scale", g.log_scale ? "log" : "linear");
    if (scale == "log")
        g.log_scale = true;
    else if (scale == "linear")
        g.log_scale = false;
    else
        fail(path + ".scale", "expected 'log' or 'linear'");
    if (g.points < 1) fail(path + ".points", "must be >= 1");
    return g;
}

}  // namespace

RunConfig parse_config_text(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config error: invalid JSON: ") + e.what());
    }
    require_keys(root, "",
                 {"params", "noise", "sequence", "mode", "seed", "shards",
                  "threads", "out_dir", "estimate", "store_phases",
                  "chunk_cycles", "substeps_per_tau", "spectrum", "plan"});

    RunConfig cfg;
    if (root.contains("params")) {
        const json& p = root.at("params");
        require_keys(p, "params", {"a", "omega0", "gamma0", "tau_I"});
        cfg.params.a = get_num(p, "params", "a", 0.0);
        cfg.params.omega0 = get_num(p, "params", "omega0", 0.0);
        cfg.params.gamma0 = get_num(p, "params", "gamma0", 0.0);
        cfg.params.tau_I = get_num(p, "params", "tau_I", 1.0);
        try {
            cfg.params.check();
        } catch (const std::exception& e) {
            fail("params", e.what());
        }
    }
    if (root.contains("noise")) cfg.noise = parse_noise(root.at("noise"), "noise");
    if (root.contains("sequence")) {
        const json& s = root.at("sequence");
        require_keys(s, "sequence", {"pattern", "cycles"});
        const std::string pat = get_str(s, "sequence", "pattern", "xy");
        if (pat == "xy")
            cfg.seq.pattern = Pattern::XY;
        else if (pat == "xyxz")
            cfg.seq.pattern = Pattern::XYXZ;
        else
            fail("sequence.pattern", "expected 'xy' or 'xyxz'");
        const std::int64_t cycles = get_int(s, "sequence", "cycles", 0);
        if (cycles < 0) fail("sequence.cycles", "must be >= 0");
        cfg.seq.cycles = static_cast<std::size_t>(cycles);
    }
    const std::string mode = get_str(root, "", "mode", "exact");
    if (mode == "exact")
        cfg.mode = Mode::Exact;
    else if (mode == "short_time")
        cfg.mode = Mode::ShortTime;
    else
        fail("mode", "expected 'exact' or 'short_time'");

    const std::int64_t seed = get_int(root, "", "seed", 1);
    if (seed < 0) fail("seed", "must be >= 0");
    cfg.seed = static_cast<std::uint64_t>(seed);
    cfg.shards = static_cast<int>(get_int(root, "", "shards", 1));
    if (cfg.shards < 1) fail("shards", "must be >= 1");
    cfg.threads = static_cast<int>(get_int(root, "", "threads", 0));
    if (cfg.threads < 0) fail("threads", "must be >= 0");
    cfg.out_dir = get_str(root, "", "out_dir", ".");
    cfg.store_phases = get_bool(root, "", "store_phases", false);
    const std::int64_t cc = get_int(root, "", "chunk_cycles", 4096);
    if (cc < 1) fail("chunk_cycles", "must be >= 1");
    cfg.chunk_cycles = static_cast<std::size_t>(cc);
    cfg.substeps_per_tau =
        static_cast<int>(get_int(root, "", "substeps_per_tau", 16));
    if (cfg.substeps_per_tau < 1) fail("substeps_per_tau", "must be >= 1");

    if (root.contains("estimate")) {
        const json& e = root.at("estimate");
        require_keys(e, "estimate", {"max_lag", "n_f2", "n_f1"});
        cfg.max_lag = static_cast<int>(get_int(e, "estimate", "max_lag", 50));
        cfg.n_f2 = static_cast<int>(get_int(e, "estimate", "n_f2", 5));
        cfg.n_f1 = static_cast<int>(get_int(e, "estimate", "n_f1", 5));
        if (cfg.max_lag < 1) fail("estimate.max_lag", "must be >= 1");
        if (cfg.n_f2 < 1) fail("estimate.n_f2", "must be >= 1");
        if (cfg.n_f1 < 1) fail("estimate.n_f1", "must be >= 1");
    }
    if (root.contains("spectrum")) {
        const json& s = root.at("spectrum");
        require_keys(s, "spectrum", {"source", "n_f", "omega_min", "omega_max"});
        cfg.spectrum_source = get_str(s, "spectrum", "source", "closedform");
        if (cfg.spectrum_source != "closedform" && cfg.spectrum_source != "exact")
            fail("spectrum.source", "expected 'closedform' or 'exact'");
        cfg.n_f = static_cast<int>(get_int(s, "spectrum", "n_f", 0));
        if (cfg.n_f < 0) fail("spectrum.n_f", "must be >= 0");
        cfg.omega_min = get_num(s, "spectrum", "omega_min", 0.0);
        cfg.omega_max = get_num(s, "spectrum", "omega_max", 0.0);
    }
    if (root.contains("plan")) {
        const json& p = root.at("plan");
        require_keys(p, "plan", {"order", "S_C", "gamma0", "a", "gamma_m_max"});
        const std::string order = get_str(p, "plan", "order", "2nd");
        if (order == "2nd")
            cfg.plan_order = Order::Second;
        else if (order == "4th")
            cfg.plan_order = Order::Fourth;
        else
            fail("plan.order", "expected '2nd' or '4th'");
        if (p.contains("S_C"))
            cfg.plan_S_C = parse_grid(p.at("S_C"), "plan.S_C", cfg.plan_S_C);
        if (p.contains("gamma0"))
            cfg.plan_gamma0 =
                parse_grid(p.at("gamma0"), "plan.gamma0", cfg.plan_gamma0);
        cfg.plan_a = get_num(p, "plan", "a", 1.0);
        if (!(cfg.plan_a > 0.0)) fail("plan.a", "must be > 0");
        cfg.gamma_m_max = get_num(p, "plan", "gamma_m_max", 0.0);
        if (cfg.gamma_m_max < 0.0) fail("plan.gamma_m_max", "must be >= 0");
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config error: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

namespace {

json noise_to_json(const NoiseModel& model) {
    return std::visit(
        [](const auto& m) -> json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, NoNoise>) {
                return json{{"type", "none"}};
            } else if constexpr (std::is_same_v<T, WhiteNoise>) {
                return json{{"type", "white"}, {"S_C", m.S_C}};
            } else if constexpr (std::is_same_v<T, OUNoise>) {
                return json{{"type", "ou"}, {"sigma2", m.sigma2}, {"tau_c", m.tau_c}};
            } else if constexpr (std::is_same_v<T, TelegraphNoise>) {
                return json{{"type", "telegraph"}, {"b", m.b}, {"gamma_f", m.gamma_f}};
            } else {
                json inner = std::visit(
                    [](const auto& b) {
                        return noise_to_json(NoiseModel(b));
                    },
                    m.inner);
                json sched = json::array();
                for (const auto& s : m.schedule)
                    sched.push_back(
                        {{"duration", s.duration}, {"factor", s.factor}});
                return json{{"type", "scaled"},
                            {"inner", inner},
                            {"schedule", sched}};
            }
        },
        model);
}

json grid_to_json(const GridSpec& g) {
    return json{{"min", g.min},
                {"max", g.max},
                {"points", g.points},
                {"scale", g.log_scale ? "log" : "linear"}};
}

}  // namespace

std::string config_to_json(const RunConfig& cfg) {
    json root;
    root["params"] = {{"a", cfg.params.a},
                      {"omega0", cfg.params.omega0},
                      {"gamma0", cfg.params.gamma0},
                      {"tau_I", cfg.params.tau_I}};
    root["noise"] = noise_to_json(cfg.noise);
    root["sequence"] = {
        {"pattern", cfg.seq.pattern == Pattern::XY ? "xy" : "xyxz"},
        {"cycles", cfg.seq.cycles}};
    root["mode"] = cfg.mode == Mode::Exact ? "exact" : "short_time";
    root["seed"] = cfg.seed;
    root["shards"] = cfg.shards;
    root["threads"] = cfg.threads;
    root["out_dir"] = cfg.out_dir;
    root["estimate"] = {
        {"max_lag", cfg.max_lag}, {"n_f2", cfg.n_f2}, {"n_f1", cfg.n_f1}};
    root["store_phases"] = cfg.store_phases;
    root["chunk_cycles"] = cfg.chunk_cycles;
    root["substeps_per_tau"] = cfg.substeps_per_tau;
    root["spectrum"] = {{"source", cfg.spectrum_source},
                        {"n_f", cfg.n_f},
                        {"omega_min", cfg.omega_min},
                        {"omega_max", cfg.omega_max}};
    root["plan"] = {{"order", cfg.plan_order == Order::Second ? "2nd" : "4th"},
                    {"S_C", grid_to_json(cfg.plan_S_C)},
                    {"gamma0", grid_to_json(cfg.plan_gamma0)},
                    {"a", cfg.plan_a},
                    {"gamma_m_max", cfg.gamma_m_max}};
    return root.dump(2);
}

}  // namespace qusense
