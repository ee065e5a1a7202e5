#include <cmath>
#include <fstream>
#include <cstdio>
#include <set>
#include <tuple>
#include <sstream>

#include <json.hpp>

#include "uavdc/harness.hpp"
#include "uavdc/rng.hpp"
#include "uavdc/scenario_model.hpp"
#include "uavdc/solution_space.hpp"

namespace uavdc {

using nlohmann::json;

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

// Reads one JSON object, remembering which keys were consumed so leftovers
// can be reported as unknown.
class Reader {
public:
    Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
    }

    bool has(const char* key) const { return j_.contains(key); }

    std::string key_path(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

    const json* raw(const char* key) {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    void number(const char* key, double& out) {
        if (const json* v = raw(key)) {
            if (!v->is_number()) throw ConfigError(key_path(key), "expected a number");
            out = v->get<double>();
            if (!std::isfinite(out)) throw ConfigError(key_path(key), "must be finite");
        }
    }

    template <class Int>
    void count(const char* key, Int& out) {
        if (const json* v = raw(key)) {
            if (!v->is_number_integer() || (v->is_number_integer() && v->get<long long>() < 0))
                throw ConfigError(key_path(key), "expected a non-negative integer");
            out = static_cast<Int>(v->get<unsigned long long>());
        }
    }

    void boolean(const char* key, bool& out) {
        if (const json* v = raw(key)) {
            if (!v->is_boolean()) throw ConfigError(key_path(key), "expected true or false");
            out = v->get<bool>();
        }
    }

    void text(const char* key, std::string& out) {
        if (const json* v = raw(key)) {
            if (!v->is_string()) throw ConfigError(key_path(key), "expected a string");
            out = v->get<std::string>();
        }
    }

    void pair(const char* key, double& a, double& b) {
        if (const json* v = raw(key)) {
            if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number())
                throw ConfigError(key_path(key), "expected a two-number array");
            a = (*v)[0].get<double>();
            b = (*v)[1].get<double>();
        }
    }

    std::optional<Reader> child(const char* key) {
        if (const json* v = raw(key)) return Reader(*v, key_path(key));
        return std::nullopt;
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key())) throw ConfigError(key_path(it.key().c_str()), "unknown key");
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void read_dual(Reader& r, const char* linear_key, const char* db_key, double& out, double (*convert)(double)) {
    if (r.has(linear_key) && r.has(db_key))
        throw ConfigError(r.key_path(db_key), std::string("conflicts with ") + linear_key);
    r.number(linear_key, out);
    double db = 0.0;
    if (r.has(db_key)) {
        r.number(db_key, db);
        out = convert(db);
    } else {
        r.raw(db_key);
    }
}

void read_channel(Reader& r, ChannelParams& ch) {
    r.number("env_c", ch.env_c);
    r.number("env_b", ch.env_b);
    read_dual(r, "beta0", "beta0_db", ch.beta0, db_to_linear);
    read_dual(r, "mu0", "mu0_db", ch.mu0, db_to_linear);
    r.number("alpha_los", ch.alpha_los);
    r.number("alpha_nlos", ch.alpha_nlos);
    r.number("bandwidth_hz", ch.bandwidth_hz);
    read_dual(r, "noise_w", "noise_dbm", ch.noise_w, dbm_to_watts);
    r.finish();
}

void read_uav_power(Reader& r, UavPowerParams& up) {
    r.number("p0_w", up.p0_w);
    r.number("pi_w", up.pi_w);
    r.number("u_tip", up.u_tip);
    r.number("v0", up.v0);
    r.number("d0", up.d0);
    r.number("rho", up.rho);
    r.number("s", up.s);
    r.number("rotor_area", up.rotor_area);
    r.number("weight_kg", up.weight_kg);
    r.number("omega", up.omega);
    r.number("rotor_radius", up.rotor_radius);
    r.finish();
}

void read_scenario(Reader& r, ScenarioConfig& sc) {
    if (auto a = r.child("area")) {
        a->number("x_min", sc.area.x_min);
        a->number("x_max", sc.area.x_max);
        a->number("y_min", sc.area.y_min);
        a->number("y_max", sc.area.y_max);
        a->finish();
    }
    r.number("altitude_m", sc.altitude_m);
    const bool k_given = r.has("num_devices");
    r.count("num_devices", sc.num_devices);
    r.count("num_hovers", sc.num_hovers);
    if (auto g = r.child("grid")) {
        g->count("cols", sc.grid_cols);
        g->count("rows", sc.grid_rows);
        g->finish();
    }
    r.count("placement_seed", sc.placement_seed);
    if (const json* devs = r.raw("devices")) {
        if (!devs->is_array()) throw ConfigError(r.key_path("devices"), "expected an array");
        std::vector<Device> list;
        for (std::size_t i = 0; i < devs->size(); ++i) {
            Reader d((*devs)[i], r.key_path("devices") + "[" + std::to_string(i) + "]");
            Device dev;
            dev.id = i;
            d.number("x", dev.pos.x);
            d.number("y", dev.pos.y);
            d.number("data_bits", dev.data_bits);
            d.finish();
            list.push_back(dev);
        }
        if (k_given && list.size() != sc.num_devices)
            throw ConfigError(r.key_path("num_devices"), "disagrees with the length of devices");
        sc.num_devices = list.size();
        sc.devices = std::move(list);
    }
    r.pair("data_bits_range", sc.data_bits.lo, sc.data_bits.hi);
    if (r.has("start")) {
        Point2 p;
        r.pair("start", p.x, p.y);
        sc.start = p;
    } else {
        r.raw("start");
    }
    if (r.has("end")) {
        Point2 p;
        r.pair("end", p.x, p.y);
        sc.end = p;
    } else {
        r.raw("end");
    }
    r.pair("power_bounds_w", sc.power_bounds.lo, sc.power_bounds.hi);
    r.pair("speed_bounds_mps", sc.speed_bounds.lo, sc.speed_bounds.hi);
    if (auto c = r.child("channel")) read_channel(*c, sc.channel);
    if (auto u = r.child("uav_power")) read_uav_power(*u, sc.uav_power);
    r.finish();
}

Mode parse_mode(const std::string& s, const std::string& key) {
    if (s == "imoaha") return Mode::imoaha;
    if (s == "baseline_moaha" || s == "moaha") return Mode::baseline_moaha;
    throw ConfigError(key, "unknown mode '" + s + "' (expected imoaha or baseline_moaha)");
}

std::string mode_name(Mode m) { return m == Mode::imoaha ? "imoaha" : "baseline_moaha"; }

NamedAlgo read_algorithm(Reader& r) {
    NamedAlgo a;
    std::string mode = "imoaha";
    r.text("mode", mode);
    a.config.mode = parse_mode(mode, r.key_path("mode"));
    a.name = a.config.mode == Mode::imoaha ? "IMOAHA" : "MOAHA";
    r.text("name", a.name);
    auto& c = a.config;
    r.count("pop_size", c.pop_size);
    r.count("max_iters", c.max_iters);
    r.count("archive_cap", c.archive_cap);
    r.boolean("hybrid_init", c.hybrid_init);
    r.number("guided_prob", c.guided_prob);
    r.number("cauchy_prob", c.cauchy_prob);
    if (auto cp = r.child("cauchy")) {
        cp->number("scale_t", c.cauchy.scale_t);
        cp->number("e_pos_max", c.cauchy.e_pos_max);
        cp->number("e_speed", c.cauchy.e_speed);
        cp->finish();
    }
    if (auto tp = r.child("tent")) {
        tp->number("d", c.tent.d);
        tp->number("e", c.tent.e);
        tp->number("x0", c.tent.x0);
        tp->finish();
    }
    r.count("migration_period", c.migration_period);
    r.count("eval_threads", c.eval_threads);
    r.finish();
    return a;
}

std::vector<NamedAlgo> default_algorithms() {
    NamedAlgo im{"IMOAHA", AlgoConfig{}};
    im.config.mode = Mode::imoaha;
    NamedAlgo base{"MOAHA", AlgoConfig{}};
    base.config.mode = Mode::baseline_moaha;
    return {im, base};
}

}  // namespace

ScenarioConfig tiny_scenario_config() {
    ScenarioConfig sc;
    sc.num_hovers = 2;
    sc.devices = std::vector<Device>{{0, {200, 300}, 2e6}, {1, {350, 750}, 5e6}, {2, {650, 200}, 8e6}, {3, {800, 650}, 3e6}};
    sc.num_devices = sc.devices->size();
    return sc;
}

ExperimentConfig default_config() {
    ExperimentConfig cfg;
    cfg.algorithms = default_algorithms();
    return cfg;
}

ExperimentConfig parse_config(std::string_view text) {
    ExperimentConfig cfg = default_config();
    const bool blank = text.find_first_not_of(" \t\r\n") == std::string_view::npos;
    if (blank) {
        validate_experiment(cfg);
        return cfg;
    }
    json root;
    try {
        root = json::parse(text.begin(), text.end(), nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("malformed configuration: ") + e.what());
    }
    Reader r(root, "");
    if (auto s = r.child("scenario")) read_scenario(*s, cfg.scenario);
    if (const json* algs = r.raw("algorithms")) {
        if (!algs->is_array() || algs->empty()) throw ConfigError("algorithms", "expected a non-empty array");
        cfg.algorithms.clear();
        for (std::size_t i = 0; i < algs->size(); ++i) {
            Reader a((*algs)[i], "algorithms[" + std::to_string(i) + "]");
            cfg.algorithms.push_back(read_algorithm(a));
        }
    }
    r.count("runs", cfg.runs);
    r.count("master_seed", cfg.master_seed);
    r.text("output_dir", cfg.output_dir);
    r.count("snap_grid_points", cfg.snap_grid_points);
    r.finish();
    validate_experiment(cfg);
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("", "cannot read configuration file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void validate_experiment(const ExperimentConfig& cfg) {
    if (cfg.runs < 1) throw ConfigError("runs", "must be >= 1");
    if (cfg.algorithms.empty()) throw ConfigError("algorithms", "at least one algorithm required");
    const auto& sc = cfg.scenario;
    if (!(sc.data_bits.lo > 0.0) || sc.data_bits.lo > sc.data_bits.hi)
        throw ConfigError("scenario.data_bits_range", "must satisfy 0 < lo <= hi");
    if (!sc.devices && sc.num_devices < 1) throw ConfigError("scenario.num_devices", "must be >= 1");
    if (cfg.snap_grid_points == 1) throw ConfigError("snap_grid_points", "use 0 (off) or >= 2");
    std::set<std::string> names;
    for (std::size_t i = 0; i < cfg.algorithms.size(); ++i) {
        const auto& a = cfg.algorithms[i];
        const std::string key = "algorithms[" + std::to_string(i) + "]";
        if (a.name.empty() || a.name.find_first_of("/\\ ,\"") != std::string::npos)
            throw ConfigError(key + ".name", "must be non-empty without spaces, commas, quotes or slashes");
        if (!names.insert(a.name).second) throw ConfigError(key + ".name", "duplicate algorithm name");
        try {
            validate_config(a.config);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(key, e.what());
        }
    }
    try {
        (void)build_scenario(sc);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        // Model validation messages lead with the field name.
        const std::string msg = e.what();
        const auto colon = msg.find(": ");
        if (colon != std::string::npos && msg.find(' ') > colon)
            throw ConfigError("scenario." + msg.substr(0, colon), msg.substr(colon + 2));
        throw ConfigError("scenario", msg);
    }
}

Scenario build_scenario(const ScenarioConfig& sc) {
    Scenario scn;
    scn.area = sc.area;
    if (!(sc.area.x_min < sc.area.x_max) || !(sc.area.y_min < sc.area.y_max))
        throw ConfigError("scenario.area", "bounds must be ordered");
    scn.altitude_m = sc.altitude_m;
    scn.num_hovers = sc.num_hovers;
    scn.channel = sc.channel;
    scn.uav_power = sc.uav_power;
    scn.power_bounds = sc.power_bounds;
    scn.speed_bounds = sc.speed_bounds;
    scn.start_pos = sc.start.value_or(Point2{sc.area.x_min, sc.area.y_min});
    scn.end_pos = sc.end.value_or(Point2{sc.area.x_max, sc.area.y_max});
    if (sc.devices) {
        scn.devices = *sc.devices;
        for (std::size_t i = 0; i < scn.devices.size(); ++i) scn.devices[i].id = i;
    } else {
        Rng rng(sc.placement_seed);
        scn.devices.resize(sc.num_devices);
        for (std::size_t i = 0; i < sc.num_devices; ++i) {
            auto& d = scn.devices[i];
            d.id = i;
            d.pos.x = uniform(rng, sc.area.x_min, sc.area.x_max);
            d.pos.y = uniform(rng, sc.area.y_min, sc.area.y_max);
            d.data_bits = uniform(rng, sc.data_bits.lo, sc.data_bits.hi);
        }
    }
    if (sc.num_hovers < 1) throw ConfigError("scenario.num_hovers", "must be >= 1");
    int cols = sc.grid_cols, rows = sc.grid_rows;
    if (cols == 0 && rows == 0) {
        std::tie(cols, rows) = default_grid_shape(sc.num_hovers);
    } else if (cols <= 0 || rows <= 0 || static_cast<std::size_t>(cols * rows) != sc.num_hovers) {
        throw ConfigError("scenario.grid", "cols * rows must equal num_hovers (" + std::to_string(sc.num_hovers) + ")");
    }
    scn.partition = partition_devices(scn.area, scn.devices, scn.num_hovers, cols, rows);
    validate_scenario(scn);
    return scn;
}

std::string resolved_config_json(const ExperimentConfig& cfg) {
    const auto& sc = cfg.scenario;
    json j;
    json& s = j["scenario"];
    s["area"] = {{"x_min", sc.area.x_min}, {"x_max", sc.area.x_max}, {"y_min", sc.area.y_min}, {"y_max", sc.area.y_max}};
    s["altitude_m"] = sc.altitude_m;
    s["num_devices"] = sc.devices ? sc.devices->size() : sc.num_devices;
    s["num_hovers"] = sc.num_hovers;
    auto [cols, rows] = sc.grid_cols == 0 ? default_grid_shape(sc.num_hovers) : std::pair{sc.grid_cols, sc.grid_rows};
    s["grid"] = {{"cols", cols}, {"rows", rows}};
    if (sc.devices) {
        json list = json::array();
        for (const auto& d : *sc.devices) list.push_back({{"x", d.pos.x}, {"y", d.pos.y}, {"data_bits", d.data_bits}});
        s["devices"] = list;
    } else {
        s["placement_seed"] = sc.placement_seed;
        s["data_bits_range"] = {sc.data_bits.lo, sc.data_bits.hi};
    }
    const Point2 st = sc.start.value_or(Point2{sc.area.x_min, sc.area.y_min});
    const Point2 en = sc.end.value_or(Point2{sc.area.x_max, sc.area.y_max});
    s["start"] = {st.x, st.y};
    s["end"] = {en.x, en.y};
    s["power_bounds_w"] = {sc.power_bounds.lo, sc.power_bounds.hi};
    s["speed_bounds_mps"] = {sc.speed_bounds.lo, sc.speed_bounds.hi};
    const auto& ch = sc.channel;
    s["channel"] = {{"env_c", ch.env_c},         {"env_b", ch.env_b},          {"beta0", ch.beta0},
                    {"mu0", ch.mu0},             {"alpha_los", ch.alpha_los},  {"alpha_nlos", ch.alpha_nlos},
                    {"bandwidth_hz", ch.bandwidth_hz}, {"noise_w", ch.noise_w}};
    const auto& up = sc.uav_power;
    s["uav_power"] = {{"p0_w", up.p0_w}, {"pi_w", up.pi_w},   {"u_tip", up.u_tip},
                      {"v0", up.v0},     {"d0", up.d0},       {"rho", up.rho},
                      {"s", up.s},       {"rotor_area", up.rotor_area}, {"weight_kg", up.weight_kg},
                      {"omega", up.omega}, {"rotor_radius", up.rotor_radius}};
    json algs = json::array();
    for (const auto& a : cfg.algorithms) {
        const auto& c = a.config;
        algs.push_back({{"name", a.name},
                        {"mode", mode_name(c.mode)},
                        {"pop_size", c.pop_size},
                        {"max_iters", c.max_iters},
                        {"archive_cap", c.effective_archive_cap()},
                        {"hybrid_init", c.hybrid_init},
                        {"guided_prob", c.guided_prob},
                        {"cauchy_prob", c.cauchy_prob},
                        {"cauchy", {{"scale_t", c.cauchy.scale_t}, {"e_pos_max", c.cauchy.e_pos_max}, {"e_speed", c.cauchy.e_speed}}},
                        {"tent", {{"d", c.tent.d}, {"e", c.tent.e}, {"x0", c.tent.x0}}},
                        {"migration_period", c.effective_migration_period()},
                        {"eval_threads", c.eval_threads}});
    }
    j["algorithms"] = algs;
    j["runs"] = cfg.runs;
    j["master_seed"] = cfg.master_seed;
    j["output_dir"] = cfg.output_dir;
    j["snap_grid_points"] = cfg.snap_grid_points;
    return j.dump(2);
}

std::string config_hash(const ExperimentConfig& cfg) {
    ExperimentConfig c = cfg;
    c.output_dir.clear();  // where results go does not change them
    for (auto& a : c.algorithms) a.config.eval_threads = 1;
    const std::string text = resolved_config_json(c);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace uavdc
