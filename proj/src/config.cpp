#include "uwb/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace uwb {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for '" + key + "': '" + v + "'");
    }
}

long parse_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("bad integer value for '" + key + "': '" + v + "'");
    }
}

std::vector<double> parse_double_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(key, item));
    }
    if (out.empty()) throw ConfigError("empty list for '" + key + "'");
    return out;
}

bool known_section(const std::string& s) {
    return s == "users" || s == "primary" || s == "channel" || s == "solver" ||
           s == "run";
}

} // namespace

RawConfig parse_raw_config(const std::string& text) {
    RawConfig raw;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    RawSection* current = nullptr;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(lineno) +
                                  ": malformed section header");
            }
            const std::string name = trim(line.substr(1, line.size() - 2));
            if (!known_section(name)) {
                throw ConfigError("line " + std::to_string(lineno) +
                                  ": unknown section [" + name + "]");
            }
            raw.sections.push_back({name, {}});
            current = &raw.sections.back();
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || current == nullptr) {
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected 'key = value' inside a section");
        }
        current->entries.emplace_back(trim(line.substr(0, eq)),
                                      trim(line.substr(eq + 1)));
    }
    return raw;
}

RawConfig load_raw_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_raw_config(ss.str());
}

void RawConfig::apply_override(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("override '" + spec + "' is not key=value");
    }
    const std::string path = trim(spec.substr(0, eq));
    const std::string value = trim(spec.substr(eq + 1));
    const auto dot = path.find('.');
    if (dot == std::string::npos) {
        throw ConfigError("override key '" + path + "' needs a section prefix");
    }
    std::string section = path.substr(0, dot);
    std::string rest = path.substr(dot + 1);
    int index = 0;
    const auto dot2 = rest.find('.');
    if (dot2 != std::string::npos &&
        rest.find_first_not_of("0123456789") >= dot2) {
        index = static_cast<int>(parse_long("override index", rest.substr(0, dot2)));
        rest = rest.substr(dot2 + 1);
    }
    if (!known_section(section)) {
        throw ConfigError("override references unknown section '" + section + "'");
    }
    int seen = 0;
    for (auto& sec : sections) {
        if (sec.name != section) continue;
        if (seen++ != index) continue;
        for (auto& [k, v] : sec.entries) {
            if (k == rest) {
                v = value;
                return;
            }
        }
        sec.entries.emplace_back(rest, value);
        return;
    }
    if (seen == 0 && index == 0) {
        sections.push_back({section, {{rest, value}}});
        return;
    }
    throw ConfigError("override '" + spec + "': section instance not found");
}

ScenarioConfig build_scenario_config(const RawConfig& raw) {
    ScenarioConfig cfg;
    cfg.users.clear();
    cfg.primaries.clear();
    int next_user_id = 1;
    bool channel_seen = false;

    for (const auto& sec : raw.sections) {
        if (sec.name == "users") {
            UserSpec u;
            u.id = next_user_id;
            bool have_class = false, have_rate = false;
            for (const auto& [k, v] : sec.entries) {
                if (k == "class") {
                    u.qos_class = qos_class_from_string(v);
                    have_class = true;
                } else if (k == "rate_mbps") {
                    u.rate_mbps = parse_double(k, v);
                    have_rate = true;
                } else if (k == "delay_ms") {
                    u.delay_ms = parse_double(k, v);
                } else if (k == "pathloss_db") {
                    u.pathloss_db = parse_double(k, v);
                } else if (k == "id") {
                    u.id = static_cast<int>(parse_long(k, v));
                } else {
                    throw ConfigError("unknown key '" + k + "' in [users]");
                }
            }
            if (!have_class || !have_rate) {
                throw ConfigError("[users] block needs class and rate_mbps");
            }
            next_user_id = std::max(next_user_id, u.id) + 1;
            cfg.users.push_back(u);
        } else if (sec.name == "primary") {
            PrimarySpec p;
            for (const auto& [k, v] : sec.entries) {
                if (k == "center_ghz") {
                    p.center_ghz = parse_double(k, v);
                } else if (k == "bandwidth_mhz") {
                    p.bandwidths_mhz = parse_double_list(k, v);
                } else if (k == "i_th_mw") {
                    p.i_th_w = parse_double(k, v) * 1e-3;
                } else if (k == "i_th_fraction") {
                    p.i_th_fraction = parse_double(k, v);
                } else {
                    throw ConfigError("unknown key '" + k + "' in [primary]");
                }
            }
            cfg.primaries.push_back(p);
        } else if (sec.name == "channel") {
            if (channel_seen) throw ConfigError("duplicate [channel] section");
            channel_seen = true;
            for (const auto& [k, v] : sec.entries) {
                if (k == "model") {
                    cfg.channel = cm_profile(v);
                } else if (k == "cluster_arrival_rate") {
                    cfg.channel.cluster_arrival_rate = parse_double(k, v);
                } else if (k == "ray_arrival_rate") {
                    cfg.channel.ray_arrival_rate = parse_double(k, v);
                } else if (k == "cluster_decay") {
                    cfg.channel.cluster_decay = parse_double(k, v);
                } else if (k == "ray_decay") {
                    cfg.channel.ray_decay = parse_double(k, v);
                } else if (k == "cluster_fading_std_db") {
                    cfg.channel.cluster_fading_std_db = parse_double(k, v);
                } else if (k == "ray_fading_std_db") {
                    cfg.channel.ray_fading_std_db = parse_double(k, v);
                } else if (k == "shadowing_std_db") {
                    cfg.channel.shadowing_std_db = parse_double(k, v);
                } else if (k == "max_delay_ns") {
                    cfg.channel.max_delay_ns = parse_double(k, v);
                } else if (k == "tx_psd_dbm_mhz") {
                    cfg.budget.tx_psd_dbm_mhz = parse_double(k, v);
                } else if (k == "noise_psd_dbm_mhz") {
                    cfg.budget.noise_psd_dbm_mhz = parse_double(k, v);
                } else if (k == "pathloss_db") {
                    cfg.budget.distance_pathloss_db = parse_double(k, v);
                } else if (k == "primary_interference_psd_dbm_mhz") {
                    cfg.budget.primary_interference_psd_dbm_mhz = parse_double(k, v);
                    cfg.budget.primary_interference_enabled = true;
                } else {
                    throw ConfigError("unknown key '" + k + "' in [channel]");
                }
            }
        } else if (sec.name == "solver") {
            for (const auto& [k, v] : sec.entries) {
                if (k == "delta") {
                    cfg.solver.delta = parse_double(k, v);
                } else if (k == "power_tol") {
                    cfg.solver.power_tolerance = parse_double(k, v);
                } else if (k == "max_outer_iters") {
                    cfg.solver.max_outer_iters = static_cast<int>(parse_long(k, v));
                } else if (k == "waterlevel_bisect_tol") {
                    cfg.solver.waterlevel_bisect_tol = parse_double(k, v);
                } else if (k == "assignment_mode") {
                    if (v == "per_band_argmax") {
                        cfg.solver.assignment_mode = AssignmentMode::PerBandArgmax;
                    } else if (v == "one_band_per_user") {
                        cfg.solver.assignment_mode = AssignmentMode::OneBandPerUser;
                    } else {
                        throw ConfigError("bad assignment_mode '" + v + "'");
                    }
                } else if (k == "algo_variant") {
                    if (v == "bisect") {
                        cfg.solver.algo_variant = AlgoVariant::Bisect;
                    } else if (v == "literal_step3c") {
                        cfg.solver.algo_variant = AlgoVariant::LiteralStep3c;
                    } else {
                        throw ConfigError("bad algo_variant '" + v + "'");
                    }
                } else {
                    throw ConfigError("unknown key '" + k + "' in [solver]");
                }
            }
        } else if (sec.name == "run") {
            for (const auto& [k, v] : sec.entries) {
                if (k == "n_trials") {
                    cfg.n_trials = static_cast<int>(parse_long(k, v));
                } else if (k == "seed") {
                    cfg.seed = static_cast<std::uint64_t>(parse_long(k, v));
                } else if (k == "p_t_w") {
                    cfg.p_t_w = parse_double(k, v);
                } else if (k == "algorithms") {
                    if (v == "both") {
                        cfg.run_optimal = cfg.run_suboptimal = true;
                    } else if (v == "optimal") {
                        cfg.run_optimal = true;
                        cfg.run_suboptimal = false;
                    } else if (v == "suboptimal") {
                        cfg.run_optimal = false;
                        cfg.run_suboptimal = true;
                    } else {
                        throw ConfigError("bad algorithms value '" + v + "'");
                    }
                } else if (k == "band_centers_ghz") {
                    cfg.plan.centers_ghz = parse_double_list(k, v);
                } else {
                    throw ConfigError("unknown key '" + k + "' in [run]");
                }
            }
        }
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig load_scenario_config(const std::string& path,
                                    const std::vector<std::string>& overrides) {
    RawConfig raw = load_raw_config(path);
    for (const auto& o : overrides) raw.apply_override(o);
    return build_scenario_config(raw);
}

std::string dump_scenario_config(const ScenarioConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    for (const auto& u : cfg.users) {
        os << "[users]\n"
           << "id = " << u.id << "\n"
           << "class = " << to_string(u.qos_class) << "\n"
           << "rate_mbps = " << u.rate_mbps << "\n"
           << "delay_ms = " << u.delay_ms << "\n";
        if (!std::isnan(u.pathloss_db)) os << "pathloss_db = " << u.pathloss_db << "\n";
    }
    for (const auto& p : cfg.primaries) {
        os << "[primary]\n"
           << "center_ghz = " << p.center_ghz << "\n"
           << "bandwidth_mhz = ";
        for (std::size_t i = 0; i < p.bandwidths_mhz.size(); ++i) {
            os << (i ? "," : "") << p.bandwidths_mhz[i];
        }
        os << "\n";
        if (!std::isnan(p.i_th_w)) os << "i_th_mw = " << p.i_th_w * 1e3 << "\n";
        if (!std::isnan(p.i_th_fraction))
            os << "i_th_fraction = " << p.i_th_fraction << "\n";
    }
    os << "[channel]\n"
       << "model = " << cfg.channel.name << "\n"
       << "cluster_arrival_rate = " << cfg.channel.cluster_arrival_rate << "\n"
       << "ray_arrival_rate = " << cfg.channel.ray_arrival_rate << "\n"
       << "cluster_decay = " << cfg.channel.cluster_decay << "\n"
       << "ray_decay = " << cfg.channel.ray_decay << "\n"
       << "cluster_fading_std_db = " << cfg.channel.cluster_fading_std_db << "\n"
       << "ray_fading_std_db = " << cfg.channel.ray_fading_std_db << "\n"
       << "shadowing_std_db = " << cfg.channel.shadowing_std_db << "\n"
       << "max_delay_ns = " << cfg.channel.max_delay_ns << "\n"
       << "tx_psd_dbm_mhz = " << cfg.budget.tx_psd_dbm_mhz << "\n"
       << "noise_psd_dbm_mhz = " << cfg.budget.noise_psd_dbm_mhz << "\n"
       << "pathloss_db = " << cfg.budget.distance_pathloss_db << "\n";
    if (cfg.budget.primary_interference_enabled) {
        os << "primary_interference_psd_dbm_mhz = "
           << cfg.budget.primary_interference_psd_dbm_mhz << "\n";
    }
    os << "[solver]\n"
       << "delta = " << cfg.solver.delta << "\n"
       << "power_tol = " << cfg.solver.power_tolerance << "\n"
       << "max_outer_iters = " << cfg.solver.max_outer_iters << "\n"
       << "waterlevel_bisect_tol = " << cfg.solver.waterlevel_bisect_tol << "\n"
       << "assignment_mode = "
       << (cfg.solver.assignment_mode == AssignmentMode::PerBandArgmax
               ? "per_band_argmax"
               : "one_band_per_user")
       << "\n"
       << "algo_variant = "
       << (cfg.solver.algo_variant == AlgoVariant::Bisect ? "bisect"
                                                          : "literal_step3c")
       << "\n";
    os << "[run]\n"
       << "n_trials = " << cfg.n_trials << "\n"
       << "seed = " << cfg.seed << "\n"
       << "p_t_w = " << cfg.p_t_w << "\n"
       << "algorithms = "
       << (cfg.run_optimal && cfg.run_suboptimal
               ? "both"
               : (cfg.run_optimal ? "optimal" : "suboptimal"))
       << "\n"
       << "band_centers_ghz = ";
    for (std::size_t i = 0; i < cfg.plan.centers_ghz.size(); ++i) {
        os << (i ? "," : "") << cfg.plan.centers_ghz[i];
    }
    os << "\n";
    return os.str();
}

std::uint64_t config_hash(const ScenarioConfig& cfg) {
    const std::string dump = dump_scenario_config(cfg);
    std::uint64_t h = 1469598103934665603ULL;
    for (const unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace uwb
