#include "uwb/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace uwb {

std::string format_number(double v) {
    if (!std::isfinite(v)) {
        throw Error("attempted to emit a non-finite number");
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string trials_csv(const MetricsReport& report) {
    std::ostringstream os;
    os << "algorithm,trial,bandwidth_mhz,user_id,class,rate_target_mbps,"
          "rate_achieved_mbps,rate_satisfaction,power_alloc_w,power_red_w,"
          "power_satisfaction,i_before_mw,i_after_mw,i_reduction_ratio,flags\n";
    for (const auto& r : report.rows) {
        os << r.algorithm << ',' << r.trial << ',' << format_number(r.bandwidth_mhz)
           << ',' << r.user_id << ',' << to_string(r.qos_class) << ','
           << format_number(r.rate_target_mbps) << ','
           << format_number(r.rate_achieved_mbps) << ','
           << format_number(r.rate_satisfaction) << ','
           << format_number(r.power_alloc_w) << ',' << format_number(r.power_red_w)
           << ',' << format_number(r.power_satisfaction) << ','
           << format_number(r.i_before_w * 1e3) << ','
           << format_number(r.i_after_w * 1e3) << ','
           << format_number(r.i_reduction_ratio) << ','
           << (r.interferer ? "INTERFERER" : "") << (r.interferer && !r.flags.empty() ? ";" : "")
           << r.flags << '\n';
    }
    return os.str();
}

std::string summary_csv(const MetricsReport& report) {
    std::ostringstream os;
    os << "algorithm,bandwidth_mhz,class,mean_rate_satisfaction,"
          "std_rate_satisfaction,mean_power_satisfaction,std_power_satisfaction,"
          "mean_rate_satisfaction_all,mean_power_satisfaction_all,"
          "class_i_reduction_ratio,n_interferer_rows,n_rows,n_still_over,"
          "n_infeasible,n_max_iters\n";
    for (const auto& s : report.summary) {
        os << s.algorithm << ',' << format_number(s.bandwidth_mhz) << ','
           << to_string(s.qos_class) << ','
           << format_number(s.mean_rate_satisfaction) << ','
           << format_number(s.std_rate_satisfaction) << ','
           << format_number(s.mean_power_satisfaction) << ','
           << format_number(s.std_power_satisfaction) << ','
           << format_number(s.mean_rate_satisfaction_all) << ','
           << format_number(s.mean_power_satisfaction_all) << ','
           << format_number(s.class_i_reduction_ratio) << ','
           << s.n_interferer_rows << ',' << s.n_rows << ',' << s.n_still_over
           << ',' << s.n_infeasible << ',' << s.n_max_iters << '\n';
    }
    return os.str();
}

std::string run_manifest(const ScenarioConfig& cfg) {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["seed"] = cfg.seed;
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg)));
    j["config_hash"] = hash;
    j["resolved_config"] = dump_scenario_config(cfg);
    return j.dump(2) + "\n";
}

void write_run_outputs(const std::string& out_dir, const ScenarioConfig& cfg,
                       const MetricsReport& report) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw Error("cannot create output directory '" + out_dir + "'");
    const auto write = [&](const std::string& name, const std::string& content) {
        const fs::path p = fs::path(out_dir) / name;
        std::ofstream f(p, std::ios::binary);
        if (!f) throw Error("cannot open '" + p.string() + "' for writing");
        f << content;
        if (!f) throw Error("write failed for '" + p.string() + "'");
    };
    write("trials.csv", trials_csv(report));
    write("summary.csv", summary_csv(report));
    write("manifest.json", run_manifest(cfg));
}

} // namespace uwb
