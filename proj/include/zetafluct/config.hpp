#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace zetafluct {

// Run configuration shared by the CLI commands.  Populated from a
// line-oriented key=value file and overridden by flags.
struct RunConfig {
    std::string cache_dir = "zeros-cache";
    std::string out_dir = "out";
    std::int64_t window_n = 100000;
    double theta = 1.0;
    std::vector<double> xi_list = {-1.0, 0.0, 1.0};
    std::vector<double> beta_list = {0.25, 0.5, 1.0, 2.0};
    double x_cutoff = 100.0;

    /// Cache dir resolution order: flag > env ZETA_FLUCT_CACHE > config file.
    static std::string env_cache_override() {
        const char* env = std::getenv("ZETA_FLUCT_CACHE");
        return env ? std::string(env) : std::string();
    }
};

inline std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

/// key=value lines; '#' comments and blank lines ignored.
inline std::map<std::string, std::string> parse_key_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        const auto eq = line.find('=', start);
        if (eq == std::string::npos)
            throw std::runtime_error("config: missing '=' at " + path + ":" +
                                     std::to_string(lineno));
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
        };
        kv[trim(line.substr(start, eq - start))] = trim(line.substr(eq + 1));
    }
    return kv;
}

}  // namespace zetafluct
