#include "lislim/config.hpp"

#include <fstream>
#include <sstream>

namespace lislim {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for '" + key + "': " + v);
    }
}

long to_long(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value for '" + key + "': " + v);
    }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected key = value at line " + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "distribution") {
            cfg.distribution.clear();
            for (const auto& tok : split_list(value)) cfg.distribution.push_back(to_double(key, tok));
        } else if (key == "n_grid") {
            cfg.n_grid.clear();
            for (const auto& tok : split_list(value))
                cfg.n_grid.push_back(static_cast<int>(to_long(key, tok)));
        } else if (key == "m_grid") {
            cfg.m_grid.clear();
            for (const auto& tok : split_list(value))
                cfg.m_grid.push_back(static_cast<int>(to_long(key, tok)));
        } else if (key == "samples") {
            cfg.samples = to_long(key, value);
        } else if (key == "T") {
            cfg.T = static_cast<int>(to_long(key, value));
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(to_long(key, value));
        } else if (key == "reference") {
            cfg.reference = value;
        } else if (key == "xi") {
            cfg.xi = to_double(key, value);
        } else if (key == "c") {
            cfg.c = to_double(key, value);
        } else if (key == "output") {
            cfg.output = value;
        } else if (key == "workers") {
            cfg.workers = static_cast<int>(to_long(key, value));
        } else if (key == "m_exponent") {
            cfg.m_exponent = to_double(key, value);
        } else if (key == "k") {
            cfg.k_target = static_cast<int>(to_long(key, value));
        } else if (key == "mc_reference_samples") {
            cfg.mc_reference_samples = to_long(key, value);
        } else if (key == "dump_samples") {
            cfg.dump_samples = value;
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void validate_config(const ExperimentConfig& cfg) {
    for (const int n : cfg.n_grid)
        if (n < 2) throw ConfigError("config: n_grid entries must be >= 2");
    if (cfg.samples < 1000) throw ConfigError("config: samples must be >= 1000");
    if (cfg.T < 2) throw ConfigError("config: T must be >= 2");
    if (cfg.reference != "auto" && cfg.reference != "closed-form" &&
        cfg.reference != "quadrature" && cfg.reference != "monte-carlo")
        throw ConfigError("config: reference must be auto|closed-form|quadrature|monte-carlo");
    if (!(cfg.xi > 0.0) || !(cfg.c > 0.0)) throw ConfigError("config: xi and c must be positive");
}

}  // namespace lislim
