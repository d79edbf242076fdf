#include "q1prep/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "q1prep/bitvec.hpp"

namespace q1 {

const char* run_mode_name(RunMode m) {
    switch (m) {
        case RunMode::McRate: return "mc-rate";
        case RunMode::McErrors: return "mc-errors";
        case RunMode::Analytic: return "analytic";
        case RunMode::Logical: return "logical";
        case RunMode::Compare: return "compare";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

double parse_double(const std::string& s, const std::string& key) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError("bad numeric value for '" + key + "': " + s);
    }
}

uint64_t parse_u64(const std::string& s, const std::string& key) {
    uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw ConfigError("bad integer value for '" + key + "': " + s);
    return v;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (!is_power_of_two(static_cast<uint64_t>(N)) || N < 2)
        throw ConfigError("code.N must be a power of two >= 2");
    const int n = log2_exact(static_cast<uint64_t>(N));
    if (i < 1 || i > N) throw ConfigError("code.i must lie in 1..N");
    if (basis != 'Z' && basis != 'X') throw ConfigError("code.basis must be Z or X");
    if (p_grid.empty()) throw ConfigError("noise.p must list at least one value");
    for (double p : p_grid)
        if (p < 0.0 || p > 1.0) throw ConfigError("noise.p values must lie in [0,1]");
    if (T_grid.empty()) throw ConfigError("factory.T must list at least one value");
    for (uint64_t T : T_grid)
        if (T < 1) throw ConfigError("factory.T values must be >= 1");
    if (!sched.empty()) {
        int prev = 0;
        for (int l : sched) {
            if (l <= prev || l > n) throw ConfigError("factory.sched must be strictly increasing in 1..n");
            prev = l;
        }
        if (sched.back() != n) throw ConfigError("factory.sched must end at log2(N)");
    }
    if (trials < 1) throw ConfigError("run.trials must be >= 1");
    if (de_samples < 1) throw ConfigError("run.de_samples must be >= 1");
    if (threads < 1) throw ConfigError("run.threads must be >= 1");
    if (mapping != "default" && mapping != "prep-only")
        throw ConfigError("run.mapping must be one of: default, prep-only");
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    bool have_sched = false;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        const size_t cmt = line.find_first_of("#;");
        if (cmt != std::string::npos) line = line.substr(0, cmt);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": bad section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "code" && section != "noise" && section != "factory" && section != "run")
                throw ConfigError("unknown section [" + section + "]");
            continue;
        }
        const size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string qual = section + "." + key;

        if (qual == "code.N") cfg.N = static_cast<int>(parse_u64(value, qual));
        else if (qual == "code.i") cfg.i = static_cast<int>(parse_u64(value, qual));
        else if (qual == "code.basis") {
            if (value != "Z" && value != "X") throw ConfigError("code.basis must be Z or X");
            cfg.basis = value[0];
        } else if (qual == "noise.p") {
            cfg.p_grid.clear();
            for (const auto& tok : split_list(value)) cfg.p_grid.push_back(parse_double(tok, qual));
        } else if (qual == "factory.T") {
            cfg.T_grid.clear();
            for (const auto& tok : split_list(value)) cfg.T_grid.push_back(parse_u64(tok, qual));
        } else if (qual == "factory.sched") {
            cfg.sched.clear();
            for (const auto& tok : split_list(value)) cfg.sched.push_back(static_cast<int>(parse_u64(tok, qual)));
            have_sched = true;
        } else if (qual == "run.trials") cfg.trials = parse_u64(value, qual);
        else if (qual == "run.seed") cfg.seed = parse_u64(value, qual);
        else if (qual == "run.mapping") cfg.mapping = value;
        else if (qual == "run.de_samples") cfg.de_samples = parse_u64(value, qual);
        else if (qual == "run.threads") cfg.threads = static_cast<int>(parse_u64(value, qual));
        else if (qual == "run.output") cfg.output = value;
        else throw ConfigError("unknown key '" + qual + "'");
    }
    if (cfg.N == 0) throw ConfigError("missing code.N");
    if (cfg.i == 0) throw ConfigError("missing code.i");
    if (cfg.p_grid.empty()) throw ConfigError("missing noise.p");
    if (!have_sched && is_power_of_two(static_cast<uint64_t>(cfg.N)) && cfg.N >= 2)
        cfg.sched = {log2_exact(static_cast<uint64_t>(cfg.N))};
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string config_hash(const ExperimentConfig& cfg) {
    std::ostringstream canon;
    canon << "N=" << cfg.N << ";i=" << cfg.i << ";basis=" << cfg.basis << ";p=";
    for (double p : cfg.p_grid) canon << p << ",";
    canon << ";T=";
    for (uint64_t T : cfg.T_grid) canon << T << ",";
    canon << ";sched=";
    for (int l : cfg.sched) canon << l << ",";
    canon << ";trials=" << cfg.trials << ";seed=" << cfg.seed << ";mapping=" << cfg.mapping
          << ";de_samples=" << cfg.de_samples;
    uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : canon.str()) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int k = 0; k < 16; ++k) buf[k] = hex[(h >> (60 - 4 * k)) & 0xf];
    buf[16] = '\0';
    return std::string(buf);
}

}  // namespace q1
