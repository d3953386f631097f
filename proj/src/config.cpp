#include "kerramp/config.hpp"

#include "kerramp/error.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace kerramp {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string at_line(int line, const std::string& what) {
    return "line " + std::to_string(line) + ": " + what;
}

double parse_number(std::string_view raw, int line, const std::string& key) {
    const std::string s(raw);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE) {
        throw Error(ErrorKind::ParseError, at_line(line, key + ": '" + s + "' is not a number"));
    }
    return v;
}

int parse_int(std::string_view raw, int line, const std::string& key) {
    const double v = parse_number(raw, line, key);
    if (v != std::floor(v) || std::abs(v) > 2e9) {
        throw Error(ErrorKind::ParseError, at_line(line, key + ": expected an integer"));
    }
    return static_cast<int>(v);
}

std::uint64_t parse_u64(std::string_view raw, int line, const std::string& key) {
    const std::string s(raw);
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (s.empty() || s[0] == '-' || end != s.c_str() + s.size() || errno == ERANGE) {
        throw Error(ErrorKind::ParseError, at_line(line, key + ": expected an unsigned integer"));
    }
    return static_cast<std::uint64_t>(v);
}

std::vector<double> parse_list(std::string_view raw, int line, const std::string& key) {
    std::vector<double> out;
    while (true) {
        const auto comma = raw.find(',');
        out.push_back(parse_number(trim(raw.substr(0, comma)), line, key));
        if (comma == std::string_view::npos) {
            break;
        }
        raw.remove_prefix(comma + 1);
    }
    return out;
}

using Setter = std::function<void(RunConfig&, std::string_view, int)>;

template <typename Get>
Setter number_at(Get get, const char* key) {
    return [get, key](RunConfig& c, std::string_view v, int line) { get(c) = parse_number(v, line, key); };
}

template <typename Get>
Setter int_at(Get get, const char* key) {
    return [get, key](RunConfig& c, std::string_view v, int line) { get(c) = parse_int(v, line, key); };
}

template <typename Get>
Setter list_at(Get get, const char* key) {
    return [get, key](RunConfig& c, std::string_view v, int line) { get(c) = parse_list(v, line, key); };
}

#define KERRAMP_REF(expr) [](RunConfig& c) -> auto& { return expr; }

const std::map<std::string, std::map<std::string, Setter>>& schema() {
    static const std::map<std::string, std::map<std::string, Setter>> table = {
        {"system",
         {{"omega_a", number_at(KERRAMP_REF(c.system.omega_a), "omega_a")},
          {"omega_b", number_at(KERRAMP_REF(c.system.omega_b), "omega_b")},
          {"omega_d", number_at(KERRAMP_REF(c.system.omega_d), "omega_d")},
          {"kappa_a", number_at(KERRAMP_REF(c.system.kappa_a), "kappa_a")},
          {"kappa_b", number_at(KERRAMP_REF(c.system.kappa_b), "kappa_b")},
          {"kappa_g", number_at(KERRAMP_REF(c.system.kappa_g), "kappa_g")},
          {"J", number_at(KERRAMP_REF(c.system.J), "J")},
          {"K", number_at(KERRAMP_REF(c.system.K), "K")}}},
        {"drive",
         {{"N_in", number_at(KERRAMP_REF(c.drive.N_in), "N_in")},
          {"theta_0", number_at(KERRAMP_REF(c.drive.theta_0), "theta_0")},
          {"theta_s", [](RunConfig& c, std::string_view v, int line) {
               c.theta_s = parse_number(v, line, "theta_s");
           }},
          {"omega", number_at(KERRAMP_REF(c.omega), "omega")}}},
        {"kappa_g_sweep",
         {{"start", number_at(KERRAMP_REF(c.kappa_g_sweep.start), "start")},
          {"stop", number_at(KERRAMP_REF(c.kappa_g_sweep.stop), "stop")},
          {"points", int_at(KERRAMP_REF(c.kappa_g_sweep.points), "points")}}},
        {"kappa_a_sweep",
         {{"start", number_at(KERRAMP_REF(c.kappa_a_sweep.start), "start")},
          {"stop", number_at(KERRAMP_REF(c.kappa_a_sweep.stop), "stop")},
          {"points", int_at(KERRAMP_REF(c.kappa_a_sweep.points), "points")},
          {"kappa_n", [](RunConfig& c, std::string_view v, int line) {
               c.kappa_n = parse_number(v, line, "kappa_n");
           }}}},
        {"detuning",
         {{"start", number_at(KERRAMP_REF(c.detuning.start), "start")},
          {"stop", number_at(KERRAMP_REF(c.detuning.stop), "stop")},
          {"points", int_at(KERRAMP_REF(c.detuning.points), "points")}}},
        {"gbp",
         {{"N_in", list_at(KERRAMP_REF(c.gbp_N_in), "N_in")},
          {"K", list_at(KERRAMP_REF(c.gbp_K), "K")}}},
        {"mc",
         {{"dt", [](RunConfig& c, std::string_view v, int line) { c.mc.dt = parse_number(v, line, "dt"); }},
          {"t_max", number_at(KERRAMP_REF(c.mc.t_max), "t_max")},
          {"n_traj", int_at(KERRAMP_REF(c.mc.n_traj), "n_traj")},
          {"burn_in", number_at(KERRAMP_REF(c.mc.burn_in), "burn_in")},
          {"batches", int_at(KERRAMP_REF(c.mc.batches), "batches")},
          {"deltas", list_at(KERRAMP_REF(c.mc.deltas), "deltas")},
          {"mean_field_t_max", number_at(KERRAMP_REF(c.mc.mean_field_t_max), "mean_field_t_max")},
          {"seed", [](RunConfig& c, std::string_view v, int line) { c.seed = parse_u64(v, line, "seed"); }}}},
        {"output",
         {{"path", [](RunConfig& c, std::string_view v, int) { c.output = std::string(v); }}}},
    };
    return table;
}

#undef KERRAMP_REF

void require(bool ok, int line, const std::string& what) {
    if (!ok) {
        throw Error(ErrorKind::ValidationError, line > 0 ? at_line(line, what) : what);
    }
}

void validate_grid(const GridConfig& g, const std::string& name, int line) {
    require(std::isfinite(g.start) && std::isfinite(g.stop), line, name + ": bounds must be finite");
    require(g.points >= 1, line, name + ".points must be >= 1");
    require(g.points == 1 || g.stop > g.start, line, name + ": stop must exceed start");
}

void validate(const RunConfig& c, const std::map<std::string, int>& lines) {
    auto line_of = [&](const std::string& key) {
        const auto it = lines.find(key);
        return it == lines.end() ? 0 : it->second;
    };
    if (!lines.count("system.J")) {
        throw Error(ErrorKind::ValidationError, "J is required in [system]");
    }
    const auto& sys = c.system;
    const std::pair<const char*, double> nonnegative[] = {
        {"kappa_a", sys.kappa_a}, {"kappa_b", sys.kappa_b}, {"kappa_g", sys.kappa_g}, {"J", sys.J}};
    for (const auto& [name, value] : nonnegative) {
        require(std::isfinite(value) && value >= 0.0, line_of(std::string("system.") + name),
                std::string(name) + " must be >= 0 (got " + format_double(value) + ")");
    }
    require(sys.kappa_b > 0.0, line_of("system.kappa_b"), "kappa_b must be > 0");
    const std::pair<const char*, double> finite[] = {
        {"omega_a", sys.omega_a}, {"omega_b", sys.omega_b}, {"omega_d", sys.omega_d}, {"K", sys.K}};
    for (const auto& [name, value] : finite) {
        require(std::isfinite(value), line_of(std::string("system.") + name), std::string(name) + " must be finite");
    }
    require(std::isfinite(c.drive.N_in) && c.drive.N_in >= 0.0, line_of("drive.N_in"), "N_in must be >= 0");
    require(std::isfinite(c.drive.theta_0), line_of("drive.theta_0"), "theta_0 must be finite");
    require(!c.theta_s || std::isfinite(*c.theta_s), line_of("drive.theta_s"), "theta_s must be finite");
    require(std::isfinite(c.omega), line_of("drive.omega"), "omega must be finite");
    validate_grid(c.kappa_g_sweep, "kappa_g_sweep", line_of("kappa_g_sweep.points"));
    validate_grid(c.kappa_a_sweep, "kappa_a_sweep", line_of("kappa_a_sweep.points"));
    validate_grid(c.detuning, "detuning", line_of("detuning.points"));
    require(c.kappa_a_sweep.start >= 0.0, line_of("kappa_a_sweep.start"), "kappa_a_sweep.start must be >= 0");
    require(c.kappa_g_sweep.start >= 0.0, line_of("kappa_g_sweep.start"), "kappa_g_sweep.start must be >= 0");
    require(!c.gbp_N_in.empty(), line_of("gbp.N_in"), "gbp.N_in must not be empty");
    for (double n : c.gbp_N_in) {
        require(n > 0.0, line_of("gbp.N_in"), "gbp.N_in entries must be > 0");
    }
    require(!c.gbp_K.empty(), line_of("gbp.K"), "gbp.K must not be empty");
    require(!c.mc.dt || *c.mc.dt > 0.0, line_of("mc.dt"), "mc.dt must be > 0");
    require(c.mc.t_max > 0.0, line_of("mc.t_max"), "mc.t_max must be > 0");
    require(c.mc.n_traj >= 1, line_of("mc.n_traj"), "mc.n_traj must be >= 1");
    require(c.mc.burn_in >= 0.0 && c.mc.burn_in < 1.0, line_of("mc.burn_in"), "mc.burn_in must lie in [0, 1)");
    require(c.mc.batches >= 1, line_of("mc.batches"), "mc.batches must be >= 1");
    require(!c.mc.deltas.empty(), line_of("mc.deltas"), "mc.deltas must not be empty");
    require(c.mc.mean_field_t_max > 0.0, line_of("mc.mean_field_t_max"), "mc.mean_field_t_max must be > 0");
}

std::string join(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) {
            out += ", ";
        }
        out += format_double(xs[i]);
    }
    return out;
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

RunConfig parse_config(std::string_view text) {
    RunConfig config;
    std::map<std::string, int> seen;
    std::string section;
    int line_no = 0;
    std::istringstream lines{std::string(text)};
    std::string raw;
    while (std::getline(lines, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw Error(ErrorKind::ParseError, at_line(line_no, "unterminated section header"));
            }
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (!schema().count(section)) {
                throw Error(ErrorKind::UnknownKey, at_line(line_no, "unknown section [" + section + "]"));
            }
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorKind::ParseError, at_line(line_no, "expected 'key = value'"));
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw Error(ErrorKind::ParseError, at_line(line_no, "missing key before '='"));
        }
        if (section.empty()) {
            throw Error(ErrorKind::UnknownKey, at_line(line_no, "key '" + key + "' outside any section"));
        }
        const auto& keys = schema().at(section);
        const auto it = keys.find(key);
        if (it == keys.end()) {
            throw Error(ErrorKind::UnknownKey, at_line(line_no, "unknown key '" + key + "' in [" + section + "]"));
        }
        if (value.empty()) {
            throw Error(ErrorKind::ParseError, at_line(line_no, key + ": missing value"));
        }
        const std::string qualified = section + "." + key;
        if (!seen.emplace(qualified, line_no).second) {
            throw Error(ErrorKind::ParseError, at_line(line_no, "duplicate key '" + qualified + "'"));
        }
        it->second(config, value, line_no);
    }
    validate(config, seen);
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::ParseError, "cannot open config file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string to_text(const RunConfig& c) {
    std::ostringstream os;
    const auto& s = c.system;
    os << "[system]\n"
       << "omega_a = " << format_double(s.omega_a) << '\n'
       << "omega_b = " << format_double(s.omega_b) << '\n'
       << "omega_d = " << format_double(s.omega_d) << '\n'
       << "kappa_a = " << format_double(s.kappa_a) << '\n'
       << "kappa_b = " << format_double(s.kappa_b) << '\n'
       << "kappa_g = " << format_double(s.kappa_g) << '\n'
       << "J = " << format_double(s.J) << '\n'
       << "K = " << format_double(s.K) << "\n\n";
    os << "[drive]\n"
       << "N_in = " << format_double(c.drive.N_in) << '\n'
       << "theta_0 = " << format_double(c.drive.theta_0) << '\n';
    if (c.theta_s) {
        os << "theta_s = " << format_double(*c.theta_s) << '\n';
    }
    os << "omega = " << format_double(c.omega) << "\n\n";
    auto grid = [&os](const char* name, const GridConfig& g) {
        os << '[' << name << "]\n"
           << "start = " << format_double(g.start) << '\n'
           << "stop = " << format_double(g.stop) << '\n'
           << "points = " << g.points << '\n';
    };
    grid("kappa_g_sweep", c.kappa_g_sweep);
    os << '\n';
    grid("kappa_a_sweep", c.kappa_a_sweep);
    if (c.kappa_n) {
        os << "kappa_n = " << format_double(*c.kappa_n) << '\n';
    }
    os << '\n';
    grid("detuning", c.detuning);
    os << "\n[gbp]\n"
       << "N_in = " << join(c.gbp_N_in) << '\n'
       << "K = " << join(c.gbp_K) << "\n\n";
    os << "[mc]\n";
    if (c.mc.dt) {
        os << "dt = " << format_double(*c.mc.dt) << '\n';
    }
    os << "t_max = " << format_double(c.mc.t_max) << '\n'
       << "n_traj = " << c.mc.n_traj << '\n'
       << "burn_in = " << format_double(c.mc.burn_in) << '\n'
       << "batches = " << c.mc.batches << '\n'
       << "deltas = " << join(c.mc.deltas) << '\n'
       << "mean_field_t_max = " << format_double(c.mc.mean_field_t_max) << '\n'
       << "seed = " << c.seed << '\n';
    if (!c.output.empty()) {
        os << "\n[output]\npath = " << c.output << '\n';
    }
    return os.str();
}

}  // namespace kerramp
