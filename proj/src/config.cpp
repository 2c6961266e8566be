#include "pimc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <set>
#include <sstream>

#include "pimc/errors.hpp"
#include "pimc/io_util.hpp"

namespace pimc {

namespace {

const std::set<std::string> kKnownKeys = {
    "action",     "potential",   "omega",            "A",
    "n_beads",    "tau",         "mass",             "delta",
    "hard_wall",  "tune_acceptance", "burn_in",      "measure",
    "thin",       "seeds",       "output_dir",       "bins",
    "r_max",      "collapse_epsilon", "init",        "init_point",
    "init_r_lo",  "init_r_hi",   "dump_paths",
};

std::string trim(std::string s) {
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

double to_double(const std::string& key, const std::string& raw) {
    double v = 0.0;
    const auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
    if (res.ec != std::errc{} || res.ptr != raw.data() + raw.size())
        throw ConfigError("key '" + key + "': cannot parse number from '" + raw + "'");
    return v;
}

std::uint64_t to_u64(const std::string& key, const std::string& raw) {
    if (!raw.empty() && raw[0] == '-')
        throw ConfigError("key '" + key + "': must be non-negative, got '" + raw + "'");
    std::uint64_t v = 0;
    const auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
    if (res.ec != std::errc{} || res.ptr != raw.data() + raw.size())
        throw ConfigError("key '" + key + "': cannot parse integer from '" + raw + "'");
    return v;
}

bool to_bool(const std::string& key, const std::string& raw) {
    if (raw == "true") return true;
    if (raw == "false") return false;
    throw ConfigError("key '" + key + "': expected true or false, got '" + raw + "'");
}

std::vector<std::string> split_array(const std::string& key, const std::string& raw) {
    std::string body = trim(raw);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
        throw ConfigError("key '" + key + "': expected an array like [a, b, c]");
    body = body.substr(1, body.size() - 2);
    std::vector<std::string> items;
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

std::string unquote(std::string s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
}

}  // namespace

ConfigKv parse_config_kv(const std::string& text) {
    ConfigKv kv;
    std::stringstream ss(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        // strip comments (a '#' inside double quotes is kept)
        bool in_quotes = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            if (line[i] == '"') in_quotes = !in_quotes;
            if (line[i] == '#' && !in_quotes) {
                line.resize(i);
                break;
            }
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(line_no) + ": empty key");
        kv[key] = value;  // last occurrence wins
    }
    return kv;
}

ExperimentConfig config_from_kv(const ConfigKv& kv) {
    for (const auto& [key, value] : kv) {
        (void)value;
        if (!kKnownKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");
    }
    const auto has = [&kv](const char* k) { return kv.count(k) != 0; };
    const auto raw = [&kv](const char* k) { return kv.at(k); };
    const auto require = [&](const char* k) {
        if (!has(k)) throw ConfigError(std::string("missing required key '") + k + "'");
        return raw(k);
    };

    ExperimentConfig cfg;

    const std::string action = unquote(require("action"));
    if (action == "primitive")
        cfg.action = ActionKind::Primitive;
    else if (action == "constant_force")
        cfg.action = ActionKind::ConstantForce;
    else if (action == "simplified")
        cfg.action = ActionKind::Simplified;
    else
        throw ConfigError("key 'action': expected primitive, constant_force or simplified, got '" +
                          action + "'");

    const std::string potential = unquote(require("potential"));
    if (potential == "coulomb")
        cfg.potential = Potential::Kind::Coulomb;
    else if (potential == "harmonic")
        cfg.potential = Potential::Kind::Harmonic;
    else if (potential == "effective")
        cfg.potential = Potential::Kind::Effective;
    else if (potential == "free")
        cfg.potential = Potential::Kind::Free;
    else
        throw ConfigError("key 'potential': expected coulomb, harmonic, effective or free, got '" +
                          potential + "'");

    cfg.n_beads = to_u64("n_beads", require("n_beads"));
    cfg.tau = to_double("tau", require("tau"));

    for (const std::string& s : split_array("seeds", require("seeds")))
        cfg.seeds.push_back(to_u64("seeds", s));

    if (has("omega")) cfg.omega = to_double("omega", raw("omega"));
    if (has("A")) cfg.repulsion_a = to_double("A", raw("A"));
    if (has("mass")) cfg.mass = to_double("mass", raw("mass"));
    if (has("delta")) cfg.delta = to_double("delta", raw("delta"));
    if (has("hard_wall")) cfg.hard_wall = to_double("hard_wall", raw("hard_wall"));
    if (has("tune_acceptance")) cfg.tune_acceptance = to_bool("tune_acceptance", raw("tune_acceptance"));
    if (has("burn_in")) cfg.burn_in = to_u64("burn_in", raw("burn_in"));
    if (has("measure")) cfg.measure = to_u64("measure", raw("measure"));
    if (has("thin")) cfg.thin = to_u64("thin", raw("thin"));
    if (has("output_dir")) cfg.output_dir = unquote(raw("output_dir"));
    if (has("bins")) cfg.bins = to_u64("bins", raw("bins"));
    if (has("r_max")) cfg.r_max = to_double("r_max", raw("r_max"));
    if (has("collapse_epsilon")) cfg.collapse_epsilon = to_double("collapse_epsilon", raw("collapse_epsilon"));
    if (has("dump_paths")) cfg.dump_paths = to_bool("dump_paths", raw("dump_paths"));

    std::string init_kind = has("init") ? unquote(raw("init")) : "shell";
    if (init_kind == "shell") {
        const double lo = has("init_r_lo") ? to_double("init_r_lo", raw("init_r_lo")) : 0.5;
        const double hi = has("init_r_hi") ? to_double("init_r_hi", raw("init_r_hi")) : 2.0;
        if (!(lo >= 0.0) || !(hi > lo))
            throw ConfigError("keys 'init_r_lo'/'init_r_hi': need 0 <= r_lo < r_hi");
        cfg.init = InitSpec::shell(lo, hi);
    } else if (init_kind == "point") {
        Vec3 p{};
        if (has("init_point")) {
            const auto items = split_array("init_point", raw("init_point"));
            if (items.size() != 3)
                throw ConfigError("key 'init_point': expected exactly three coordinates");
            p = {to_double("init_point", items[0]), to_double("init_point", items[1]),
                 to_double("init_point", items[2])};
        }
        cfg.init = InitSpec::constant(p);
    } else {
        throw ConfigError("key 'init': expected shell or point, got '" + init_kind + "'");
    }

    // field invariants
    if (!(cfg.tau > 0.0)) throw ConfigError("key 'tau': must be positive");
    if (!(cfg.mass > 0.0)) throw ConfigError("key 'mass': must be positive");
    if (cfg.n_beads < 2) throw ConfigError("key 'n_beads': must be at least 2");
    if (!(cfg.delta > 0.0)) throw ConfigError("key 'delta': must be positive");
    if (cfg.hard_wall < 0.0) throw ConfigError("key 'hard_wall': must be non-negative");
    if (cfg.thin == 0) throw ConfigError("key 'thin': must be at least 1");
    if (cfg.seeds.empty()) throw ConfigError("key 'seeds': need at least one seed");
    if (cfg.bins == 0) throw ConfigError("key 'bins': must be at least 1");
    if (!(cfg.r_max > 0.0)) throw ConfigError("key 'r_max': must be positive");
    if (!(cfg.collapse_epsilon > 0.0)) throw ConfigError("key 'collapse_epsilon': must be positive");
    if (!(cfg.repulsion_a > 0.0)) throw ConfigError("key 'A': must be positive");

    // cross-field rules
    const bool uses_a =
        cfg.action == ActionKind::Simplified || cfg.potential == Potential::Kind::Effective;
    if (has("A") && !uses_a)
        throw ConfigError("key 'A': meaningless for the " + to_string(cfg.action) +
                          " action over the " + potential + " potential");
    if (has("omega") && cfg.potential != Potential::Kind::Harmonic)
        throw ConfigError("key 'omega': only meaningful for the harmonic potential");
    if (cfg.potential == Potential::Kind::Harmonic && !(cfg.omega > 0.0))
        throw ConfigError("key 'omega': must be positive for the harmonic potential");
    if (cfg.action == ActionKind::Simplified && cfg.potential != Potential::Kind::Coulomb &&
        cfg.potential != Potential::Kind::Effective)
        throw ConfigError("the simplified action requires the coulomb or effective potential");
    if (cfg.init.kind == InitSpec::Kind::Constant && norm2(cfg.init.point) == 0.0 &&
        (cfg.potential == Potential::Kind::Coulomb || cfg.potential == Potential::Kind::Effective))
        throw ConfigError("key 'init_point': the origin is singular under this potential");

    return cfg;
}

ExperimentConfig parse_config(const std::string& text) {
    return config_from_kv(parse_config_kv(text));
}

Potential ExperimentConfig::make_potential() const {
    if (action == ActionKind::Simplified || potential == Potential::Kind::Effective)
        return Potential::effective(repulsion_a, tau, mass);
    switch (potential) {
        case Potential::Kind::Coulomb: return Potential::coulomb();
        case Potential::Kind::Harmonic: return Potential::harmonic(omega, mass);
        case Potential::Kind::Free: return Potential::free();
        case Potential::Kind::Effective: break;  // handled above
    }
    return Potential::effective(repulsion_a, tau, mass);
}

Action ExperimentConfig::make_action() const { return Action(action, make_potential(), disc()); }

std::string ExperimentConfig::echo() const {
    std::ostringstream out;
    out << "action = " << to_string(action) << '\n';
    const char* pot_name = potential == Potential::Kind::Coulomb     ? "coulomb"
                           : potential == Potential::Kind::Harmonic  ? "harmonic"
                           : potential == Potential::Kind::Effective ? "effective"
                                                                     : "free";
    out << "potential = " << pot_name << '\n';
    if (potential == Potential::Kind::Harmonic) out << "omega = " << format_double(omega) << '\n';
    if (action == ActionKind::Simplified || potential == Potential::Kind::Effective)
        out << "A = " << format_double(repulsion_a) << '\n';
    out << "n_beads = " << n_beads << '\n';
    out << "tau = " << format_double(tau) << '\n';
    out << "mass = " << format_double(mass) << '\n';
    out << "delta = " << format_double(delta) << '\n';
    out << "hard_wall = " << format_double(hard_wall) << '\n';
    out << "tune_acceptance = " << (tune_acceptance ? "true" : "false") << '\n';
    out << "burn_in = " << burn_in << '\n';
    out << "measure = " << measure << '\n';
    out << "thin = " << thin << '\n';
    out << "seeds = [";
    for (std::size_t i = 0; i < seeds.size(); ++i) out << (i ? ", " : "") << seeds[i];
    out << "]\n";
    out << "output_dir = \"" << output_dir << "\"\n";
    out << "bins = " << bins << '\n';
    out << "r_max = " << format_double(r_max) << '\n';
    out << "collapse_epsilon = " << format_double(collapse_epsilon) << '\n';
    if (init.kind == InitSpec::Kind::Shell) {
        out << "init = shell\n";
        out << "init_r_lo = " << format_double(init.r_lo) << '\n';
        out << "init_r_hi = " << format_double(init.r_hi) << '\n';
    } else {
        out << "init = point\n";
        out << "init_point = [" << format_double(init.point.x) << ", "
            << format_double(init.point.y) << ", " << format_double(init.point.z) << "]\n";
    }
    out << "dump_paths = " << (dump_paths ? "true" : "false") << '\n';
    return out.str();
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
    const auto init_eq = [](const InitSpec& x, const InitSpec& y) {
        if (x.kind != y.kind) return false;
        if (x.kind == InitSpec::Kind::Constant) return x.point == y.point;
        return x.r_lo == y.r_lo && x.r_hi == y.r_hi;
    };
    return a.action == b.action && a.potential == b.potential && a.omega == b.omega &&
           a.repulsion_a == b.repulsion_a && a.n_beads == b.n_beads && a.tau == b.tau &&
           a.mass == b.mass && a.delta == b.delta && a.hard_wall == b.hard_wall &&
           a.tune_acceptance == b.tune_acceptance && a.burn_in == b.burn_in &&
           a.measure == b.measure && a.thin == b.thin && a.seeds == b.seeds &&
           a.output_dir == b.output_dir && a.bins == b.bins && a.r_max == b.r_max &&
           a.collapse_epsilon == b.collapse_epsilon && init_eq(a.init, b.init) &&
           a.dump_paths == b.dump_paths;
}

}  // namespace pimc
