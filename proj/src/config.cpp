#include "nsf/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "nsf/util.hpp"

namespace nsf {

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& msg) {
    throw std::runtime_error(where + ": " + msg);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_double(const std::string& value, const std::string& where) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE)
        parse_fail(where, "expected a number, got '" + value + "'");
    return v;
}

long long parse_int(const std::string& value, const std::string& where) {
    errno = 0;
    char* end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE)
        parse_fail(where, "expected an integer, got '" + value + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& value, const std::string& where) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0' || errno == ERANGE || value.front() == '-')
        parse_fail(where, "expected a nonnegative integer, got '" + value + "'");
    return v;
}

bool parse_bool(const std::string& value, const std::string& where) {
    if (value == "on" || value == "true" || value == "1") return true;
    if (value == "off" || value == "false" || value == "0") return false;
    parse_fail(where, "expected on/off, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = value.find(',', start);
        parts.emplace_back(trim(std::string_view(value).substr(
            start, comma == std::string::npos ? std::string::npos : comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return parts;
}

std::vector<double> parse_double_list(const std::string& value, const std::string& where) {
    std::vector<double> out;
    for (const std::string& part : split_list(value)) out.push_back(parse_double(part, where));
    return out;
}

std::vector<int> parse_int_list(const std::string& value, const std::string& where) {
    std::vector<int> out;
    for (const std::string& part : split_list(value)) {
        const long long v = parse_int(part, where);
        out.push_back(static_cast<int>(v));
    }
    return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"dim", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.dim = static_cast<int>(parse_int(v, w));
         }},
        {"points", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.points = parse_int_list(v, w);
         }},
        {"box_length", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.box_length = parse_double_list(v, w);
         }},
        {"stencil_order", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.stencil_order = static_cast<int>(parse_int(v, w));
         }},
        {"t_end", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.t_end = parse_double(v, w);
         }},
        {"cfl", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.cfl = parse_double(v, w);
         }},
        {"rho_floor", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.rho_floor = parse_double(v, w);
         }},
        {"max_steps", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.max_steps = parse_int(v, w);
         }},
        {"dt_recompute_every", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.dt_recompute_every = static_cast<int>(parse_int(v, w));
         }},
        {"cadence", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.cadence = static_cast<int>(parse_int(v, w));
         }},
        {"snapshot_every", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.snapshot_every = static_cast<int>(parse_int(v, w));
         }},
        {"species", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.species = static_cast<int>(parse_int(v, w));
         }},
        {"molar_mass", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.molar_mass = parse_double_list(v, w);
         }},
        {"formation_energy", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.formation_energy = parse_double_list(v, w);
         }},
        {"formation_entropy", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.formation_entropy = parse_double_list(v, w);
         }},
        {"c_v", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.c_v = parse_double(v, w);
         }},
        {"cold_c1", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.cold_c1 = parse_double(v, w);
         }},
        {"cold_c2", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.cold_c2 = parse_double(v, w);
         }},
        {"cold_gamma_minus", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.cold_gamma_minus = parse_double(v, w);
         }},
        {"cold_gamma_plus", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.cold_gamma_plus = parse_double(v, w);
         }},
        {"viscosity_mu0", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.viscosity_mu0 = parse_double(v, w);
         }},
        {"viscosity_mu1", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.viscosity_mu1 = parse_double(v, w);
         }},
        {"mu_prime_lower", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.mu_prime_lower = parse_double(v, w);
         }},
        {"nu_mode", [](RunConfig& c, const std::string& v, const std::string&) {
             c.nu_mode = v;
         }},
        {"nu_constant", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.nu_constant = parse_double(v, w);
         }},
        {"kappa0", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.kappa0 = parse_double(v, w);
         }},
        {"kappa0_lower", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.kappa0_lower = parse_double(v, w);
         }},
        {"kappa0_upper", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.kappa0_upper = parse_double(v, w);
         }},
        {"conductivity_alpha", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.conductivity_alpha = parse_double(v, w);
         }},
        {"d0", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.d0 = parse_double(v, w);
         }},
        {"d0_lower", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.d0_lower = parse_double(v, w);
         }},
        {"d0_upper", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.d0_upper = parse_double(v, w);
         }},
        {"kinetics", [](RunConfig& c, const std::string& v, const std::string&) {
             c.kinetics = v;
         }},
        {"pairwise_donor", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.pairwise_donor = static_cast<int>(parse_int(v, w));
         }},
        {"pairwise_acceptor", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.pairwise_acceptor = static_cast<int>(parse_int(v, w));
         }},
        {"pairwise_rate", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.pairwise_rate = parse_double(v, w);
         }},
        {"omega_lower", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.omega_lower = parse_double(v, w);
         }},
        {"omega_upper", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.omega_upper = parse_double(v, w);
         }},
        {"initial_condition", [](RunConfig& c, const std::string& v, const std::string&) {
             c.initial_condition = v;
         }},
        {"rho0", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.rho0 = parse_double(v, w);
         }},
        {"theta0", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.theta0 = parse_double(v, w);
         }},
        {"u0", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.u0 = parse_double_list(v, w);
         }},
        {"Y0", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.Y0 = parse_double_list(v, w);
         }},
        {"perturbation_amplitude", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.perturbation_amplitude = parse_double(v, w);
         }},
        {"y_amplitude", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.y_amplitude = parse_double(v, w);
         }},
        {"mixing_y_mid", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.mixing_y_mid = parse_double(v, w);
         }},
        {"mixing_y_amplitude", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.mixing_y_amplitude = parse_double(v, w);
         }},
        {"mixing_width", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.mixing_width = parse_double(v, w);
         }},
        {"mms_amplitude", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.mms_amplitude = parse_double(v, w);
         }},
        {"mms_wave_speed", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.mms_wave_speed = parse_double(v, w);
         }},
        {"seed", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.seed = parse_u64(v, w);
         }},
        {"output_dir", [](RunConfig& c, const std::string& v, const std::string&) {
             c.output_dir = v;
         }},
        {"extended_diagnostics", [](RunConfig& c, const std::string& v, const std::string& w) {
             c.extended_diagnostics = parse_bool(v, w);
         }},
    };
    return table;
}

template <class T>
void broadcast(std::vector<T>& list, int target, const char* key) {
    if (static_cast<int>(list.size()) == target) return;
    if (list.size() == 1) {
        list.assign(static_cast<std::size_t>(target), list[0]);
        return;
    }
    throw std::invalid_argument(std::string(key) + " must list 1 or " + std::to_string(target) +
                                " values");
}

// Resolves broadcast lists once dim and species are known. Per-species
// keys the file never mentioned get canonical defaults for any species
// count: masses 1..n, zero formation constants, equal mass fractions.
void finalize_lists(RunConfig& cfg, const std::set<std::string>& seen) {
    if (cfg.dim < 1 || cfg.dim > 3) throw std::invalid_argument("dim must be 1, 2, or 3");
    if (cfg.species < 1) throw std::invalid_argument("species must be >= 1");
    const auto n = static_cast<std::size_t>(cfg.species);
    if (!seen.count("molar_mass")) {
        cfg.molar_mass.resize(n);
        for (std::size_t k = 0; k < n; ++k) cfg.molar_mass[k] = static_cast<double>(k + 1);
    }
    if (!seen.count("formation_energy")) cfg.formation_energy.assign(n, 0.0);
    if (!seen.count("formation_entropy")) cfg.formation_entropy.assign(n, 0.0);
    broadcast(cfg.points, cfg.dim, "points");
    broadcast(cfg.box_length, cfg.dim, "box_length");
    broadcast(cfg.u0, cfg.dim, "u0");
    broadcast(cfg.molar_mass, cfg.species, "molar_mass");
    broadcast(cfg.formation_energy, cfg.species, "formation_energy");
    broadcast(cfg.formation_entropy, cfg.species, "formation_entropy");
    if (cfg.Y0.empty())
        cfg.Y0.assign(n, 1.0 / cfg.species);
    else
        broadcast(cfg.Y0, cfg.species, "Y0");
}

}  // namespace

Grid RunConfig::make_run_grid() const { return make_grid(dim, points, box_length); }

MixtureSpec RunConfig::mixture() const {
    MixtureSpec mix;
    mix.n = species;
    mix.molar_mass = molar_mass;
    mix.formation_energy = formation_energy;
    mix.formation_entropy = formation_entropy;
    mix.c_v = c_v;
    mix.cold = ColdPressureParams{cold_c1, cold_c2, cold_gamma_minus, cold_gamma_plus};
    return mix;
}

TransportSpec RunConfig::transport_spec() const {
    TransportSpec t;
    t.viscosity.mu0 = viscosity_mu0;
    t.viscosity.mu1 = viscosity_mu1;
    t.mu_prime_lower = mu_prime_lower;
    t.nu_mode = nu_mode == "constant" ? TransportSpec::NuMode::constant_override
                                      : TransportSpec::NuMode::derived;
    t.nu_constant = nu_constant;
    t.kappa0 = kappa0;
    t.kappa0_lower = kappa0_lower;
    t.kappa0_upper = kappa0_upper;
    t.alpha = conductivity_alpha;
    t.d0 = d0;
    t.d0_lower = d0_lower;
    t.d0_upper = d0_upper;
    return t;
}

KineticsSpec RunConfig::kinetics_spec() const {
    KineticsSpec k;
    k.kind = kinetics == "pairwise" ? KineticsSpec::Kind::pairwise_exchange
                                    : KineticsSpec::Kind::none;
    k.donor = pairwise_donor;
    k.acceptor = pairwise_acceptor;
    k.rate = pairwise_rate;
    k.omega_lower = omega_lower;
    k.omega_upper = omega_upper;
    return k;
}

void RunConfig::validate() const {
    make_run_grid();  // throws on bad dim/points/box_length
    if (stencil_order != 2 && stencil_order != 4)
        throw std::invalid_argument("stencil_order must be 2 or 4");
    if (!(t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
    if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0, 1]");
    if (!(rho_floor > 0.0)) throw std::invalid_argument("rho_floor must be positive");
    if (max_steps < 0) throw std::invalid_argument("max_steps must be >= 0");
    if (dt_recompute_every < 0) throw std::invalid_argument("dt_recompute_every must be >= 0");
    if (cadence < 1) throw std::invalid_argument("cadence must be >= 1");
    if (snapshot_every < 0) throw std::invalid_argument("snapshot_every must be >= 0");

    mixture().validate();

    if (nu_mode != "derived" && nu_mode != "constant")
        throw std::invalid_argument("nu_mode must be derived or constant");
    transport_spec().validate();

    if (kinetics != "none" && kinetics != "pairwise")
        throw std::invalid_argument("kinetics must be none or pairwise");
    if (kinetics == "pairwise") kinetics_spec().validate(species);

    if (initial_condition != "uniform_perturbation" && initial_condition != "mixing_layer" &&
        initial_condition != "manufactured")
        throw std::invalid_argument(
            "initial_condition must be one of uniform_perturbation, mixing_layer, manufactured");
    if (!(rho0 > 0.0)) throw std::invalid_argument("rho0 must be positive");
    if (!(theta0 > 0.0)) throw std::invalid_argument("theta0 must be positive");
    double ysum = 0.0;
    for (double y : Y0) {
        if (y < 0.0) throw std::invalid_argument("Y0 entries must be nonnegative");
        ysum += y;
    }
    if (std::abs(ysum - 1.0) > 1e-10) throw std::invalid_argument("Y0 must sum to 1");
    if (perturbation_amplitude < 0.0)
        throw std::invalid_argument("perturbation_amplitude must be >= 0");
    if (y_amplitude < 0.0) throw std::invalid_argument("y_amplitude must be >= 0");
    if (initial_condition == "mixing_layer") {
        if (species != 2) throw std::invalid_argument("mixing_layer requires exactly 2 species");
        if (!(mixing_width > 0.0)) throw std::invalid_argument("mixing_width must be positive");
        if (!(mixing_y_mid - std::abs(mixing_y_amplitude) > 0.0 &&
              mixing_y_mid + std::abs(mixing_y_amplitude) < 1.0))
            throw std::invalid_argument("mixing_layer mass fraction must stay inside (0, 1)");
    }
    if (initial_condition == "manufactured") {
        if (kinetics != "none")
            throw std::invalid_argument("manufactured runs require null kinetics");
        if (dim != 1) throw std::invalid_argument("manufactured solutions are one-dimensional");
        if (!(mms_amplitude >= 0.0)) throw std::invalid_argument("mms_amplitude must be >= 0");
        // The cold pressure is only C^1 at the reference density; a band
        // crossing it would spoil the measured convergence orders.
        if (std::abs(rho0 - 1.0) <= mms_amplitude)
            throw std::invalid_argument(
                "manufactured density band must stay on one side of the reference density 1");
        for (double y : Y0)
            if (species >= 2 && !(y - mms_amplitude > 0.0 && y + mms_amplitude < 1.0))
                throw std::invalid_argument(
                    "manufactured mass fractions must stay inside (0, 1)");
    }
}

RunConfig parse_config(std::string_view text, const std::string& name) {
    RunConfig cfg;
    std::set<std::string> seen;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::string where = name + ":" + std::to_string(line_no);
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) parse_fail(where, "expected key = value");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) parse_fail(where, "empty key");

        const auto it = setters().find(key);
        if (it == setters().end()) parse_fail(where, "unknown key '" + key + "'");
        if (!seen.insert(key).second) parse_fail(where, "duplicate key '" + key + "'");
        it->second(cfg, value, where + ": " + key);
    }
    finalize_lists(cfg, seen);
    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

namespace {

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_double(v[i]);
    }
    return out;
}

std::string join(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

}  // namespace

std::string serialize_config(const RunConfig& c) {
    std::string s;
    auto kv = [&s](const char* key, const std::string& value) {
        s += key;
        s += " = ";
        s += value;
        s += '\n';
    };
    kv("dim", std::to_string(c.dim));
    kv("points", join(c.points));
    kv("box_length", join(c.box_length));
    kv("stencil_order", std::to_string(c.stencil_order));
    kv("t_end", format_double(c.t_end));
    kv("cfl", format_double(c.cfl));
    kv("rho_floor", format_double(c.rho_floor));
    kv("max_steps", std::to_string(c.max_steps));
    kv("dt_recompute_every", std::to_string(c.dt_recompute_every));
    kv("cadence", std::to_string(c.cadence));
    kv("snapshot_every", std::to_string(c.snapshot_every));
    kv("species", std::to_string(c.species));
    kv("molar_mass", join(c.molar_mass));
    kv("formation_energy", join(c.formation_energy));
    kv("formation_entropy", join(c.formation_entropy));
    kv("c_v", format_double(c.c_v));
    kv("cold_c1", format_double(c.cold_c1));
    kv("cold_c2", format_double(c.cold_c2));
    kv("cold_gamma_minus", format_double(c.cold_gamma_minus));
    kv("cold_gamma_plus", format_double(c.cold_gamma_plus));
    kv("viscosity_mu0", format_double(c.viscosity_mu0));
    kv("viscosity_mu1", format_double(c.viscosity_mu1));
    kv("mu_prime_lower", format_double(c.mu_prime_lower));
    kv("nu_mode", c.nu_mode);
    kv("nu_constant", format_double(c.nu_constant));
    kv("kappa0", format_double(c.kappa0));
    kv("kappa0_lower", format_double(c.kappa0_lower));
    kv("kappa0_upper", format_double(c.kappa0_upper));
    kv("conductivity_alpha", format_double(c.conductivity_alpha));
    kv("d0", format_double(c.d0));
    kv("d0_lower", format_double(c.d0_lower));
    kv("d0_upper", format_double(c.d0_upper));
    kv("kinetics", c.kinetics);
    kv("pairwise_donor", std::to_string(c.pairwise_donor));
    kv("pairwise_acceptor", std::to_string(c.pairwise_acceptor));
    kv("pairwise_rate", format_double(c.pairwise_rate));
    kv("omega_lower", format_double(c.omega_lower));
    kv("omega_upper", format_double(c.omega_upper));
    kv("initial_condition", c.initial_condition);
    kv("rho0", format_double(c.rho0));
    kv("theta0", format_double(c.theta0));
    kv("u0", join(c.u0));
    kv("Y0", join(c.Y0));
    kv("perturbation_amplitude", format_double(c.perturbation_amplitude));
    kv("y_amplitude", format_double(c.y_amplitude));
    kv("mixing_y_mid", format_double(c.mixing_y_mid));
    kv("mixing_y_amplitude", format_double(c.mixing_y_amplitude));
    kv("mixing_width", format_double(c.mixing_width));
    kv("mms_amplitude", format_double(c.mms_amplitude));
    kv("mms_wave_speed", format_double(c.mms_wave_speed));
    kv("seed", std::to_string(c.seed));
    kv("output_dir", c.output_dir);
    kv("extended_diagnostics", c.extended_diagnostics ? "on" : "off");
    return s;
}

std::uint64_t config_digest(const RunConfig& cfg) {
    // The digest identifies the computation, not its destination: runs of
    // the same parameters into different directories must match.
    RunConfig canon = cfg;
    canon.output_dir = "out";
    return fnv1a64(serialize_config(canon));
}

}  // namespace nsf
