#include "radns/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace radns {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss(s);
    while (std::getline(ss, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": " + what);
}

struct KeyValue {
    std::string value;
    int line = 0;
    bool used = false;
};

class Sections {
  public:
    explicit Sections(const std::string& text) {
        std::istringstream in(text);
        std::string raw, section;
        int lineno = 0;
        while (std::getline(in, raw)) {
            ++lineno;
            std::string line = raw;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            if (line.front() == '[') {
                if (line.back() != ']') fail(lineno, "unterminated section header");
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) fail(lineno, "expected key = value");
            const std::string key = trim(line.substr(0, eq));
            if (section.empty()) fail(lineno, "key outside any [section]");
            auto [it, fresh] = map_[section].emplace(key, KeyValue{trim(line.substr(eq + 1)), lineno});
            if (!fresh) fail(lineno, "duplicate key '" + key + "'");
        }
    }

    std::optional<std::string> get(const std::string& sec, const std::string& key) {
        auto s = map_.find(sec);
        if (s == map_.end()) return std::nullopt;
        auto k = s->second.find(key);
        if (k == s->second.end()) return std::nullopt;
        k->second.used = true;
        return k->second.value;
    }

    std::string require(const std::string& sec, const std::string& key) {
        auto v = get(sec, key);
        if (!v) throw std::invalid_argument("config: missing [" + sec + "] " + key);
        return *v;
    }

    double require_num(const std::string& sec, const std::string& key) {
        return parse_num(sec, key, require(sec, key));
    }

    double num_or(const std::string& sec, const std::string& key, double dflt) {
        auto v = get(sec, key);
        return v ? parse_num(sec, key, *v) : dflt;
    }

    std::string str_or(const std::string& sec, const std::string& key, const std::string& dflt) {
        auto v = get(sec, key);
        return v ? *v : dflt;
    }

    void reject_unknown() const {
        for (const auto& [sec, kv] : map_)
            for (const auto& [key, v] : kv)
                if (!v.used)
                    throw std::invalid_argument("config line " + std::to_string(v.line) +
                                                ": unknown key [" + sec + "] " + key);
    }

  private:
    double parse_num(const std::string& sec, const std::string& key, const std::string& v) {
        try {
            std::size_t pos = 0;
            const double x = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return x;
        } catch (const std::exception&) {
            throw std::invalid_argument("config: [" + sec + "] " + key +
                                        " is not a number: '" + v + "'");
        }
    }

    std::map<std::string, std::map<std::string, KeyValue>> map_;
};

WeightedNormSpec parse_norm_spec(const std::string& entry) {
    // field:p:xi[:lo..hi]
    const auto parts = split(entry, ':');
    if (parts.size() < 3 || parts.size() > 4)
        throw std::invalid_argument("weighted norm entry must be field:p:xi[:lo..hi]: " + entry);
    WeightedNormSpec spec;
    if (parts[0] == "rho") spec.field = NormField::rho;
    else if (parts[0] == "rho-far") spec.field = NormField::rho_minus_far;
    else if (parts[0] == "u") spec.field = NormField::u;
    else if (parts[0] == "w") spec.field = NormField::w;
    else if (parts[0] == "grad-rho") spec.field = NormField::grad_rho;
    else throw std::invalid_argument("unknown norm field: " + parts[0]);
    spec.p = parts[1] == "inf" ? std::numeric_limits<double>::infinity() : std::stod(parts[1]);
    spec.xi = std::stod(parts[2]);
    if (parts.size() == 4) {
        const auto dots = parts[3].find("..");
        if (dots == std::string::npos)
            throw std::invalid_argument("norm interval must be lo..hi: " + parts[3]);
        spec.lo = std::stod(parts[3].substr(0, dots));
        spec.hi = std::stod(parts[3].substr(dots + 2));
        if (!(spec.lo < spec.hi)) throw std::invalid_argument("empty norm interval: " + parts[3]);
    }
    spec.tag = entry;
    for (char& ch : spec.tag)
        if (ch == ':' || ch == ',') ch = '_';
    return spec;
}

std::string norm_spec_text(const WeightedNormSpec& s) {
    std::string field;
    switch (s.field) {
        case NormField::rho: field = "rho"; break;
        case NormField::rho_minus_far: field = "rho-far"; break;
        case NormField::u: field = "u"; break;
        case NormField::w: field = "w"; break;
        case NormField::grad_rho: field = "grad-rho"; break;
    }
    std::string out = field + ":" +
                      (std::isinf(s.p) ? std::string("inf") : fmt17(s.p)) + ":" + fmt17(s.xi);
    if (s.hi > s.lo) out += ":" + fmt17(s.lo) + ".." + fmt17(s.hi);
    return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    Sections sec(text);
    RunConfig cfg;

    cfg.model.dim = static_cast<int>(sec.require_num("model", "dim"));
    cfg.model.alpha = sec.require_num("model", "alpha");
    cfg.model.gamma = sec.require_num("model", "gamma");
    cfg.model.pressure_coeff = sec.num_or("model", "pressure_coeff", 1.0);
    cfg.model.far_density = sec.require_num("model", "far_density");
    validate(cfg.model);

    cfg.n_cells = static_cast<int>(sec.require_num("grid", "n_cells"));
    cfg.r_max = sec.require_num("grid", "r_max");

    const std::string adv = sec.str_or("scheme", "advection", "muscl-minmod");
    if (adv == "upwind1") cfg.scheme.advection = Advection::upwind1;
    else if (adv == "muscl-minmod") cfg.scheme.advection = Advection::muscl_minmod;
    else throw std::invalid_argument("unknown advection scheme: " + adv);

    const std::string visc = sec.str_or("scheme", "viscous", "explicit");
    if (visc == "explicit") cfg.scheme.viscous_treatment = ViscousTreatment::explicit_euler;
    else if (visc == "semi-implicit") cfg.scheme.viscous_treatment = ViscousTreatment::semi_implicit;
    else throw std::invalid_argument("unknown viscous treatment: " + visc);

    const std::string integ = sec.str_or("scheme", "integrator", "ssp-rk2");
    if (integ == "ssp-rk2") cfg.scheme.time_integrator = TimeIntegrator::ssp_rk2;
    else if (integ == "forward-euler") cfg.scheme.time_integrator = TimeIntegrator::forward_euler;
    else throw std::invalid_argument("unknown integrator: " + integ);

    cfg.scheme.cfl_number = sec.num_or("scheme", "cfl", 0.4);
    cfg.scheme.viscous_safety = sec.num_or("scheme", "viscous_safety", 0.4);
    validate(cfg.scheme);

    const std::string kind = sec.str_or("initial", "kind", "constant");
    if (kind == "constant") cfg.initial.kind = InitialKind::constant;
    else if (kind == "gaussian-bump") cfg.initial.kind = InitialKind::gaussian_bump;
    else if (kind == "compacted-bump") cfg.initial.kind = InitialKind::compacted_bump;
    else if (kind == "custom-table") cfg.initial.kind = InitialKind::custom_table;
    else throw std::invalid_argument("unknown initial data kind: " + kind);
    cfg.initial.amplitude = sec.num_or("initial", "amplitude", 0.0);
    cfg.initial.center = sec.num_or("initial", "center", 0.0);
    cfg.initial.width = sec.num_or("initial", "width", 1.0);
    cfg.initial.velocity_amplitude = sec.num_or("initial", "velocity_amplitude", 0.0);
    cfg.initial.velocity_width = sec.num_or("initial", "velocity_width", 1.0);
    cfg.initial.table_file = sec.str_or("initial", "table_file", "");
    if (cfg.initial.kind == InitialKind::custom_table && cfg.initial.table_file.empty())
        throw std::invalid_argument("custom-table initial data needs table_file");

    const std::string regime = sec.require("run", "regime");
    if (regime == "cauchy") cfg.regime = Regime::cauchy;
    else if (regime == "ball") cfg.regime = Regime::ball;
    else throw std::invalid_argument("unknown regime: " + regime);
    cfg.t_end = sec.require_num("run", "t_end");
    if (!(cfg.t_end > 0.0)) throw std::invalid_argument("t_end must be positive");
    cfg.snapshot_every = sec.num_or("run", "snapshot_every", 0.0);
    if (cfg.snapshot_every < 0.0) throw std::invalid_argument("snapshot_every must be >= 0");
    if (auto v = sec.get("run", "dt")) cfg.fixed_dt = std::stod(*v);
    const std::string policy = sec.str_or("run", "admissibility", "warn");
    if (policy == "warn") cfg.policy = AdmissibilityPolicy::warn;
    else if (policy == "enforce") cfg.policy = AdmissibilityPolicy::enforce;
    else throw std::invalid_argument("unknown admissibility policy: " + policy);

    if (auto v = sec.get("diagnostics", "k_moments"))
        for (const auto& item : split(*v, ','))
            cfg.diagnostics.k_moments.push_back(std::stod(item));
    for (double k : cfg.diagnostics.k_moments)
        if (!(k >= 2.0)) throw std::invalid_argument("k_moments entries must be >= 2");
    if (auto v = sec.get("diagnostics", "weighted_norms"))
        for (const auto& item : split(*v, ','))
            cfg.diagnostics.weighted_norms.push_back(parse_norm_spec(item));
    if (auto v = sec.get("diagnostics", "eta")) cfg.eta = std::stod(*v);

    cfg.output_dir = sec.str_or("output", "directory", "out");

    sec.reject_unknown();

    // structural invariants beyond per-field checks
    if (cfg.n_cells < 8) throw std::invalid_argument("n_cells must be >= 8");
    if (!(cfg.r_max > 0.0)) throw std::invalid_argument("r_max must be positive");
    if (cfg.eta && !(*cfg.eta >= 1.0 / 3.0 && *cfg.eta <= 1.0))
        throw std::invalid_argument("eta must lie in [1/3, 1]");
    bool wants_weighted_norms = !cfg.diagnostics.weighted_norms.empty();
    if (wants_weighted_norms && cfg.model.dim == 2 && cfg.regime == Regime::cauchy && !cfg.eta)
        throw std::invalid_argument("weighted diagnostics on the 2d Cauchy problem need eta");
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "[model]\n";
    out << "dim = " << cfg.model.dim << "\n";
    out << "alpha = " << fmt17(cfg.model.alpha) << "\n";
    out << "gamma = " << fmt17(cfg.model.gamma) << "\n";
    out << "pressure_coeff = " << fmt17(cfg.model.pressure_coeff) << "\n";
    out << "far_density = " << fmt17(cfg.model.far_density_or_throw()) << "\n";

    out << "\n[grid]\n";
    out << "n_cells = " << cfg.n_cells << "\n";
    out << "r_max = " << fmt17(cfg.r_max) << "\n";

    out << "\n[scheme]\n";
    out << "advection = "
        << (cfg.scheme.advection == Advection::upwind1 ? "upwind1" : "muscl-minmod") << "\n";
    out << "viscous = "
        << (cfg.scheme.viscous_treatment == ViscousTreatment::explicit_euler ? "explicit"
                                                                             : "semi-implicit")
        << "\n";
    out << "integrator = "
        << (cfg.scheme.time_integrator == TimeIntegrator::ssp_rk2 ? "ssp-rk2" : "forward-euler")
        << "\n";
    out << "cfl = " << fmt17(cfg.scheme.cfl_number) << "\n";
    out << "viscous_safety = " << fmt17(cfg.scheme.viscous_safety) << "\n";

    out << "\n[initial]\n";
    const char* kind = "constant";
    if (cfg.initial.kind == InitialKind::gaussian_bump) kind = "gaussian-bump";
    if (cfg.initial.kind == InitialKind::compacted_bump) kind = "compacted-bump";
    if (cfg.initial.kind == InitialKind::custom_table) kind = "custom-table";
    out << "kind = " << kind << "\n";
    out << "amplitude = " << fmt17(cfg.initial.amplitude) << "\n";
    out << "center = " << fmt17(cfg.initial.center) << "\n";
    out << "width = " << fmt17(cfg.initial.width) << "\n";
    out << "velocity_amplitude = " << fmt17(cfg.initial.velocity_amplitude) << "\n";
    out << "velocity_width = " << fmt17(cfg.initial.velocity_width) << "\n";
    if (!cfg.initial.table_file.empty()) out << "table_file = " << cfg.initial.table_file << "\n";

    out << "\n[run]\n";
    out << "regime = " << to_string(cfg.regime) << "\n";
    out << "t_end = " << fmt17(cfg.t_end) << "\n";
    out << "snapshot_every = " << fmt17(cfg.snapshot_every) << "\n";
    if (cfg.fixed_dt) out << "dt = " << fmt17(*cfg.fixed_dt) << "\n";
    out << "admissibility = " << (cfg.policy == AdmissibilityPolicy::warn ? "warn" : "enforce")
        << "\n";

    out << "\n[diagnostics]\n";
    if (!cfg.diagnostics.k_moments.empty()) {
        out << "k_moments = ";
        for (std::size_t i = 0; i < cfg.diagnostics.k_moments.size(); ++i)
            out << (i ? ", " : "") << fmt17(cfg.diagnostics.k_moments[i]);
        out << "\n";
    }
    if (!cfg.diagnostics.weighted_norms.empty()) {
        out << "weighted_norms = ";
        for (std::size_t i = 0; i < cfg.diagnostics.weighted_norms.size(); ++i)
            out << (i ? ", " : "") << norm_spec_text(cfg.diagnostics.weighted_norms[i]);
        out << "\n";
    }
    if (cfg.eta) out << "eta = " << fmt17(*cfg.eta) << "\n";

    out << "\n[output]\n";
    out << "directory = " << cfg.output_dir << "\n";
    return out.str();
}

TheoremRegime theorem_regime(const RunConfig& cfg) {
    if (cfg.model.dim == 2) {
        if (cfg.regime == Regime::ball)
            throw std::invalid_argument("the theorems do not cover a 2d ball");
        return cfg.eta ? TheoremRegime::cauchy_2d_weighted : TheoremRegime::cauchy_2d;
    }
    return cfg.regime == Regime::ball ? TheoremRegime::ball_3d : TheoremRegime::cauchy_3d;
}

AdmissibilityReport check_config_admissibility(const RunConfig& cfg) {
    const TheoremRegime reg = theorem_regime(cfg);
    return check_admissibility(cfg.model, reg,
                               reg == TheoremRegime::cauchy_2d_weighted ? cfg.eta : std::nullopt);
}

bool operator==(const RunConfig& a, const RunConfig& b) {
    auto norm_eq = [](const WeightedNormSpec& x, const WeightedNormSpec& y) {
        return x.tag == y.tag && x.field == y.field &&
               ((std::isinf(x.p) && std::isinf(y.p)) || x.p == y.p) && x.xi == y.xi &&
               x.lo == y.lo && x.hi == y.hi;
    };
    if (a.diagnostics.weighted_norms.size() != b.diagnostics.weighted_norms.size()) return false;
    for (std::size_t i = 0; i < a.diagnostics.weighted_norms.size(); ++i)
        if (!norm_eq(a.diagnostics.weighted_norms[i], b.diagnostics.weighted_norms[i]))
            return false;
    return a.model.dim == b.model.dim && a.model.alpha == b.model.alpha &&
           a.model.gamma == b.model.gamma && a.model.pressure_coeff == b.model.pressure_coeff &&
           a.model.far_density == b.model.far_density && a.regime == b.regime &&
           a.n_cells == b.n_cells && a.r_max == b.r_max &&
           a.scheme.advection == b.scheme.advection &&
           a.scheme.viscous_treatment == b.scheme.viscous_treatment &&
           a.scheme.time_integrator == b.scheme.time_integrator &&
           a.scheme.cfl_number == b.scheme.cfl_number &&
           a.scheme.viscous_safety == b.scheme.viscous_safety &&
           a.initial.kind == b.initial.kind && a.initial.amplitude == b.initial.amplitude &&
           a.initial.center == b.initial.center && a.initial.width == b.initial.width &&
           a.initial.velocity_amplitude == b.initial.velocity_amplitude &&
           a.initial.velocity_width == b.initial.velocity_width &&
           a.initial.table_file == b.initial.table_file && a.t_end == b.t_end &&
           a.snapshot_every == b.snapshot_every && a.fixed_dt == b.fixed_dt &&
           a.policy == b.policy && a.diagnostics.k_moments == b.diagnostics.k_moments &&
           a.eta == b.eta && a.output_dir == b.output_dir;
}

}  // namespace radns
