// cli.cpp: Config parsing and command dispatch.
#include "dpt/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dpt/errors.hpp"
#include "dpt/oscillator.hpp"
#include "dpt/parallel.hpp"
#include "dpt/response.hpp"

namespace dpt::cli {

namespace {

using phasediag::Axis;
using phasediag::Model;
using phasediag::ParamMap;

const std::vector<std::string> oscillator_names{"omega0", "kappa", "sigma"};

const std::set<std::string> option_keys{"state",   "omega_min", "omega_max", "omega_points", "x_min", "x_max",
                                        "x_count", "y_min",     "y_max",     "y_count"};
const std::set<std::string> text_keys{"model", "command", "x_axis", "y_axis", "mode", "format"};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::optional<double> parse_number(const std::string& s) {
    double v = 0.0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) return std::nullopt;
    return v;
}

const std::vector<std::string>& param_names(const std::string& model) {
    if (model == "kpo") return phasediag::parameter_names(Model::Kpo);
    if (model == "idtc") return phasediag::parameter_names(Model::Idtc);
    return oscillator_names;
}

Model model_of(const RunConfig& cfg) {
    if (cfg.model == "kpo") return Model::Kpo;
    if (cfg.model == "idtc") return Model::Idtc;
    throw ValidationError("command '" + cfg.command + "' is not available for model '" + cfg.model + "'");
}

oscillator::OscParams osc_params(const ParamMap& m) {
    oscillator::OscParams p;
    if (auto it = m.find("omega0"); it != m.end()) p.omega0 = it->second;
    if (auto it = m.find("kappa"); it != m.end()) p.kappa = it->second;
    if (auto it = m.find("sigma"); it != m.end()) p.sigma = it->second;
    oscillator::validate(p);
    return p;
}

Axis default_axis(Model model, bool x) {
    if (model == Model::Kpo) return x ? Axis{"delta", -2.0, 2.0, 101} : Axis{"g", 0.0, 2.0, 101};
    return x ? Axis{"lambda_x", 0.0, 1.2, 61} : Axis{"lambda_y", 0.0, 1.2, 61};
}

void add_spectrum(Table& t, const std::string& label, long long branch, const bogoliubov::ExcitationSpectrum& s) {
    long long k = 0;
    for (const auto& m : s.modes)
        t.rows.push_back({label, branch, k++, m.frequency.real(), m.frequency.imag(), m.symplectic_norm,
                          static_cast<long long>(m.physical)});
}

void add_eigenvalues(Table& t, const std::string& label, long long branch, const StabilityReport& r) {
    for (Eigen::Index k = 0; k < r.eigenvalues.size(); ++k)
        t.rows.push_back({label, branch, static_cast<long long>(k), r.eigenvalues(k).real(), r.eigenvalues(k).imag(),
                          static_cast<long long>(r.constraint_index == k), to_string(r.verdict),
                          static_cast<long long>(r.overdamped)});
}

Table spectra_table(const response::GreensSet& set) {
    const auto sp = response::spectra(set);
    Table t{{"omega", "A", "C", "S"}, {}};
    for (size_t i = 0; i < sp.grid.size(); ++i) t.rows.push_back({sp.grid[i], sp.a[i], sp.c[i], sp.s[i]});
    return t;
}

void require_stable(const StabilityReport& r, const std::string& what) {
    if (!r.stable())
        throw StabilityError(what + " is not a stable steady state (max Re eigenvalue " +
                             std::to_string(r.max_growth()) + ")");
}

Table run_kpo(const RunConfig& cfg, const std::vector<double>& grid) {
    const auto p = phasediag::kpo_params(cfg.params);
    const auto& c = cfg.command;
    if (c == "ground-state") {
        Table t{{"branch", "label", "alpha_re", "alpha_im", "energy"}, {}};
        for (const auto& g : kpo::closed_ground_state(p))
            t.rows.push_back({static_cast<long long>(g.state.branch), kpo::to_string(g.state.label),
                              g.state.alpha.real(), g.state.alpha.imag(), g.energy});
        return t;
    }
    if (c == "excitations") {
        Table t{{"label", "branch", "mode", "freq_re", "freq_im", "norm", "physical"}, {}};
        auto states = kpo::closed_ground_state(p);
        if (states.front().state.label != kpo::KpoLabel::NP) states.insert(states.begin(), kpo::GroundState{});
        for (const auto& g : states)
            add_spectrum(t, kpo::to_string(g.state.label), g.state.branch,
                         bogoliubov::diagonalize_excitations(kpo::closed_excitation_form(p, g.state)));
        return t;
    }
    const auto states = kpo::open_steady_states(p);
    if (c == "steady-states") {
        Table t{{"branch", "label", "alpha_re", "alpha_im", "abs2", "verdict", "max_re_eps"}, {}};
        for (const auto& s : states) {
            const auto r = kpo::stability(p, s);
            t.rows.push_back({static_cast<long long>(s.branch), kpo::to_string(s.label), s.alpha.real(),
                              s.alpha.imag(), std::norm(s.alpha), to_string(r.verdict), r.max_growth()});
        }
        return t;
    }
    if (c == "stability") {
        Table t{{"label", "branch", "index", "eps_re", "eps_im", "constraint", "verdict", "overdamped"}, {}};
        for (const auto& s : states) add_eigenvalues(t, kpo::to_string(s.label), s.branch, kpo::stability(p, s));
        return t;
    }
    if (c == "variance") {
        Table t{{"label", "branch", "var_re", "var_im", "cov_re_im"}, {}};
        for (const auto& s : states) {
            const auto r = kpo::stability(p, s);
            if (!r.covariance) continue;
            const auto& k = *r.covariance;
            t.rows.push_back({kpo::to_string(s.label), static_cast<long long>(s.branch), k(0, 0), k(1, 1), k(0, 1)});
        }
        return t;
    }
    if (c == "response") {
        if (cfg.state < 0 || cfg.state >= static_cast<int>(states.size()))
            throw ValidationError("state index " + std::to_string(cfg.state) + " out of range (" +
                                  std::to_string(states.size()) + " steady states)");
        const auto& s = states[static_cast<size_t>(cfg.state)];
        require_stable(kpo::stability(p, s), "state " + std::to_string(cfg.state));
        return spectra_table(response::green_functions(kpo::keldysh_fluctuation_form(p, s), grid, cfg.threads));
    }
    throw ValidationError("command '" + c + "' is not available for model 'kpo'");
}

Table run_idtc(const RunConfig& cfg, const std::vector<double>& grid) {
    const auto p = phasediag::idtc_params(cfg.params);
    const auto& c = cfg.command;
    if (c == "ground-state") {
        Table t{{"lambda_c", "region"}, {}};
        t.rows.push_back({idtc::critical_coupling(p), phasediag::to_string(phasediag::closed_label(idtc::np_form(p)))});
        return t;
    }
    if (c == "excitations") {
        Table t{{"label", "branch", "mode", "freq_re", "freq_im", "norm", "physical"}, {}};
        add_spectrum(t, "NP", 0, idtc::closed_np_excitations(p).spectrum);
        return t;
    }
    const auto states = idtc::open_steady_states(p);
    if (c == "steady-states") {
        Table t{{"branch", "label", "alpha_re", "alpha_im", "x", "y", "z", "verdict"}, {}};
        for (const auto& s : states)
            t.rows.push_back({static_cast<long long>(s.branch), idtc::to_string(s.label), s.alpha.real(),
                              s.alpha.imag(), s.x, s.y, s.z, to_string(idtc::stability(p, s).verdict)});
        return t;
    }
    if (c == "stability") {
        Table t{{"label", "branch", "index", "eps_re", "eps_im", "constraint", "verdict", "overdamped"}, {}};
        for (const auto& s : states) add_eigenvalues(t, idtc::to_string(s.label), s.branch, idtc::stability(p, s));
        return t;
    }
    if (c == "variance") {
        Table t{{"label", "branch", "var_re", "var_im", "var_t1", "var_t2"}, {}};
        for (const auto& s : states) {
            const auto r = idtc::stability(p, s);
            if (!r.covariance) continue;
            const auto& k = *r.covariance;
            t.rows.push_back({idtc::to_string(s.label), static_cast<long long>(s.branch), k(0, 0), k(1, 1), k(2, 2),
                              k(3, 3)});
        }
        return t;
    }
    if (c == "response") {
        if (cfg.state < 0 || cfg.state >= static_cast<int>(states.size()))
            throw ValidationError("state index " + std::to_string(cfg.state) + " out of range (" +
                                  std::to_string(states.size()) + " steady states)");
        const auto& s = states[static_cast<size_t>(cfg.state)];
        require_stable(idtc::stability(p, s), "state " + std::to_string(cfg.state));
        if (s.label == idtc::IdtcLabel::NP)
            return spectra_table(response::green_functions(idtc::keldysh_fluctuation_form_np(p), grid, cfg.threads));
        const auto td = idtc::tangent_dynamics(p, s);
        return spectra_table(response::response_from_jacobian(td.m, td.field_map, {p.kappa, 0.0}, grid, cfg.threads));
    }
    throw ValidationError("command '" + c + "' is not available for model 'idtc'");
}

Table run_oscillator(const RunConfig& cfg, const std::vector<double>& grid) {
    const auto p = osc_params(cfg.params);
    const auto& c = cfg.command;
    if (c == "excitations") {
        Table t{{"label", "branch", "mode", "freq_re", "freq_im", "norm", "physical"}, {}};
        add_spectrum(t, "HO", 0, bogoliubov::diagonalize_excitations(oscillator::lab_form(p.omega0, p.kappa).form));
        return t;
    }
    if (c == "stability") {
        Table t{{"label", "branch", "index", "eps_re", "eps_im", "constraint", "verdict", "overdamped"}, {}};
        add_eigenvalues(t, "HO", 0, assess(numerics::eig(oscillator::companion_matrix(p)).values, std::nullopt, p.kappa));
        return t;
    }
    if (c == "variance") {
        const auto [vx, vp] = oscillator::overdamped_variance(p);
        return Table{{"var_x", "var_p"}, {{vx, vp}}};
    }
    if (c == "response")
        return spectra_table(response::green_functions(oscillator::lab_form(p.omega0, p.kappa), grid, cfg.threads));
    throw ValidationError("command '" + c + "' is not available for model 'oscillator'");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

const std::vector<std::string>& commands() {
    static const std::vector<std::string> c{"ground-state", "steady-states", "excitations", "stability",
                                            "variance",     "response",      "sweep",       "boundary"};
    return c;
}

const std::vector<std::string>& models() {
    static const std::vector<std::string> m{"kpo", "idtc", "oscillator"};
    return m;
}

RunConfig parse_config(const std::string& text, const std::optional<std::string>& command) {
    std::vector<std::string> errors;
    std::map<std::string, std::string> raw;
    std::istringstream in(text);
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(lineno) + ": expected 'key = value'");
            continue;
        }
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            errors.push_back("line " + std::to_string(lineno) + ": empty key or value");
            continue;
        }
        if (raw.count(key)) errors.push_back("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        raw[key] = value;
    }

    RunConfig cfg;
    if (auto it = raw.find("model"); it == raw.end()) {
        errors.push_back("missing required key 'model' (one of kpo, idtc, oscillator)");
    } else if (std::find(models().begin(), models().end(), it->second) == models().end()) {
        errors.push_back("unknown model '" + it->second + "'");
    } else {
        cfg.model = it->second;
    }

    if (auto it = raw.find("command"); it != raw.end()) cfg.command = it->second;
    if (command) {
        if (!cfg.command.empty() && cfg.command != *command)
            errors.push_back("command '" + *command + "' conflicts with config command '" + cfg.command + "'");
        cfg.command = *command;
    }
    if (cfg.command.empty())
        errors.push_back("missing required key 'command'");
    else if (std::find(commands().begin(), commands().end(), cfg.command) == commands().end())
        errors.push_back("unknown command '" + cfg.command + "'");
    else if (cfg.model == "oscillator" && (cfg.command == "ground-state" || cfg.command == "steady-states" ||
                                           cfg.command == "sweep" || cfg.command == "boundary"))
        errors.push_back("command '" + cfg.command + "' is not available for model 'oscillator'");

    std::map<std::string, double> options;
    for (const auto& [key, value] : raw) {
        if (text_keys.count(key)) continue;
        const bool is_param = !cfg.model.empty() && std::count(param_names(cfg.model).begin(),
                                                               param_names(cfg.model).end(), key);
        if (!is_param && !option_keys.count(key)) {
            errors.push_back("unknown key '" + key + "'");
            continue;
        }
        const auto v = parse_number(value);
        if (!v) {
            errors.push_back("key '" + key + "': '" + value + "' is not a finite number");
            continue;
        }
        if (is_param)
            cfg.params[key] = *v;
        else
            options[key] = *v;
    }

    auto integer = [&](const std::string& key, int& target, int lo) {
        if (auto it = options.find(key); it != options.end()) {
            if (it->second != std::floor(it->second) || it->second < lo || it->second > 1e7)
                errors.push_back("key '" + key + "' must be an integer >= " + std::to_string(lo));
            else
                target = static_cast<int>(it->second);
        }
    };
    integer("state", cfg.state, 0);
    integer("omega_points", cfg.omega_points, 2);
    if (auto it = options.find("omega_min"); it != options.end()) cfg.omega_min = it->second;
    if (auto it = options.find("omega_max"); it != options.end()) cfg.omega_max = it->second;
    if (!(cfg.omega_max > cfg.omega_min)) errors.push_back("omega_max must exceed omega_min");

    if (auto it = raw.find("mode"); it != raw.end()) {
        if (it->second == "open")
            cfg.mode = phasediag::Mode::Open;
        else if (it->second == "closed")
            cfg.mode = phasediag::Mode::Closed;
        else
            errors.push_back("mode must be 'open' or 'closed'");
    }
    if (auto it = raw.find("format"); it != raw.end()) {
        if (it->second == "csv")
            cfg.format = Format::Csv;
        else if (it->second == "json")
            cfg.format = Format::Json;
        else
            errors.push_back("format must be 'csv' or 'json'");
    }

    const bool gridded = cfg.model == "kpo" || cfg.model == "idtc";
    for (const char* axis : {"x", "y"}) {
        const std::string a = axis;
        const bool any = raw.count(a + "_axis") || options.count(a + "_min") || options.count(a + "_max") ||
                         options.count(a + "_count");
        if (!any || !gridded) continue;
        Axis ax = default_axis(cfg.model == "kpo" ? Model::Kpo : Model::Idtc, a == "x");
        if (auto it = raw.find(a + "_axis"); it != raw.end()) ax.name = it->second;
        if (auto it = options.find(a + "_min"); it != options.end()) ax.min = it->second;
        if (auto it = options.find(a + "_max"); it != options.end()) ax.max = it->second;
        integer(a + "_count", ax.count, 1);
        const auto& names = param_names(cfg.model);
        if (std::find(names.begin(), names.end(), ax.name) == names.end())
            errors.push_back(a + "_axis '" + ax.name + "' is not a " + cfg.model + " parameter");
        (a == "x" ? cfg.x_axis : cfg.y_axis) = ax;
    }

    // Model invariants (kerr != 0, nonnegative rates, ...).
    if (!cfg.model.empty()) {
        try {
            if (cfg.model == "kpo")
                phasediag::kpo_params(cfg.params);
            else if (cfg.model == "idtc")
                phasediag::idtc_params(cfg.params);
            else
                osc_params(cfg.params);
        } catch (const ValidationError& e) {
            errors.push_back(e.what());
        }
    }

    if (!errors.empty()) {
        std::ostringstream os;
        os << "invalid configuration:";
        for (const auto& e : errors) os << "\n  - " << e;
        throw ValidationError(os.str());
    }
    return cfg;
}

std::string config_help() {
    return "Config file: one 'key = value' per line, '#' starts a comment.\n"
           "  model         kpo | idtc | oscillator (required)\n"
           "  command       optional when given on the command line\n"
           "  kpo           delta=0 kerr=1 g=0 g_phase=0 kappa=0 (pump = g e^{i g_phase})\n"
           "  idtc          omega_c=1 omega_z=1 lambda_x=0 lambda_y=0 kappa=0\n"
           "  oscillator    omega0=1 kappa=0 sigma=1\n"
           "  response      omega_min=-3 omega_max=3 omega_points=601 state=0 (steady-state index)\n"
           "  sweep/boundary x_axis x_min x_max x_count, y_axis y_min y_max y_count, mode=open|closed\n"
           "                kpo default: delta in [-2,2] x g in [0,2], 101 x 101\n"
           "                idtc default: lambda_x, lambda_y in [0,1.2], 61 x 61\n"
           "  format        csv | json\n"
           "Environment: DPT_THREADS caps sweep parallelism.\n"
           "Exit codes: 0 success, 2 invalid input, 3 numerical failure.";
}

Table execute(const RunConfig& cfg) {
    if (cfg.command == "sweep" || cfg.command == "boundary") {
        const Model model = model_of(cfg);
        const Axis x = cfg.x_axis.value_or(default_axis(model, true));
        const Axis y = cfg.y_axis.value_or(default_axis(model, false));
        if (cfg.command == "sweep") {
            const auto grid = phasediag::sweep(model, cfg.params, x, y, cfg.mode, cfg.threads);
            Table t{{x.name, y.name, "label"}, {}};
            for (int iy = 0; iy < y.count; ++iy)
                for (int ix = 0; ix < x.count; ++ix)
                    t.rows.push_back({x.value(ix), y.value(iy), phasediag::to_string(grid.at(ix, iy))});
            return t;
        }
        Table t{{x.name, y.name, "from", "to"}, {}};
        for (const auto& b : phasediag::boundary_points(model, cfg.params, cfg.mode, x, y, cfg.threads))
            t.rows.push_back({b.x, b.y, phasediag::to_string(b.from), phasediag::to_string(b.to)});
        return t;
    }
    const auto grid = response::linspace(cfg.omega_min, cfg.omega_max, cfg.omega_points);
    if (cfg.model == "kpo") return run_kpo(cfg, grid);
    if (cfg.model == "idtc") return run_idtc(cfg, grid);
    return run_oscillator(cfg, grid);
}

std::string to_csv(const Table& t) {
    std::string out;
    for (size_t k = 0; k < t.columns.size(); ++k) out += (k ? "," : "") + t.columns[k];
    out += '\n';
    for (const auto& row : t.rows) {
        for (size_t k = 0; k < row.size(); ++k) {
            if (k) out += ',';
            std::visit(
                [&out](const auto& v) {
                    using V = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<V, double>)
                        out += format_double(v);
                    else if constexpr (std::is_same_v<V, long long>)
                        out += std::to_string(v);
                    else
                        out += v;
                },
                row[k]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& t, const RunConfig& cfg) {
    nlohmann::ordered_json doc;
    doc["model"] = cfg.model;
    doc["command"] = cfg.command;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : cfg.params) params[k] = v;
    doc["parameters"] = params;
    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json rec = nlohmann::ordered_json::object();
        for (size_t k = 0; k < row.size(); ++k) std::visit([&](const auto& v) { rec[t.columns[k]] = v; }, row[k]);
        records.push_back(std::move(rec));
    }
    doc["records"] = std::move(records);
    return doc.dump(2) + "\n";
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const Table t = execute(cfg);
        const std::string text = cfg.format == Format::Csv ? to_csv(t) : to_json(t, cfg);
        if (cfg.out_path) {
            std::ofstream f(*cfg.out_path, std::ios::binary);
            if (!f) throw ValidationError("cannot open output file '" + *cfg.out_path + "'");
            f << text;
            if (!f) throw ValidationError("failed writing '" + *cfg.out_path + "'");
        } else {
            out << text;
        }
        return 0;
    } catch (const ValidationError& e) {
        err << "dpt: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        err << "dpt: numerical failure: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace dpt::cli
