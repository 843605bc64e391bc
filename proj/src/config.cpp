#include "oscrh/config.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

namespace oscrh {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::invalid_argument("config: unknown key '" + it.key() + "' in " + where);
}

}  // namespace

PhaseSpec ExperimentConfig::make_phase() const {
    if (phase_preset == "nls") return PhaseSpec::nls(lambda0).classify();
    if (phase_preset == "mkdv") return PhaseSpec::mkdv(lambda0).classify();
    return PhaseSpec::polynomial(phase_coefficients).classify();
}

ReflectionPair ExperimentConfig::make_reflection() const {
    Envelope env;
    if (envelope_preset == "two_bump")
        env = Envelope::symmetric_pair(amplitude, sigma, center);
    else
        env = Envelope::gaussian(amplitude, sigma, center);
    if (symmetry == "degenerate") return ReflectionPair::degenerate(env);
    if (symmetry == "focusing") return ReflectionPair::focusing(env);
    return ReflectionPair::defocusing(env);
}

double ExperimentConfig::envelope_amplitude_at(double x) const {
    const ReflectionPair r = make_reflection();
    return std::abs(r.p.value(x)) + std::abs(r.q.value(x));
}

ExperimentConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("config: JSON parse error: ") + e.what());
    }
    require_keys(doc, "document root", {"phase", "reflection", "grid", "run", "output"});

    ExperimentConfig c;
    if (doc.contains("phase")) {
        const json& p = doc["phase"];
        require_keys(p, "phase", {"preset", "lambda0", "coefficients"});
        c.phase_preset = p.value("preset", "");
        c.lambda0 = p.value("lambda0", 0.0);
        if (p.contains("coefficients")) c.phase_coefficients = p["coefficients"].get<std::vector<double>>();
        if (c.phase_preset.empty() && c.phase_coefficients.empty())
            throw std::invalid_argument("config: phase needs a preset or coefficients");
        if (!c.phase_preset.empty() && c.phase_preset != "nls" && c.phase_preset != "mkdv")
            throw std::invalid_argument("config: unknown phase preset '" + c.phase_preset + "'");
    } else {
        throw std::invalid_argument("config: missing phase block");
    }

    if (doc.contains("reflection")) {
        const json& r = doc["reflection"];
        require_keys(r, "reflection", {"preset", "symmetry", "amplitude", "sigma", "center"});
        c.envelope_preset = r.value("preset", "gaussian");
        c.symmetry = r.value("symmetry", "defocusing");
        c.amplitude = r.value("amplitude", 0.4);
        c.sigma = r.value("sigma", 1.0);
        c.center = r.value("center", 0.0);
        if (c.envelope_preset != "gaussian" && c.envelope_preset != "two_bump")
            throw std::invalid_argument("config: unknown reflection preset");
        if (c.symmetry != "defocusing" && c.symmetry != "focusing" && c.symmetry != "degenerate")
            throw std::invalid_argument("config: unknown symmetry tag");
        if (!(c.amplitude >= 0.0) || !(c.sigma > 0.0))
            throw std::invalid_argument("config: reflection amplitude/sigma out of range");
    }

    if (doc.contains("grid")) {
        const json& g = doc["grid"];
        require_keys(g, "grid",
                     {"L", "nodes_per_panel", "dyadic_levels", "max_panel_width", "gamma_alpha",
                      "gamma_radius", "n_decay"});
        c.L = g.value("L", c.L);
        c.nodes_per_panel = g.value("nodes_per_panel", c.nodes_per_panel);
        c.dyadic_levels = g.value("dyadic_levels", c.dyadic_levels);
        c.max_panel_width = g.value("max_panel_width", c.max_panel_width);
        c.gamma_alpha = g.value("gamma_alpha", c.gamma_alpha);
        c.gamma_radius = g.value("gamma_radius", c.gamma_radius);
        c.n_decay = g.value("n_decay", c.n_decay);
        if (!(c.L > 0.0) || c.nodes_per_panel < 8)
            throw std::invalid_argument("config: grid L or nodes_per_panel out of range");
        if (!(c.gamma_alpha > 0.0 && c.gamma_alpha < M_PI / 4.0))
            throw std::invalid_argument("config: gamma_alpha out of range");
    }

    if (doc.contains("run")) {
        const json& r = doc["run"];
        require_keys(r, "run",
                     {"t", "t_min", "t_max", "t_count", "stages", "tolerances", "seed", "threads"});
        if (r.contains("t")) {
            c.t_values = r["t"].get<std::vector<double>>();
        } else if (r.contains("t_min") && r.contains("t_max") && r.contains("t_count")) {
            const double t0 = r["t_min"], t1 = r["t_max"];
            const int n = r["t_count"];
            if (n < 1 || !(t0 > 0.0) || !(t1 >= t0))
                throw std::invalid_argument("config: bad geometric t range");
            for (int i = 0; i < n; ++i)
                c.t_values.push_back(n == 1 ? t0 : t0 * std::pow(t1 / t0, i / (double)(n - 1)));
        }
        if (c.t_values.empty()) throw std::invalid_argument("config: empty t list");
        for (double t : c.t_values)
            if (!(t > 0.0)) throw std::invalid_argument("config: t values must be positive");
        if (r.contains("stages")) c.stages = r["stages"].get<std::vector<std::string>>();
        if (r.contains("tolerances")) {
            const json& tol = r["tolerances"];
            require_keys(tol, "run.tolerances",
                         {"jump_residual", "det_bulk", "symmetry", "omega_cross", "deformation",
                          "error_order", "phase_tracking"});
            c.tol_jump_residual = tol.value("jump_residual", c.tol_jump_residual);
            c.tol_det_bulk = tol.value("det_bulk", c.tol_det_bulk);
            c.tol_symmetry = tol.value("symmetry", c.tol_symmetry);
            c.tol_omega_cross = tol.value("omega_cross", c.tol_omega_cross);
            c.tol_deformation = tol.value("deformation", c.tol_deformation);
            c.error_order_threshold = tol.value("error_order", c.error_order_threshold);
            c.phase_tracking_tol = tol.value("phase_tracking", c.phase_tracking_tol);
        }
        c.seed = r.value("seed", c.seed);
        c.threads = r.value("threads", c.threads);
    } else {
        throw std::invalid_argument("config: missing run block");
    }

    if (doc.contains("output")) {
        const json& o = doc["output"];
        require_keys(o, "output", {"directory", "formats"});
        c.out_dir = o.value("directory", c.out_dir);
        if (o.contains("formats")) {
            c.write_csv = false;
            c.write_json = false;
            for (const auto& f : o["formats"]) {
                if (f == "csv") c.write_csv = true;
                else if (f == "json") c.write_json = true;
                else throw std::invalid_argument("config: unknown output format");
            }
        }
    }
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace oscrh
