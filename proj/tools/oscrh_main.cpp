#include <CLI11.hpp>
#include <cstdio>
#include <string>

#include "oscrh/pipeline.hpp"

namespace {

void print_summary(const oscrh::RunReport& rep) {
    for (const auto& r : rep.records) {
        if (rep.command == "asym") {
            std::printf("t=%-8g u_asym=%+.8e%+.8ei\n", r.t, r.u_asym.real(), r.u_asym.imag());
        } else {
            std::printf("t=%-8g u=%+.8e%+.8ei  jump=%.1e cond=%.2f it=%d nodes=%d\n", r.t,
                        r.u_num.real(), r.u_num.imag(), r.jump_residual, r.condition_estimate,
                        r.iterations, r.active_nodes);
        }
    }
    for (const auto& d : rep.decay)
        std::printf("[%s] %-42s slope=%+.3f predicted=%+.3f (+-%.2f)%s\n",
                    d.pass ? "PASS" : "FAIL", d.name.c_str(), d.fitted_slope, d.predicted_slope,
                    d.tolerance, d.log_corrected ? " [log corrected]" : "");
    for (const auto& c : rep.checks)
        std::printf("[%s] %-42s value=%.6g threshold%s%.6g\n", c.pass ? "PASS" : "FAIL",
                    c.name.c_str(), c.value, c.larger_is_fail ? "<=" : ">=", c.threshold);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Oscillatory 2x2 Riemann-Hilbert solver and asymptotics toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, out_dir, preset, t_list;
    int threads = 0;
    app.add_option("--config", config_path, "Path to the JSON experiment configuration")
        ->required();
    app.add_option("--out", out_dir, "Output directory override");
    app.add_option("--threads", threads, "Worker threads for the t sweep");
    app.add_option("--preset", preset, "Phase preset override (nls | mkdv)");
    app.add_option("--t", t_list, "Comma-separated t values override");

    auto* solve = app.add_subcommand("solve", "Full pipeline solve over the t grid");
    auto* asym = app.add_subcommand("asym", "Leading-order evaluation");
    auto* verify = app.add_subcommand("verify", "Solve vs leading order with order fits");
    auto* decay = app.add_subcommand("decay", "Oscillatory-decay experiment suites");
    auto* sweep = app.add_subcommand("sweep", "Alias of solve for geometric t ranges");

    CLI11_PARSE(app, argc, argv);

    oscrh::ExperimentConfig cfg;
    try {
        cfg = oscrh::load_config(config_path);
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (threads > 0) cfg.threads = threads;
        if (!preset.empty()) cfg.phase_preset = preset;
        if (!t_list.empty()) {
            cfg.t_values.clear();
            std::string item;
            std::stringstream ss(t_list);
            while (std::getline(ss, item, ',')) cfg.t_values.push_back(std::stod(item));
            if (cfg.t_values.empty()) throw std::invalid_argument("empty --t list");
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    }

    oscrh::RunReport rep;
    try {
        if (solve->parsed() || sweep->parsed())
            rep = oscrh::cmd_solve(cfg);
        else if (asym->parsed())
            rep = oscrh::cmd_asym(cfg);
        else if (verify->parsed())
            rep = oscrh::cmd_verify(cfg);
        else if (decay->parsed())
            rep = oscrh::cmd_decay(cfg);
        oscrh::emit_report(rep, cfg);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "solve failed: %s\n", e.what());
        return 3;
    }
    print_summary(rep);
    return rep.all_pass() ? 0 : 1;
}
