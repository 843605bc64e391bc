#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oscrh/phase.hpp"
#include "oscrh/reflection.hpp"

namespace oscrh {

/// Fully validated experiment plan. Parsing rejects unknown keys and produces
/// this value before any computation starts.
struct ExperimentConfig {
    // phase block
    std::string phase_preset;  // "nls" | "mkdv" | "" (coefficients)
    double lambda0 = 0.0;
    std::vector<double> phase_coefficients;

    // reflection block
    std::string envelope_preset = "gaussian";  // "gaussian" | "two_bump"
    std::string symmetry = "defocusing";       // "defocusing" | "focusing" | "degenerate"
    double amplitude = 0.4;
    double sigma = 1.0;
    double center = 0.0;

    // grid block
    double L = 10.0;
    int nodes_per_panel = 24;
    int dyadic_levels = 30;
    double max_panel_width = 1.0;
    double gamma_alpha = M_PI / 12.0;
    double gamma_radius = 0.0;  // 0 = auto from the decay target
    int n_decay = 8;

    // run block
    std::vector<double> t_values;
    std::vector<std::string> stages;  // informational stage list
    double tol_jump_residual = 1e-8;
    double tol_det_bulk = 1e-8;
    double tol_symmetry = 1e-8;
    double tol_omega_cross = 1e-4;
    double tol_deformation = 1e-6;
    double error_order_threshold = -0.85;
    double phase_tracking_tol = 0.1;
    unsigned seed = 12345;
    int threads = 1;

    // output block
    std::string out_dir = "out";
    bool write_csv = true;
    bool write_json = true;

    PhaseSpec make_phase() const;          // classified
    ReflectionPair make_reflection() const;
    double envelope_amplitude_at(double x) const;
};

/// Parses and validates a JSON document; throws std::invalid_argument with a
/// message naming the offending key on any problem.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

}  // namespace oscrh
