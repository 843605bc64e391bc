#pragma once

#include "oscrh/asymptotics.hpp"
#include "oscrh/config.hpp"
#include "oscrh/report.hpp"
#include "oscrh/scalar_delta.hpp"

namespace oscrh {

/// Full line pipeline at one time: grid sized to the oscillation and the
/// envelope, scalar conjugation, conjugated factorization, solve.
RhpSolution full_solve(const ExperimentConfig& cfg, const PhaseSpec& phase,
                       const ReflectionPair& refl, double t);

/// Direct oscillatory quadrature -(1/2 pi i) int p e^{-it theta}, the closed
/// form the degenerate (q = 0) solve must reproduce.
Complex abelian_reference(const ReflectionPair& refl, const PhaseSpec& phase, double t, double L);

struct OmegaRecord {
    int j = 0;
    double by_integral = 0.0;
    double by_limit = 0.0;
};

/// Leading-order data for every stationary point: omega by both routes and
/// the model constants (numeric source).
std::vector<AsymptoticTerm> asymptotic_terms(const ExperimentConfig& cfg, const PhaseSpec& phase,
                                             const ReflectionPair& refl,
                                             std::vector<OmegaRecord>* omegas = nullptr);

struct DeformationCheck {
    double t = 0.0;
    Complex u_line{0.0}, v_line{0.0};
    Complex u_gamma{0.0}, v_gamma{0.0};
    double rel_gap = 0.0;
    int line_nodes = 0, gamma_nodes = 0;
};

/// Pre-model solve on the line against its deformation onto the six rays.
DeformationCheck deformation_invariance(const ExperimentConfig& cfg, const PhaseSpec& phase,
                                        const ReflectionPair& refl, double t);

struct SeparationCheck {
    double t = 0.0;
    Complex u_full{0.0};
    Complex u_localized_sum{0.0};
    double gap = 0.0;
};

/// Localized per-point solves against the full solve.
SeparationCheck separation_check(const ExperimentConfig& cfg, const PhaseSpec& phase,
                                 const ReflectionPair& refl, double t);

RunReport cmd_solve(const ExperimentConfig& cfg);
RunReport cmd_asym(const ExperimentConfig& cfg);
RunReport cmd_verify(const ExperimentConfig& cfg);
RunReport cmd_decay(const ExperimentConfig& cfg);

/// Writes report.json / table.csv (and per-experiment decay CSVs) into the
/// configured output directory.
void emit_report(const RunReport& report, const ExperimentConfig& cfg);

}  // namespace oscrh
