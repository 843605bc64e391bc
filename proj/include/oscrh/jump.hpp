#pragma once

#include <memory>

#include "oscrh/field.hpp"
#include "oscrh/scalar_delta.hpp"

namespace oscrh {

enum class FactorTag { Canonical, Conjugated, Localized, PhaseReduced, Model, PreModel, GammaDeformed };

struct JumpContext {
    double t = 0.0;
    PhaseSpec phase;  // classified
    ReflectionPair refl;
    RealGrid grid;
};

/// Oscillatory jump matrix J = [[1+pq, p e^{-it theta}], [q e^{it theta}, 1]].
struct JumpMatrix {
    MatrixField J;
    JumpContext ctx;
};

/// Closed forms needed to continue model / pre-model weights off the line.
struct WeightContinuation {
    int j = 0;
    double lambda_j = 0.0;
    int k = 1;
    double a = 0.0, b = 0.0;  // local phase a + b (x - lambda_j)^{k+1}
    double t = 1.0;
    Complex p_j{0.0}, q_j{0.0};
    double nu = 0.0;
    int eps = 0;
    SignPartition::Kind kind = SignPartition::Kind::Exterior;
    double omega = 0.0;
    int n_decay = 0;  // 0 = constant envelopes (model); > 0 = rational (pre-model)
    std::shared_ptr<const DeltaSolution> true_delta;  // pre-model only
};

/// A factorization J = (I - w^-)^{-1} (I + w^+) with strictly triangular parts.
struct WeightPair {
    MatrixField wminus, wplus;
    FactorTag tag = FactorTag::Canonical;
    bool phase_weight = false;
    JumpContext ctx;
    PhaseSpec osc_phase;  // the phase carried by the oscillatory factors
    SignPartition part;   // partition of the oscillation phase on the grid
    std::shared_ptr<const WeightContinuation> cont;
    std::shared_ptr<const OrientedContour> gamma;  // set for gamma-deformed pairs

    /// Jump matrix the pair must reproduce, when an independent route exists
    /// (source J, conjugated J, model J, or j_Gamma).
    MatrixField target;
    bool has_target = false;

    const std::shared_ptr<const ContourData>& contour() const { return wminus.contour; }
};

JumpMatrix build_jump(const ReflectionPair& refl, const PhaseSpec& phase, double t,
                      const RealGrid& grid);

/// w^- strictly upper with p e^{-it theta}, w^+ strictly lower with q e^{it theta}.
WeightPair canonical_factorization(const JumpMatrix& jm);

/// Conjugation by the scalar solution: with P = delta_-delta_+ p and
/// Q = (delta_-delta_+)^{-1} q, the weights are (upper P, lower Q) on D+ and
/// (lower Q, upper P) on D-. Installs the phase-weight relation.
WeightPair conjugated_factorization(const JumpMatrix& jm, const DeltaSolution& delta);

/// Multiplies by a C^3 polynomial bump equal to 1 within radius/2 of each
/// stationary point (or only of point j when j >= 0) and 0 outside radius.
WeightPair localize(const WeightPair& w, double radius, int j = -1);

/// Smooth cutoff used by localize(): 1 for |u|<=1/2, 0 for |u|>=1.
double bump_c3(double u);

/// Rebuilds the oscillatory factors with the local model phase at point j;
/// envelopes are untouched. Fails if theta' and the model derivative disagree
/// in sign somewhere on the support.
WeightPair phase_reduce(const WeightPair& w, int j);

/// Constant-envelope local model weights at point j on the given grid.
WeightPair model_weights(int j, double t, const RealGrid& grid, double omega,
                         const PhaseSpec& phase, const ReflectionPair& refl);

/// Analytic-envelope approximation [f](x) = f(lambda_j)/(1 + i (x-lambda_j)^N)
/// of the localized weights; keeps the solved delta.
WeightPair premodel_weights(const WeightPair& localized, const DeltaSolution& delta, int j,
                            int n_decay);

/// Moves model / pre-model weights onto the six-ray contour:
/// zero on G0 and G3, (0, -w^+ continued) on G1 (from R+) and G2 (from R-),
/// (-w^- continued, 0) on G4 (from R-) and G5 (from R+).
WeightPair deform_to_gamma(const WeightPair& w, const OrientedContour& gamma);

/// Core of deform_to_gamma: builds the deformed pair directly from the
/// continuation data (the contour is centered at the stationary point).
WeightPair deform_continuation(const WeightContinuation& cont, const OrientedContour& gamma);

/// (I - w^-)^{-1} (I + w^+) at every node.
MatrixField refactorize(const WeightPair& w);

/// Max-node refactorization residual against the stored target (0 when the
/// pair has no independent target).
double factorization_residual(const WeightPair& w);

}  // namespace oscrh
