#pragma once

#include <memory>
#include <optional>

#include "oscrh/cauchy.hpp"
#include "oscrh/jump.hpp"

namespace oscrh {

struct SolverOptions {
    double tol = 1e-11;         // relative Krylov residual
    int restart = 40;
    int max_iterations = 400;
    double mask_rel = 1e-15;    // nodes with weights below mask_rel * max are inert
    int dense_fallback_limit = 1500;  // active nodes; used when the iteration stagnates
};

struct SolveDiagnostics {
    double jump_residual = 0.0;  // max-node |M+ - M- J| relative to 1 + |M+|
    double det_deviation = 0.0;  // max-node |det mu - 1|
    // Same, excluding nodes inside the innermost graded shells around each
    // stationary point, where pointwise interpolation of the |x|^{i nu}
    // twist saturates; integrated quantities are unaffected by that zone.
    double det_deviation_bulk = 0.0;
    double bulk_exclusion_radius = 0.0;
    int iterations = 0;
    double condition_estimate = 0.0;  // sigma_max/sigma_min of the Arnoldi Hessenberg
    bool converged = false;
    bool dense_fallback = false;
    int active_nodes = 0;
};

/// Solution of (1 - C_w)(mu - I) = C_w I together with the recovered
/// potentials u, v (off-diagonal coefficients of the field at infinity).
struct RhpSolution {
    WeightPair weights;
    std::shared_ptr<CauchyOperator> cauchy;
    MatrixField mu;
    Complex u{0.0}, v{0.0};
    SolveDiagnostics diag;
};

/// C_w f = C_+(f w^-) + C_-(f w^+), evaluated with a single principal-part
/// sweep via C_w f = A(f(w^- + w^+)) + (f w^- - f w^+)/2.
MatrixField apply_cw(const CauchyOperator& op, const WeightPair& w, const MatrixField& f);

RhpSolution solve_mu(const WeightPair& w, const SolverOptions& opts = {});

/// Boundary values M+ = mu (I + w^+), M- = mu (I - w^-).
std::pair<MatrixField, MatrixField> boundary_values(const RhpSolution& sol);

/// Off-contour M(z) = I + C(mu (w^+ + w^-))(z).
Mat2 reconstruct_M(const RhpSolution& sol, Complex z);

/// u = -(1/2 pi i) int (mu (w^+ + w^-))_{12}, v likewise for the 21 entry.
std::pair<Complex, Complex> recover_potentials(const RhpSolution& sol);

struct FarFieldProbe {
    Mat2 mu;          // value at the nearest node to x
    Mat2 predicted;   // I + [[0, u/(x - lambda_j)], [v/(x - lambda_j), 0]]
    double residual;  // |mu - predicted|
    double x;
};

/// Far-field expansion check for a solve with weights localized at point j.
FarFieldProbe mu_far_field(const RhpSolution& sol, double x, double lambda_j);

}  // namespace oscrh
