#pragma once

#include <utility>
#include <vector>

#include "oscrh/jump.hpp"
#include "oscrh/solver.hpp"

namespace oscrh {

/// alpha_j = 2 eps_j nu_j / (k_j + 1).
double alpha_exponent(int eps, double nu, int k);

/// Principal-branch log Gamma (Lanczos approximation, reflected for Re z < 1/2).
Complex log_gamma(Complex z);

/// First-order explicit leading constant at a simple stationary point:
///   U = i nu / sqrt(|nu theta''|) * |pq|^{-1/2} * exp(i pi eps/4 + i arg Gamma(i eps nu)),
/// understood in the limiting sense as pq -> 0. This is the t-free reading;
/// the corresponding V is -conj(U).
Complex explicit_U_first_order(double nu, int eps, double theta2, double pq);

struct ModelConstantOptions {
    double alpha = M_PI / 12.0;
    double t0 = 1.0;          // internal normalization; the result is t0-free
    int nodes_per_panel = 16;
    int inner_levels = 30;
    double tail_exponent = 37.0;  // truncation where exp decay reaches e^{-tail}
    SolverOptions solver;
};

struct ModelConstants {
    Complex U{0.0}, V{0.0};
    double gamma_radius = 0.0;
    int nodes = 0;
    SolveDiagnostics diag;
};

/// Universal leading constants from the timeless deformed model solve at one
/// stationary point: order k, local phase coefficient b, product pq (with the
/// focusing/defocusing/degenerate split implied by its sign).
ModelConstants model_constants_numeric(double pq, int k, double b,
                                       const ModelConstantOptions& opts = {});

enum class ConstantSource { ExplicitFirstOrder, NumericModelConstant };

/// Everything needed to evaluate one stationary point's leading contribution.
struct AsymptoticTerm {
    int j = 0;
    double lambda = 0.0;
    int k = 1;
    double theta_at = 0.0;  // theta(lambda_j)
    double b = 0.0;         // top/(k+1)!
    Complex p_j{0.0}, q_j{0.0};
    double nu = 0.0;
    int eps = 0;
    double alpha = 0.0;
    double omega = 0.0;
    Complex U{0.0}, V{0.0};
    ConstantSource source = ConstantSource::NumericModelConstant;

    /// u_j(t) = U p_j t^{-1/(k+1)} exp(-i [t theta_j + alpha log t - 2 omega]),
    /// v_j(t) mirrored with +i.
    std::pair<Complex, Complex> leading(double t) const;

    /// Reported error order d_j beyond 1/(k+1).
    double error_order() const { return 0.5 / (k + 1.0); }
};

/// Builds the term for stationary point j: nu, eps, alpha, omega (integral
/// route), and constants from the requested source.
AsymptoticTerm build_term(const PhaseSpec& phase, const ReflectionPair& refl,
                          const SignPartition& part, int j, double omega,
                          ConstantSource source = ConstantSource::NumericModelConstant,
                          const ModelConstantOptions& opts = {});

/// Sum of the leading contributions at time t.
std::pair<Complex, Complex> sum_contributions(const std::vector<AsymptoticTerm>& terms, double t);

}  // namespace oscrh
