#pragma once

#include <memory>

#include "oscrh/cauchy.hpp"
#include "oscrh/phase.hpp"
#include "oscrh/reflection.hpp"

namespace oscrh {

/// Solution of the scalar conjugating problem
///   delta_+ = delta_- (1+pq) on D-,  delta_+ = delta_- on D+,
/// given by delta_pm = exp(C_pm(1_{D-} log(1+pq))).
struct DeltaSolution {
    RealGrid grid;
    SignPartition part;
    std::shared_ptr<CauchyOperator> cauchy;
    ComplexField g;  // 1_{D-} log(1+pq) at the nodes
    ComplexField delta_plus, delta_minus;
    std::vector<double> nu;  // per stationary point

    /// exp(C g (z)) for z off the line; accurate arbitrarily close to the line
    /// as long as the integrand is panel-resolved.
    Complex log_delta_at(Complex z) const;
    Complex delta_at(Complex z) const;
};

DeltaSolution solve_scalar_rhp(const ReflectionPair& refl, const PhaseSpec& phase,
                               const SignPartition& part, const RealGrid& grid);

/// Local log-model at a stationary point:
///   exterior: 0; endpoint: i eps nu log(eps (lambda-lambda_j));
///   interior: -pi nu sgn(Im lambda).
/// Principal branch; throws when lambda sits on the branch cut.
Complex beta_point(Complex lambda, double lambda_j, SignPartition::Kind kind, int eps, double nu);

struct OmegaLimitOptions {
    double s0 = 0.025;
    int levels = 6;
    double ratio = 2.0;
    double cauchy_tol = 1e-5;  // extrapolation tail must be Cauchy at this level
};

/// omega_j = (1/i) lim_{z->lambda_j} (C[1_{D-}log(1+pq)](z) - beta_j(z)),
/// taken along the vertical ray with Richardson extrapolation on the sqrt(s)
/// scale. Throws if the extrapolation sequence is not settling.
double omega_limit(const DeltaSolution& delta, const PhaseSpec& phase, int j,
                   const OmegaLimitOptions& opts = {});

/// omega_j by the integral route:
///   (1/2pi) int_{D-} log|lambda_j - y| dlog(1+pq)(y)
///   + sum_{k != j} eps_k nu_k log|lambda_j - lambda_k|.
double omega_integral(const ReflectionPair& refl, const PhaseSpec& phase,
                      const SignPartition& part, int j, double L);

/// delta_j(lambda) = exp(i omega + beta_j(lambda)).
Complex delta_model(Complex lambda, double lambda_j, SignPartition::Kind kind, int eps,
                    double nu, double omega);

}  // namespace oscrh
