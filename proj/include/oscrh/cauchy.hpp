#pragma once

#include <memory>

#include "oscrh/field.hpp"

namespace oscrh {

/// Boundary-value Cauchy projections on a panel contour. The transform of the
/// panelwise Legendre interpolant is evaluated in closed form through Legendre
/// functions of the second kind, so C+ - C- = f holds exactly at the nodes and
/// accuracy near the contour is limited only by panel resolution.
class CauchyOperator {
public:
    explicit CauchyOperator(std::shared_ptr<const ContourData> contour);

    const std::shared_ptr<const ContourData>& contour() const { return contour_; }

    MatrixField plus(const MatrixField& f) const;
    MatrixField minus(const MatrixField& f) const;
    ComplexField plus(const ComplexField& f) const;
    ComplexField minus(const ComplexField& f) const;

    /// H f = C+ f + C- f (twice the principal-value part).
    MatrixField hilbert(const MatrixField& f) const;
    ComplexField hilbert(const ComplexField& f) const;

    /// Off-contour Cauchy integral. Refuses z closer to the contour than the
    /// local node spacing.
    Mat2 eval(const MatrixField& f, Complex z) const;
    Complex eval(const ComplexField& f, Complex z) const;

    /// -(1/2 pi i) * oriented integral of f.
    Mat2 coefficient_at_infinity(const MatrixField& f) const;
    Complex coefficient_at_infinity(const ComplexField& f) const;

    /// Core batched transform: ncomp interleaved complex components per node.
    /// out[i*ncomp + c] receives the principal part A(x_i); callers add +-f/2.
    /// Panels whose expansion vanishes are skipped; when target_mask is given,
    /// only flagged target nodes are evaluated.
    void principal_part(const Complex* f, int ncomp, Complex* out,
                        const unsigned char* target_mask = nullptr) const;
    /// Same sum evaluated at an arbitrary off-contour point.
    void eval_raw(const Complex* f, int ncomp, Complex z, Complex* out) const;

private:
    std::shared_ptr<const ContourData> contour_;
};

}  // namespace oscrh
