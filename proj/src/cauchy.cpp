#include "oscrh/cauchy.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oscrh/legendre.hpp"

namespace oscrh {

namespace {
constexpr Complex kIOverPi{0.0, M_1_PI};  // i/pi
}

CauchyOperator::CauchyOperator(std::shared_ptr<const ContourData> contour)
    : contour_(std::move(contour)) {
    if (!contour_) throw std::invalid_argument("CauchyOperator: null contour");
}

void CauchyOperator::principal_part(const Complex* f, int ncomp, Complex* out,
                                    const unsigned char* target_mask) const {
    const ContourData& c = *contour_;
    const int N = c.size();
    for (int i = 0; i < N * ncomp; ++i) out[i] = 0.0;

    std::vector<Complex> coef;
    std::vector<Complex> qoff;
    std::vector<double> qcut, pcut;

    for (size_t qi = 0; qi < c.panels.size(); ++qi) {
        const Panel& p = c.panels[qi];
        const int n = p.count;
        const auto& B = legendre::value_to_coeff(n);
        coef.assign((size_t)n * ncomp, Complex(0.0));
        double cmax = 0.0;
        for (int m = 0; m < n; ++m) {
            for (int k = 0; k < n; ++k) {
                const double b = B[(size_t)m * n + k];
                const Complex* fv = f + (size_t)(p.first + k) * ncomp;
                for (int cc = 0; cc < ncomp; ++cc) coef[(size_t)m * ncomp + cc] += b * fv[cc];
            }
            for (int cc = 0; cc < ncomp; ++cc)
                cmax = std::max(cmax, std::abs(coef[(size_t)m * ncomp + cc]));
        }
        if (cmax == 0.0) continue;

        qoff.resize(n);
        qcut.resize(n);
        pcut.resize(n);
        for (int i = 0; i < N; ++i) {
            if (target_mask && !target_mask[i]) continue;
            Complex* oi = out + (size_t)i * ncomp;
            if (c.panel_of[i] == (int)qi) {
                const double xi = p.to_local(c.nodes[i]).real();
                legendre::eval_Q_cut(n, xi, qcut.data());
                for (int cc = 0; cc < ncomp; ++cc) {
                    Complex s = 0.0;
                    for (int m = 0; m < n; ++m) s += coef[(size_t)m * ncomp + cc] * qcut[m];
                    oi[cc] += kIOverPi * s;
                }
            } else {
                const Complex zeta = p.to_local(c.nodes[i]);
                const int cnt = legendre::eval_Q_off(n, zeta, qoff.data(), 1e-16);
                for (int cc = 0; cc < ncomp; ++cc) {
                    Complex s = 0.0;
                    for (int m = 0; m < cnt; ++m) s += coef[(size_t)m * ncomp + cc] * qoff[m];
                    oi[cc] += kIOverPi * s;
                }
            }
        }
    }
}

void CauchyOperator::eval_raw(const Complex* f, int ncomp, Complex z, Complex* out) const {
    const ContourData& c = *contour_;
    for (int cc = 0; cc < ncomp; ++cc) out[cc] = 0.0;
    std::vector<Complex> coef, qoff;
    for (const Panel& p : c.panels) {
        const int n = p.count;
        const auto& B = legendre::value_to_coeff(n);
        coef.assign((size_t)n * ncomp, Complex(0.0));
        double cmax = 0.0;
        for (int m = 0; m < n; ++m) {
            for (int k = 0; k < n; ++k) {
                const double b = B[(size_t)m * n + k];
                const Complex* fv = f + (size_t)(p.first + k) * ncomp;
                for (int cc = 0; cc < ncomp; ++cc) coef[(size_t)m * ncomp + cc] += b * fv[cc];
            }
            for (int cc = 0; cc < ncomp; ++cc)
                cmax = std::max(cmax, std::abs(coef[(size_t)m * ncomp + cc]));
        }
        if (cmax == 0.0) continue;
        qoff.resize(n);
        const int cnt = legendre::eval_Q_off(n, p.to_local(z), qoff.data(), 1e-16);
        for (int cc = 0; cc < ncomp; ++cc) {
            Complex s = 0.0;
            for (int m = 0; m < cnt; ++m) s += coef[(size_t)m * ncomp + cc] * qoff[m];
            out[cc] += kIOverPi * s;
        }
    }
}

namespace {

template <typename Field, int NC>
Field boundary_value(const CauchyOperator& op, const Field& f, double side) {
    Field out(op.contour());
    op.principal_part(reinterpret_cast<const Complex*>(f.values.data()), NC,
                      reinterpret_cast<Complex*>(out.values.data()));
    const Complex* fv = reinterpret_cast<const Complex*>(f.values.data());
    Complex* ov = reinterpret_cast<Complex*>(out.values.data());
    for (size_t i = 0; i < f.values.size() * NC; ++i) ov[i] += side * 0.5 * fv[i];
    return out;
}

template <typename Field, int NC>
Field hilbert_impl(const CauchyOperator& op, const Field& f) {
    Field out(op.contour());
    op.principal_part(reinterpret_cast<const Complex*>(f.values.data()), NC,
                      reinterpret_cast<Complex*>(out.values.data()));
    Complex* ov = reinterpret_cast<Complex*>(out.values.data());
    for (size_t i = 0; i < f.values.size() * NC; ++i) ov[i] *= 2.0;
    return out;
}

}  // namespace

MatrixField CauchyOperator::plus(const MatrixField& f) const { return boundary_value<MatrixField, 4>(*this, f, 1.0); }
MatrixField CauchyOperator::minus(const MatrixField& f) const { return boundary_value<MatrixField, 4>(*this, f, -1.0); }
ComplexField CauchyOperator::plus(const ComplexField& f) const { return boundary_value<ComplexField, 1>(*this, f, 1.0); }
ComplexField CauchyOperator::minus(const ComplexField& f) const { return boundary_value<ComplexField, 1>(*this, f, -1.0); }

MatrixField CauchyOperator::hilbert(const MatrixField& f) const { return hilbert_impl<MatrixField, 4>(*this, f); }
ComplexField CauchyOperator::hilbert(const ComplexField& f) const { return hilbert_impl<ComplexField, 1>(*this, f); }

Mat2 CauchyOperator::eval(const MatrixField& f, Complex z) const {
    const ContourData& c = *contour_;
    int nearest = 0;
    double best = 1e300;
    for (int i = 0; i < c.size(); ++i) {
        const double d = std::abs(z - c.nodes[i]);
        if (d < best) {
            best = d;
            nearest = i;
        }
    }
    if (best <= c.local_spacing(nearest))
        throw std::domain_error("CauchyOperator::eval: z too close to the contour");
    Mat2 out;
    eval_raw(reinterpret_cast<const Complex*>(f.values.data()), 4, z, reinterpret_cast<Complex*>(&out));
    return out;
}

Complex CauchyOperator::eval(const ComplexField& f, Complex z) const {
    const ContourData& c = *contour_;
    int nearest = 0;
    double best = 1e300;
    for (int i = 0; i < c.size(); ++i) {
        const double d = std::abs(z - c.nodes[i]);
        if (d < best) {
            best = d;
            nearest = i;
        }
    }
    if (best <= c.local_spacing(nearest))
        throw std::domain_error("CauchyOperator::eval: z too close to the contour");
    Complex out;
    eval_raw(f.values.data(), 1, z, &out);
    return out;
}

Mat2 CauchyOperator::coefficient_at_infinity(const MatrixField& f) const {
    Mat2 s;
    const ContourData& c = *contour_;
    for (int i = 0; i < c.size(); ++i) s += c.dz[i] * f.values[i];
    const Complex pref = -1.0 / (2.0 * M_PI * Complex(0.0, 1.0));
    return pref * s;
}

Complex CauchyOperator::coefficient_at_infinity(const ComplexField& f) const {
    Complex s = 0.0;
    const ContourData& c = *contour_;
    for (int i = 0; i < c.size(); ++i) s += c.dz[i] * f.values[i];
    return -s / (2.0 * M_PI * Complex(0.0, 1.0));
}

}  // namespace oscrh
