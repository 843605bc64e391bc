#include "oscrh/reflection.hpp"

#include <cmath>
#include <stdexcept>

namespace oscrh {

namespace {

/// d/dx [ poly(u) e^{-sigma u^2} ] = (poly'(u) - 2 sigma u poly(u)) e^{-sigma u^2}, u = x-center.
Envelope::Term differentiate_term(const Envelope::Term& t) {
    Envelope::Term d = t;
    std::vector<Complex> out(t.poly.size() + 1, Complex(0.0));
    for (size_t i = 1; i < t.poly.size(); ++i) out[i - 1] += (double)i * t.poly[i];
    for (size_t i = 0; i < t.poly.size(); ++i) out[i + 1] -= 2.0 * t.sigma * t.poly[i];
    d.poly = std::move(out);
    return d;
}

Complex eval_term(const Envelope::Term& t, Complex z) {
    const Complex u = z - t.center;
    Complex pv = 0.0;
    for (size_t i = t.poly.size(); i-- > 0;) pv = pv * u + t.poly[i];
    return t.amp * pv * std::exp(-t.sigma * u * u);
}

}  // namespace

Envelope::Envelope(std::vector<Term> terms) : terms_(std::move(terms)) {
    dterms_.resize(3);
    std::vector<Term> cur = terms_;
    for (int o = 0; o < 3; ++o) {
        std::vector<Term> next;
        next.reserve(cur.size());
        for (const Term& t : cur) next.push_back(differentiate_term(t));
        dterms_[o] = next;
        cur = std::move(next);
    }
}

Envelope Envelope::gaussian(Complex amp, double sigma, double center) {
    Term t;
    t.amp = amp;
    t.sigma = sigma;
    t.center = center;
    return Envelope({t});
}

Envelope Envelope::symmetric_pair(Complex amp, double sigma, double c) {
    Term a, b;
    a.amp = b.amp = amp;
    a.sigma = b.sigma = sigma;
    a.center = c;
    b.center = -c;
    return Envelope({a, b});
}

Complex Envelope::value(double x) const {
    Complex s = 0.0;
    for (const Term& t : terms_) s += eval_term(t, x);
    return s;
}

Complex Envelope::derivative(double x, int order) const {
    if (order < 1 || order > 3) throw std::invalid_argument("Envelope::derivative: order must be 1..3");
    Complex s = 0.0;
    for (const Term& t : dterms_[order - 1]) s += eval_term(t, x);
    return s;
}

Complex Envelope::value_c(Complex z) const {
    Complex s = 0.0;
    for (const Term& t : terms_) s += eval_term(t, z);
    return s;
}

Envelope Envelope::conjugate() const {
    std::vector<Term> out = terms_;
    for (Term& t : out) {
        t.amp = std::conj(t.amp);
        for (Complex& c : t.poly) c = std::conj(c);
    }
    return Envelope(std::move(out));
}

Envelope Envelope::negate() const {
    std::vector<Term> out = terms_;
    for (Term& t : out) t.amp = -t.amp;
    return Envelope(std::move(out));
}

double Envelope::support_radius(double floor) const {
    if (terms_.empty() || floor <= 0.0) return 0.0;
    double r = 0.25;
    while (r < 1e6) {
        double m = 0.0;
        for (double x : {-r, r, -0.93 * r, 0.93 * r}) m = std::max(m, std::abs(value(x)));
        // Monotone tails past all centers: once below floor at +-r, stay below.
        bool past = true;
        for (const Term& t : terms_) past = past && (r > std::abs(t.center) + 2.0);
        if (m < floor && past) return r;
        r *= 1.1892071150027210667;  // 2^(1/4)
    }
    return r;
}

double ReflectionPair::log1pq(double x) const {
    const Complex v = pq(x);
    if (std::abs(v.imag()) > 1e-12 * (1.0 + std::abs(v.real())))
        throw std::domain_error("ReflectionPair: p q is not real on the line");
    const double re = 1.0 + v.real();
    if (re <= 0.0) throw std::domain_error("ReflectionPair: 1 + p q must stay positive");
    return std::log(re);
}

double ReflectionPair::dlog1pq(double x) const {
    const Complex num = p.derivative(x, 1) * q.value(x) + p.value(x) * q.derivative(x, 1);
    const Complex den = 1.0 + pq(x);
    const Complex v = num / den;
    return v.real();
}

double ReflectionPair::nu_at(double lambda) const { return -log1pq(lambda) / (2.0 * M_PI); }

}  // namespace oscrh
