#pragma once

#include <vector>

#include "oscrh/mat2.hpp"

namespace oscrh {

/// Analytic envelope: a sum of terms amp * poly(x-center) * exp(-sigma (x-center)^2).
/// Entire in x; derivatives up to order 3 are computed from closed forms.
class Envelope {
public:
    struct Term {
        Complex amp{0.0};
        std::vector<Complex> poly{Complex(1.0)};  // poly[i] * (x-center)^i
        double sigma = 1.0;
        double center = 0.0;
    };

    Envelope() = default;
    explicit Envelope(std::vector<Term> terms);

    static Envelope zero() { return Envelope(std::vector<Term>{}); }
    static Envelope gaussian(Complex amp, double sigma, double center = 0.0);
    /// The two-bump profile amp*(exp(-sigma (x-c)^2) + exp(-sigma (x+c)^2)).
    static Envelope symmetric_pair(Complex amp, double sigma, double c);

    Complex value(double x) const;
    Complex derivative(double x, int order) const;  // order in 1..3
    Complex value_c(Complex z) const;

    /// Envelope equal to conj(this(x)) for real x.
    Envelope conjugate() const;
    Envelope negate() const;

    bool empty() const { return terms_.empty(); }
    double support_radius(double floor) const;  // |value| < floor outside [-r, r]

private:
    std::vector<Term> terms_;
    std::vector<std::vector<Term>> dterms_;  // derivative envelopes, orders 1..3
};

/// Reflection coefficient pair with closed-form derivative access.
struct ReflectionPair {
    Envelope p, q;

    static ReflectionPair degenerate(Envelope p) { return {std::move(p), Envelope::zero()}; }
    static ReflectionPair defocusing(const Envelope& p) { return {p, p.conjugate().negate()}; }
    static ReflectionPair focusing(const Envelope& p) { return {p, p.conjugate()}; }

    Complex pq(double x) const { return p.value(x) * q.value(x); }
    /// log(1 + p q); requires 1 + pq > 0.
    double log1pq(double x) const;
    /// d/dx log(1+pq) = (p' q + p q')/(1+pq).
    double dlog1pq(double x) const;
    /// nu = -(1/2pi) log(1 + p(lambda) q(lambda)).
    double nu_at(double lambda) const;
};

}  // namespace oscrh
