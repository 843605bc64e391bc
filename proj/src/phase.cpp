#include "oscrh/phase.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oscrh {

namespace {

std::vector<double> differentiate(const std::vector<double>& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * (double)i;
    return d;
}

double horner(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (size_t i = c.size(); i-- > 0;) v = v * x + c[i];
    return v;
}

Complex horner_c(const std::vector<double>& c, Complex z) {
    Complex v = 0.0;
    for (size_t i = c.size(); i-- > 0;) v = v * z + c[i];
    return v;
}

/// Real roots of a polynomial via the companion matrix, with clustering of
/// nearby roots into multiple roots.
std::vector<std::pair<double, int>> real_roots_clustered(std::vector<double> c) {
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    if (c.size() <= 1) return {};
    const int n = (int)c.size() - 1;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / c[n];
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("phase classify: eigenvalue iteration failed");

    double scale = 0.0;
    for (double v : c) scale = std::max(scale, std::abs(v));
    double rscale = 1.0;
    std::vector<double> roots;
    for (int i = 0; i < n; ++i) {
        const Complex r(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
        if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
            throw std::runtime_error("phase classify: non-finite root");
        rscale = std::max(rscale, std::abs(r));
    }
    for (int i = 0; i < n; ++i) {
        const auto ev = es.eigenvalues()[i];
        if (std::abs(ev.imag()) < 1e-7 * rscale) roots.push_back(ev.real());
    }
    std::sort(roots.begin(), roots.end());
    std::vector<std::pair<double, int>> clusters;
    for (double r : roots) {
        if (!clusters.empty() && std::abs(r - clusters.back().first) < 1e-6 * rscale) {
            auto& [loc, mult] = clusters.back();
            loc = (loc * mult + r) / (mult + 1);
            ++mult;
        } else {
            clusters.push_back({r, 1});
        }
    }
    (void)scale;
    return clusters;
}

}  // namespace

PhaseSpec PhaseSpec::polynomial(std::vector<double> coeffs) {
    PhaseSpec p;
    p.coeffs_ = std::move(coeffs);
    if (p.coeffs_.empty()) p.coeffs_ = {0.0};
    return p;
}

PhaseSpec PhaseSpec::monomial(double a, double b, double center, int power) {
    PhaseSpec p;
    p.monomial_ = true;
    p.a_ = a;
    p.b_ = b;
    p.center_ = center;
    p.power_ = power;
    // Expanded form kept alongside for generic coefficient-based operations.
    std::vector<double> c(power + 1, 0.0);
    double binom = 1.0;
    for (int i = 0; i <= power; ++i) {
        c[power - i] += b * binom * std::pow(-center, i);
        binom *= (double)(power - i) / (i + 1.0);
    }
    c[0] += a;
    p.coeffs_ = std::move(c);
    return p;
}

PhaseSpec PhaseSpec::nls(double lambda0) { return monomial(0.0, 1.0, lambda0, 2); }

PhaseSpec PhaseSpec::mkdv(double lambda0) {
    return polynomial({0.0, -12.0 * lambda0 * lambda0, 0.0, 4.0});
}

double PhaseSpec::operator()(double x) const {
    if (monomial_) return a_ + b_ * std::pow(x - center_, power_);
    return horner(coeffs_, x);
}

double PhaseSpec::derivative(double x, int order) const {
    if (monomial_) {
        if (order > power_) return 0.0;
        double f = 1.0;
        for (int i = 0; i < order; ++i) f *= (double)(power_ - i);
        return b_ * f * std::pow(x - center_, power_ - order);
    }
    std::vector<double> c = coeffs_;
    for (int i = 0; i < order; ++i) c = differentiate(c);
    return horner(c, x);
}

Complex PhaseSpec::eval_complex(Complex z) const {
    if (monomial_) return a_ + b_ * std::pow(z - center_, power_);
    return horner_c(coeffs_, z);
}

const std::vector<StationaryPoint>& PhaseSpec::stationary() const {
    if (!classified_) throw std::logic_error("PhaseSpec: classify() has not been run");
    return points_;
}

PhaseSpec PhaseSpec::classify() const {
    if (degree() < 2) throw std::invalid_argument("PhaseSpec::classify: degree must be >= 2");
    PhaseSpec out = *this;
    out.points_.clear();

    const auto clusters = real_roots_clustered(differentiate(coeffs_));
    for (auto [lambda, mult] : clusters) {
        // Vanishing-derivative rule: |theta^{(m)}(lambda)| < 1e-9 * scale counts as zero.
        double scale = 0.0;
        for (size_t i = 0; i < coeffs_.size(); ++i)
            scale = std::max(scale, std::abs(coeffs_[i]) * std::pow(std::max(1.0, std::abs(lambda)), (double)i));
        int k = 0;
        for (int m = 1; m <= degree(); ++m) {
            if (std::abs(derivative(lambda, m)) < 1e-9 * scale)
                k = m;
            else
                break;
        }
        if (k == 0) continue;  // spurious cluster
        StationaryPoint sp;
        sp.lambda = lambda;
        sp.order = k;
        sp.top = derivative(lambda, k + 1);
        sp.epsilon = (k % 2 == 0) ? 0 : (sp.top > 0.0 ? 1 : -1);
        out.points_.push_back(sp);
        (void)mult;
    }
    std::sort(out.points_.begin(), out.points_.end(),
              [](const StationaryPoint& a, const StationaryPoint& b) { return a.lambda < b.lambda; });
    out.classified_ = true;
    return out;
}

PhaseSpec PhaseSpec::taylor_model(int j) const {
    const auto& sp = stationary().at(j);
    double fact = 1.0;
    for (int i = 2; i <= sp.order + 1; ++i) fact *= i;
    PhaseSpec m = monomial((*this)(sp.lambda), sp.top / fact, sp.lambda, sp.order + 1);
    m.points_ = {sp};
    m.points_[0].top = sp.top;
    m.classified_ = true;
    return m;
}

double PhaseSpec::total_variation(double a, double b) const {
    if (a > b) std::swap(a, b);
    std::vector<double> cuts{a, b};
    if (classified_) {
        for (const auto& sp : points_)
            if (sp.lambda > a && sp.lambda < b) cuts.push_back(sp.lambda);
    } else {
        for (auto [r, m] : real_roots_clustered(differentiate(coeffs_)))
            if (r > a && r < b) cuts.push_back(r);
    }
    std::sort(cuts.begin(), cuts.end());
    double tv = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) tv += std::abs((*this)(cuts[i + 1]) - (*this)(cuts[i]));
    return tv;
}

std::vector<double> PhaseSpec::stationary_locations() const {
    std::vector<double> v;
    for (const auto& sp : stationary()) v.push_back(sp.lambda);
    return v;
}

SignPartition sign_partition(const PhaseSpec& phase, const RealGrid& grid) {
    const auto& pts = phase.stationary();
    SignPartition part;
    part.contour = grid.data;
    part.in_dminus.resize(grid.size());
    for (int i = 0; i < grid.size(); ++i)
        part.in_dminus[i] = phase.derivative(grid.node(i)) < 0.0 ? 1 : 0;
    for (const auto& sp : pts) {
        if (sp.epsilon == 1)
            part.kinds.push_back(SignPartition::Kind::RightEndpoint);
        else if (sp.epsilon == -1)
            part.kinds.push_back(SignPartition::Kind::LeftEndpoint);
        else
            part.kinds.push_back(sp.top > 0.0 ? SignPartition::Kind::Exterior
                                              : SignPartition::Kind::Interior);
    }
    return part;
}

}  // namespace oscrh
