#pragma once

#include <memory>
#include <vector>

#include "oscrh/contour.hpp"
#include "oscrh/mat2.hpp"

namespace oscrh {

struct RealGrid;

/// One stationary point of the phase: theta'(lambda) = ... = theta^{(k)}(lambda) = 0,
/// top = theta^{(k+1)}(lambda) != 0, epsilon = 0 for even k and sign(top) for odd k.
struct StationaryPoint {
    double lambda = 0.0;
    int order = 0;  // k
    double top = 0.0;
    int epsilon = 0;
};

/// Real polynomial phase, optionally in shifted-monomial form a + b (x-c)^m.
class PhaseSpec {
public:
    PhaseSpec() = default;
    /// coeffs[i] multiplies x^i.
    static PhaseSpec polynomial(std::vector<double> coeffs);
    /// a + b (x - center)^power, kept in shifted form for exact evaluation near center.
    static PhaseSpec monomial(double a, double b, double center, int power);
    /// theta(x) = (x - lambda0)^2
    static PhaseSpec nls(double lambda0);
    /// theta(x) = 4 (x^3 - 3 lambda0^2 x)
    static PhaseSpec mkdv(double lambda0);

    double operator()(double x) const;
    double derivative(double x, int order = 1) const;
    Complex eval_complex(Complex z) const;
    int degree() const { return (int)coeffs_.size() - 1; }

    bool classified() const { return classified_; }
    const std::vector<StationaryPoint>& stationary() const;

    /// Finds all real roots of theta' with multiplicities and fills the
    /// stationary records. Throws on root-finding failure.
    PhaseSpec classify() const;

    /// Local model a + b (x-lambda_j)^{k_j+1} with a = theta(lambda_j),
    /// b = top/(k_j+1)!.
    PhaseSpec taylor_model(int j) const;

    bool is_monomial() const { return monomial_; }
    double monomial_a() const { return a_; }
    double monomial_b() const { return b_; }
    double monomial_center() const { return center_; }
    int monomial_power() const { return power_; }

    /// Total variation of theta over [a, b] (exact: splits at stationary points).
    double total_variation(double a, double b) const;

    std::vector<double> stationary_locations() const;

private:
    std::vector<double> coeffs_;
    bool monomial_ = false;
    double a_ = 0.0, b_ = 0.0, center_ = 0.0;
    int power_ = 0;
    bool classified_ = false;
    std::vector<StationaryPoint> points_;
};

/// Membership of grid nodes in D- = {theta' < 0} / D+ = {theta' > 0}, and the
/// position of each stationary point relative to the closure of D-.
struct SignPartition {
    enum class Kind { Interior, Exterior, LeftEndpoint, RightEndpoint };

    std::vector<unsigned char> in_dminus;  // per node
    std::vector<Kind> kinds;               // per stationary point
    std::shared_ptr<const ContourData> contour;

    bool dminus(int node) const { return in_dminus[node] != 0; }
};

SignPartition sign_partition(const PhaseSpec& phase, const RealGrid& grid);

}  // namespace oscrh
