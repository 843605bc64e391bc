#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

namespace oscrh {

using Complex = std::complex<double>;

/// One straight quadrature panel. Endpoints are listed in the direction of
/// integration, so the + side of the contour is always Im(zeta) > 0 in the
/// panel's own [-1,1] coordinates.
struct Panel {
    Complex a, b;
    int first = 0;  // index of the panel's first node in the global arrays
    int count = 0;

    Complex map(double xi) const { return a + (b - a) * (0.5 * (xi + 1.0)); }
    Complex to_local(Complex z) const { return (2.0 * z - a - b) / (b - a); }
    double length() const { return std::abs(b - a); }
};

/// Quadrature-ready oriented contour: panels, nodes, oriented complex weights
/// dz (sum f*dz integrates along the contour), and arc-length weights for norms.
struct ContourData {
    std::vector<Panel> panels;
    std::vector<Complex> nodes;
    std::vector<Complex> dz;
    std::vector<double> arc;
    std::vector<int> panel_of;  // node index -> panel index
    bool complete = false;      // orientation splits the plane into pure +/- regions

    int size() const { return (int)nodes.size(); }
    /// Distance from a node to its nearest in-panel neighbor; the admissible
    /// approach distance for off-contour evaluation.
    double local_spacing(int node) const;
    double min_distance(Complex z) const;
};

struct GridOptions {
    int dyadic_levels = 2;            // refinement levels beside each stationary point
    double max_panel_width = 1e300;   // cap on panel width
    // Optional oscillation-aware splitting: panels are bisected until
    // t*|theta(b)-theta(a)| fits the empirically probed capacity of the rule.
    std::function<double(double)> theta;
    double t = 0.0;
    // Skip oscillation splitting where the envelope is below this floor.
    std::function<double(double)> envelope;
    double envelope_floor = 0.0;
};

/// Truncated real line [-L, L] with graded Gauss-Legendre panels. Breakpoints
/// include every stationary point; nodes never coincide with one.
struct RealGrid {
    double L = 0.0;
    int nodes_per_panel = 0;
    std::vector<double> stationary_points;
    std::vector<double> breakpoints;  // panel endpoints, increasing
    std::shared_ptr<const ContourData> data;

    const std::vector<Complex>& nodes() const { return data->nodes; }
    int size() const { return data->size(); }
    double node(int i) const { return data->nodes[i].real(); }
    double weight(int i) const { return data->dz[i].real(); }
};

RealGrid build_real_grid(double L, int nodes_per_panel, const std::vector<double>& stationary_points,
                         const GridOptions& opts = {});

/// Largest half-bandwidth c such that the n-point Gauss rule integrates
/// exp(i c x) over [-1,1] to 1e-11 absolute error, probed once and cached.
double panel_phase_capacity(int n);

struct Ray {
    Complex origin;
    Complex direction;  // unit, pointing away from the origin
    double radius = 0.0;
    bool outward = false;  // orientation of integration
    int first_panel = 0, panel_count = 0;
    int first_node = 0, node_count = 0;
};

struct GammaOptions {
    int panels_per_ray = 8;
    double grading_ratio = 2.0;  // geometric panel grading toward the origin
};

/// Six rays through the origin: G0=R+, G1=e^{ia}R+, G2=e^{-ia}R-, G3=R-,
/// G4=e^{ia}R-, G5=e^{-ia}R+, truncated at radius R. G0, G2, G4 run outward
/// and G1, G3, G5 inward, which makes the contour complete.
struct OrientedContour {
    double alpha = 0.0;
    double radius = 0.0;
    std::vector<Ray> rays;
    std::shared_ptr<const ContourData> data;

    int size() const { return data->size(); }
    /// Sector index 0..5 counted counterclockwise from G0 (sector 0 lies
    /// between G0 and G1).
    int sector_of(Complex z) const;
    /// True when z lies in a sector on the + side of the contour.
    bool plus_side(Complex z) const;
};

OrientedContour build_gamma_contour(double alpha, double R, int nodes_per_ray,
                                    const GammaOptions& opts = {});

/// Same geometry, with ray panels sized for a given oscillation: dyadic
/// grading from inner_scale toward the origin (inner_levels shells) and
/// phase-capacity bisection outside it. ray_phase(s) is the oscillation
/// phase magnitude at ray parameter s (common to all rays).
OrientedContour build_gamma_contour_adaptive(double alpha, double R, int nodes_per_panel,
                                             const std::function<double(double)>& ray_phase,
                                             int inner_levels = 30, double inner_scale = 1.0);

}  // namespace oscrh
