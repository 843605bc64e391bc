#include "oscrh/contour.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "oscrh/legendre.hpp"

namespace oscrh {

double ContourData::local_spacing(int node) const {
    const Panel& p = panels[panel_of[node]];
    double best = p.length();
    for (int j = p.first; j < p.first + p.count; ++j) {
        if (j == node) continue;
        best = std::min(best, std::abs(nodes[j] - nodes[node]));
    }
    return best;
}

double ContourData::min_distance(Complex z) const {
    double best = 1e300;
    for (const Complex& n : nodes) best = std::min(best, std::abs(z - n));
    return best;
}

namespace {

void append_panel_nodes(ContourData& c, Complex a, Complex b, int n) {
    const auto& r = legendre::rule(n);
    Panel p;
    p.a = a;
    p.b = b;
    p.first = (int)c.nodes.size();
    p.count = n;
    const Complex half = 0.5 * (b - a);
    const int pidx = (int)c.panels.size();
    for (int k = 0; k < n; ++k) {
        c.nodes.push_back(a + half * (r.x[k] + 1.0));
        c.dz.push_back(half * r.w[k]);
        c.arc.push_back(std::abs(half) * r.w[k]);
        c.panel_of.push_back(pidx);
    }
    c.panels.push_back(p);
}

// The boundary-value transform is exact for the panel interpolant, so the
// binding constraint is interpolation error (degree n-1), not the 2n-1
// quadrature reach. Probe the worst-case interpolation error of e^{icx}.
double capacity_probe(int n) {
    const auto& r = legendre::rule(n);
    const auto& B = legendre::value_to_coeff(n);
    std::vector<Complex> coef(n);
    std::vector<double> P(n);
    double cmax = 0.0;
    for (double c = 1.0; c < 2.0 * n; c += 0.25) {
        for (int m = 0; m < n; ++m) {
            coef[m] = 0.0;
            for (int k = 0; k < n; ++k)
                coef[m] += B[(size_t)m * n + k] * std::exp(Complex(0.0, c * r.x[k]));
        }
        double err = 0.0;
        for (int s = 0; s <= 40; ++s) {
            const double x = -1.0 + 2.0 * s / 40.0;
            legendre::eval_P(n, x, P.data());
            Complex v = 0.0;
            for (int m = 0; m < n; ++m) v += coef[m] * P[m];
            err = std::max(err, std::abs(v - std::exp(Complex(0.0, c * x))));
        }
        if (err > 1e-12) break;
        cmax = c;
    }
    return 0.85 * std::max(cmax, 1.0);
}

std::map<int, double> g_capacity;
std::mutex g_capacity_mutex;

}  // namespace

double panel_phase_capacity(int n) {
    std::lock_guard<std::mutex> lock(g_capacity_mutex);
    auto it = g_capacity.find(n);
    if (it == g_capacity.end()) it = g_capacity.emplace(n, capacity_probe(n)).first;
    return it->second;
}

RealGrid build_real_grid(double L, int nodes_per_panel, const std::vector<double>& stationary_points,
                         const GridOptions& opts) {
    if (!(L > 0.0)) throw std::invalid_argument("build_real_grid: L must be positive");
    if (nodes_per_panel < 8) throw std::invalid_argument("build_real_grid: nodes_per_panel must be >= 8");
    for (double s : stationary_points)
        if (!(s > -L && s < L))
            throw std::invalid_argument("build_real_grid: stationary point outside (-L, L)");

    std::vector<double> sps = stationary_points;
    std::sort(sps.begin(), sps.end());

    // Coarse breakpoints, then dyadic grading beside each stationary point.
    std::vector<double> brk{-L};
    brk.insert(brk.end(), sps.begin(), sps.end());
    brk.push_back(L);

    auto is_sp = [&](double x) {
        for (double s : sps)
            if (x == s) return true;
        return false;
    };

    std::vector<double> refined{-L};
    for (size_t i = 0; i + 1 < brk.size(); ++i) {
        const double a = brk[i], b = brk[i + 1];
        const bool left = is_sp(a), right = is_sp(b);
        std::vector<double> inner;
        auto grade_left = [&](double aa, double bb) {
            for (int m = opts.dyadic_levels; m >= 1; --m) inner.push_back(aa + (bb - aa) * std::pow(0.5, m));
        };
        auto grade_right = [&](double aa, double bb) {
            for (int m = 1; m <= opts.dyadic_levels; ++m) inner.push_back(bb - (bb - aa) * std::pow(0.5, m));
        };
        if (left && right) {
            const double mid = 0.5 * (a + b);
            grade_left(a, mid);
            inner.push_back(mid);
            grade_right(mid, b);
        } else if (left) {
            grade_left(a, b);
        } else if (right) {
            grade_right(a, b);
        }
        std::sort(inner.begin(), inner.end());
        for (double x : inner) refined.push_back(x);
        refined.push_back(b);
    }

    // Width cap and oscillation splitting by recursive bisection.
    const double cap = (opts.theta && opts.t > 0.0) ? panel_phase_capacity(nodes_per_panel) : 0.0;
    auto needs_split = [&](double a, double b) {
        if (b - a > opts.max_panel_width) return true;
        if (cap > 0.0) {
            if (opts.envelope) {
                double env = 0.0;
                for (int j = 0; j <= 4; ++j) env = std::max(env, std::abs(opts.envelope(a + (b - a) * j / 4.0)));
                if (env < opts.envelope_floor) return false;
            }
            // Panels never straddle a stationary point, so theta is monotone
            // on (a,b) and the phase span is |theta(b)-theta(a)|.
            if (0.5 * opts.t * std::abs(opts.theta(b) - opts.theta(a)) > cap) return true;
        }
        return false;
    };
    std::vector<double> final_brk;
    std::function<void(double, double)> emit = [&](double a, double b) {
        if (needs_split(a, b) && b - a > 1e-13 * L) {
            const double mid = 0.5 * (a + b);
            emit(a, mid);
            emit(mid, b);
        } else {
            final_brk.push_back(a);
        }
    };
    for (size_t i = 0; i + 1 < refined.size(); ++i) emit(refined[i], refined[i + 1]);
    final_brk.push_back(L);

    auto data = std::make_shared<ContourData>();
    for (size_t i = 0; i + 1 < final_brk.size(); ++i)
        append_panel_nodes(*data, final_brk[i], final_brk[i + 1], nodes_per_panel);
    data->complete = true;

    RealGrid g;
    g.L = L;
    g.nodes_per_panel = nodes_per_panel;
    g.stationary_points = sps;
    g.breakpoints = std::move(final_brk);
    g.data = std::move(data);
    return g;
}

OrientedContour build_gamma_contour(double alpha, double R, int nodes_per_ray, const GammaOptions& opts) {
    if (!(alpha > 0.0 && alpha < M_PI / 4.0))
        throw std::invalid_argument("build_gamma_contour: alpha must lie in (0, pi/4)");
    if (!(R > 0.0)) throw std::invalid_argument("build_gamma_contour: R must be positive");
    if (opts.panels_per_ray < 1 || nodes_per_ray % opts.panels_per_ray != 0)
        throw std::invalid_argument("build_gamma_contour: nodes_per_ray must be a multiple of panels_per_ray");
    const int P = opts.panels_per_ray;
    const int n = nodes_per_ray / P;

    // Geometric breakpoints 0 = s_0 < s_1 < ... < s_P = R graded toward 0.
    std::vector<double> s(P + 1);
    s[0] = 0.0;
    s[P] = R;
    for (int i = P - 1; i >= 1; --i) s[i] = s[i + 1] / opts.grading_ratio;

    const Complex dirs[6] = {Complex(1.0, 0.0),
                             std::polar(1.0, alpha),
                             std::polar(1.0, M_PI - alpha),
                             Complex(-1.0, 0.0),
                             std::polar(1.0, M_PI + alpha),
                             std::polar(1.0, -alpha)};
    const bool outward[6] = {true, false, true, false, true, false};

    auto data = std::make_shared<ContourData>();
    OrientedContour c;
    c.alpha = alpha;
    c.radius = R;
    for (int ridx = 0; ridx < 6; ++ridx) {
        Ray ray;
        ray.origin = 0.0;
        ray.direction = dirs[ridx];
        ray.radius = R;
        ray.outward = outward[ridx];
        ray.first_panel = (int)data->panels.size();
        ray.first_node = (int)data->nodes.size();
        if (outward[ridx]) {
            for (int i = 0; i < P; ++i)
                append_panel_nodes(*data, s[i] * dirs[ridx], s[i + 1] * dirs[ridx], n);
        } else {
            for (int i = P - 1; i >= 0; --i)
                append_panel_nodes(*data, s[i + 1] * dirs[ridx], s[i] * dirs[ridx], n);
        }
        ray.panel_count = P;
        ray.node_count = nodes_per_ray;
        c.rays.push_back(ray);
    }
    data->complete = true;
    c.data = std::move(data);
    return c;
}

OrientedContour build_gamma_contour_adaptive(double alpha, double R, int nodes_per_panel,
                                             const std::function<double(double)>& ray_phase,
                                             int inner_levels, double inner_scale) {
    if (!(alpha > 0.0 && alpha < M_PI / 4.0))
        throw std::invalid_argument("build_gamma_contour_adaptive: alpha must lie in (0, pi/4)");
    if (!(R > 0.0)) throw std::invalid_argument("build_gamma_contour_adaptive: R must be positive");

    // Shared breakpoint ladder 0 = s_0 < ... < s_M = R.
    std::vector<double> s;
    const double si = std::min(inner_scale, 0.5 * R);
    for (int m = inner_levels; m >= 0; --m) s.push_back(si * std::pow(0.5, m));
    const double cap = panel_phase_capacity(nodes_per_panel);
    std::function<void(double, double)> split = [&](double a, double b) {
        if (ray_phase && 0.5 * std::abs(ray_phase(b) - ray_phase(a)) > cap && b - a > 1e-12 * R) {
            const double mid = 0.5 * (a + b);
            split(a, mid);
            split(mid, b);
        } else {
            s.push_back(b);
        }
    };
    split(si, R);
    std::sort(s.begin(), s.end());
    s.insert(s.begin(), 0.0);

    const Complex dirs[6] = {Complex(1.0, 0.0),
                             std::polar(1.0, alpha),
                             std::polar(1.0, M_PI - alpha),
                             Complex(-1.0, 0.0),
                             std::polar(1.0, M_PI + alpha),
                             std::polar(1.0, -alpha)};
    const bool outward[6] = {true, false, true, false, true, false};

    auto data = std::make_shared<ContourData>();
    OrientedContour c;
    c.alpha = alpha;
    c.radius = R;
    const int P = (int)s.size() - 1;
    for (int ridx = 0; ridx < 6; ++ridx) {
        Ray ray;
        ray.origin = 0.0;
        ray.direction = dirs[ridx];
        ray.radius = R;
        ray.outward = outward[ridx];
        ray.first_panel = (int)data->panels.size();
        ray.first_node = (int)data->nodes.size();
        if (outward[ridx]) {
            for (int i = 0; i < P; ++i)
                append_panel_nodes(*data, s[i] * dirs[ridx], s[i + 1] * dirs[ridx], nodes_per_panel);
        } else {
            for (int i = P - 1; i >= 0; --i)
                append_panel_nodes(*data, s[i + 1] * dirs[ridx], s[i] * dirs[ridx], nodes_per_panel);
        }
        ray.panel_count = P;
        ray.node_count = P * nodes_per_panel;
        c.rays.push_back(ray);
    }
    data->complete = true;
    c.data = std::move(data);
    return c;
}

int OrientedContour::sector_of(Complex z) const {
    double a = std::arg(z);
    if (a < 0.0) a += 2.0 * M_PI;
    const double bounds[6] = {0.0, alpha, M_PI - alpha, M_PI, M_PI + alpha, 2.0 * M_PI - alpha};
    int sec = 5;
    for (int i = 5; i >= 0; --i) {
        if (a >= bounds[i]) {
            sec = i;
            break;
        }
    }
    return sec;
}

bool OrientedContour::plus_side(Complex z) const {
    const int s = sector_of(z);
    return s == 0 || s == 2 || s == 4;
}

}  // namespace oscrh
