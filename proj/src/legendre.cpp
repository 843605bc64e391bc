#include "oscrh/legendre.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace oscrh::legendre {

namespace {

Rule compute_rule(int n) {
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    // Newton iteration from the Chebyshev-based initial guess.
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.x[n - 1 - i] = x;
        r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

std::map<int, Rule> g_rules;
std::map<int, std::vector<double>> g_transforms;
std::mutex g_mutex;

inline Complex clog1p(Complex w) {
    if (std::abs(w) < 1e-4) return w * (1.0 - w * (0.5 - w / 3.0));
    return std::log(1.0 + w);
}

}  // namespace

const Rule& rule(int n) {
    if (n < 1) throw std::invalid_argument("legendre::rule: n must be positive");
    std::lock_guard<std::mutex> lock(g_mutex);
    auto it = g_rules.find(n);
    if (it == g_rules.end()) it = g_rules.emplace(n, compute_rule(n)).first;
    return it->second;
}

void eval_P(int m, double x, double* out) {
    if (m <= 0) return;
    out[0] = 1.0;
    if (m == 1) return;
    out[1] = x;
    for (int k = 1; k + 1 < m; ++k)
        out[k + 1] = ((2.0 * k + 1.0) * x * out[k] - k * out[k - 1]) / (k + 1.0);
}

void eval_Q_cut(int m, double x, double* out) {
    if (m <= 0) return;
    out[0] = 0.5 * std::log((1.0 + x) / (1.0 - x));
    if (m == 1) return;
    out[1] = x * out[0] - 1.0;
    for (int k = 1; k + 1 < m; ++k)
        out[k + 1] = ((2.0 * k + 1.0) * x * out[k] - k * out[k - 1]) / (k + 1.0);
}

double ellipse_rho(Complex zeta) {
    Complex s = std::sqrt(zeta * zeta - 1.0);
    double r1 = std::abs(zeta + s), r2 = std::abs(zeta - s);
    return std::max(r1, r2);
}

int eval_Q_off(int m, Complex zeta, Complex* out, double tail_tol) {
    if (m <= 0) return 0;
    const Complex q0 = 0.5 * (clog1p(1.0 / (zeta - 1.0)) - clog1p(-1.0 / (zeta + 1.0)));
    // Q_n decays like rho^{-n}; keep terms until the tail is below tail_tol.
    const double logrho = std::log(std::max(ellipse_rho(zeta), 1.0 + 1e-14));
    const double need = -std::log(tail_tol);
    int count = m;
    if (logrho * (m - 1) > need) count = std::max(1, (int)std::ceil(need / logrho) + 1);
    // Backward (Miller) recurrence: seed high, recur down the minimal solution.
    int pad = (int)std::ceil(0.5 * need / logrho) + 6;
    if (pad > 60000) pad = 60000;
    const int M = count + pad;
    Complex tp = 0.0, tc = 1.0;  // T_{M+1}, T_M
    for (int k = M; k >= 1; --k) {
        Complex tm = ((2.0 * k + 1.0) * zeta * tc - (k + 1.0) * tp) / (double)k;
        tp = tc;
        tc = tm;
        if (k - 1 < count) out[k - 1] = tc;
        double mag = std::abs(tc);
        if (mag > 1e280) {  // rescale to dodge overflow; ratios are all that matter
            tc /= mag;
            tp /= mag;
            for (int j = k - 1; j < count; ++j) out[j] /= mag;
        }
    }
    const Complex scale = q0 / out[0];
    out[0] = q0;
    for (int j = 1; j < count; ++j) out[j] *= scale;
    return count;
}

const std::vector<double>& value_to_coeff(int n) {
    std::lock_guard<std::mutex> lock(g_mutex);
    auto it = g_transforms.find(n);
    if (it == g_transforms.end()) {
        const Rule r = compute_rule(n);
        std::vector<double> B((size_t)n * n);
        std::vector<double> P(n);
        for (int k = 0; k < n; ++k) {
            eval_P(n, r.x[k], P.data());
            for (int mth = 0; mth < n; ++mth)
                B[(size_t)mth * n + k] = 0.5 * (2.0 * mth + 1.0) * r.w[k] * P[mth];
        }
        it = g_transforms.emplace(n, std::move(B)).first;
    }
    return it->second;
}

}  // namespace oscrh::legendre
