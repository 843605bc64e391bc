#include "oscrh/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "oscrh/legendre.hpp"

namespace oscrh {

namespace {

using CVec = std::vector<Complex>;

double nrm2(const CVec& v) {
    double s = 0.0;
    for (const Complex& x : v) s += std::norm(x);
    return std::sqrt(s);
}

Complex dot(const CVec& a, const CVec& b) {
    Complex s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

void axpy(Complex alpha, const CVec& x, CVec& y) {
    for (size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

/// C_w applied to the field stored in v (4 components per node), writing into
/// out; only masked targets are computed.
struct CwOperator {
    const CauchyOperator* op;
    const MatrixField* wm;
    const MatrixField* wp;
    const std::vector<unsigned char>* mask;

    void apply(const CVec& v, CVec& out, bool all_targets = false) const {
        const int N = wm->size();
        CVec g((size_t)N * 4);
        const Mat2* vm = reinterpret_cast<const Mat2*>(v.data());
        Mat2* gm = reinterpret_cast<Mat2*>(g.data());
        for (int i = 0; i < N; ++i) gm[i] = vm[i] * ((*wm)[i] + (*wp)[i]);
        out.assign((size_t)N * 4, Complex(0.0));
        op->principal_part(g.data(), 4, out.data(), all_targets ? nullptr : mask->data());
        Mat2* om = reinterpret_cast<Mat2*>(out.data());
        for (int i = 0; i < N; ++i) {
            if (!all_targets && !(*mask)[i]) continue;
            om[i] += 0.5 * (vm[i] * ((*wm)[i] - (*wp)[i]));
        }
    }

    /// y -> y - C_w y restricted to the mask.
    void system_apply(const CVec& v, CVec& out) const {
        apply(v, out);
        for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] - out[i];
    }
};

struct GmresResult {
    bool converged = false;
    int iterations = 0;
    double cond_estimate = 0.0;
    double final_residual = 0.0;
};

GmresResult gmres(const CwOperator& A, const CVec& b, CVec& x, double tol, int restart,
                  int max_iter) {
    GmresResult res;
    const double bnorm = nrm2(b);
    if (bnorm == 0.0) {
        x.assign(b.size(), Complex(0.0));
        res.converged = true;
        return res;
    }
    x.assign(b.size(), Complex(0.0));
    CVec r = b, w;
    double beta = bnorm;
    bool first_cycle = true;

    while (res.iterations < max_iter && !res.converged) {
        const int m = std::min(restart, max_iter - res.iterations);
        std::vector<CVec> V;
        V.reserve(m + 1);
        Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(m + 1, m);
        CVec v0 = r;
        for (Complex& z : v0) z /= beta;
        V.push_back(std::move(v0));

        int k = 0;
        Eigen::VectorXcd y;
        while (k < m) {
            A.system_apply(V[k], w);
            for (int i = 0; i <= k; ++i) {
                H(i, k) = dot(V[i], w);
                axpy(-H(i, k), V[i], w);
            }
            const double h = nrm2(w);
            H(k + 1, k) = h;
            ++k;
            ++res.iterations;
            // The projected least-squares problem is tiny; solve it directly.
            Eigen::VectorXcd e = Eigen::VectorXcd::Zero(k + 1);
            e(0) = beta;
            const auto Hk = H.topLeftCorner(k + 1, k);
            y = Hk.colPivHouseholderQr().solve(e);
            const double rres = (Hk * y - e).norm() / bnorm;
            if (rres < tol) {
                res.converged = true;
                break;
            }
            if (h <= 1e-300) break;  // breakdown: span already contains the solution
            CVec vk = w;
            for (Complex& z : vk) z /= h;
            V.push_back(std::move(vk));
        }

        if (first_cycle && k > 0) {
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(H.topLeftCorner(k + 1, k));
            const auto& s = svd.singularValues();
            res.cond_estimate = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1) : 1e300;
            first_cycle = false;
        }

        for (int i = 0; i < k && i < (int)y.size(); ++i) axpy(y(i), V[i], x);

        // True residual for the restart decision.
        A.system_apply(x, w);
        r = b;
        for (size_t i = 0; i < r.size(); ++i) r[i] -= w[i];
        beta = nrm2(r);
        res.final_residual = beta / bnorm;
        if (beta / bnorm < tol) res.converged = true;
    }
    return res;
}

/// Dense assembly of (1 - C_w) over the active nodes and direct solve.
bool dense_solve(const CauchyOperator& op, const MatrixField& wm, const MatrixField& wp,
                 const std::vector<unsigned char>& mask, const CVec& b, CVec& x) {
    const ContourData& c = *op.contour();
    const int N = c.size();
    std::vector<int> act;
    for (int i = 0; i < N; ++i)
        if (mask[i]) act.push_back(i);
    const int Na = (int)act.size();
    std::vector<int> slot(N, -1);
    for (int ia = 0; ia < Na; ++ia) slot[act[ia]] = ia;

    // Scalar principal-part matrix K on active rows x all columns.
    Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(Na, N);
    std::vector<Complex> qoff;
    std::vector<double> qcut;
    const Complex iopi(0.0, M_1_PI);
    for (size_t qi = 0; qi < c.panels.size(); ++qi) {
        const Panel& p = c.panels[qi];
        const int n = p.count;
        const auto& B = legendre::value_to_coeff(n);
        qoff.resize(n);
        qcut.resize(n);
        bool any = false;
        for (int kk = 0; kk < n && !any; ++kk) any = mask[p.first + kk] != 0;
        (void)any;  // inactive-source panels still matter when their columns get hit
        for (int ia = 0; ia < Na; ++ia) {
            const int i = act[ia];
            if (c.panel_of[i] == (int)qi) {
                const double xi = p.to_local(c.nodes[i]).real();
                legendre::eval_Q_cut(n, xi, qcut.data());
                for (int kk = 0; kk < n; ++kk) {
                    Complex s = 0.0;
                    for (int mm = 0; mm < n; ++mm) s += B[(size_t)mm * n + kk] * qcut[mm];
                    K(ia, p.first + kk) += iopi * s;
                }
            } else {
                const int cnt = legendre::eval_Q_off(n, p.to_local(c.nodes[i]), qoff.data(), 1e-16);
                for (int kk = 0; kk < n; ++kk) {
                    Complex s = 0.0;
                    for (int mm = 0; mm < cnt; ++mm) s += B[(size_t)mm * n + kk] * qoff[mm];
                    K(ia, p.first + kk) += iopi * s;
                }
            }
        }
    }

    // Full operator on 4 Na unknowns: row block (ia, a, b), column (ja, cc, d):
    // (1 - C_w) with C_w y = K(y W) + (y w^- - y w^+)/2 entrywise in the
    // right-multiplication sense.
    const int dim = 4 * Na;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(dim, dim);
    for (int ia = 0; ia < Na; ++ia) {
        for (int ja = 0; ja < Na; ++ja) {
            const int j = act[ja];
            const Mat2 W = wm[j] + wp[j];
            const Complex Wm[2][2] = {{W.a11, W.a12}, {W.a21, W.a22}};
            const Complex kij = K(ia, j);
            if (kij == 0.0) continue;
            for (int a = 0; a < 2; ++a)
                for (int bb = 0; bb < 2; ++bb)
                    for (int cc2 = 0; cc2 < 2; ++cc2)
                        A(4 * ia + 2 * a + bb, 4 * ja + 2 * a + cc2) -= kij * Wm[cc2][bb];
        }
        const int i = act[ia];
        const Mat2 D = wm[i] - wp[i];
        const Complex Dm[2][2] = {{D.a11, D.a12}, {D.a21, D.a22}};
        for (int a = 0; a < 2; ++a)
            for (int bb = 0; bb < 2; ++bb)
                for (int cc2 = 0; cc2 < 2; ++cc2)
                    A(4 * ia + 2 * a + bb, 4 * ia + 2 * a + cc2) -= 0.5 * Dm[cc2][bb];
    }

    Eigen::VectorXcd rhs(dim);
    for (int ia = 0; ia < Na; ++ia)
        for (int comp = 0; comp < 4; ++comp) rhs(4 * ia + comp) = b[(size_t)act[ia] * 4 + comp];
    Eigen::VectorXcd sol = A.partialPivLu().solve(rhs);
    if (!sol.allFinite()) return false;
    x.assign(b.size(), Complex(0.0));
    for (int ia = 0; ia < Na; ++ia)
        for (int comp = 0; comp < 4; ++comp) x[(size_t)act[ia] * 4 + comp] = sol(4 * ia + comp);
    return true;
}

}  // namespace

MatrixField apply_cw(const CauchyOperator& op, const WeightPair& w, const MatrixField& f) {
    const int N = f.size();
    MatrixField out(f.contour);
    CVec g((size_t)N * 4), o((size_t)N * 4);
    for (int i = 0; i < N; ++i) {
        const Mat2 gi = f[i] * (w.wminus[i] + w.wplus[i]);
        reinterpret_cast<Mat2*>(g.data())[i] = gi;
    }
    op.principal_part(g.data(), 4, o.data());
    for (int i = 0; i < N; ++i) {
        out[i] = reinterpret_cast<Mat2*>(o.data())[i] + 0.5 * (f[i] * (w.wminus[i] - w.wplus[i]));
    }
    return out;
}

RhpSolution solve_mu(const WeightPair& w, const SolverOptions& opts) {
    RhpSolution sol;
    sol.weights = w;
    sol.cauchy = std::make_shared<CauchyOperator>(w.contour());
    const int N = w.wminus.size();

    // Snap negligible weights to zero so inert panels drop out of the sums.
    double wmax = 0.0;
    for (int i = 0; i < N; ++i) wmax = std::max(wmax, w.wminus[i].abs() + w.wplus[i].abs());
    const double floor_abs = opts.mask_rel * wmax;
    std::vector<unsigned char> mask(N, 0);
    int active = 0;
    for (int i = 0; i < N; ++i) {
        if (w.wminus[i].abs() + w.wplus[i].abs() > floor_abs) {
            mask[i] = 1;
            ++active;
        } else {
            sol.weights.wminus[i] = Mat2::zero();
            sol.weights.wplus[i] = Mat2::zero();
        }
    }
    sol.diag.active_nodes = active;

    CwOperator A{sol.cauchy.get(), &sol.weights.wminus, &sol.weights.wplus, &mask};

    // Right-hand side C_w I on the active set.
    CVec ident((size_t)N * 4);
    for (int i = 0; i < N; ++i) reinterpret_cast<Mat2*>(ident.data())[i] = Mat2::identity();
    CVec b;
    A.apply(ident, b);

    CVec y;
    GmresResult gr = gmres(A, b, y, opts.tol, opts.restart, opts.max_iterations);
    sol.diag.iterations = gr.iterations;
    sol.diag.condition_estimate = gr.cond_estimate;
    sol.diag.converged = gr.converged;
    if (!gr.converged) {
        if (active <= opts.dense_fallback_limit &&
            dense_solve(*sol.cauchy, sol.weights.wminus, sol.weights.wplus, mask, b, y)) {
            sol.diag.dense_fallback = true;
            sol.diag.converged = true;
        } else {
            throw std::runtime_error("solve_mu: iteration did not converge (near-singular 1 - C_w)");
        }
    }

    // mu = I + y on the active set; elsewhere evaluate mu = I + C_w mu once.
    CVec mu_act = y;
    for (int i = 0; i < N; ++i) reinterpret_cast<Mat2*>(mu_act.data())[i] += Mat2::identity();
    CVec full;
    A.apply(mu_act, full, true);
    sol.mu = MatrixField(w.contour());
    for (int i = 0; i < N; ++i)
        sol.mu[i] = Mat2::identity() + reinterpret_cast<Mat2*>(full.data())[i];

    // Recovered potentials.
    MatrixField mw(w.contour());
    for (int i = 0; i < N; ++i) mw[i] = sol.mu[i] * (sol.weights.wminus[i] + sol.weights.wplus[i]);
    const Mat2 coeff = sol.cauchy->coefficient_at_infinity(mw);
    sol.u = coeff.a12;
    sol.v = coeff.a21;

    // Diagnostics: jump relation and unimodularity.
    const ContourData& cdat = *w.contour();
    double wmin_panel = 1e300;
    for (const Panel& p : cdat.panels) wmin_panel = std::min(wmin_panel, p.length());
    const double r_excl = 128.0 * wmin_panel;
    sol.diag.bulk_exclusion_radius = r_excl;
    std::vector<Complex> centers;
    if (w.gamma) {
        centers.push_back(0.0);
    } else if (w.osc_phase.classified()) {
        for (const auto& sp : w.osc_phase.stationary()) centers.push_back(sp.lambda);
    }
    auto in_bulk = [&](Complex z) {
        for (const Complex& c0 : centers)
            if (std::abs(z - c0) < r_excl) return false;
        return true;
    };

    const MatrixField J = refactorize(sol.weights);
    double jr = 0.0, dd = 0.0, ddb = 0.0, mplus_sup = 0.0;
    for (int i = 0; i < N; ++i) {
        const Mat2 Mp = sol.mu[i] * (Mat2::identity() + sol.weights.wplus[i]);
        const Mat2 Mm = sol.mu[i] * (Mat2::identity() - sol.weights.wminus[i]);
        jr = std::max(jr, (Mp - Mm * J[i]).abs());
        mplus_sup = std::max(mplus_sup, Mp.abs());
        const double d = std::abs(sol.mu[i].det() - 1.0);
        dd = std::max(dd, d);
        if (in_bulk(cdat.nodes[i])) ddb = std::max(ddb, d);
    }
    sol.diag.jump_residual = jr / (1.0 + mplus_sup);
    sol.diag.det_deviation = dd;
    sol.diag.det_deviation_bulk = ddb;
    return sol;
}

std::pair<MatrixField, MatrixField> boundary_values(const RhpSolution& sol) {
    const int N = sol.mu.size();
    MatrixField mp(sol.mu.contour), mm(sol.mu.contour);
    for (int i = 0; i < N; ++i) {
        mp[i] = sol.mu[i] * (Mat2::identity() + sol.weights.wplus[i]);
        mm[i] = sol.mu[i] * (Mat2::identity() - sol.weights.wminus[i]);
    }
    return {mp, mm};
}

Mat2 reconstruct_M(const RhpSolution& sol, Complex z) {
    MatrixField mw(sol.mu.contour);
    for (int i = 0; i < sol.mu.size(); ++i)
        mw[i] = sol.mu[i] * (sol.weights.wminus[i] + sol.weights.wplus[i]);
    return Mat2::identity() + sol.cauchy->eval(mw, z);
}

std::pair<Complex, Complex> recover_potentials(const RhpSolution& sol) { return {sol.u, sol.v}; }

FarFieldProbe mu_far_field(const RhpSolution& sol, double x, double lambda_j) {
    const ContourData& c = *sol.mu.contour;
    int nearest = 0;
    double best = 1e300;
    for (int i = 0; i < c.size(); ++i) {
        const double d = std::abs(c.nodes[i] - Complex(x));
        if (d < best) {
            best = d;
            nearest = i;
        }
    }
    FarFieldProbe probe;
    probe.x = c.nodes[nearest].real();
    probe.mu = sol.mu[nearest];
    const double dx = probe.x - lambda_j;
    probe.predicted = Mat2::identity() + Mat2{0.0, sol.u / dx, sol.v / dx, 0.0};
    probe.residual = (probe.mu - probe.predicted).abs();
    return probe;
}

}  // namespace oscrh
