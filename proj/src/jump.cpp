#include "oscrh/jump.hpp"

#include <cmath>
#include <stdexcept>

namespace oscrh {

namespace {

Complex osc(double t, double theta) { return std::exp(Complex(0.0, -t * theta)); }  // e^{-it theta}

/// Boundary branch of log(w) for real w approached from side*i0.
Complex log_boundary(double w, int side) {
    if (w > 0.0) return std::log(w);
    return Complex(std::log(-w), side * M_PI);
}

/// Boundary values of the local log-model beta at real x from the +/- side.
Complex beta_boundary(double x, double lambda_j, SignPartition::Kind kind, int eps, double nu,
                      int side) {
    switch (kind) {
        case SignPartition::Kind::Exterior:
            return 0.0;
        case SignPartition::Kind::Interior:
            return -M_PI * nu * (double)side;
        default:
            return Complex(0.0, eps * nu) * log_boundary(eps * (x - lambda_j), eps * side);
    }
}

double min_gap(const std::vector<StationaryPoint>& pts) {
    double g = 1e300;
    for (size_t i = 0; i + 1 < pts.size(); ++i) g = std::min(g, pts[i + 1].lambda - pts[i].lambda);
    return g;
}

}  // namespace

double bump_c3(double u) {
    u = std::abs(u);
    if (u <= 0.5) return 1.0;
    if (u >= 1.0) return 0.0;
    const double v = 2.0 * (1.0 - u);
    return v * v * v * v * (35.0 - v * (84.0 - v * (70.0 - 20.0 * v)));
}

JumpMatrix build_jump(const ReflectionPair& refl, const PhaseSpec& phase, double t,
                      const RealGrid& grid) {
    if (!(t > 0.0)) throw std::invalid_argument("build_jump: t must be positive");
    JumpMatrix jm;
    jm.ctx = {t, phase, refl, grid};
    jm.J = MatrixField(grid.data);
    for (int i = 0; i < grid.size(); ++i) {
        const double x = grid.node(i);
        const Complex pv = refl.p.value(x), qv = refl.q.value(x);
        const Complex pq = pv * qv;
        if (1.0 + pq.real() <= 0.0) throw std::domain_error("build_jump: 1 + p q must stay positive");
        const Complex e = osc(t, phase(x));
        jm.J[i] = {1.0 + pq, pv * e, qv / e, 1.0};
    }
    return jm;
}

WeightPair canonical_factorization(const JumpMatrix& jm) {
    WeightPair w;
    w.ctx = jm.ctx;
    w.osc_phase = jm.ctx.phase;
    w.tag = FactorTag::Canonical;
    w.phase_weight = false;
    w.part = sign_partition(jm.ctx.phase, jm.ctx.grid);
    w.wminus = MatrixField(jm.J.contour);
    w.wplus = MatrixField(jm.J.contour);
    const RealGrid& g = jm.ctx.grid;
    for (int i = 0; i < g.size(); ++i) {
        const double x = g.node(i);
        const Complex e = osc(jm.ctx.t, jm.ctx.phase(x));
        w.wminus[i] = {0.0, jm.ctx.refl.p.value(x) * e, 0.0, 0.0};
        w.wplus[i] = {0.0, 0.0, jm.ctx.refl.q.value(x) / e, 0.0};
    }
    w.target = jm.J;
    w.has_target = true;
    return w;
}

WeightPair conjugated_factorization(const JumpMatrix& jm, const DeltaSolution& delta) {
    if (delta.grid.data != jm.ctx.grid.data)
        throw std::invalid_argument("conjugated_factorization: mismatched grids");
    WeightPair w;
    w.ctx = jm.ctx;
    w.osc_phase = jm.ctx.phase;
    w.tag = FactorTag::Conjugated;
    w.phase_weight = true;
    w.part = delta.part;
    w.wminus = MatrixField(jm.J.contour);
    w.wplus = MatrixField(jm.J.contour);
    w.target = MatrixField(jm.J.contour);
    const RealGrid& g = jm.ctx.grid;
    for (int i = 0; i < g.size(); ++i) {
        const double x = g.node(i);
        const Complex e = osc(jm.ctx.t, jm.ctx.phase(x));
        const Complex om = delta.delta_plus[i] * delta.delta_minus[i];
        const Complex P = om * jm.ctx.refl.p.value(x) * e;       // upper entries
        const Complex Q = jm.ctx.refl.q.value(x) / (om * e);     // lower entries
        if (delta.part.dminus(i)) {
            w.wminus[i] = {0.0, 0.0, Q, 0.0};
            w.wplus[i] = {0.0, P, 0.0, 0.0};
        } else {
            w.wminus[i] = {0.0, P, 0.0, 0.0};
            w.wplus[i] = {0.0, 0.0, Q, 0.0};
        }
        // Independent route: J_conj = delta_-^{s3} J delta_+^{-s3}.
        const Complex dm = delta.delta_minus[i], dp = delta.delta_plus[i];
        const Mat2& J = jm.J[i];
        w.target[i] = {dm / dp * J.a11, dm * dp * J.a12, J.a21 / (dm * dp), dp / dm * J.a22};
    }
    w.has_target = true;
    return w;
}

WeightPair localize(const WeightPair& w, double radius, int j) {
    if (!w.phase_weight) throw std::invalid_argument("localize: weights lack the phase-weight relation");
    const auto& pts = w.ctx.phase.stationary();
    if (j < 0 && pts.size() > 1 && 2.0 * radius > min_gap(pts))
        throw std::invalid_argument("localize: radius overlaps two stationary points");
    WeightPair out = w;
    out.tag = FactorTag::Localized;
    out.has_target = false;
    out.target = MatrixField();
    const RealGrid& g = w.ctx.grid;
    for (int i = 0; i < g.size(); ++i) {
        double phi = 0.0;
        if (j >= 0) {
            phi = bump_c3((g.node(i) - pts.at(j).lambda) / radius);
        } else {
            for (const auto& sp : pts) phi = std::max(phi, bump_c3((g.node(i) - sp.lambda) / radius));
        }
        out.wminus[i] *= phi;
        out.wplus[i] *= phi;
    }
    return out;
}

WeightPair phase_reduce(const WeightPair& w, int j) {
    if (w.tag != FactorTag::Localized)
        throw std::invalid_argument("phase_reduce: expects localized weights");
    const PhaseSpec model = w.ctx.phase.taylor_model(j);
    const RealGrid& g = w.ctx.grid;
    WeightPair out = w;
    out.tag = FactorTag::PhaseReduced;
    out.osc_phase = model;
    for (int i = 0; i < g.size(); ++i) {
        if (w.wminus[i].abs() + w.wplus[i].abs() == 0.0) continue;
        const double x = g.node(i);
        if (w.ctx.phase.derivative(x) * model.derivative(x) <= 0.0)
            throw std::domain_error("phase_reduce: sign agreement violated on the support");
        // Upper entries carry e^{-it theta}, lower entries e^{+it theta}.
        const Complex shift = osc(w.ctx.t, model(x) - w.ctx.phase(x));
        out.wminus[i].a12 *= shift;
        out.wplus[i].a12 *= shift;
        out.wminus[i].a21 /= shift;
        out.wplus[i].a21 /= shift;
    }
    return out;
}

WeightPair model_weights(int j, double t, const RealGrid& grid, double omega,
                         const PhaseSpec& phase, const ReflectionPair& refl) {
    const auto& sp = phase.stationary().at(j);
    const PhaseSpec model = phase.taylor_model(j);
    const double nu = refl.nu_at(sp.lambda);
    const Complex pj = refl.p.value(sp.lambda), qj = refl.q.value(sp.lambda);
    const double one_pq = 1.0 + (pj * qj).real();

    SignPartition part = sign_partition(model, grid);

    WeightPair w;
    w.ctx = {t, phase, refl, grid};
    w.osc_phase = model;
    w.tag = FactorTag::Model;
    w.phase_weight = true;
    w.part = part;
    w.wminus = MatrixField(grid.data);
    w.wplus = MatrixField(grid.data);
    w.target = MatrixField(grid.data);

    const auto kind = part.kinds.at(0);
    for (int i = 0; i < grid.size(); ++i) {
        const double x = grid.node(i);
        const Complex e = osc(t, model(x));
        const Complex djp =
            std::exp(Complex(0.0, omega) + beta_boundary(x, sp.lambda, kind, sp.epsilon, nu, +1));
        const Complex djm =
            std::exp(Complex(0.0, omega) + beta_boundary(x, sp.lambda, kind, sp.epsilon, nu, -1));
        if (part.dminus(i)) {
            w.wminus[i] = {0.0, 0.0, qj / (one_pq * djm * djm * e), 0.0};
            w.wplus[i] = {0.0, djp * djp * pj / one_pq * e, 0.0, 0.0};
        } else {
            w.wminus[i] = {0.0, djm * djm * pj * e, 0.0, 0.0};
            w.wplus[i] = {0.0, 0.0, qj / (djp * djp * e), 0.0};
        }
        // Independent route: J_M = delta_-^{s3} [[1+pq, p e],[q/e, 1]] delta_+^{-s3}.
        w.target[i] = {djm / djp * (1.0 + pj * qj), djm * djp * pj * e, qj / (djm * djp * e),
                       djp / djm};
    }
    w.has_target = true;

    auto cont = std::make_shared<WeightContinuation>();
    cont->j = j;
    cont->lambda_j = sp.lambda;
    cont->k = sp.order;
    cont->a = model.monomial_a();
    cont->b = model.monomial_b();
    cont->t = t;
    cont->p_j = pj;
    cont->q_j = qj;
    cont->nu = nu;
    cont->eps = sp.epsilon;
    cont->kind = kind;
    cont->omega = omega;
    cont->n_decay = 0;
    w.cont = std::move(cont);
    return w;
}

WeightPair premodel_weights(const WeightPair& localized, const DeltaSolution& delta, int j,
                            int n_decay) {
    if (localized.tag != FactorTag::Localized && localized.tag != FactorTag::PhaseReduced)
        throw std::invalid_argument("premodel_weights: expects localized weights");
    if (n_decay < 2) throw std::invalid_argument("premodel_weights: n_decay must be >= 2");
    const PhaseSpec& phase = localized.ctx.phase;
    const auto& sp = phase.stationary().at(j);
    const PhaseSpec model = phase.taylor_model(j);
    const RealGrid& grid = localized.ctx.grid;
    const ReflectionPair& refl = localized.ctx.refl;
    const double t = localized.ctx.t;

    const Complex pj = refl.p.value(sp.lambda), qj = refl.q.value(sp.lambda);
    const double one_pq = 1.0 + (pj * qj).real();
    SignPartition part = sign_partition(model, grid);

    WeightPair w;
    w.ctx = localized.ctx;
    w.osc_phase = model;
    w.tag = FactorTag::PreModel;
    w.phase_weight = true;
    w.part = part;
    w.wminus = MatrixField(grid.data);
    w.wplus = MatrixField(grid.data);

    for (int i = 0; i < grid.size(); ++i) {
        const double x = grid.node(i);
        const Complex e = osc(t, model(x));
        const Complex rat = 1.0 / (1.0 + Complex(0.0, 1.0) * std::pow(Complex(x - sp.lambda), n_decay));
        const Complex dp = delta.delta_plus[i], dm = delta.delta_minus[i];
        if (part.dminus(i)) {
            w.wminus[i] = {0.0, 0.0, (qj / one_pq) * rat / (dm * dm * e), 0.0};
            w.wplus[i] = {0.0, dp * dp * (pj / one_pq) * rat * e, 0.0, 0.0};
        } else {
            w.wminus[i] = {0.0, dm * dm * pj * rat * e, 0.0, 0.0};
            w.wplus[i] = {0.0, 0.0, qj * rat / (dp * dp * e), 0.0};
        }
    }

    auto cont = std::make_shared<WeightContinuation>();
    cont->j = j;
    cont->lambda_j = sp.lambda;
    cont->k = sp.order;
    cont->a = model.monomial_a();
    cont->b = model.monomial_b();
    cont->t = t;
    cont->p_j = pj;
    cont->q_j = qj;
    cont->nu = refl.nu_at(sp.lambda);
    cont->eps = sp.epsilon;
    cont->kind = part.kinds.at(0);
    cont->omega = 0.0;
    cont->n_decay = n_decay;
    cont->true_delta = std::make_shared<DeltaSolution>(delta);
    w.cont = std::move(cont);
    return w;
}

namespace {

/// Analytic continuation of a line weight off the axis. plus_weight selects
/// w^+ vs w^-, source_dplus tells which model-partition side of the line the
/// continued restriction comes from.
Mat2 continued_weight(const WeightContinuation& c, Complex z, bool plus_weight, bool source_dplus) {
    const Complex dz = z - c.lambda_j;
    const Complex theta = c.a + c.b * std::pow(dz, c.k + 1);
    const Complex e = std::exp(Complex(0.0, -c.t) * theta);  // e^{-it Theta(z)}
    Complex rat = 1.0;
    if (c.n_decay > 0) rat = 1.0 / (1.0 + Complex(0.0, 1.0) * std::pow(dz, c.n_decay));
    Complex delta;
    if (c.true_delta) {
        delta = c.true_delta->delta_at(z);
    } else {
        Complex beta;
        switch (c.kind) {
            case SignPartition::Kind::Exterior:
                beta = 0.0;
                break;
            case SignPartition::Kind::Interior:
                beta = -M_PI * c.nu * (z.imag() > 0.0 ? 1.0 : -1.0);
                break;
            default:
                beta = Complex(0.0, c.eps * c.nu) * std::log((double)c.eps * dz);
        }
        delta = std::exp(Complex(0.0, c.omega) + beta);
    }
    const double one_pq = 1.0 + (c.p_j * c.q_j).real();
    if (plus_weight) {
        if (source_dplus) return {0.0, 0.0, c.q_j * rat / (delta * delta * e), 0.0};
        return {0.0, delta * delta * (c.p_j / one_pq) * rat * e, 0.0, 0.0};
    }
    if (source_dplus) return {0.0, delta * delta * c.p_j * rat * e, 0.0, 0.0};
    return {0.0, 0.0, (c.q_j / one_pq) * rat / (delta * delta * e), 0.0};
}

}  // namespace

WeightPair deform_to_gamma(const WeightPair& w, const OrientedContour& gamma) {
    if (w.tag != FactorTag::Model && w.tag != FactorTag::PreModel)
        throw std::invalid_argument("deform_to_gamma: expects model or pre-model weights");
    WeightPair out = deform_continuation(*w.cont, gamma);
    out.ctx = w.ctx;
    out.osc_phase = w.osc_phase;
    return out;
}

WeightPair deform_continuation(const WeightContinuation& c, const OrientedContour& gamma) {
    const int k = c.k;
    if ((k + 1) * gamma.alpha >= M_PI)
        throw std::domain_error("deform_to_gamma: alpha too large for the phase order");
    if (c.n_decay > 0 && gamma.alpha > M_PI / (3.0 * c.n_decay) + 1e-12)
        throw std::domain_error("deform_to_gamma: alpha outside the analytic decay sector");

    // Which model-partition side each half-line lies in.
    const bool plus_right = c.b > 0.0;
    const bool plus_left = (k % 2 == 1) ? (c.b < 0.0) : (c.b > 0.0);

    WeightPair out;
    out.osc_phase = PhaseSpec::monomial(c.a, c.b, c.lambda_j, c.k + 1);
    out.tag = FactorTag::GammaDeformed;
    out.phase_weight = true;
    out.cont = std::make_shared<WeightContinuation>(c);
    out.gamma = std::make_shared<OrientedContour>(gamma);
    out.wminus = MatrixField(gamma.data);
    out.wplus = MatrixField(gamma.data);
    out.target = MatrixField(gamma.data);
    for (int i = 0; i < gamma.size(); ++i) out.target[i] = Mat2::identity();

    struct Assign {
        int ray;
        bool plus_weight;
        bool from_right;  // continued restriction from the positive half-line
    };
    const Assign plan[4] = {{1, true, true}, {2, true, false}, {4, false, false}, {5, false, true}};
    for (const Assign& as : plan) {
        const Ray& ray = gamma.rays[as.ray];
        const bool dplus = as.from_right ? plus_right : plus_left;
        for (int i = ray.first_node; i < ray.first_node + ray.node_count; ++i) {
            const Complex z = gamma.data->nodes[i] + c.lambda_j;  // rays are centered at 0
            const Mat2 cw = continued_weight(c, z, as.plus_weight, dplus);
            if (as.plus_weight)
                out.wplus[i] = -1.0 * cw;
            else
                out.wminus[i] = -1.0 * cw;
            // j_Gamma from the continuation: (I+w^+)^{-1} = I - w^+ on the upper
            // rays, I - w^- on the lower ones.
            out.target[i] = Mat2::identity() - cw;
        }
    }
    out.has_target = true;
    return out;
}

MatrixField refactorize(const WeightPair& w) {
    MatrixField out(w.contour());
    for (int i = 0; i < out.size(); ++i) {
        const Mat2 lhs = Mat2::identity() + w.wminus[i];  // (I - w^-)^{-1}, nilpotent
        out[i] = lhs * (Mat2::identity() + w.wplus[i]);
    }
    return out;
}

double factorization_residual(const WeightPair& w) {
    if (!w.has_target) return 0.0;
    const MatrixField re = refactorize(w);
    double r = 0.0;
    for (int i = 0; i < re.size(); ++i) r = std::max(r, (re[i] - w.target[i]).abs());
    return r;
}

}  // namespace oscrh
