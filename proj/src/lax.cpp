#include "flatsub/lax.hpp"

#include <cmath>
#include <stdexcept>

namespace flatsub {

double max_abs_diff(const LaxState& a, const LaxState& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.p.size(); ++i) m = std::max(m, std::fabs(a.p[i] - b.p[i]));
    for (size_t i = 0; i < a.b.size(); ++i) m = std::max(m, std::fabs(a.b[i] - b.b[i]));
    return m;
}

LaxSystem::LaxSystem(const std::vector<Polynomial>& psi, const Mat<double>& eta_contra,
                     const Mat<double>& mu_contra)
    : n_(eta_contra.rows()), l_(static_cast<int>(psi.size())), eta_contra_(eta_contra),
      mu_contra_(mu_contra) {
    if (mu_contra_.rows() != l_)
        throw std::invalid_argument("LaxSystem: mu dimension != number of potentials");
    forms_.reserve(psi.size());
    for (const Polynomial& p : psi) {
        if (p.dim() != n_)
            throw std::invalid_argument("LaxSystem: potential dimension mismatch");
        forms_.emplace_back(p);
    }
}

LaxState LaxSystem::derivative(const std::vector<double>& u, const std::vector<double>& vel,
                               const LaxState& s, const SpectralParams& params) const {
    // dp_j/ds = λ Σ_α (Σ_β μ^{αβ} b_β) (ω_α vel)_j
    // db_α/ds = ρ (ω_α vel) · (η p)
    std::vector<Mat<double>> omega;
    omega.reserve(forms_.size());
    for (const HessianEvaluator& h : forms_) omega.push_back(h.eval(u));

    std::vector<double> q(l_, 0.0);
    for (int a = 0; a < l_; ++a)
        for (int b = 0; b < l_; ++b) q[a] += mu_contra_(a, b) * s.b[b];

    std::vector<double> eta_p(n_, 0.0);
    for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k) eta_p[j] += eta_contra_(j, k) * s.p[k];

    LaxState d = LaxState::zero(n_, l_);
    for (int a = 0; a < l_; ++a) {
        std::vector<double> wv(n_, 0.0);
        for (int j = 0; j < n_; ++j)
            for (int i = 0; i < n_; ++i) wv[j] += omega[a](j, i) * vel[i];
        for (int j = 0; j < n_; ++j) d.p[j] += params.lambda * q[a] * wv[j];
        double acc = 0.0;
        for (int j = 0; j < n_; ++j) acc += wv[j] * eta_p[j];
        d.b[a] = params.rho * acc;
    }
    return d;
}

namespace {

LaxState axpy(const LaxState& y, double a, const LaxState& x) {
    LaxState r = y;
    for (size_t i = 0; i < r.p.size(); ++i) r.p[i] += a * x.p[i];
    for (size_t i = 0; i < r.b.size(); ++i) r.b[i] += a * x.b[i];
    return r;
}

} // namespace

LaxState LaxSystem::transport(const LaxState& start,
                              const std::vector<std::vector<double>>& path,
                              const SpectralParams& params, double h) const {
    if (h <= 0.0) throw std::invalid_argument("LaxSystem::transport: step must be > 0");
    LaxState state = start;
    for (size_t seg = 0; seg + 1 < path.size(); ++seg) {
        const std::vector<double>& x0 = path[seg];
        const std::vector<double>& x1 = path[seg + 1];
        if (static_cast<int>(x0.size()) != n_ || static_cast<int>(x1.size()) != n_)
            throw std::invalid_argument("LaxSystem::transport: path point dimension mismatch");
        double len2 = 0.0;
        for (int i = 0; i < n_; ++i) len2 += (x1[i] - x0[i]) * (x1[i] - x0[i]);
        double len = std::sqrt(len2);
        if (len == 0.0) continue;
        std::vector<double> dir(n_);
        for (int i = 0; i < n_; ++i) dir[i] = (x1[i] - x0[i]) / len;

        auto at = [&](double s) {
            std::vector<double> u(n_);
            for (int i = 0; i < n_; ++i) u[i] = x0[i] + s * dir[i];
            return u;
        };

        double s = 0.0;
        while (s < len) {
            double step = std::min(h, len - s); // final partial step
            if (step < len * 1e-15) break;      // float fuzz at the segment end
            LaxState k1 = derivative(at(s), dir, state, params);
            LaxState k2 = derivative(at(s + step / 2), dir, axpy(state, step / 2, k1), params);
            LaxState k3 = derivative(at(s + step / 2), dir, axpy(state, step / 2, k2), params);
            LaxState k4 = derivative(at(s + step), dir, axpy(state, step, k3), params);
            for (int i = 0; i < n_; ++i)
                state.p[i] += step / 6.0 * (k1.p[i] + 2 * k2.p[i] + 2 * k3.p[i] + k4.p[i]);
            for (int i = 0; i < l_; ++i)
                state.b[i] += step / 6.0 * (k1.b[i] + 2 * k2.b[i] + 2 * k3.b[i] + k4.b[i]);
            s += step;
        }
    }
    return state;
}

double LaxSystem::holonomy_defect(const std::vector<double>& base, double h_loop, int axis_i,
                                  int axis_j, const SpectralParams& params, int substeps,
                                  ExecPolicy policy) const {
    if (axis_i == axis_j)
        throw std::invalid_argument("holonomy_defect: loop axes must differ");
    if (axis_i < 0 || axis_i >= n_ || axis_j < 0 || axis_j >= n_)
        throw std::invalid_argument("holonomy_defect: loop axis out of range");
    if (substeps < 1) throw std::invalid_argument("holonomy_defect: substeps must be >= 1");
    if (h_loop == 0.0) return 0.0;

    std::vector<double> c0 = base, c1 = base, c2 = base, c3 = base;
    c1[axis_i] += h_loop;
    c2[axis_i] += h_loop;
    c2[axis_j] += h_loop;
    c3[axis_j] += h_loop;
    std::vector<std::vector<double>> loop = {c0, c1, c2, c3, c0};
    double h = std::fabs(h_loop) / substeps;

    int states = n_ + l_;
    std::vector<double> defects(states, 0.0);
    for_each_index(
        static_cast<size_t>(states),
        [&](size_t k) {
            LaxState s0 = LaxState::basis(n_, l_, static_cast<int>(k));
            LaxState s1 = transport(s0, loop, params, h);
            defects[k] = max_abs_diff(s0, s1);
        },
        policy);
    double m = 0.0;
    for (double d : defects) m = std::max(m, d);
    return m;
}

} // namespace flatsub
