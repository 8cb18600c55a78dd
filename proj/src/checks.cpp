#include "flatsub/checks.hpp"

#include "flatsub/frobenius.hpp"
#include "flatsub/lax.hpp"
#include "flatsub/submanifold.hpp"

namespace flatsub {

namespace {

template <typename S>
std::vector<S> grid_point(const DomainGrid& g, size_t node);
template <>
std::vector<Rational> grid_point<Rational>(const DomainGrid& g, size_t node) {
    return g.point(node);
}
template <>
std::vector<double> grid_point<double>(const DomainGrid& g, size_t node) {
    return g.point_double(node);
}

template <typename S>
std::vector<S> cast_point(const std::vector<Rational>& p);
template <>
std::vector<Rational> cast_point<Rational>(const std::vector<Rational>& p) { return p; }
template <>
std::vector<double> cast_point<double>(const std::vector<Rational>& p) {
    std::vector<double> q(p.size());
    for (size_t i = 0; i < p.size(); ++i) q[i] = p[i].to_double();
    return q;
}

template <typename S>
void finish(ResidualReport& r, const S& value, double tol) {
    r.value = scalar_to_double(value);
    if constexpr (std::is_same_v<S, Rational>) {
        r.value_exact = value.to_string();
        r.tolerance = 0.0;
        r.pass = value.is_zero();
    } else {
        r.tolerance = tol;
        r.pass = r.value <= tol;
    }
}

// Max of a per-point residual over the grid (or the single debug point),
// with the worst node's coordinates and index tuple recorded.
template <typename S, typename F>
ResidualReport sweep_report(const std::string& name, const ProblemSpec& spec,
                            const CheckOptions& opt, double tol, F&& eval_at) {
    ResidualReport rep;
    rep.name = name;
    if (opt.point) {
        std::vector<S> p = cast_point<S>(*opt.point);
        MaxAbs<S> m = eval_at(p);
        rep.worst_point = cast_point<double>(*opt.point);
        rep.worst_indices = m.indices;
        finish(rep, m.value, tol);
        return rep;
    }
    DomainGrid grid(spec.domain, spec.n, opt.grid_override);
    SweepBest<S> best = sweep_max<S>(
        grid.size(),
        [&](size_t node) {
            MaxAbs<S> m = eval_at(grid_point<S>(grid, node));
            SweepBest<S> b;
            b.value = m.value;
            b.node = node;
            b.indices = m.indices;
            return b;
        },
        opt.policy);
    rep.worst_point = grid.point_double(best.node);
    rep.worst_indices = best.indices;
    finish(rep, best.value, tol);
    return rep;
}

template <typename S>
ResidualReport wdvv_impl(const ProblemSpec& spec, const CheckOptions& opt) {
    if (!spec.phi) throw SpecError("check-wdvv requires a potential (phi) problem file");
    ThirdTensorEvaluator phi3(*spec.phi);
    Mat<S> eta = metric_view<S>(spec.eta_contra);
    int n = spec.n;
    return sweep_report<S>("wdvv", spec, opt, spec.tol.algebra, [&](const std::vector<S>& p) {
        static thread_local Ten3<S> t3;
        if (t3.dim0() != n) t3 = Ten3<S>(n, n, n);
        phi3.eval_into(p, t3);
        return wdvv_residual_max(t3, eta);
    });
}

template <typename S>
std::vector<ResidualReport> gcr_impl(const ProblemSpec& spec, const CheckOptions& opt) {
    std::vector<HessianEvaluator> hs;
    hs.reserve(spec.psi.size());
    for (const Polynomial& p : spec.psi) hs.emplace_back(p);
    Mat<S> eta = metric_view<S>(spec.eta_contra);
    Mat<S> mu = metric_view<S>(spec.mu_contra);
    CodazziEvaluator codazzi(hessian_form_polynomials(spec.psi));

    std::vector<ResidualReport> out;
    out.push_back(sweep_report<S>("gauss", spec, opt, spec.tol.algebra,
                                  [&](const std::vector<S>& p) {
                                      return gauss_residual(second_forms<S>(hs, p), mu);
                                  }));
    out.push_back(sweep_report<S>("ricci", spec, opt, spec.tol.algebra,
                                  [&](const std::vector<S>& p) {
                                      return ricci_residual(second_forms<S>(hs, p), eta);
                                  }));
    out.push_back(sweep_report<S>("codazzi", spec, opt, spec.tol.algebra,
                                  [&](const std::vector<S>& p) { return codazzi.eval(p); }));
    return out;
}

template <typename S>
ResidualReport reduction_impl(const ProblemSpec& spec, const Rational& c,
                              const CheckOptions& opt) {
    if (!spec.phi) throw SpecError("check-reduction requires a potential (phi) problem file");
    if (c.is_zero()) throw SpecError("check-reduction: c must be nonzero");
    ThirdTensorEvaluator phi3(*spec.phi);
    Mat<S> eta = metric_view<S>(spec.eta_contra);
    S cs = cast_point<S>({c})[0];
    return sweep_report<S>("reduction", spec, opt, spec.tol.algebra,
                           [&](const std::vector<S>& p) {
                               auto rc = reduction_check<S>(phi3, eta, cs, {p});
                               MaxAbs<S> m;
                               m.consider(rc.max_deviation, {-1, -1, -1, -1});
                               return m;
                           });
}

template <typename S>
ResidualReport commutator_impl(const ProblemSpec& spec, const CheckOptions& opt) {
    std::vector<HessianEvaluator> hs;
    hs.reserve(spec.psi.size());
    for (const Polynomial& p : spec.psi) hs.emplace_back(p);
    Mat<S> eta = metric_view<S>(spec.eta_contra);
    return sweep_report<S>("weingarten_commutator", spec, opt, spec.tol.algebra,
                           [&](const std::vector<S>& p) {
                               return weingarten_commutator_defect(
                                   weingarten_operators<S>(hs, eta, p).ops);
                           });
}

} // namespace

ResidualReport run_wdvv_check(const ProblemSpec& spec, const CheckOptions& opt) {
    return opt.mode == ArithmeticMode::rational ? wdvv_impl<Rational>(spec, opt)
                                                : wdvv_impl<double>(spec, opt);
}

std::vector<ResidualReport> run_gcr_check(const ProblemSpec& spec, const CheckOptions& opt) {
    return opt.mode == ArithmeticMode::rational ? gcr_impl<Rational>(spec, opt)
                                                : gcr_impl<double>(spec, opt);
}

ResidualReport run_reduction_check(const ProblemSpec& spec, const Rational& c,
                                   const CheckOptions& opt) {
    return opt.mode == ArithmeticMode::rational ? reduction_impl<Rational>(spec, c, opt)
                                                : reduction_impl<double>(spec, c, opt);
}

ResidualReport run_commutator_check(const ProblemSpec& spec, const CheckOptions& opt) {
    return opt.mode == ArithmeticMode::rational ? commutator_impl<Rational>(spec, opt)
                                                : commutator_impl<double>(spec, opt);
}

std::pair<int, int> ambient_signature(const ProblemSpec& spec) {
    auto e = spec.eta_cov.signature();
    auto m = spec.mu_cov.signature();
    return {e.first + m.first, e.second + m.second};
}

} // namespace flatsub
