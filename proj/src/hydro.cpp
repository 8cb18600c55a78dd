#include "flatsub/hydro.hpp"

#include <cmath>

namespace flatsub {

double max_abs_diff(const GridState& a, const GridState& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::fabs(a.values[i] - b.values[i]));
    return m;
}

namespace {

struct Scratch {
    std::vector<double> u, ux;
    Mat<double> omega, v;

    explicit Scratch(int n)
        : u(n), ux(n), omega(n, n), v(n, n) {}
};

// du/dt at one point: 4th-order central u_x, then V(u)·u_x. Each point
// owns its output slot, so results are bitwise independent of the
// schedule.
inline void point_rhs(const GridState& s, const FlowVelocity& flow, double dx, int x,
                      GridState& out, Scratch& sc) {
    int m = s.points;
    int n = s.components;
    int xp1 = (x + 1) % m, xp2 = (x + 2) % m;
    int xm1 = (x + m - 1) % m, xm2 = (x + m - 2) % m;
    for (int c = 0; c < n; ++c) {
        sc.u[c] = s.at(x, c);
        sc.ux[c] =
            (-s.at(xp2, c) + 8 * s.at(xp1, c) - 8 * s.at(xm1, c) + s.at(xm2, c)) / (12 * dx);
    }
    flow.velocity_into(sc.u, sc.omega, sc.v);
    for (int c = 0; c < n; ++c) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += sc.v(c, j) * sc.ux[j];
        out.at(x, c) = acc;
    }
}

// Sharp cutoff of the top third of Fourier modes, per component. Naive
// DFT; grids stay desk-scale.
void filter_top_third(GridState& s) {
    int m = s.points;
    int n = s.components;
    int kmax = m / 3;
    std::vector<double> re(m), im(m);
    for (int c = 0; c < n; ++c) {
        for (int k = 0; k < m; ++k) {
            double sr = 0.0, si = 0.0;
            for (int x = 0; x < m; ++x) {
                double ang = -2.0 * M_PI * k * x / m;
                sr += s.at(x, c) * std::cos(ang);
                si += s.at(x, c) * std::sin(ang);
            }
            int kk = k <= m / 2 ? k : m - k;
            if (kk > kmax) {
                sr = 0.0;
                si = 0.0;
            }
            re[k] = sr;
            im[k] = si;
        }
        for (int x = 0; x < m; ++x) {
            double acc = 0.0;
            for (int k = 0; k < m; ++k) {
                double ang = 2.0 * M_PI * k * x / m;
                acc += re[k] * std::cos(ang) - im[k] * std::sin(ang);
            }
            s.at(x, c) = acc / m;
        }
    }
}

double max_velocity_scale(const GridState& s, const FlowVelocity& flow) {
    double worst = 0.0;
    Scratch sc(s.components);
    for (int x = 0; x < s.points; ++x) {
        for (int c = 0; c < s.components; ++c) sc.u[c] = s.at(x, c);
        flow.velocity_into(sc.u, sc.omega, sc.v);
        for (int i = 0; i < sc.v.rows(); ++i) {
            double row = 0.0;
            for (int j = 0; j < sc.v.cols(); ++j) row += std::fabs(sc.v(i, j));
            worst = std::max(worst, row);
        }
    }
    return worst;
}

// Post-step bookkeeping shared by both paths: optional filter plus the
// finiteness check. Returns the failing step or -1.
int finish_step(GridState& u, const EvolveOptions& opt, int step) {
    if (opt.spectral_filter) filter_top_third(u);
    for (double v : u.values)
        if (!std::isfinite(v)) return step;
    return -1;
}

} // namespace

GridState evolve(const GridState& initial, const FlowVelocity& flow, const EvolveOptions& opt,
                 std::vector<std::string>* warnings) {
    if (flow.dim() != initial.components)
        throw std::invalid_argument("evolve: flow/state dimension mismatch");
    if (opt.dt <= 0.0 || opt.steps < 0) throw std::invalid_argument("evolve: bad dt/steps");

    int m = initial.points;
    int n = initial.components;
    double dx = 1.0 / m;
    double cfl = opt.dt * max_velocity_scale(initial, flow) / dx;
    if (cfl > 0.5) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "CFL estimate %.3g exceeds 0.5", cfl);
        if (!opt.allow_cfl_violation)
            throw NumericError(std::string(buf) + " (pass the proceed flag to continue)");
        if (warnings) warnings->push_back(buf);
    }

    GridState u = initial;
    GridState k1(n, m), k2(n, m), k3(n, m), k4(n, m), tmp(n, m);
    long long total = static_cast<long long>(u.values.size());
    const double dt = opt.dt;
    int bad_step = -1;

#ifdef _OPENMP
    // Below ~1k points the stage barriers cost more than the work; both
    // paths produce bitwise-identical states, so the cutoff is invisible.
    if (opt.policy == ExecPolicy::parallel && m >= 1024) {
        // One parallel region for the whole run; the RK4 stages are
        // worksharing loops whose barriers impose the stage order.
#pragma omp parallel
        {
            Scratch sc(n);
            for (int step = 0; step < opt.steps && bad_step < 0; ++step) {
#pragma omp for schedule(static)
                for (int x = 0; x < m; ++x) point_rhs(u, flow, dx, x, k1, sc);
#pragma omp for schedule(static)
                for (long long i = 0; i < total; ++i)
                    tmp.values[i] = u.values[i] + dt / 2 * k1.values[i];
#pragma omp for schedule(static)
                for (int x = 0; x < m; ++x) point_rhs(tmp, flow, dx, x, k2, sc);
#pragma omp for schedule(static)
                for (long long i = 0; i < total; ++i)
                    tmp.values[i] = u.values[i] + dt / 2 * k2.values[i];
#pragma omp for schedule(static)
                for (int x = 0; x < m; ++x) point_rhs(tmp, flow, dx, x, k3, sc);
#pragma omp for schedule(static)
                for (long long i = 0; i < total; ++i)
                    tmp.values[i] = u.values[i] + dt * k3.values[i];
#pragma omp for schedule(static)
                for (int x = 0; x < m; ++x) point_rhs(tmp, flow, dx, x, k4, sc);
#pragma omp for schedule(static)
                for (long long i = 0; i < total; ++i)
                    u.values[i] += dt / 6 * (k1.values[i] + 2 * k2.values[i] + 2 * k3.values[i] +
                                             k4.values[i]);
#pragma omp single
                bad_step = finish_step(u, opt, step);
                // implicit barrier: every thread sees the same bad_step
            }
        }
        if (bad_step >= 0)
            throw NumericError("evolve: non-finite value after step " + std::to_string(bad_step));
        return u;
    }
#endif

    Scratch sc(n);
    for (int step = 0; step < opt.steps; ++step) {
        for (int x = 0; x < m; ++x) point_rhs(u, flow, dx, x, k1, sc);
        for (long long i = 0; i < total; ++i)
            tmp.values[i] = u.values[i] + dt / 2 * k1.values[i];
        for (int x = 0; x < m; ++x) point_rhs(tmp, flow, dx, x, k2, sc);
        for (long long i = 0; i < total; ++i)
            tmp.values[i] = u.values[i] + dt / 2 * k2.values[i];
        for (int x = 0; x < m; ++x) point_rhs(tmp, flow, dx, x, k3, sc);
        for (long long i = 0; i < total; ++i) tmp.values[i] = u.values[i] + dt * k3.values[i];
        for (int x = 0; x < m; ++x) point_rhs(tmp, flow, dx, x, k4, sc);
        for (long long i = 0; i < total; ++i)
            u.values[i] +=
                dt / 6 * (k1.values[i] + 2 * k2.values[i] + 2 * k3.values[i] + k4.values[i]);
        bad_step = finish_step(u, opt, step);
        if (bad_step >= 0)
            throw NumericError("evolve: non-finite value after step " + std::to_string(bad_step));
    }
    return u;
}

double commutator_defect(const GridState& initial, const FlowVelocity& flow_a,
                         const FlowVelocity& flow_b, const EvolveOptions& opt,
                         std::vector<std::string>* warnings) {
    GridState ab = evolve(evolve(initial, flow_a, opt, warnings), flow_b, opt, warnings);
    GridState ba = evolve(evolve(initial, flow_b, opt, warnings), flow_a, opt, warnings);
    return max_abs_diff(ab, ba);
}

} // namespace flatsub
