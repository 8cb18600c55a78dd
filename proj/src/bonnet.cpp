#include "flatsub/bonnet.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "flatsub/polynomial.hpp"

namespace flatsub {

std::pair<Frame, AmbientForm> initial_frame(const MetricMatrix& eta_cov,
                                            const MetricMatrix& mu_cov) {
    eta_cov.require_nondegenerate();
    mu_cov.require_nondegenerate();
    int n = eta_cov.dim();
    int l = mu_cov.dim();
    int amb = n + l;

    AmbientForm G{Mat<double>(amb, amb)};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) G.g(i, j) = eta_cov(i, j).to_double();
    for (int a = 0; a < l; ++a)
        for (int b = 0; b < l; ++b) G.g(n + a, n + b) = mu_cov(a, b).to_double();

    Frame f;
    f.r.assign(amb, 0.0);
    f.tangents.assign(n, std::vector<double>(amb, 0.0));
    f.normals.assign(l, std::vector<double>(amb, 0.0));
    for (int i = 0; i < n; ++i) f.tangents[i][i] = 1.0;
    for (int a = 0; a < l; ++a) f.normals[a][n + a] = 1.0;
    return {f, G};
}

namespace {

// Flat state layout: [r | T_1..T_N | n_1..n_L], each block of size N+L.
struct FrameOde {
    int n, l, amb;
    Mat<double> eta_contra;
    Mat<double> mu_contra;
    const std::vector<HessianEvaluator>* forms;

    size_t state_size() const { return static_cast<size_t>(1 + n + l) * amb; }

    void pack(const Frame& f, std::vector<double>& y) const {
        y.resize(state_size());
        size_t o = 0;
        for (int c = 0; c < amb; ++c) y[o++] = f.r[c];
        for (int i = 0; i < n; ++i)
            for (int c = 0; c < amb; ++c) y[o++] = f.tangents[i][c];
        for (int a = 0; a < l; ++a)
            for (int c = 0; c < amb; ++c) y[o++] = f.normals[a][c];
    }

    Frame unpack(const std::vector<double>& y) const {
        Frame f;
        size_t o = 0;
        f.r.assign(y.begin(), y.begin() + amb);
        o += amb;
        f.tangents.assign(n, {});
        for (int i = 0; i < n; ++i) {
            f.tangents[i].assign(y.begin() + o, y.begin() + o + amb);
            o += amb;
        }
        f.normals.assign(l, {});
        for (int a = 0; a < l; ++a) {
            f.normals[a].assign(y.begin() + o, y.begin() + o + amb);
            o += amb;
        }
        return f;
    }

    // dy/ds moving along u^axis with speed dir (+1/-1) at point u.
    void rhs(const std::vector<double>& u, int axis, double dir, const std::vector<double>& y,
             std::vector<double>& dy) const {
        dy.assign(state_size(), 0.0);
        std::vector<Mat<double>> omega;
        omega.reserve(forms->size());
        for (const HessianEvaluator& h : *forms) omega.push_back(h.eval(u));

        const double* T = y.data() + amb;
        const double* Nn = y.data() + static_cast<size_t>(1 + n) * amb;
        double* dr = dy.data();
        double* dT = dy.data() + amb;
        double* dN = dy.data() + static_cast<size_t>(1 + n) * amb;

        // dr = T_axis
        for (int c = 0; c < amb; ++c) dr[c] = dir * T[static_cast<size_t>(axis) * amb + c];

        // dT_i = Σ_α (Σ_β μ^{αβ} ω_{β,i,axis}) n_α
        for (int i = 0; i < n; ++i) {
            for (int a = 0; a < l; ++a) {
                double coef = 0.0;
                for (int b = 0; b < l; ++b) coef += mu_contra(a, b) * omega[b](i, axis);
                if (coef == 0.0) continue;
                coef *= dir;
                const double* na = Nn + static_cast<size_t>(a) * amb;
                double* out = dT + static_cast<size_t>(i) * amb;
                for (int c = 0; c < amb; ++c) out[c] += coef * na[c];
            }
        }

        // dn_α = −Σ_k (Σ_j ω_{α,axis,j} η^{jk}) T_k
        for (int a = 0; a < l; ++a) {
            double* out = dN + static_cast<size_t>(a) * amb;
            for (int k = 0; k < n; ++k) {
                double coef = 0.0;
                for (int j = 0; j < n; ++j) coef += omega[a](axis, j) * eta_contra(j, k);
                if (coef == 0.0) continue;
                coef *= dir;
                const double* tk = T + static_cast<size_t>(k) * amb;
                for (int c = 0; c < amb; ++c) out[c] -= coef * tk[c];
            }
        }
    }

    // RK4 across one grid cell of width `step` (in the +dir sense) from u0.
    void integrate_cell(std::vector<double>& y, const std::vector<double>& u0, int axis,
                        double dir, double step, int substeps) const {
        double h = step / substeps;
        std::vector<double> k1, k2, k3, k4, tmp(state_size());
        std::vector<double> u = u0;
        for (int s = 0; s < substeps; ++s) {
            double s0 = s * h;
            auto at = [&](double off) {
                u = u0;
                u[axis] += dir * (s0 + off);
                return u;
            };
            rhs(at(0), axis, dir, y, k1);
            for (size_t q = 0; q < y.size(); ++q) tmp[q] = y[q] + h / 2 * k1[q];
            rhs(at(h / 2), axis, dir, tmp, k2);
            for (size_t q = 0; q < y.size(); ++q) tmp[q] = y[q] + h / 2 * k2[q];
            rhs(at(h / 2), axis, dir, tmp, k3);
            for (size_t q = 0; q < y.size(); ++q) tmp[q] = y[q] + h * k3[q];
            rhs(at(h), axis, dir, tmp, k4);
            for (size_t q = 0; q < y.size(); ++q)
                y[q] += h / 6 * (k1[q] + 2 * k2[q] + 2 * k3[q] + k4[q]);
        }
    }
};

} // namespace

ImmersionGrid integrate_frame(const ProblemSpec& spec, const IntegrateOptions& opt) {
    DomainGrid grid(spec.domain, spec.n, opt.grid_override);
    if (grid.points_per_axis() % 2 == 0)
        throw SpecError("integrate_frame: grid resolution must be odd so the base point is a node");
    if (opt.substeps < 1) throw SpecError("integrate_frame: substeps must be >= 1");

    std::vector<int> order = opt.axis_order;
    if (order.empty())
        for (int i = 0; i < spec.n; ++i) order.push_back(i);
    if (static_cast<int>(order.size()) != spec.n)
        throw SpecError("integrate_frame: axis order must be a permutation of the axes");
    {
        std::vector<char> seen(spec.n, 0);
        for (int a : order) {
            if (a < 0 || a >= spec.n || seen[a])
                throw SpecError("integrate_frame: axis order must be a permutation of the axes");
            seen[a] = 1;
        }
    }

    std::vector<HessianEvaluator> forms;
    forms.reserve(spec.psi.size());
    for (const Polynomial& p : spec.psi) forms.emplace_back(p);

    FrameOde ode{spec.n, spec.l, spec.n + spec.l, spec.eta_contra.as_double(),
                 spec.mu_contra.as_double(), &forms};

    auto [f0, G] = initial_frame(spec.eta_cov, spec.mu_cov);
    if (opt.initial) f0 = *opt.initial;

    ImmersionGrid out{grid, spec.n, spec.l, {}};
    out.frames.resize(grid.size());

    int center = (grid.points_per_axis() - 1) / 2;
    std::vector<int> center_m(spec.n, center);
    size_t center_idx = grid.linear_index(center_m);
    out.frames[center_idx] = f0;

    double step = grid.step().to_double();

    // Frontier = nodes filled so far; each stage walks ± along one axis
    // from every frontier node, writing disjoint node ranges.
    std::vector<size_t> frontier = {center_idx};
    for (int axis : order) {
        struct Walk {
            size_t start;
            double dir;
        };
        std::vector<Walk> walks;
        walks.reserve(frontier.size() * 2);
        for (size_t f : frontier) {
            walks.push_back({f, +1.0});
            walks.push_back({f, -1.0});
        }
        for_each_index(
            walks.size(),
            [&](size_t w) {
                const Walk& walk = walks[w];
                std::vector<int> m = grid.multi_index(walk.start);
                std::vector<double> y;
                ode.pack(out.frames[walk.start], y);
                int from = m[axis];
                int last = walk.dir > 0 ? grid.points_per_axis() - 1 : 0;
                int dstep = walk.dir > 0 ? 1 : -1;
                for (int idx = from; idx != last; idx += dstep) {
                    std::vector<int> mm = m;
                    mm[axis] = idx;
                    std::vector<double> u0(spec.n);
                    for (int i = 0; i < spec.n; ++i) u0[i] = grid.axis(i)[mm[i]].to_double();
                    ode.integrate_cell(y, u0, axis, walk.dir, step, opt.substeps);
                    mm[axis] = idx + dstep;
                    out.frames[grid.linear_index(mm)] = ode.unpack(y);
                }
            },
            opt.policy);

        std::vector<size_t> next;
        next.reserve(frontier.size() * grid.points_per_axis());
        for (size_t f : frontier) {
            std::vector<int> m = grid.multi_index(f);
            for (int idx = 0; idx < grid.points_per_axis(); ++idx) {
                std::vector<int> mm = m;
                mm[axis] = idx;
                next.push_back(grid.linear_index(mm));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

namespace {

double frame_gram_drift(const Frame& f, const AmbientForm& G, int n, int l) {
    double worst = 0.0;
    auto vec = [&](int k) -> const std::vector<double>& {
        return k < n ? f.tangents[k] : f.normals[k - n];
    };
    for (int i = 0; i < n + l; ++i)
        for (int j = 0; j < n + l; ++j) {
            double target = G.g(i, j);
            double v = 0.0;
            const std::vector<double>& x = vec(i);
            const std::vector<double>& y = vec(j);
            for (int a = 0; a < G.g.rows(); ++a)
                for (int b = 0; b < G.g.cols(); ++b) v += x[a] * G.g(a, b) * y[b];
            worst = std::max(worst, std::fabs(v - target));
        }
    return worst;
}

} // namespace

double verify_induced_metric(const ImmersionGrid& grid, const AmbientForm& G,
                             const MetricMatrix& eta_cov, ExecPolicy policy) {
    Mat<double> eta = eta_cov.as_double();
    auto best = sweep_max<double>(
        grid.frames.size(),
        [&](size_t node) {
            SweepBest<double> r;
            r.node = node;
            const Frame& f = grid.frames[node];
            for (int i = 0; i < grid.n; ++i)
                for (int j = 0; j < grid.n; ++j) {
                    double d = std::fabs(G.inner(f.tangents[i], f.tangents[j]) - eta(i, j));
                    if (r.indices.empty() || d > r.value) {
                        r.value = d;
                        r.indices = {i, j};
                    }
                }
            return r;
        },
        policy);
    return best.value;
}

double verify_second_forms(const ImmersionGrid& grid, const AmbientForm& G,
                           const std::vector<Polynomial>& psi, ExecPolicy policy) {
    if (grid.grid.points_per_axis() < 3)
        throw SpecError("verify_second_forms: grid too coarse (need >= 3 points per axis)");
    std::vector<HessianEvaluator> hs;
    hs.reserve(psi.size());
    for (const Polynomial& p : psi) hs.emplace_back(p);
    double h = grid.grid.step().to_double();

    auto best = sweep_max<double>(
        grid.frames.size(),
        [&](size_t node) {
            SweepBest<double> r;
            r.node = node;
            r.indices = {-1, -1, -1};
            std::vector<int> m = grid.grid.multi_index(node);
            std::vector<double> u = grid.grid.point_double(node);
            const Frame& f = grid.frames[node];
            std::vector<Mat<double>> omega;
            omega.reserve(hs.size());
            for (const HessianEvaluator& he : hs) omega.push_back(he.eval(u));
            for (int j = 0; j < grid.n; ++j) {
                if (m[j] == 0 || m[j] == grid.grid.points_per_axis() - 1) continue;
                std::vector<int> mp = m, mm2 = m;
                mp[j] += 1;
                mm2[j] -= 1;
                const Frame& fp = grid.frames[grid.grid.linear_index(mp)];
                const Frame& fm = grid.frames[grid.grid.linear_index(mm2)];
                for (int i = 0; i < grid.n; ++i) {
                    std::vector<double> d2r(f.r.size());
                    for (size_t c = 0; c < d2r.size(); ++c)
                        d2r[c] = (fp.tangents[i][c] - fm.tangents[i][c]) / (2 * h);
                    for (int a = 0; a < grid.l; ++a) {
                        double dev = std::fabs(G.inner(f.normals[a], d2r) - omega[a](i, j));
                        if (dev > r.value) {
                            r.value = dev;
                            r.indices = {a, i, j};
                        }
                    }
                }
            }
            return r;
        },
        policy);
    return best.value;
}

double verify_torsion(const ImmersionGrid& grid, const AmbientForm& G, ExecPolicy policy) {
    if (grid.grid.points_per_axis() < 3)
        throw SpecError("verify_torsion: grid too coarse (need >= 3 points per axis)");
    if (grid.l < 2) return 0.0; // no α ≠ β pairs
    double h = grid.grid.step().to_double();
    auto best = sweep_max<double>(
        grid.frames.size(),
        [&](size_t node) {
            SweepBest<double> r;
            r.node = node;
            r.indices = {-1, -1, -1};
            std::vector<int> m = grid.grid.multi_index(node);
            const Frame& f = grid.frames[node];
            for (int i = 0; i < grid.n; ++i) {
                if (m[i] == 0 || m[i] == grid.grid.points_per_axis() - 1) continue;
                std::vector<int> mp = m, mm2 = m;
                mp[i] += 1;
                mm2[i] -= 1;
                const Frame& fp = grid.frames[grid.grid.linear_index(mp)];
                const Frame& fm = grid.frames[grid.grid.linear_index(mm2)];
                for (int a = 0; a < grid.l; ++a) {
                    std::vector<double> dn(f.r.size());
                    for (size_t c = 0; c < dn.size(); ++c)
                        dn[c] = (fp.normals[a][c] - fm.normals[a][c]) / (2 * h);
                    for (int b = 0; b < grid.l; ++b) {
                        if (a == b) continue;
                        double dev = std::fabs(G.inner(dn, f.normals[b]));
                        if (dev > r.value) {
                            r.value = dev;
                            r.indices = {a, b, i};
                        }
                    }
                }
            }
            return r;
        },
        policy);
    return best.value;
}

double gram_drift(const ImmersionGrid& grid, const AmbientForm& G, ExecPolicy policy) {
    auto best = sweep_max<double>(
        grid.frames.size(),
        [&](size_t node) {
            SweepBest<double> r;
            r.node = node;
            r.value = frame_gram_drift(grid.frames[node], G, grid.n, grid.l);
            return r;
        },
        policy);
    return best.value;
}

double frame_difference_at(const ImmersionGrid& a, const ImmersionGrid& b, size_t node) {
    const Frame& x = a.frames[node];
    const Frame& y = b.frames[node];
    double m = 0.0;
    for (size_t c = 0; c < x.r.size(); ++c) m = std::max(m, std::fabs(x.r[c] - y.r[c]));
    for (int i = 0; i < a.n; ++i)
        for (size_t c = 0; c < x.r.size(); ++c)
            m = std::max(m, std::fabs(x.tangents[i][c] - y.tangents[i][c]));
    for (int q = 0; q < a.l; ++q)
        for (size_t c = 0; c < x.r.size(); ++c)
            m = std::max(m, std::fabs(x.normals[q][c] - y.normals[q][c]));
    return m;
}

double frame_difference(const ImmersionGrid& a, const ImmersionGrid& b) {
    if (a.frames.size() != b.frames.size() || a.n != b.n || a.l != b.l)
        throw std::invalid_argument("frame_difference: grids do not match");
    double m = 0.0;
    for (size_t node = 0; node < a.frames.size(); ++node)
        m = std::max(m, frame_difference_at(a, b, node));
    return m;
}

void write_point_cloud_csv(const ImmersionGrid& grid, const AmbientForm& G,
                           const std::string& path, const CsvOptions& opt) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open CSV output file: " + path);
    char buf[40];
    auto put = [&](double v, bool comma) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        if (comma) out << ',';
        out << buf;
    };
    for (int i = 0; i < grid.n; ++i) out << (i ? "," : "") << "u" << (i + 1);
    for (int c = 0; c < grid.n + grid.l; ++c) out << ",r" << (c + 1);
    if (opt.include_frames) {
        for (int i = 0; i < grid.n; ++i)
            for (int c = 0; c < grid.n + grid.l; ++c) out << ",t" << (i + 1) << "_" << (c + 1);
        for (int a = 0; a < grid.l; ++a)
            for (int c = 0; c < grid.n + grid.l; ++c) out << ",n" << (a + 1) << "_" << (c + 1);
    }
    if (opt.include_drift) out << ",gram_drift";
    out << "\n";
    for (size_t node = 0; node < grid.frames.size(); ++node) {
        std::vector<double> u = grid.grid.point_double(node);
        const Frame& f = grid.frames[node];
        for (int i = 0; i < grid.n; ++i) put(u[i], i != 0);
        for (int c = 0; c < grid.n + grid.l; ++c) put(f.r[c], true);
        if (opt.include_frames) {
            for (int i = 0; i < grid.n; ++i)
                for (int c = 0; c < grid.n + grid.l; ++c) put(f.tangents[i][c], true);
            for (int a = 0; a < grid.l; ++a)
                for (int c = 0; c < grid.n + grid.l; ++c) put(f.normals[a][c], true);
        }
        if (opt.include_drift) put(frame_gram_drift(f, G, grid.n, grid.l), true);
        out << "\n";
    }
}

} // namespace flatsub
