#ifndef FLATSUB_BONNET_HPP
#define FLATSUB_BONNET_HPP

#include <optional>
#include <string>
#include <vector>

#include "flatsub/problem.hpp"
#include "flatsub/sweep.hpp"
#include "flatsub/tensor.hpp"

namespace flatsub {

// Moving frame in the ambient (N+L)-space: position, tangents, normals.
struct Frame {
    std::vector<double> r;
    std::vector<std::vector<double>> tangents; // N vectors
    std::vector<std::vector<double>> normals;  // L vectors
};

// Constant pseudo-Euclidean scalar product of the ambient space,
// blockdiag(η_ij, μ_αβ) in the construction's coordinates.
struct AmbientForm {
    Mat<double> g;

    double inner(const std::vector<double>& x, const std::vector<double>& y) const {
        double acc = 0.0;
        for (int i = 0; i < g.rows(); ++i)
            for (int j = 0; j < g.cols(); ++j) acc += x[i] * g(i, j) * y[j];
        return acc;
    }
};

struct ImmersionGrid {
    DomainGrid grid;
    int n = 0, l = 0;
    std::vector<Frame> frames; // linear node order
};

// Frame at the base point: identity basis, position at the origin; Gram
// matrix equals the ambient form exactly. This pins the motion freedom.
std::pair<Frame, AmbientForm> initial_frame(const MetricMatrix& eta_cov,
                                            const MetricMatrix& mu_cov);

struct IntegrateOptions {
    int substeps = 32;              // RK4 substeps per grid cell
    std::vector<int> axis_order;    // sweep order; empty = 0..N-1
    int grid_override = 0;          // 0 = use the spec's resolution
    ExecPolicy policy = ExecPolicy::parallel;
    std::optional<Frame> initial;   // replaces the identity initial frame
};

// Axis-ordered sweep from the base node: fill the axis line through the
// base, then fan out the next axis from every filled node, and so on.
// Requires an odd grid resolution so the base point is a node.
ImmersionGrid integrate_frame(const ProblemSpec& spec, const IntegrateOptions& opt = {});

// max over nodes, i, j of |(T_i, T_j)_G − η_ij|.
double verify_induced_metric(const ImmersionGrid& grid, const AmbientForm& G,
                             const MetricMatrix& eta_cov,
                             ExecPolicy policy = ExecPolicy::parallel);

// Central-difference r_{u^i u^j} projected on the normals vs Hess(ψ_α).
double verify_second_forms(const ImmersionGrid& grid, const AmbientForm& G,
                           const std::vector<Polynomial>& psi,
                           ExecPolicy policy = ExecPolicy::parallel);

// max |(n_{α,u^i}, n_β)_G| over α ≠ β (finite differences).
double verify_torsion(const ImmersionGrid& grid, const AmbientForm& G,
                      ExecPolicy policy = ExecPolicy::parallel);

// max over nodes of max |Gram(frame) − G|.
double gram_drift(const ImmersionGrid& grid, const AmbientForm& G,
                  ExecPolicy policy = ExecPolicy::parallel);

// max over nodes and frame components of the difference between two
// reconstructions on the same grid.
double frame_difference(const ImmersionGrid& a, const ImmersionGrid& b);
double frame_difference_at(const ImmersionGrid& a, const ImmersionGrid& b, size_t node);

struct CsvOptions {
    bool include_frames = false;
    bool include_drift = false;
};

// One row per node: u^1..u^N, r^1..r^{N+L}, then optionally the tangent
// and normal components, then optionally the per-node Gram drift.
void write_point_cloud_csv(const ImmersionGrid& grid, const AmbientForm& G,
                           const std::string& path, const CsvOptions& opt);

} // namespace flatsub

#endif
