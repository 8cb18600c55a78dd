// Times the OpenMP kernels against their serial reference implementations
// and confirms the outputs agree bit for bit.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "flatsub/bonnet.hpp"
#include "flatsub/checks.hpp"
#include "flatsub/hydro.hpp"
#include "flatsub/problem.hpp"

using namespace flatsub;

namespace {

double now_secs() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

// best-of-3 to damp scheduler noise
template <typename F>
double timed(F&& fn) {
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
        double t0 = now_secs();
        fn();
        best = std::min(best, now_secs() - t0);
    }
    return best;
}

std::string data_file(const char* name) {
    return std::string(FLATSUB_BENCH_DATA_DIR) + "/" + name;
}

void report(const char* name, double t_serial, double t_parallel, bool identical) {
    std::printf("%-28s  serial %8.3f s   parallel %8.3f s   speedup %5.2fx   %s\n", name,
                t_serial, t_parallel, t_serial / t_parallel,
                identical ? "outputs identical" : "OUTPUTS DIFFER");
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel timings degrade to serial\n\n");
#endif

    // residual sweep, float arithmetic, 17^3 nodes
    {
        ProblemSpec spec = load_problem_file(data_file("wdvv3.json"), ArithmeticMode::floating);
        CheckOptions s, p;
        s.mode = p.mode = ArithmeticMode::floating;
        s.policy = ExecPolicy::serial;
        p.policy = ExecPolicy::parallel;
        s.grid_override = p.grid_override = 33;
        ResidualReport rs, rp;
        double ts = timed([&] { rs = run_wdvv_check(spec, s); });
        double tp = timed([&] { rp = run_wdvv_check(spec, p); });
        report("wdvv sweep (float)", ts, tp,
               rs.value == rp.value && rs.worst_point == rp.worst_point);
    }

    // same sweep in exact rational arithmetic
    {
        ProblemSpec spec = load_problem_file(data_file("wdvv3.json"), ArithmeticMode::rational);
        CheckOptions s, p;
        s.policy = ExecPolicy::serial;
        p.policy = ExecPolicy::parallel;
        s.grid_override = p.grid_override = 17;
        ResidualReport rs, rp;
        double ts = timed([&] { rs = run_wdvv_check(spec, s); });
        double tp = timed([&] { rp = run_wdvv_check(spec, p); });
        report("wdvv sweep (rational)", ts, tp, rs.value_exact == rp.value_exact);
    }

    // hydrodynamic evolution, 4096 spatial points
    {
        ProblemSpec spec = load_problem_file(data_file("wdvv3.json"), ArithmeticMode::floating);
        FlowVelocity flow(spec.psi[0], spec.eta_contra.as_double());
        GridState g0(spec.n, 16384);
        for (int x = 0; x < 16384; ++x)
            for (int c = 0; c < spec.n; ++c)
                g0.at(x, c) = 0.01 * std::sin(2 * M_PI * (x + 17.0 * c) / 16384.0);
        EvolveOptions s, p;
        s.dt = p.dt = 2e-5;
        s.steps = p.steps = 100;
        s.policy = ExecPolicy::serial;
        p.policy = ExecPolicy::parallel;
        GridState out_s, out_p;
        double ts = timed([&] { out_s = evolve(g0, flow, s); });
        double tp = timed([&] { out_p = evolve(g0, flow, p); });
        report("hydro evolve", ts, tp, max_abs_diff(out_s, out_p) == 0.0);
    }

    // frame integration, 17^3 nodes
    {
        ProblemSpec spec = load_problem_file(data_file("wdvv3.json"), ArithmeticMode::floating);
        spec.domain.grid = 17;
        IntegrateOptions s, p;
        s.substeps = p.substeps = 16;
        s.policy = ExecPolicy::serial;
        p.policy = ExecPolicy::parallel;
        ImmersionGrid gs, gp;
        double ts = timed([&] { gs = integrate_frame(spec, s); });
        double tp = timed([&] { gp = integrate_frame(spec, p); });
        report("frame integration", ts, tp, frame_difference(gs, gp) == 0.0);
    }

    return 0;
}
