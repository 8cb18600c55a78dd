#ifndef FLATSUB_SWEEP_HPP
#define FLATSUB_SWEEP_HPP

#include <cstddef>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace flatsub {

// Execution policy for the data-parallel kernels. The serial path is the
// reference implementation; the parallel path must produce identical
// results (tests compare them, the benchmark times them).
enum class ExecPolicy { serial, parallel };

// Best residual seen during a sweep: value, owning grid node, and the
// tensor index tuple at which the per-point max was attained.
template <typename S>
struct SweepBest {
    S value = S(0);
    size_t node = 0;
    std::vector<int> indices;
};

// Deterministic combine: larger value wins, ties go to the smaller node
// index. (value desc, node asc) is a strict total order over distinct
// nodes, so the reduction result is independent of partitioning.
template <typename S>
const SweepBest<S>& sweep_better(const SweepBest<S>& a, const SweepBest<S>& b) {
    if (a.value < b.value) return b;
    if (b.value < a.value) return a;
    return a.node <= b.node ? a : b;
}

// F: size_t node -> SweepBest<S> with .node already set.
template <typename S, typename F>
SweepBest<S> sweep_max_serial(size_t count, F&& eval) {
    SweepBest<S> best;
    best.node = count; // sentinel: any real node wins a tie against it
    bool have = false;
    for (size_t i = 0; i < count; ++i) {
        SweepBest<S> cur = eval(i);
        if (!have) {
            best = cur;
            have = true;
        } else {
            best = sweep_better(best, cur);
        }
    }
    return best;
}

template <typename S, typename F>
SweepBest<S> sweep_max_parallel(size_t count, F&& eval) {
#ifdef _OPENMP
    SweepBest<S> best;
    bool have = false;
#pragma omp parallel
    {
        SweepBest<S> local;
        bool local_have = false;
#pragma omp for schedule(static) nowait
        for (long long i = 0; i < static_cast<long long>(count); ++i) {
            SweepBest<S> cur = eval(static_cast<size_t>(i));
            if (!local_have) {
                local = cur;
                local_have = true;
            } else {
                local = sweep_better(local, cur);
            }
        }
#pragma omp critical(flatsub_sweep_merge)
        {
            if (local_have) {
                if (!have) {
                    best = local;
                    have = true;
                } else {
                    best = sweep_better(best, local);
                }
            }
        }
    }
    return best;
#else
    return sweep_max_serial<S>(count, std::forward<F>(eval));
#endif
}

template <typename S, typename F>
SweepBest<S> sweep_max(size_t count, F&& eval, ExecPolicy policy) {
    return policy == ExecPolicy::parallel
               ? sweep_max_parallel<S>(count, std::forward<F>(eval))
               : sweep_max_serial<S>(count, std::forward<F>(eval));
}

// Independent per-index work (each index owns its outputs).
template <typename F>
void for_each_index_serial(size_t count, F&& fn) {
    for (size_t i = 0; i < count; ++i) fn(i);
}

template <typename F>
void for_each_index_parallel(size_t count, F&& fn) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(count); ++i)
        fn(static_cast<size_t>(i));
#else
    for_each_index_serial(count, std::forward<F>(fn));
#endif
}

template <typename F>
void for_each_index(size_t count, F&& fn, ExecPolicy policy) {
    if (policy == ExecPolicy::parallel)
        for_each_index_parallel(count, std::forward<F>(fn));
    else
        for_each_index_serial(count, std::forward<F>(fn));
}

} // namespace flatsub

#endif
