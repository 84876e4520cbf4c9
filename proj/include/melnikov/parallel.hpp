// Parallel map over independent work items. Every kernel in this project is a
// pure function of its item index writing into a preallocated slot, so the
// OpenMP schedule never affects results; the serial path is kept both as the
// reference implementation for tests and as the fallback build.
#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace melnikov {

enum class ExecMode { Serial, OpenMP };

// MELNIKOV_THREADS (if set) bounds the pool; 0/unset means OpenMP default.
int thread_limit();

// global default used by the CLI and acceptance suite; tests flip it
ExecMode default_exec_mode();
void set_default_exec_mode(ExecMode m);

template <class F>
void parallel_for(std::size_t n, ExecMode mode, F&& body) {
#ifdef _OPENMP
    if (mode == ExecMode::OpenMP) {
        const int limit = thread_limit();
#pragma omp parallel for schedule(dynamic) num_threads(limit > 0 ? limit : omp_get_max_threads())
        for (long long i = 0; i < static_cast<long long>(n); ++i) body(static_cast<std::size_t>(i));
        return;
    }
#endif
    for (std::size_t i = 0; i < n; ++i) body(i);
}

template <class F>
void parallel_for(std::size_t n, F&& body) {
    parallel_for(n, default_exec_mode(), static_cast<F&&>(body));
}

}  // namespace melnikov
