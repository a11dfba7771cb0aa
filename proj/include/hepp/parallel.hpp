#pragma once

namespace hepp {

/// Data-parallel loop over [0, n). Every body invocation must be independent;
/// results are written by index so output order never depends on scheduling.
/// The serial path is the reference the OpenMP path is tested against.
template <class F>
void parallel_for(int n, F&& body, bool parallel = true) {
#ifdef HEPP_HAVE_OPENMP
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
#else
    (void)parallel;
#endif
    for (int i = 0; i < n; ++i) body(i);
}

}  // namespace hepp
