// Benchmark: the oracle-equivalence grid evaluated with the OpenMP-parallel
// row scheduler versus the serial reference path, with a correctness check.
#include "hepp/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>

int main(int argc, char** argv) {
    int steps = 6;
    if (argc > 1) steps = std::max(2, std::atoi(argv[1]));
    const auto axis = hepp::verification::linspace(0.52, 0.95, steps);
    std::printf("grid: %d^3 points x 2 noise models (%d pipeline runs)\n", steps,
                2 * steps * steps * steps);

    using clock = std::chrono::steady_clock;

    const auto t0 = clock::now();
    const auto serial = hepp::verification::compare_grid(axis, false);
    const auto t1 = clock::now();
    const auto parallel = hepp::verification::compare_grid(axis, true);
    const auto t2 = clock::now();

    const double serial_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    const double parallel_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();

    std::printf("serial reference: %10.1f ms\n", serial_ms);
    std::printf("parallel:         %10.1f ms\n", parallel_ms);
    std::printf("speedup:          %10.2fx\n", serial_ms / parallel_ms);

    const bool agree = serial.worst_deviation == parallel.worst_deviation &&
                       serial.worst_completeness == parallel.worst_completeness &&
                       serial.worst_offdiag == parallel.worst_offdiag;
    std::printf("result agreement: %s (worst deviation %.3e)\n", agree ? "exact" : "DIFFERS",
                serial.worst_deviation);
    return agree ? 0 : 1;
}
