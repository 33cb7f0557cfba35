#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>

namespace revlab {

/// Worker count used by the batch evaluators. REVLAB_THREADS, when set to a
/// positive integer, overrides the value passed to set_thread_count.
int thread_count();
void set_thread_count(int n);

/// Calls fn(i) for i in [0, n) on up to thread_count() threads. Each index is
/// handled by exactly one call, so results written to slot i do not depend on
/// the thread count. The first exception thrown by a worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Pairwise (tree) summation over fixed-size blocks, in ascending index order.
double pairwise_sum(std::span<const double> v);
std::complex<double> pairwise_sum(std::span<const std::complex<double>> v);

}  // namespace revlab
