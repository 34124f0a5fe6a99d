#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace legvar {

/// Worker count: LEGVAR_THREADS if set and positive, else hardware concurrency.
int thread_count();

/// Runs fn(i) for i in [0, n) over fixed contiguous blocks. Each index is
/// visited exactly once; fn must only write to slots owned by i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Order-independent of the thread count: Neumaier sums over fixed blocks of
/// 4096 entries, then a pairwise sum of the block totals.
double deterministic_sum(const std::vector<double>& v);

/// Neumaier compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double c = 0.0;
  void add(double x);
  double value() const { return sum + c; }
};

}  // namespace legvar
