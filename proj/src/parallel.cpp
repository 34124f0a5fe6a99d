#include "legvar/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace legvar {

namespace {

constexpr std::size_t kBlock = 4096;

double pairwise(const double* v, std::size_t n) {
  if (n == 0) return 0.0;
  if (n == 1) return v[0];
  const std::size_t h = n / 2;
  return pairwise(v, h) + pairwise(v + h, n - h);
}

}  // namespace

int thread_count() {
  if (const char* env = std::getenv("LEGVAR_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(thread_count(), (n + kBlock - 1) / kBlock);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

void CompensatedSum::add(double x) {
  const double t = sum + x;
  if (std::abs(sum) >= std::abs(x))
    c += (sum - t) + x;
  else
    c += (x - t) + sum;
  sum = t;
}

double deterministic_sum(const std::vector<double>& v) {
  std::vector<double> blocks;
  for (std::size_t lo = 0; lo < v.size(); lo += kBlock) {
    CompensatedSum s;
    for (std::size_t i = lo; i < std::min(v.size(), lo + kBlock); ++i) s.add(v[i]);
    blocks.push_back(s.value());
  }
  return pairwise(blocks.data(), blocks.size());
}

}  // namespace legvar
