#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace pythreg::parallel {

// Worker count used by every banded scan in the library (default 1).
void set_workers(unsigned workers);
unsigned workers();

// Runs body(band) for band = 0..bands-1 on the configured workers. Which
// worker runs which band is unspecified; callers keep per-band results and
// merge them in band order, so output never depends on the worker count.
// The first exception thrown by a band is rethrown after all workers stop.
void for_each_band(std::size_t bands, const std::function<void(std::size_t)>& body);

// Splits [0, total) into fixed-size bands, evaluates body(begin, end) per
// band and folds the partial results left to right in band order.
template <class T, class Body>
T band_reduce(std::size_t total, std::size_t band_size, T init, Body&& body) {
  if (band_size == 0) band_size = 1;
  const std::size_t bands = (total + band_size - 1) / band_size;
  std::vector<T> partial(bands, T{});
  for_each_band(bands, [&](std::size_t band) {
    const std::size_t begin = band * band_size;
    const std::size_t end = begin + band_size < total ? begin + band_size : total;
    partial[band] = body(begin, end);
  });
  for (auto& p : partial) init += p;
  return init;
}

// Scoped override of the worker count.
class WorkerScope {
 public:
  explicit WorkerScope(unsigned workers_) : saved_(workers()) { set_workers(workers_); }
  ~WorkerScope() { set_workers(saved_); }
  WorkerScope(const WorkerScope&) = delete;
  WorkerScope& operator=(const WorkerScope&) = delete;

 private:
  unsigned saved_;
};

}  // namespace pythreg::parallel
