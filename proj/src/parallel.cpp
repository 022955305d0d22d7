#include "pythreg/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace pythreg::parallel {

namespace {
std::atomic<unsigned> g_workers{1};
}

void set_workers(unsigned workers) { g_workers.store(std::max(1U, workers)); }

unsigned workers() { return g_workers.load(); }

void for_each_band(std::size_t bands, const std::function<void(std::size_t)>& body) {
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(workers(), bands));
  if (n <= 1) {
    for (std::size_t b = 0; b < bands; ++b) body(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto run = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= bands || failed.load()) return;
      try {
        body(b);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace pythreg::parallel
