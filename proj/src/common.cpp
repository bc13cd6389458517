#include "boxlattice/common.hpp"

#include <limits>
#include <thread>
#include <vector>

namespace boxlattice {

std::int64_t checked_pow_i64(std::int64_t base, int exp) {
  if (base < 0 || exp < 0) throw Error("checked_pow_i64: negative input");
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && out > std::numeric_limits<std::int64_t>::max() / base) {
      throw Error("integer overflow computing " + std::to_string(base) + "^" +
                  std::to_string(exp));
    }
    out *= base;
  }
  return out;
}

void parallel_chunks(std::int64_t n, int threads,
                     const std::function<void(std::int64_t, std::int64_t)>& fn) {
  if (n <= 0) return;
  if (threads <= 1 || n == 1) {
    fn(0, n);
    return;
  }
  const std::int64_t workers = std::min<std::int64_t>(threads, n);
  const std::int64_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (std::int64_t w = 0; w < workers; ++w) {
    const std::int64_t lo = w * chunk;
    const std::int64_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace boxlattice
