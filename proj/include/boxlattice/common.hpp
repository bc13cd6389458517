// Shared plumbing: error types, wide-integer accumulators, compensated
// summation, checked integer powers, and a minimal thread pool-free
// parallel chunk runner.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace boxlattice {

using int128_t = __int128;

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Resource guards (cell budgets, phase budgets). The CLI maps these to a
// distinct exit code so runaway configurations fail fast and visibly.
class GuardError : public Error {
 public:
  explicit GuardError(const std::string& msg) : Error(msg) {}
};

// base^exp for non-negative exp; throws on int64 overflow.
std::int64_t checked_pow_i64(std::int64_t base, int exp);

// Neumaier-compensated accumulator. Deterministic for a fixed order of adds.
class KahanSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void add(const KahanSum& other) {
    add(other.sum_);
    add(other.comp_);
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Runs fn(begin, end) over [0, n) split into at most `threads` contiguous
// chunks. With threads <= 1 the call is inline. Chunk boundaries depend only
// on (n, threads), so any integer-only work is bit-identical across runs.
void parallel_chunks(std::int64_t n, int threads,
                     const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace boxlattice
