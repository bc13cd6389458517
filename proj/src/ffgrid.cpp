#include "boxlattice/ffgrid.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace boxlattice {

namespace {

constexpr std::int64_t kMaxPrime = (std::int64_t{1} << 31) - 1;

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (std::int64_t d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace

Prime::Prime(std::int64_t p) : p_(p) {
  if (p > kMaxPrime) {
    throw Error("prime too large: " + std::to_string(p) + " > 2^31-1");
  }
  if (!is_prime(p)) {
    throw Error("not a prime: " + std::to_string(p));
  }
}

FieldElement Prime::pow(FieldElement base, std::int64_t exp) const {
  base = reduce(base);
  FieldElement out = 1;
  while (exp > 0) {
    if (exp & 1) out = mul(out, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return out;
}

FieldElement Prime::inv(FieldElement a) const {
  a = reduce(a);
  if (a == 0) throw Error("inverse of 0 mod " + std::to_string(p_));
  return pow(a, p_ - 2);
}

GridShape::GridShape(const Prime& p, int dims) : p_(p), dims_(dims), cells_(0) {
  if (dims < 1) throw Error("grid needs at least one axis");
  cells_ = checked_pow_i64(p.value(), dims);  // throws on int64 overflow
}

std::int64_t grid_index(std::span<const FieldElement> coords, const GridShape& shape) {
  if (static_cast<int>(coords.size()) != shape.dims()) {
    throw Error("grid_index: expected " + std::to_string(shape.dims()) +
                " coordinates, got " + std::to_string(coords.size()));
  }
  const std::int64_t p = shape.prime().value();
  std::int64_t idx = 0;
  for (const FieldElement c : coords) idx = idx * p + c;
  return idx;
}

std::vector<FieldElement> grid_coords(std::int64_t index, const GridShape& shape) {
  const std::int64_t p = shape.prime().value();
  std::vector<FieldElement> coords(static_cast<std::size_t>(shape.dims()));
  for (int a = shape.dims() - 1; a >= 0; --a) {
    coords[static_cast<std::size_t>(a)] = index % p;
    index /= p;
  }
  return coords;
}

std::complex<double> ep_phase(std::int64_t t, const Prime& p) {
  const double angle =
      2.0 * std::numbers::pi * static_cast<double>(p.reduce(t)) / static_cast<double>(p.value());
  return {std::cos(angle), std::sin(angle)};
}

PhaseTable::PhaseTable(const Prime& p) : p_(p) {
  table_.resize(static_cast<std::size_t>(p.value()));
  for (std::int64_t t = 0; t < p.value(); ++t) {
    table_[static_cast<std::size_t>(t)] = ep_phase(t, p);
  }
}

}  // namespace boxlattice
