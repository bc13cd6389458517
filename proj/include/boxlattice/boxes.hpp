// Cyclic boxes B = I_1 x ... x I_r mod p: membership, translation, volume,
// direct point counting, and the uniform-distribution expected count.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "boxlattice/ffgrid.hpp"
#include "boxlattice/variety.hpp"

namespace boxlattice {

// Interval of `length` consecutive residues starting at `start`, wrapping
// mod p. 1 <= length <= p; membership: (m - start mod p) < length.
struct CyclicInterval {
  FieldElement start = 0;
  std::int64_t length = 1;
};

class CyclicBox {
 public:
  CyclicBox(const Prime& p, std::vector<CyclicInterval> intervals);

  const Prime& prime() const { return p_; }
  int dims() const { return static_cast<int>(intervals_.size()); }
  const CyclicInterval& interval(int axis) const {
    return intervals_[static_cast<std::size_t>(axis)];
  }
  const std::vector<CyclicInterval>& intervals() const { return intervals_; }

  std::int64_t volume() const;
  CyclicBox translate(std::span<const FieldElement> x) const;
  bool contains(std::span<const FieldElement> point) const;

  // Product box B x B2 over the concatenated axes (both mod the same p).
  CyclicBox product(const CyclicBox& other) const;

 private:
  Prime p_;
  std::vector<CyclicInterval> intervals_;
};

std::int64_t count_in_box(const PointSet& points, const CyclicBox& box);

// N_V * vol / p^dims, evaluated exactly in extended precision.
double expected_count(std::int64_t n_points, std::int64_t volume, const GridShape& shape);
double expected_count(std::int64_t n_points, const CyclicBox& box);

// CLI syntax "start1:len1,start2:len2,..." with "start:" optional (default
// 0). Lengths accept the tokens "p" (full axis), "sqrtp" (ceil of sqrt p)
// and "halfp" ((p-1)/2) so one spec can serve a multi-prime sweep.
CyclicBox parse_box(const std::string& spec, const Prime& p);

}  // namespace boxlattice
