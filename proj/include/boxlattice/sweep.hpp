// The all-translate count field {N_{B_x}} and its statistics: second
// moments, exceptional/zero fractions, nonempty counts, and the
// disjoint-translate lattice sampler.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "boxlattice/boxes.hpp"
#include "boxlattice/common.hpp"
#include "boxlattice/ffgrid.hpp"
#include "boxlattice/variety.hpp"

namespace boxlattice {

// Integer field over [0,p)^dims, row-major. For a sweep of box B over the
// indicator of V, the entry at x is N_{B_x}(V).
class CountField {
 public:
  explicit CountField(const GridShape& shape);

  const GridShape& shape() const { return shape_; }
  std::int64_t size() const { return shape_.cells(); }
  std::int64_t& operator[](std::int64_t i) { return counts_[static_cast<std::size_t>(i)]; }
  std::int64_t operator[](std::int64_t i) const { return counts_[static_cast<std::size_t>(i)]; }
  std::int64_t at(std::span<const FieldElement> coords) const {
    return counts_[static_cast<std::size_t>(grid_index(coords, shape_))];
  }
  std::int64_t* data() { return counts_.data(); }
  const std::int64_t* data() const { return counts_.data(); }

  int128_t total() const;         // exact sum of entries
  int128_t total_squares() const; // exact sum of squared entries

 private:
  GridShape shape_;
  std::vector<std::int64_t> counts_;
};

// 0/1 field marking the points of V (or of a graph in r+s dims).
CountField indicator_field(const PointSet& points,
                           std::int64_t max_cells = kDefaultMaxCells);

// Entry at x = sum over m in B of indicator(x + m), i.e. N_{x+B}. Computed
// by one cyclic sliding-window pass per axis: O(dims * p^dims) integer adds,
// exact, and bit-identical for any thread count (threads own whole lines).
CountField sweep_counts(const CountField& indicator, const CyclicBox& box, int threads = 1);

// O(p^dims * N * dims) reference: counts every translate directly. Oracle
// for sweep_counts; guarded to small grids.
CountField sweep_counts_bruteforce(const PointSet& points, const CyclicBox& box,
                                   std::int64_t max_cells = std::int64_t{1} << 20);

// Sum_x (N_x - expected)^2 via the identity Sum N_x^2 - total^2 / cells,
// evaluated from the field's exact integer aggregates. `expected` must be
// the field's mean (it is cross-checked, then the exact mass is used).
double second_moment(const CountField& field, double expected);

// Definitional route with compensated summation; the independent check.
double second_moment_direct(const CountField& field, double expected);

// S / (p^{n+1+delta} * vol); vol is vol(B) or vol(B)*vol(B') for joint fields.
double moment_ratio(double second_moment_value, const Prime& p, int n, int delta,
                    std::int64_t vol);

struct ExceptionalStats {
  std::int64_t count = 0;
  double fraction = 0.0;
};

// Translates with |N_x - expected| > epsilon * expected. When expected == 0
// a translate is exceptional iff N_x > 0.
ExceptionalStats exceptional_set(const CountField& field, double expected, double epsilon);

double zero_fraction(const CountField& field);
std::int64_t nonempty_translate_count(const CountField& field);

// The lattice of pairwise-disjoint translates: x_i = a_i * L_i for
// 0 <= a_i <= floor(p / L_i), reduced mod p with per-axis duplicates
// suppressed. Boundary points (a_i at the floor) may overlap the wrap.
struct TranslateLattice {
  std::vector<std::int64_t> steps;
  int dims = 0;
  std::vector<FieldElement> flat_points;
  std::vector<char> boundary;  // per point: any axis at its boundary index

  std::int64_t size() const { return static_cast<std::int64_t>(boundary.size()); }
  std::span<const FieldElement> point(std::int64_t i) const {
    return {flat_points.data() + i * dims, static_cast<std::size_t>(dims)};
  }
};

TranslateLattice lattice_sample(const CyclicBox& box, const Prime& p);

// One row of sweep statistics; the CSV interface of the `sweep` and
// `map-sweep` subcommands.
struct MomentReport {
  std::int64_t p = 0;
  int r = 0;
  int s = 0;  // 0 for plain sweeps
  int n = 0;
  int delta = -1;
  std::int64_t vol_box = 0;
  std::int64_t vol_box2 = 0;  // 0 for plain sweeps
  std::int64_t n_points = 0;
  double expected = 0.0;
  double second_moment = 0.0;
  double bound_ratio = 0.0;
  double epsilon = 0.0;
  double exceptional_fraction = 0.0;
  double zero_fraction = 0.0;
  std::int64_t nonempty_translates = 0;
};

// Statistics bundle for a computed field. vol_box2 = 0 marks a plain sweep.
MomentReport analyze_field(const CountField& field, const VarietySpec& spec,
                           std::int64_t n_points, std::int64_t vol_box, std::int64_t vol_box2,
                           double epsilon);

// Throws Error when Sum N_x != N * vol(B) (* vol(B')); called on every
// emitted row.
void check_mass_invariant(const CountField& field, std::int64_t n_points, std::int64_t vol_box,
                          std::int64_t vol_box2 = 0);

}  // namespace boxlattice
