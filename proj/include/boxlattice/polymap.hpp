// Polynomial maps g: V -> A^s, the graph embedding into F_p^{r+s}, joint
// (B, B') counting and sweeping, and the linear-independence rank test on
// {1, x_1..x_r, g_1..g_s}.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boxlattice/boxes.hpp"
#include "boxlattice/sweep.hpp"
#include "boxlattice/variety.hpp"

namespace boxlattice {

struct PolyMap {
  std::vector<PolynomialSpec> components;  // s >= 1, each over r variables

  int s() const { return static_cast<int>(components.size()); }
  void validate(int ambient_r) const;
};

std::vector<FieldElement> apply_map(const PolyMap& map, std::span<const FieldElement> point,
                                    const Prime& p);

// {(z, g(z)) : z in V} as a point set in r+s dimensions; exactly N(V) points.
PointSet graph_points(const PointSet& points, const PolyMap& map);

// |{z in V : z in box and g(z) in box2}|.
std::int64_t joint_count(const PointSet& points, const PolyMap& map, const CyclicBox& box,
                         const CyclicBox& box2);

// Sweeps the product box B x B' over the graph indicator; entry at (x, y)
// is N_{B_x, B'_y}(V, g).
CountField joint_sweep(const CountField& graph_indicator, const CyclicBox& box,
                       const CyclicBox& box2, int threads = 1);

struct IndependenceReport {
  int rank = 0;
  bool independent = false;
  // Present iff rank-deficient: coefficients (c_0, c_1..c_r, c'_1..c'_s) of
  // a combination c_0 + sum c_i x_i + sum c'_j g_j vanishing at every point
  // of V, normalized so the first nonzero entry is 1.
  std::optional<std::vector<FieldElement>> witness;
};

// Rank over F_p of the N(V) x (1+r+s) evaluation matrix with rows
// (1, z, g(z)). Per-prime, evaluation-based: the point set is ground truth.
// map == nullptr tests {1, x_1..x_r} alone.
IndependenceReport independence_rank(const PointSet& points, const PolyMap* map = nullptr);

// JSON schema: { "map": [[{"coeff": int, "exps": [int,...]}, ...], ...] }
PolyMap map_from_json(const std::string& json_text, int ambient_r);
PolyMap load_map_file(const std::string& path, int ambient_r);

}  // namespace boxlattice
