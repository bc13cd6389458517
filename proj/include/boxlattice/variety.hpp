// Polynomial systems over F_p: the variety V they cut out of [0,p)^r, exact
// point enumeration, and the declared invariants (n, d, delta) the moment
// statistics consume.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "boxlattice/ffgrid.hpp"

namespace boxlattice {

// coeff * x_1^e_1 * ... * x_r^e_r; coefficients are prime-independent
// integers, reduced mod p at evaluation time.
struct MonomialTerm {
  std::int64_t coeff = 0;
  std::vector<int> exps;

  int total_degree() const;
};

struct PolynomialSpec {
  std::vector<MonomialTerm> terms;

  int arity() const;  // number of variables (length of every exps)
  int total_degree() const;
  void validate(int expected_arity, bool require_nonconstant) const;
};

struct VarietySpec {
  std::string name;
  int r = 0;          // ambient dimension
  std::vector<PolynomialSpec> polys;
  int n = 0;          // declared dimension
  int d = 0;          // declared degree
  int delta = -1;     // declared singular-locus dimension of the katz sections

  // Degenerate systems (reducible unions, lines) are accepted for oracle use
  // but flagged so reports can mark them.
  bool degenerate_ok = false;

  void validate() const;
};

FieldElement evaluate_poly(const PolynomialSpec& poly, std::span<const FieldElement> point,
                           const Prime& p);

// The F_p-points of V, stored flat in deterministic lexicographic order.
class PointSet {
 public:
  PointSet(const Prime& p, int dims);

  const Prime& prime() const { return p_; }
  int dims() const { return dims_; }
  std::int64_t size() const { return static_cast<std::int64_t>(flat_.size()) / dims_; }
  std::span<const FieldElement> point(std::int64_t i) const {
    return {flat_.data() + i * dims_, static_cast<std::size_t>(dims_)};
  }
  void append(std::span<const FieldElement> coords);
  void append_raw(const std::vector<FieldElement>& flat_block);

 private:
  Prime p_;
  int dims_;
  std::vector<FieldElement> flat_;
};

inline constexpr std::int64_t kDefaultMaxCells = std::int64_t{1} << 27;

// Exhaustive scan of [0,p)^r with early rejection; the universal oracle for
// every counting path. Throws GuardError when p^r exceeds max_cells.
PointSet enumerate_points(const VarietySpec& spec, const Prime& p, int threads = 1,
                          std::int64_t max_cells = kDefaultMaxCells);

std::int64_t point_count(const VarietySpec& spec, const Prime& p, int threads = 1,
                         std::int64_t max_cells = kDefaultMaxCells);

// (N - p^n) / ((d-1)(d-2) p^{n-1/2}), with the degree factor dropped when
// d <= 2. A sanity signal, not an assertion.
double lang_weil_residual(const VarietySpec& spec, const Prime& p, std::int64_t n_points);

// Non-empty when N(V) deviates from p^n by more than 10x the residual scale,
// which usually means the declared (n, d) metadata is wrong.
std::optional<std::string> metadata_warning(const VarietySpec& spec, const Prime& p,
                                            std::int64_t n_points);

// JSON schema: { "name": str, "r": int, "n": int, "d": int, "delta": int,
//                "polys": [[{"coeff": int, "exps": [int,...]}, ...], ...] }
VarietySpec variety_from_json(const std::string& json_text);
VarietySpec load_variety_file(const std::string& path);

}  // namespace boxlattice
