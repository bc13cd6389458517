// Prime-field scalar arithmetic, additive character phases e_p(t), and
// row-major linear indexing of the grid [0,p)^dims.
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "boxlattice/common.hpp"

namespace boxlattice {

// A field element is an always-reduced representative in [0, p). Producers
// (parsers, evaluators, arithmetic helpers) reduce at the boundary;
// consumers may assume reducedness.
using FieldElement = std::int64_t;

class Prime {
 public:
  // Verifies primality by trial division. Accepts 2 <= p <= 2^31 - 1 so that
  // products of reduced residues stay inside int64.
  explicit Prime(std::int64_t p);

  std::int64_t value() const { return p_; }

  FieldElement reduce(std::int64_t t) const {
    std::int64_t m = t % p_;
    return m < 0 ? m + p_ : m;
  }
  FieldElement add(FieldElement a, FieldElement b) const {
    const std::int64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  FieldElement sub(FieldElement a, FieldElement b) const {
    const std::int64_t d = a - b;
    return d < 0 ? d + p_ : d;
  }
  FieldElement mul(FieldElement a, FieldElement b) const { return (a * b) % p_; }
  FieldElement pow(FieldElement base, std::int64_t exp) const;
  // Multiplicative inverse of a != 0 (Fermat).
  FieldElement inv(FieldElement a) const;

  // Representative s of t with |s| <= (p-1)/2.
  std::int64_t least_abs_residue(std::int64_t t) const {
    const FieldElement m = reduce(t);
    return m <= (p_ - 1) / 2 ? m : m - p_;
  }

  friend bool operator==(const Prime& a, const Prime& b) { return a.p_ == b.p_; }

 private:
  std::int64_t p_;
};

// Shape of the grid [0,p)^dims; construction fails if p^dims overflows int64.
class GridShape {
 public:
  GridShape(const Prime& p, int dims);

  const Prime& prime() const { return p_; }
  int dims() const { return dims_; }
  std::int64_t cells() const { return cells_; }

  friend bool operator==(const GridShape& a, const GridShape& b) {
    return a.p_ == b.p_ && a.dims_ == b.dims_;
  }

 private:
  Prime p_;
  int dims_;
  std::int64_t cells_;
};

// Row-major linear index, last axis fastest. Bijective onto [0, cells).
std::int64_t grid_index(std::span<const FieldElement> coords, const GridShape& shape);
std::vector<FieldElement> grid_coords(std::int64_t index, const GridShape& shape);

// e_p(t) = exp(2*pi*i*t/p); t is reduced mod p.
std::complex<double> ep_phase(std::int64_t t, const Prime& p);

// Table of the p roots of unity e_p(0..p-1), built once per prime. All bulk
// sums go through a table so repeated phases are bitwise identical.
class PhaseTable {
 public:
  explicit PhaseTable(const Prime& p);

  const Prime& prime() const { return p_; }
  std::complex<double> operator()(std::int64_t t) const {
    return table_[static_cast<std::size_t>(p_.reduce(t))];
  }

 private:
  Prime p_;
  std::vector<std::complex<double>> table_;
};

}  // namespace boxlattice
