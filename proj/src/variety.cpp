#include "boxlattice/variety.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace boxlattice {

int MonomialTerm::total_degree() const {
  int d = 0;
  for (int e : exps) d += e;
  return d;
}

int PolynomialSpec::arity() const {
  if (terms.empty()) throw Error("polynomial has no terms");
  return static_cast<int>(terms.front().exps.size());
}

int PolynomialSpec::total_degree() const {
  int d = 0;
  for (const auto& t : terms) d = std::max(d, t.total_degree());
  return d;
}

void PolynomialSpec::validate(int expected_arity, bool require_nonconstant) const {
  if (terms.empty()) throw Error("polynomial has no terms");
  for (const auto& t : terms) {
    if (static_cast<int>(t.exps.size()) != expected_arity) {
      throw Error("monomial arity " + std::to_string(t.exps.size()) + " != ambient " +
                  std::to_string(expected_arity));
    }
    for (int e : t.exps) {
      if (e < 0) throw Error("negative exponent");
    }
  }
  if (require_nonconstant && total_degree() < 1) {
    throw Error("defining polynomial must have total degree >= 1");
  }
}

void VarietySpec::validate() const {
  if (r < 2) throw Error("variety '" + name + "': ambient dimension r must be >= 2");
  if (polys.empty()) throw Error("variety '" + name + "': defining system must be nonempty");
  for (const auto& poly : polys) poly.validate(r, /*require_nonconstant=*/true);
  if (!(0 < n && n < r)) {
    throw Error("variety '" + name + "': declared dimension must satisfy 0 < n < r");
  }
  if (delta < -1 || (delta != -1 && delta > n - 2)) {
    throw Error("variety '" + name + "': delta must be -1 or in [0, n-2]");
  }
}

FieldElement evaluate_poly(const PolynomialSpec& poly, std::span<const FieldElement> point,
                           const Prime& p) {
  FieldElement acc = 0;
  for (const auto& term : poly.terms) {
    if (term.exps.size() != point.size()) {
      throw Error("evaluate_poly: point has " + std::to_string(point.size()) +
                  " coordinates, monomial expects " + std::to_string(term.exps.size()));
    }
    FieldElement v = p.reduce(term.coeff);
    for (std::size_t i = 0; i < point.size() && v != 0; ++i) {
      const int e = term.exps[i];
      if (e != 0) v = p.mul(v, p.pow(point[i], e));
    }
    acc = p.add(acc, v);
  }
  return acc;
}

PointSet::PointSet(const Prime& p, int dims) : p_(p), dims_(dims) {
  if (dims < 1) throw Error("point set needs at least one axis");
}

void PointSet::append(std::span<const FieldElement> coords) {
  if (static_cast<int>(coords.size()) != dims_) throw Error("point arity mismatch");
  flat_.insert(flat_.end(), coords.begin(), coords.end());
}

void PointSet::append_raw(const std::vector<FieldElement>& flat_block) {
  if (flat_block.size() % static_cast<std::size_t>(dims_) != 0) {
    throw Error("raw block size not a multiple of dims");
  }
  flat_.insert(flat_.end(), flat_block.begin(), flat_block.end());
}

PointSet enumerate_points(const VarietySpec& spec, const Prime& p, int threads,
                          std::int64_t max_cells) {
  spec.validate();
  const GridShape shape(p, spec.r);
  if (shape.cells() > max_cells) {
    throw GuardError("enumeration over " + std::to_string(shape.cells()) +
                     " cells exceeds the guard of " + std::to_string(max_cells));
  }

  const std::int64_t pv = p.value();
  const int r = spec.r;

  // Partition the outer axis; each chunk emits lexicographically ordered
  // points, and chunks concatenate in axis order, so the merge is order-free.
  std::vector<std::vector<FieldElement>> partial(static_cast<std::size_t>(pv));
  parallel_chunks(pv, threads, [&](std::int64_t lo, std::int64_t hi) {
    std::vector<FieldElement> coords(static_cast<std::size_t>(r), 0);
    for (std::int64_t first = lo; first < hi; ++first) {
      auto& out = partial[static_cast<std::size_t>(first)];
      coords[0] = first;
      std::fill(coords.begin() + 1, coords.end(), 0);
      while (true) {
        bool on_variety = true;
        for (const auto& poly : spec.polys) {
          if (evaluate_poly(poly, coords, p) != 0) {
            on_variety = false;
            break;
          }
        }
        if (on_variety) out.insert(out.end(), coords.begin(), coords.end());
        // odometer over axes 1..r-1, last axis fastest
        int axis = r - 1;
        while (axis >= 1) {
          if (++coords[static_cast<std::size_t>(axis)] < pv) break;
          coords[static_cast<std::size_t>(axis)] = 0;
          --axis;
        }
        if (axis == 0) break;
      }
    }
  });

  PointSet points(p, r);
  for (const auto& block : partial) points.append_raw(block);
  return points;
}

std::int64_t point_count(const VarietySpec& spec, const Prime& p, int threads,
                         std::int64_t max_cells) {
  return enumerate_points(spec, p, threads, max_cells).size();
}

namespace {

double residual_scale(const VarietySpec& spec, const Prime& p) {
  const double factor =
      spec.d > 2 ? static_cast<double>(spec.d - 1) * static_cast<double>(spec.d - 2) : 1.0;
  return factor * std::pow(static_cast<double>(p.value()), spec.n - 0.5);
}

}  // namespace

double lang_weil_residual(const VarietySpec& spec, const Prime& p, std::int64_t n_points) {
  const double expected = std::pow(static_cast<double>(p.value()), spec.n);
  return (static_cast<double>(n_points) - expected) / residual_scale(spec, p);
}

std::optional<std::string> metadata_warning(const VarietySpec& spec, const Prime& p,
                                            std::int64_t n_points) {
  const double expected = std::pow(static_cast<double>(p.value()), spec.n);
  const double deviation = std::abs(static_cast<double>(n_points) - expected);
  if (deviation <= 10.0 * residual_scale(spec, p)) return std::nullopt;
  std::ostringstream msg;
  msg << "variety '" << spec.name << "' at p=" << p.value() << ": N(V)=" << n_points
      << " deviates from p^n=" << expected << " by more than 10x the residual scale;"
      << " declared metadata (n=" << spec.n << ", d=" << spec.d << ") may be wrong";
  return msg.str();
}

namespace {

VarietySpec variety_from_parsed_json(const nlohmann::json& j) {
  VarietySpec spec;
  spec.name = j.at("name").get<std::string>();
  spec.r = j.at("r").get<int>();
  spec.n = j.at("n").get<int>();
  spec.d = j.at("d").get<int>();
  spec.delta = j.value("delta", -1);
  for (const auto& jpoly : j.at("polys")) {
    PolynomialSpec poly;
    for (const auto& jterm : jpoly) {
      MonomialTerm term;
      term.coeff = jterm.at("coeff").get<std::int64_t>();
      term.exps = jterm.at("exps").get<std::vector<int>>();
      poly.terms.push_back(std::move(term));
    }
    spec.polys.push_back(std::move(poly));
  }
  spec.validate();
  return spec;
}

}  // namespace

VarietySpec variety_from_json(const std::string& json_text) {
  try {
    return variety_from_parsed_json(nlohmann::json::parse(json_text));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("variety JSON: ") + e.what());
  }
}

VarietySpec load_variety_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open variety file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return variety_from_json(buf.str());
}

}  // namespace boxlattice
