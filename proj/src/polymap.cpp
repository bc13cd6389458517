#include "boxlattice/polymap.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace boxlattice {

void PolyMap::validate(int ambient_r) const {
  if (components.empty()) throw Error("polynomial map needs at least one component");
  for (const auto& g : components) g.validate(ambient_r, /*require_nonconstant=*/false);
}

std::vector<FieldElement> apply_map(const PolyMap& map, std::span<const FieldElement> point,
                                    const Prime& p) {
  std::vector<FieldElement> image;
  image.reserve(map.components.size());
  for (const auto& g : map.components) image.push_back(evaluate_poly(g, point, p));
  return image;
}

PointSet graph_points(const PointSet& points, const PolyMap& map) {
  const Prime& p = points.prime();
  map.validate(points.dims());
  const int dims = points.dims() + map.s();
  GridShape(p, dims);  // reject graphs whose ambient grid cannot be indexed
  PointSet graph(p, dims);
  std::vector<FieldElement> row(static_cast<std::size_t>(dims));
  for (std::int64_t i = 0; i < points.size(); ++i) {
    const auto z = points.point(i);
    std::copy(z.begin(), z.end(), row.begin());
    const auto gz = apply_map(map, z, p);
    std::copy(gz.begin(), gz.end(), row.begin() + points.dims());
    graph.append(row);
  }
  return graph;
}

std::int64_t joint_count(const PointSet& points, const PolyMap& map, const CyclicBox& box,
                         const CyclicBox& box2) {
  if (box.dims() != points.dims()) throw Error("joint_count: domain box dimension mismatch");
  if (box2.dims() != map.s()) throw Error("joint_count: image box dimension mismatch");
  const Prime& p = points.prime();
  std::int64_t count = 0;
  for (std::int64_t i = 0; i < points.size(); ++i) {
    const auto z = points.point(i);
    if (!box.contains(z)) continue;
    if (box2.contains(apply_map(map, z, p))) ++count;
  }
  return count;
}

CountField joint_sweep(const CountField& graph_indicator, const CyclicBox& box,
                       const CyclicBox& box2, int threads) {
  if (box.dims() + box2.dims() != graph_indicator.shape().dims()) {
    throw Error("joint_sweep: box dimensions do not add up to the graph's");
  }
  return sweep_counts(graph_indicator, box.product(box2), threads);
}

namespace {

// Reduced row-echelon basis of the row space, built incrementally so the
// full N x C matrix is never stored. C = 1 + r + s stays tiny.
class EchelonBasis {
 public:
  EchelonBasis(const Prime& p, int cols) : p_(p), cols_(cols) {}

  void insert(std::vector<FieldElement> row) {
    for (auto& basis_row : rows_) {
      const FieldElement c = row[static_cast<std::size_t>(basis_row.pivot)];
      if (c != 0) subtract_scaled(row, basis_row.values, c);
    }
    int pivot = -1;
    for (int j = 0; j < cols_; ++j) {
      if (row[static_cast<std::size_t>(j)] != 0) {
        pivot = j;
        break;
      }
    }
    if (pivot < 0) return;  // dependent on current basis
    const FieldElement scale = p_.inv(row[static_cast<std::size_t>(pivot)]);
    for (auto& v : row) v = p_.mul(v, scale);
    // keep the basis fully reduced above the new pivot as well
    for (auto& basis_row : rows_) {
      const FieldElement c = basis_row.values[static_cast<std::size_t>(pivot)];
      if (c != 0) subtract_scaled(basis_row.values, row, c);
    }
    rows_.push_back({pivot, std::move(row)});
    std::sort(rows_.begin(), rows_.end(),
              [](const Row& a, const Row& b) { return a.pivot < b.pivot; });
  }

  int rank() const { return static_cast<int>(rows_.size()); }

  // Kernel vector for the first non-pivot column (free var set to 1);
  // deterministic and nonzero whenever rank < cols.
  std::vector<FieldElement> kernel_vector() const {
    std::vector<bool> is_pivot(static_cast<std::size_t>(cols_), false);
    for (const auto& row : rows_) is_pivot[static_cast<std::size_t>(row.pivot)] = true;
    int free_col = -1;
    for (int j = 0; j < cols_; ++j) {
      if (!is_pivot[static_cast<std::size_t>(j)]) {
        free_col = j;
        break;
      }
    }
    if (free_col < 0) throw Error("kernel_vector called on a full-rank basis");
    std::vector<FieldElement> kernel(static_cast<std::size_t>(cols_), 0);
    kernel[static_cast<std::size_t>(free_col)] = 1;
    // each reduced basis row gives pivot_value = -row[free_col]
    for (const auto& row : rows_) {
      kernel[static_cast<std::size_t>(row.pivot)] =
          p_.sub(0, row.values[static_cast<std::size_t>(free_col)]);
    }
    return kernel;
  }

 private:
  struct Row {
    int pivot;
    std::vector<FieldElement> values;
  };

  void subtract_scaled(std::vector<FieldElement>& target,
                       const std::vector<FieldElement>& source, FieldElement factor) {
    for (std::size_t j = 0; j < target.size(); ++j) {
      target[j] = p_.sub(target[j], p_.mul(factor, source[j]));
    }
  }

  Prime p_;
  int cols_;
  std::vector<Row> rows_;
};

}  // namespace

IndependenceReport independence_rank(const PointSet& points, const PolyMap* map) {
  if (points.size() == 0) throw Error("independence_rank: the variety has no points");
  const Prime& p = points.prime();
  const int r = points.dims();
  const int s = map ? map->s() : 0;
  const int cols = 1 + r + s;

  EchelonBasis basis(p, cols);
  std::vector<FieldElement> row(static_cast<std::size_t>(cols));
  for (std::int64_t i = 0; i < points.size(); ++i) {
    const auto z = points.point(i);
    row[0] = 1;
    std::copy(z.begin(), z.end(), row.begin() + 1);
    if (map) {
      const auto gz = apply_map(*map, z, p);
      std::copy(gz.begin(), gz.end(), row.begin() + 1 + r);
    }
    basis.insert(row);
    if (basis.rank() == cols) break;
  }

  IndependenceReport report;
  report.rank = basis.rank();
  report.independent = report.rank == cols;
  if (!report.independent) {
    auto witness = basis.kernel_vector();
    // normalize so the first nonzero coefficient is 1
    for (const FieldElement c : witness) {
      if (c != 0) {
        const FieldElement scale = p.inv(c);
        for (auto& v : witness) v = p.mul(v, scale);
        break;
      }
    }
    report.witness = std::move(witness);
  }
  return report;
}

PolyMap map_from_json(const std::string& json_text, int ambient_r) {
  try {
    const auto j = nlohmann::json::parse(json_text);
    PolyMap map;
    for (const auto& jpoly : j.at("map")) {
      PolynomialSpec poly;
      for (const auto& jterm : jpoly) {
        MonomialTerm term;
        term.coeff = jterm.at("coeff").get<std::int64_t>();
        term.exps = jterm.at("exps").get<std::vector<int>>();
        poly.terms.push_back(std::move(term));
      }
      map.components.push_back(std::move(poly));
    }
    map.validate(ambient_r);
    return map;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("map JSON: ") + e.what());
  }
}

PolyMap load_map_file(const std::string& path, int ambient_r) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open map file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return map_from_json(buf.str(), ambient_r);
}

}  // namespace boxlattice
