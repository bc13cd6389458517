#include "boxlattice/sweep.hpp"

#include <algorithm>
#include <cmath>

namespace boxlattice {

CountField::CountField(const GridShape& shape) : shape_(shape) {
  counts_.assign(static_cast<std::size_t>(shape.cells()), 0);
}

int128_t CountField::total() const {
  int128_t sum = 0;
  for (const std::int64_t v : counts_) sum += v;
  return sum;
}

int128_t CountField::total_squares() const {
  int128_t sum = 0;
  for (const std::int64_t v : counts_) sum += static_cast<int128_t>(v) * v;
  return sum;
}

CountField indicator_field(const PointSet& points, std::int64_t max_cells) {
  const GridShape shape(points.prime(), points.dims());
  if (shape.cells() > max_cells) {
    throw GuardError("indicator over " + std::to_string(shape.cells()) +
                     " cells exceeds the guard of " + std::to_string(max_cells));
  }
  CountField field(shape);
  for (std::int64_t i = 0; i < points.size(); ++i) {
    field[grid_index(points.point(i), shape)] = 1;
  }
  return field;
}

CountField sweep_counts(const CountField& indicator, const CyclicBox& box, int threads) {
  const GridShape& shape = indicator.shape();
  if (box.dims() != shape.dims() || !(box.prime() == shape.prime())) {
    throw Error("sweep_counts: box does not match the field's grid");
  }
  const std::int64_t p = shape.prime().value();

  CountField field(shape);
  std::copy(indicator.data(), indicator.data() + shape.cells(), field.data());

  // One pass per axis. After pass a, entry x holds the window sum of the
  // previous pass over m_a in I_a of x_a + m_a; composing all passes yields
  // sum over m in B of indicator(x + m).
  std::int64_t stride = shape.cells();
  for (int axis = 0; axis < shape.dims(); ++axis) {
    stride /= p;                               // stride of this axis
    const std::int64_t block = stride * p;     // span of one full cycle
    const std::int64_t n_lines = shape.cells() / p;
    const std::int64_t start = box.interval(axis).start;
    const std::int64_t len = box.interval(axis).length;

    parallel_chunks(n_lines, threads, [&](std::int64_t lo, std::int64_t hi) {
      std::vector<std::int64_t> line(static_cast<std::size_t>(p));
      for (std::int64_t li = lo; li < hi; ++li) {
        const std::int64_t outer = li / stride;
        const std::int64_t inner = li % stride;
        const std::int64_t base = outer * block + inner;
        std::int64_t* cells = field.data();
        for (std::int64_t t = 0; t < p; ++t) {
          line[static_cast<std::size_t>(t)] = cells[base + t * stride];
        }
        // rolling cyclic window of length len anchored at offset start
        std::int64_t window = 0;
        for (std::int64_t j = 0; j < len; ++j) {
          window += line[static_cast<std::size_t>((start + j) % p)];
        }
        for (std::int64_t t = 0; t < p; ++t) {
          cells[base + t * stride] = window;
          window -= line[static_cast<std::size_t>((t + start) % p)];
          window += line[static_cast<std::size_t>((t + start + len) % p)];
        }
      }
    });
  }
  return field;
}

CountField sweep_counts_bruteforce(const PointSet& points, const CyclicBox& box,
                                   std::int64_t max_cells) {
  const GridShape shape(points.prime(), points.dims());
  if (shape.cells() > max_cells) {
    throw GuardError("brute-force sweep over " + std::to_string(shape.cells()) +
                     " cells exceeds the guard of " + std::to_string(max_cells));
  }
  if (box.dims() != points.dims()) throw Error("sweep_counts_bruteforce: dimension mismatch");
  CountField field(shape);
  std::vector<FieldElement> x(static_cast<std::size_t>(shape.dims()), 0);
  const std::int64_t p = shape.prime().value();
  for (std::int64_t idx = 0; idx < shape.cells(); ++idx) {
    field[idx] = count_in_box(points, box.translate(x));
    for (int axis = shape.dims() - 1; axis >= 0; --axis) {
      if (++x[static_cast<std::size_t>(axis)] < p) break;
      x[static_cast<std::size_t>(axis)] = 0;
    }
  }
  return field;
}

namespace {

long double int128_to_ld(int128_t v) { return static_cast<long double>(v); }

}  // namespace

double second_moment(const CountField& field, double expected) {
  const int128_t total = field.total();
  const std::int64_t cells = field.size();
  const double mean = static_cast<double>(int128_to_ld(total) / cells);
  if (std::abs(mean - expected) > 1e-6 * (1.0 + std::abs(expected))) {
    throw Error("second_moment: expected value " + std::to_string(expected) +
                " is not the field mean " + std::to_string(mean));
  }
  // Sum (N_x - mu)^2 = (cells * Sum N_x^2 - total^2) / cells, all of it
  // exact in 128-bit integers; one extended-precision division at the end.
  const int128_t numerator =
      static_cast<int128_t>(cells) * field.total_squares() - total * total;
  return static_cast<double>(int128_to_ld(numerator) / cells);
}

double second_moment_direct(const CountField& field, double expected) {
  KahanSum acc;
  for (std::int64_t i = 0; i < field.size(); ++i) {
    const double dev = static_cast<double>(field[i]) - expected;
    acc.add(dev * dev);
  }
  return acc.value();
}

double moment_ratio(double second_moment_value, const Prime& p, int n, int delta,
                    std::int64_t vol) {
  const double denom =
      std::pow(static_cast<double>(p.value()), n + 1 + delta) * static_cast<double>(vol);
  return second_moment_value / denom;
}

ExceptionalStats exceptional_set(const CountField& field, double expected, double epsilon) {
  if (epsilon <= 0) throw Error("exceptional_set: epsilon must be positive");
  ExceptionalStats stats;
  if (expected == 0.0) {
    stats.count = nonempty_translate_count(field);
  } else {
    const double threshold = epsilon * expected;
    for (std::int64_t i = 0; i < field.size(); ++i) {
      if (std::abs(static_cast<double>(field[i]) - expected) > threshold) ++stats.count;
    }
  }
  stats.fraction = static_cast<double>(stats.count) / static_cast<double>(field.size());
  return stats;
}

double zero_fraction(const CountField& field) {
  std::int64_t zeros = 0;
  for (std::int64_t i = 0; i < field.size(); ++i) {
    if (field[i] == 0) ++zeros;
  }
  return static_cast<double>(zeros) / static_cast<double>(field.size());
}

std::int64_t nonempty_translate_count(const CountField& field) {
  std::int64_t nonempty = 0;
  for (std::int64_t i = 0; i < field.size(); ++i) {
    if (field[i] > 0) ++nonempty;
  }
  return nonempty;
}

TranslateLattice lattice_sample(const CyclicBox& box, const Prime& p) {
  const std::int64_t pv = p.value();
  TranslateLattice lattice;
  lattice.dims = box.dims();

  // Per-axis values a*L mod p for 0 <= a <= floor(p/L); duplicates (which
  // arise only when L divides p, i.e. L = 1 or L = p) keep the first
  // occurrence and drop the wrapped one.
  struct AxisValue {
    FieldElement x;
    bool boundary;
  };
  std::vector<std::vector<AxisValue>> axes;
  for (int a = 0; a < box.dims(); ++a) {
    const std::int64_t len = box.interval(a).length;
    lattice.steps.push_back(len);
    const std::int64_t top = pv / len;
    std::vector<AxisValue> values;
    for (std::int64_t i = 0; i <= top; ++i) {
      const FieldElement x = p.reduce(i * len);
      const bool dup =
          std::any_of(values.begin(), values.end(), [x](const AxisValue& v) { return v.x == x; });
      if (!dup) values.push_back({x, i == top});
    }
    axes.push_back(std::move(values));
  }

  std::vector<std::size_t> pick(static_cast<std::size_t>(box.dims()), 0);
  while (true) {
    bool boundary = false;
    for (int a = 0; a < box.dims(); ++a) {
      const AxisValue& v = axes[static_cast<std::size_t>(a)][pick[static_cast<std::size_t>(a)]];
      lattice.flat_points.push_back(v.x);
      boundary = boundary || v.boundary;
    }
    lattice.boundary.push_back(boundary ? 1 : 0);
    int axis = box.dims() - 1;
    while (axis >= 0) {
      auto& idx = pick[static_cast<std::size_t>(axis)];
      if (++idx < axes[static_cast<std::size_t>(axis)].size()) break;
      idx = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return lattice;
}

MomentReport analyze_field(const CountField& field, const VarietySpec& spec,
                           std::int64_t n_points, std::int64_t vol_box, std::int64_t vol_box2,
                           double epsilon) {
  MomentReport report;
  report.p = field.shape().prime().value();
  report.r = spec.r;
  report.s = field.shape().dims() - spec.r;
  report.n = spec.n;
  report.delta = spec.delta;
  report.vol_box = vol_box;
  report.vol_box2 = vol_box2;
  report.n_points = n_points;
  const std::int64_t joint_vol = vol_box * std::max<std::int64_t>(vol_box2, 1);
  report.expected = expected_count(n_points, joint_vol, field.shape());
  report.second_moment = second_moment(field, report.expected);
  report.bound_ratio =
      moment_ratio(report.second_moment, field.shape().prime(), spec.n, spec.delta, joint_vol);
  report.epsilon = epsilon;
  report.exceptional_fraction = exceptional_set(field, report.expected, epsilon).fraction;
  report.zero_fraction = zero_fraction(field);
  report.nonempty_translates = nonempty_translate_count(field);
  return report;
}

void check_mass_invariant(const CountField& field, std::int64_t n_points, std::int64_t vol_box,
                          std::int64_t vol_box2) {
  const int128_t expected_mass = static_cast<int128_t>(n_points) * vol_box *
                                 std::max<std::int64_t>(vol_box2, 1);
  if (field.total() != expected_mass) {
    throw Error("mass invariant violated: sum of translate counts != N * vol");
  }
}

}  // namespace boxlattice
