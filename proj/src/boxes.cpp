#include "boxlattice/boxes.hpp"

#include <charconv>
#include <cmath>

namespace boxlattice {

CyclicBox::CyclicBox(const Prime& p, std::vector<CyclicInterval> intervals)
    : p_(p), intervals_(std::move(intervals)) {
  if (intervals_.empty()) throw Error("box needs at least one interval");
  for (auto& iv : intervals_) {
    if (iv.length < 1 || iv.length > p.value()) {
      throw Error("interval length " + std::to_string(iv.length) + " outside [1, p=" +
                  std::to_string(p.value()) + "]");
    }
    iv.start = p.reduce(iv.start);
  }
}

std::int64_t CyclicBox::volume() const {
  std::int64_t vol = 1;
  for (const auto& iv : intervals_) vol *= iv.length;  // <= p^dims, fits by GridShape-scale guards
  return vol;
}

CyclicBox CyclicBox::translate(std::span<const FieldElement> x) const {
  if (static_cast<int>(x.size()) != dims()) throw Error("translate: dimension mismatch");
  std::vector<CyclicInterval> shifted = intervals_;
  for (std::size_t i = 0; i < shifted.size(); ++i) {
    shifted[i].start = p_.add(shifted[i].start, p_.reduce(x[i]));
  }
  return CyclicBox(p_, std::move(shifted));
}

bool CyclicBox::contains(std::span<const FieldElement> point) const {
  if (static_cast<int>(point.size()) != dims()) throw Error("contains: dimension mismatch");
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (p_.sub(p_.reduce(point[i]), intervals_[i].start) >= intervals_[i].length) return false;
  }
  return true;
}

CyclicBox CyclicBox::product(const CyclicBox& other) const {
  if (!(p_ == other.p_)) throw Error("product of boxes over different primes");
  std::vector<CyclicInterval> both = intervals_;
  both.insert(both.end(), other.intervals_.begin(), other.intervals_.end());
  return CyclicBox(p_, std::move(both));
}

std::int64_t count_in_box(const PointSet& points, const CyclicBox& box) {
  if (points.dims() != box.dims()) throw Error("count_in_box: dimension mismatch");
  std::int64_t count = 0;
  for (std::int64_t i = 0; i < points.size(); ++i) {
    if (box.contains(points.point(i))) ++count;
  }
  return count;
}

double expected_count(std::int64_t n_points, std::int64_t volume, const GridShape& shape) {
  return static_cast<double>(static_cast<long double>(n_points) *
                             static_cast<long double>(volume) /
                             static_cast<long double>(shape.cells()));
}

double expected_count(std::int64_t n_points, const CyclicBox& box) {
  return expected_count(n_points, box.volume(), GridShape(box.prime(), box.dims()));
}

namespace {

std::int64_t parse_length_token(const std::string& tok, const Prime& p) {
  if (tok == "p") return p.value();
  if (tok == "sqrtp") {
    const auto root = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(p.value()))));
    return std::min(root, p.value());
  }
  if (tok == "halfp") return (p.value() - 1) / 2;
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw Error("bad box length '" + tok + "'");
  }
  return v;
}

std::int64_t parse_int_token(const std::string& tok) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw Error("bad box start '" + tok + "'");
  }
  return v;
}

}  // namespace

CyclicBox parse_box(const std::string& spec, const Prime& p) {
  if (spec.empty()) throw Error("empty box spec");
  std::vector<CyclicInterval> intervals;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const std::size_t comma = spec.find(',', pos);
    const std::string field =
        spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (field.empty()) throw Error("empty interval in box spec '" + spec + "'");
    CyclicInterval iv;
    const std::size_t colon = field.find(':');
    if (colon == std::string::npos) {
      iv.start = 0;
      iv.length = parse_length_token(field, p);
    } else {
      iv.start = p.reduce(parse_int_token(field.substr(0, colon)));
      iv.length = parse_length_token(field.substr(colon + 1), p);
    }
    intervals.push_back(iv);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return CyclicBox(p, std::move(intervals));
}

}  // namespace boxlattice
