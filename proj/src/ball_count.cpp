#include "ball_count.hpp"

#include <algorithm>
#include <cmath>

namespace nlc::detail {

LineCounts::LineCounts(const IndicatorGrid& set)
    : dim_(set.dimension()), dims_(set.dims()), origin_(set.origin()), h_(set.spacing()) {
  n_ = dims_[dim_ - 1];
  const std::size_t lines = set.cell_count() / static_cast<std::size_t>(n_);
  prefix_.assign(lines * static_cast<std::size_t>(n_ + 1), 0);
  const auto occ = set.occupancy();
  for (std::size_t l = 0; l < lines; ++l) {
    std::uint32_t* p = prefix_.data() + l * static_cast<std::size_t>(n_ + 1);
    const std::uint8_t* o = occ.data() + l * static_cast<std::size_t>(n_);
    for (std::int64_t j = 0; j < n_; ++j) p[j + 1] = p[j] + (o[j] ? 1u : 0u);
  }
  first_.assign(lines, n_);
  last_.assign(lines, -1);
  for (std::size_t l = 0; l < lines; ++l) {
    const std::uint8_t* o = occ.data() + l * static_cast<std::size_t>(n_);
    for (std::int64_t j = 0; j < n_; ++j) {
      if (!o[j]) continue;
      first_[l] = std::min(first_[l], j);
      last_[l] = j;
    }
  }
}

bool LineCounts::inside(double partial, double x, double r_sq, std::int64_t j) const {
  const double d = (origin_[dim_ - 1] + (static_cast<double>(j) + 0.5) * h_) - x;
  return partial + d * d < r_sq;
}

LineCounts::Cover LineCounts::cover(std::size_t line, double partial, double x, double r_sq) const {
  const std::int64_t f = first_[line];
  const std::int64_t l = last_[line];
  if (l < f || !(partial < r_sq)) return Cover::none;
  // Chords are intervals, so both end cells inside means all of them are.
  if (inside(partial, x, r_sq, f) && inside(partial, x, r_sq, l)) return Cover::full;
  const double w = std::sqrt(r_sq - partial);
  const double o = origin_[dim_ - 1];
  if (x + w < o + static_cast<double>(f) * h_ - h_ || x - w > o + static_cast<double>(l + 1) * h_ + h_) return Cover::none;
  return Cover::partial;
}

LineCounts::Span LineCounts::span(double partial, double x, double r_sq) const {
  const double o = origin_[dim_ - 1];
  auto in = [&](std::int64_t j) { return inside(partial, x, r_sq, j); };
  // The admissible j form an interval around the centre nearest to x.
  std::int64_t seed = static_cast<std::int64_t>(std::llround((x - o) / h_ - 0.5));
  if (!in(seed)) {
    if (in(seed - 1)) {
      --seed;
    } else if (in(seed + 1)) {
      ++seed;
    } else {
      return {};
    }
  }
  const double w = std::sqrt(std::max(r_sq - partial, 0.0));
  std::int64_t lo = std::min(seed, static_cast<std::int64_t>(std::ceil((x - w - o) / h_ - 0.5)));
  std::int64_t hi = std::max(seed, static_cast<std::int64_t>(std::floor((x + w - o) / h_ - 0.5)));
  while (!in(lo)) ++lo;
  while (in(lo - 1)) --lo;
  while (!in(hi)) --hi;
  while (in(hi + 1)) ++hi;
  return {std::max<std::int64_t>(lo, 0), std::min<std::int64_t>(hi, n_ - 1)};
}

std::size_t LineCounts::count(std::size_t line, const Span& s) const {
  if (s.hi < s.lo) return 0;
  const std::uint32_t* p = prefix_.data() + line * static_cast<std::size_t>(n_ + 1);
  return p[s.hi + 1] - p[s.lo];
}

template <typename F>
void LineCounts::for_lines(const Point& a, const Point& b, double r_sq, const F& f) const {
  if (dim_ == 1) {
    f(std::size_t{0}, 0.0, 0.0);
    return;
  }
  const double r = std::sqrt(r_sq);
  auto range = [&](int k) {
    const double lo = std::min(a[k], b[k]) - r;
    const double hi = std::max(a[k], b[k]) + r;
    const auto i0 = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor((lo - origin_[k]) / h_ - 0.5)) - 1);
    const auto i1 = std::min<std::int64_t>(dims_[k] - 1, static_cast<std::int64_t>(std::ceil((hi - origin_[k]) / h_ - 0.5)) + 1);
    return std::pair{i0, i1};
  };
  auto sq = [&](int k, std::int64_t i, const Point& p) {
    const double d = (origin_[k] + (static_cast<double>(i) + 0.5) * h_) - p[k];
    return d * d;
  };
  const auto [a0, b0] = range(0);
  if (dim_ == 2) {
    for (std::int64_t i = a0; i <= b0; ++i) {
      const double pa = sq(0, i, a);
      const double pb = sq(0, i, b);
      if (pa < r_sq || pb < r_sq) f(static_cast<std::size_t>(i), pa, pb);
    }
    return;
  }
  const auto [a1, b1] = range(1);
  for (std::int64_t i = a0; i <= b0; ++i) {
    const double pa0 = sq(0, i, a);
    const double pb0 = sq(0, i, b);
    if (!(pa0 < r_sq || pb0 < r_sq)) continue;
    for (std::int64_t j = a1; j <= b1; ++j) {
      const double pa = pa0 + sq(1, j, a);
      const double pb = pb0 + sq(1, j, b);
      if (pa < r_sq || pb < r_sq) f(static_cast<std::size_t>(i * dims_[1] + j), pa, pb);
    }
  }
}

std::size_t LineCounts::ball(const Point& x, double r_sq) const {
  std::size_t total = 0;
  const int axis = dim_ - 1;
  for_lines(x, x, r_sq, [&](std::size_t line, double p, double) {
    switch (cover(line, p, x[axis], r_sq)) {
      case Cover::none: break;
      case Cover::full: total += count(line, {0, n_ - 1}); break;
      case Cover::partial: total += count(line, span(p, x[axis], r_sq)); break;
    }
  });
  return total;
}

std::size_t LineCounts::symmetric_difference(const Point& a, const Point& b, double r_sq) const {
  std::size_t total = 0;
  const int axis = dim_ - 1;
  for_lines(a, b, r_sq, [&](std::size_t line, double pa, double pb) {
    const Cover ca = cover(line, pa, a[axis], r_sq);
    const Cover cb = cover(line, pb, b[axis], r_sq);
    if (ca == cb && ca != Cover::partial) return;
    const Span all{0, n_ - 1};
    if (ca != Cover::partial && cb != Cover::partial) {
      total += count(line, all);
      return;
    }
    const Span sa = ca == Cover::full ? all : ca == Cover::none ? Span{} : span(pa, a[axis], r_sq);
    const Span sb = cb == Cover::full ? all : cb == Cover::none ? Span{} : span(pb, b[axis], r_sq);
    const Span both{std::max(sa.lo, sb.lo), std::min(sa.hi, sb.hi)};
    total += count(line, sa) + count(line, sb) - 2 * count(line, both);
  });
  return total;
}

}  // namespace nlc::detail
