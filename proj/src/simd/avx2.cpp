// AVX2 variants of the dense cell loops; compiled with -mavx2 only and
// reached through the runtime dispatcher.

#include <immintrin.h>

#include <cmath>
#include <cstdint>

#include "nlc/simd/kernels.hpp"

namespace nlc::simd {

namespace {

constexpr std::size_t kLanes = 4;

inline __m256d dist_sq4(const CloudView& c, std::size_t i, const __m256d px, const __m256d py, const __m256d pz) {
  const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(c.x + i), px);
  __m256d s = _mm256_mul_pd(dx, dx);
  if (c.dim > 1) {
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(c.y + i), py);
    s = _mm256_add_pd(s, _mm256_mul_pd(dy, dy));
  }
  if (c.dim > 2) {
    const __m256d dz = _mm256_sub_pd(_mm256_loadu_pd(c.z + i), pz);
    s = _mm256_add_pd(s, _mm256_mul_pd(dz, dz));
  }
  return s;
}

inline double dist_sq1(const CloudView& c, std::size_t i, const Point& p) {
  const double dx = c.x[i] - p[0];
  double s = dx * dx;
  if (c.dim > 1) {
    const double dy = c.y[i] - p[1];
    s = s + dy * dy;
  }
  if (c.dim > 2) {
    const double dz = c.z[i] - p[2];
    s = s + dz * dz;
  }
  return s;
}

inline double hsum(__m256d v) {
  alignas(32) double lane[kLanes];
  _mm256_store_pd(lane, v);
  return (lane[0] + lane[1]) + (lane[2] + lane[3]);
}

inline __m256d abs4(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

struct Broadcast {
  __m256d x, y, z;
  explicit Broadcast(const Point& p)
      : x(_mm256_set1_pd(p[0])), y(_mm256_set1_pd(p[1])), z(_mm256_set1_pd(p[2])) {}
};

inline __m256d piecewise4(__m256d d2, const PiecewiseView& f) {
  // Outermost piece first so inner pieces overwrite it.
  __m256d val = _mm256_setzero_pd();
  for (std::size_t k = f.radii_sq.size(); k-- > 0;) {
    const __m256d inside = _mm256_cmp_pd(d2, _mm256_set1_pd(f.radii_sq[k]), _CMP_LT_OQ);
    val = _mm256_blendv_pd(val, _mm256_set1_pd(f.values[k]), inside);
  }
  return val;
}

inline double piecewise1(double d2, const PiecewiseView& f) {
  for (std::size_t k = 0; k < f.radii_sq.size(); ++k) {
    if (d2 < f.radii_sq[k]) return f.values[k];
  }
  return 0.0;
}

double sum_piecewise_avx2(const CloudView& c, const Point& x, const PiecewiseView& f) {
  const Broadcast p(x);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= c.n; i += kLanes) acc = _mm256_add_pd(acc, piecewise4(dist_sq4(c, i, p.x, p.y, p.z), f));
  double sum = hsum(acc);
  for (; i < c.n; ++i) sum += piecewise1(dist_sq1(c, i, x), f);
  return sum;
}

double sum_abs_diff_piecewise_avx2(const CloudView& c, const Point& a, const Point& b, const PiecewiseView& f) {
  const Broadcast pa(a);
  const Broadcast pb(b);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= c.n; i += kLanes) {
    const __m256d va = piecewise4(dist_sq4(c, i, pa.x, pa.y, pa.z), f);
    const __m256d vb = piecewise4(dist_sq4(c, i, pb.x, pb.y, pb.z), f);
    acc = _mm256_add_pd(acc, abs4(_mm256_sub_pd(va, vb)));
  }
  double sum = hsum(acc);
  for (; i < c.n; ++i) sum += std::abs(piecewise1(dist_sq1(c, i, a), f) - piecewise1(dist_sq1(c, i, b), f));
  return sum;
}

// d^(-alpha) from d^2 for 2*alpha = m a small integer: q = d^(-1/2), then q^m.
inline __m256d half_power4(__m256d d2, int m) {
  const __m256d q = _mm256_div_pd(_mm256_set1_pd(1.0), _mm256_sqrt_pd(_mm256_sqrt_pd(d2)));
  __m256d r = q;
  for (int k = 1; k < m; ++k) r = _mm256_mul_pd(r, q);
  return r;
}

inline int half_integer_exponent(double alpha) {
  const double m = 2.0 * alpha;
  if (m >= 1.0 && m <= 12.0 && m == std::floor(m)) return static_cast<int>(m);
  return 0;
}

inline __m256d power4(__m256d d2, double alpha, int m) {
  if (m > 0) return half_power4(d2, m);
  alignas(32) double lane[kLanes];
  _mm256_store_pd(lane, d2);
  for (double& v : lane) v = std::pow(v, -0.5 * alpha);
  return _mm256_load_pd(lane);
}

inline double power1(double d2, double alpha, int m) {
  if (m > 0) {
    const double q = 1.0 / std::sqrt(std::sqrt(d2));
    double r = q;
    for (int k = 1; k < m; ++k) r *= q;
    return r;
  }
  return std::pow(d2, -0.5 * alpha);
}

double sum_power_avx2(const CloudView& c, const Point& x, double alpha, double cutoff_sq) {
  const Broadcast p(x);
  const int m = half_integer_exponent(alpha);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d cut = _mm256_set1_pd(cutoff_sq);
  __m256d acc = zero;
  std::size_t i = 0;
  for (; i + kLanes <= c.n; i += kLanes) {
    const __m256d d2 = dist_sq4(c, i, p.x, p.y, p.z);
    const __m256d keep = _mm256_and_pd(_mm256_cmp_pd(d2, zero, _CMP_GT_OQ), _mm256_cmp_pd(d2, cut, _CMP_LT_OQ));
    // Masked-out lanes evaluate at 1 to stay finite, then contribute zero.
    const __m256d safe = _mm256_blendv_pd(one, d2, keep);
    acc = _mm256_add_pd(acc, _mm256_and_pd(power4(safe, alpha, m), keep));
  }
  double sum = hsum(acc);
  for (; i < c.n; ++i) {
    const double d2 = dist_sq1(c, i, x);
    if (d2 > 0.0 && d2 < cutoff_sq) sum += power1(d2, alpha, m);
  }
  return sum;
}

double sum_abs_diff_power_avx2(const CloudView& c, const Point& a, const Point& b, double alpha) {
  const Broadcast pa(a);
  const Broadcast pb(b);
  const int m = half_integer_exponent(alpha);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d acc = zero;
  std::size_t i = 0;
  for (; i + kLanes <= c.n; i += kLanes) {
    const __m256d da = dist_sq4(c, i, pa.x, pa.y, pa.z);
    const __m256d db = dist_sq4(c, i, pb.x, pb.y, pb.z);
    const __m256d keep = _mm256_and_pd(_mm256_cmp_pd(da, zero, _CMP_GT_OQ), _mm256_cmp_pd(db, zero, _CMP_GT_OQ));
    const __m256d va = power4(_mm256_blendv_pd(one, da, keep), alpha, m);
    const __m256d vb = power4(_mm256_blendv_pd(one, db, keep), alpha, m);
    acc = _mm256_add_pd(acc, _mm256_and_pd(abs4(_mm256_sub_pd(va, vb)), keep));
  }
  double sum = hsum(acc);
  for (; i < c.n; ++i) {
    const double da = dist_sq1(c, i, a);
    const double db = dist_sq1(c, i, b);
    if (da > 0.0 && db > 0.0) sum += std::abs(power1(da, alpha, m) - power1(db, alpha, m));
  }
  return sum;
}

std::size_t count_within_avx2(const CloudView& c, const Point& x, double r_sq) {
  const Broadcast p(x);
  const __m256d r2 = _mm256_set1_pd(r_sq);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + kLanes <= c.n; i += kLanes) {
    const __m256d inside = _mm256_cmp_pd(dist_sq4(c, i, p.x, p.y, p.z), r2, _CMP_LT_OQ);
    count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(inside))));
  }
  for (; i < c.n; ++i) count += dist_sq1(c, i, x) < r_sq ? 1 : 0;
  return count;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{sum_piecewise_avx2, sum_abs_diff_piecewise_avx2, sum_power_avx2,
                                 sum_abs_diff_power_avx2, count_within_avx2};
  return table;
}

}  // namespace nlc::simd
