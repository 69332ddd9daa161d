#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "nlc/simd/kernels.hpp"

namespace nlc::simd {

namespace {

Isa best_available() {
  const char* env = std::getenv("NLC_SIMD");
  if (env != nullptr) {
    const std::string v(env);
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2" && isa_available(Isa::avx2)) return Isa::avx2;
  }
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{best_available()};
  return isa;
}

}  // namespace

CloudView CloudView::slice(std::size_t begin, std::size_t end) const {
  CloudView v = *this;
  v.x = x ? x + begin : nullptr;
  v.y = y ? y + begin : nullptr;
  v.z = z ? z + begin : nullptr;
  v.n = end > begin ? end - begin : 0;
  return v;
}

const char* to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::scalar) return true;
#if defined(NLC_BUILD_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) throw std::invalid_argument(std::string("instruction set not available: ") + to_string(isa));
  active().store(isa, std::memory_order_relaxed);
}

const KernelTable& table_for(Isa isa) {
#if defined(NLC_BUILD_AVX2)
  if (isa == Isa::avx2) return avx2_table();
#endif
  (void)isa;
  return scalar_table();
}

double sum_piecewise(const CloudView& cloud, const Point& x, const PiecewiseView& profile) {
  return table_for(active_isa()).sum_piecewise(cloud, x, profile);
}

double sum_abs_diff_piecewise(const CloudView& cloud, const Point& a, const Point& b, const PiecewiseView& profile) {
  return table_for(active_isa()).sum_abs_diff_piecewise(cloud, a, b, profile);
}

double sum_power(const CloudView& cloud, const Point& x, double alpha, double cutoff_sq) {
  return table_for(active_isa()).sum_power(cloud, x, alpha, cutoff_sq);
}

double sum_abs_diff_power(const CloudView& cloud, const Point& a, const Point& b, double alpha) {
  return table_for(active_isa()).sum_abs_diff_power(cloud, a, b, alpha);
}

std::size_t count_within(const CloudView& cloud, const Point& x, double r_sq) {
  return table_for(active_isa()).count_within(cloud, x, r_sq);
}

}  // namespace nlc::simd
