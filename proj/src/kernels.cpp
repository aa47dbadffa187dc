#include "plagdet/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace plagdet::kernels {
namespace {

#ifndef PLAGDET_HAVE_AVX2
}  // namespace
namespace avx2 {
void ascii_lower(std::span<char> bytes) { scalar::ascii_lower(bytes); }
std::size_t common_prefix(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  return scalar::common_prefix(a, b);
}
void bm25_contrib(std::span<const double> tf, std::span<const double> norm, double weight,
                  double k1, std::span<double> out) {
  scalar::bm25_contrib(tf, norm, weight, k1, out);
}
}  // namespace avx2
namespace {
#endif

Isa probe() {
#if defined(PLAGDET_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Isa::Avx2;
#endif
  return Isa::Scalar;
}

Isa initial() {
  const char *force = std::getenv("PLAGDET_FORCE_SCALAR");
  if (force != nullptr && std::strcmp(force, "0") != 0 && *force != '\0') return Isa::Scalar;
  return probe();
}

std::atomic<Isa> g_isa{initial()};

}  // namespace

Isa active_isa() { return g_isa.load(std::memory_order_relaxed); }

Isa detected_isa() { return probe(); }

Isa select_isa(Isa isa) {
  if (isa == Isa::Avx2 && probe() != Isa::Avx2) isa = Isa::Scalar;
  g_isa.store(isa, std::memory_order_relaxed);
  return isa;
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void ascii_lower(std::span<char> bytes) {
  if (active_isa() == Isa::Avx2) return avx2::ascii_lower(bytes);
  scalar::ascii_lower(bytes);
}

std::size_t common_prefix(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  if (active_isa() == Isa::Avx2) return avx2::common_prefix(a, b);
  return scalar::common_prefix(a, b);
}

void bm25_contrib(std::span<const double> tf, std::span<const double> norm, double weight,
                  double k1, std::span<double> out) {
  if (active_isa() == Isa::Avx2) return avx2::bm25_contrib(tf, norm, weight, k1, out);
  scalar::bm25_contrib(tf, norm, weight, k1, out);
}

}  // namespace plagdet::kernels
