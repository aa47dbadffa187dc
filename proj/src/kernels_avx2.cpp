#include <immintrin.h>

#include <algorithm>
#include <bit>

#include "plagdet/kernels.hpp"

namespace plagdet::kernels::avx2 {

void ascii_lower(std::span<char> bytes) {
  const __m256i lo = _mm256_set1_epi8('A' - 1);
  const __m256i hi = _mm256_set1_epi8('Z' + 1);
  const __m256i delta = _mm256_set1_epi8('a' - 'A');
  std::size_t i = 0;
  char *p = bytes.data();
  for (; i + 32 <= bytes.size(); i += 32) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(p + i));
    // Signed compares: bytes >= 0x80 are negative and never in range.
    __m256i upper = _mm256_and_si256(_mm256_cmpgt_epi8(v, lo), _mm256_cmpgt_epi8(hi, v));
    v = _mm256_add_epi8(v, _mm256_and_si256(upper, delta));
    _mm256_storeu_si256(reinterpret_cast<__m256i *>(p + i), v);
  }
  scalar::ascii_lower(bytes.subspan(i));
}

std::size_t common_prefix(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(a.data() + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i *>(b.data() + i));
    auto eq = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(va, vb)));
    if (eq != 0xffffffffu) return i + static_cast<std::size_t>(std::countr_one(eq));
  }
  return i + scalar::common_prefix(a.subspan(i, n - i), b.subspan(i, n - i));
}

void bm25_contrib(std::span<const double> tf, std::span<const double> norm, double weight,
                  double k1, std::span<double> out) {
  const double k1p1 = k1 + 1.0;
  const __m256d vw = _mm256_set1_pd(weight);
  const __m256d vk1 = _mm256_set1_pd(k1);
  const __m256d vk1p1 = _mm256_set1_pd(k1p1);
  std::size_t i = 0;
  for (; i + 4 <= tf.size(); i += 4) {
    __m256d t = _mm256_loadu_pd(tf.data() + i);
    __m256d nrm = _mm256_loadu_pd(norm.data() + i);
    __m256d num = _mm256_mul_pd(t, vk1p1);
    __m256d den = _mm256_add_pd(t, _mm256_mul_pd(vk1, nrm));
    _mm256_storeu_pd(out.data() + i, _mm256_div_pd(_mm256_mul_pd(vw, num), den));
  }
  scalar::bm25_contrib(tf.subspan(i), norm.subspan(i), weight, k1, out.subspan(i));
}

}  // namespace plagdet::kernels::avx2
