#include <algorithm>

#include "plagdet/kernels.hpp"

namespace plagdet::kernels::scalar {

void ascii_lower(std::span<char> bytes) {
  for (char &c : bytes)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + ('a' - 'A'));
}

std::size_t common_prefix(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
  std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

void bm25_contrib(std::span<const double> tf, std::span<const double> norm, double weight,
                  double k1, std::span<double> out) {
  const double k1p1 = k1 + 1.0;
  for (std::size_t i = 0; i < tf.size(); ++i)
    out[i] = weight * (tf[i] * k1p1) / (tf[i] + k1 * norm[i]);
}

}  // namespace plagdet::kernels::scalar
