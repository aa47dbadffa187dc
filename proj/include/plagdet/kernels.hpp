#pragma once

// Data-parallel inner loops with a scalar reference and SIMD variants. The
// active implementation is chosen once from CPUID and may be pinned for
// testing. Every variant must produce bit-identical results to the scalar
// reference.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace plagdet::kernels {

enum class Isa { Scalar, Avx2 };

Isa active_isa();
// Best ISA this CPU and build support.
Isa detected_isa();
// Pins the implementation; falls back to Scalar if `isa` is unavailable.
// Returns the ISA actually selected.
Isa select_isa(Isa isa);
std::string_view isa_name(Isa isa);

// ASCII A-Z to a-z in place; other bytes untouched.
void ascii_lower(std::span<char> bytes);

// Length of the common prefix of a and b, at most min(a.size(), b.size()).
std::size_t common_prefix(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);

// Okapi BM25 term contributions for one postings list:
//   out[i] = weight * tf[i] * (k1 + 1) / (tf[i] + k1 * norm[i])
// where norm[i] = 1 - b + b * len / avg_len has been precomputed per document.
void bm25_contrib(std::span<const double> tf, std::span<const double> norm, double weight,
                  double k1, std::span<double> out);

// Dispatch table entry points, exposed so tests can compare variants directly.
namespace scalar {
void ascii_lower(std::span<char> bytes);
std::size_t common_prefix(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
void bm25_contrib(std::span<const double> tf, std::span<const double> norm, double weight,
                  double k1, std::span<double> out);
}  // namespace scalar

namespace avx2 {
void ascii_lower(std::span<char> bytes);
std::size_t common_prefix(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b);
void bm25_contrib(std::span<const double> tf, std::span<const double> norm, double weight,
                  double k1, std::span<double> out);
}  // namespace avx2

}  // namespace plagdet::kernels
