#pragma once

#include "kusphere/int_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace kusphere {

enum class SmithVerify { Always, Sampled, Never };

struct SmithOptions {
  bool transforms = true;  // compute U, V
  bool inverses = true;    // also U^{-1}, V^{-1} (needs transforms)
  SmithVerify verify = SmithVerify::Sampled;
};

// U * M * V = D with D diagonal, diagonal entries d_1 | d_2 | ... nonnegative
// and zeros last.
struct SmithDecomposition {
  IntMatrix U, V, U_inv, V_inv, D;
  std::vector<BigInt> diagonal;  // length min(rows, cols)
  std::size_t rank = 0;
};

// Pivot rule: smallest nonzero absolute value, ties broken row-major.
SmithDecomposition smith_normal_form(const IntMatrix& m,
                                     const SmithOptions& options = {});

// Diagonal of the Smith form only. Splits the matrix into connected
// components of its row/column incidence graph first.
std::vector<BigInt> invariant_factors(const IntMatrix& m);

// Divisibility chain for a diagonal matrix with the given (nonzero) entries,
// ascending.
std::vector<BigInt> diagonal_chain(const std::vector<BigInt>& entries);

// Exponents of q in the invariant factors of a square matrix, computed by
// elimination over Z/q^N in machine words (q^N the largest power below
// 2^62). Returns nullopt when some invariant reaches q^N, which includes
// every singular matrix.
std::optional<std::vector<std::uint32_t>> local_invariant_valuations(const IntMatrix& m,
                                                                     std::int64_t q);

bool verify_smith(const IntMatrix& m, const SmithDecomposition& s);

}  // namespace kusphere
