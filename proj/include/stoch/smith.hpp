#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stoch/arith.hpp"
#include "stoch/exact_matrix.hpp"

namespace stoch {

/// Nonzero diagonal of the Smith normal form: positive d_1 | d_2 | ... | d_r, r = rank.
std::vector<BigInt> smith_diagonal(IntMatrix m);

struct InvariantFactors {
  std::size_t rank = 0;
  /// Invariant factors greater than 1, ascending.
  std::vector<BigInt> torsion;
};

/// Column-sparse integer matrix with small entries, the shape boundary maps come in.
struct SparseIntMatrix {
  struct Entry {
    std::uint32_t row;
    std::int64_t value;
  };
  std::size_t rows = 0;
  /// Each column sorted by row, without zeros.
  std::vector<std::vector<Entry>> columns;
};

/// Rank and torsion of a sparse integer matrix.
///
/// Unit pivots are eliminated first (cheapest Markowitz cost first, so free
/// faces go before anything that causes fill-in); whatever survives is handed
/// to smith_diagonal. Arithmetic runs in checked 64-bit and restarts in
/// arbitrary precision on overflow.
InvariantFactors invariant_factors(const SparseIntMatrix& m);

/// Outcome of a left-to-right column reduction in which every pivot is a unit.
struct UnitReduction {
  std::size_t rank = 0;
  /// pivot_row[r] is set when some reduced column ends at row r.
  std::vector<char> pivot_rows;
};

/// Reduces columns left to right, clearing the lowest entry of each column against
/// earlier columns ending at the same row. Columns flagged in `skip` are taken to be
/// known to reduce to zero. Gives up (nullopt) as soon as a pivot is not +-1 or an
/// entry leaves 64-bit range; otherwise the nonzero invariant factors are all 1.
std::optional<UnitReduction> reduce_with_unit_pivots(const SparseIntMatrix& m,
                                                     const std::vector<char>* skip = nullptr);

}  // namespace stoch
