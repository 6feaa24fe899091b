#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stoch {

/// A composition of n: a sequence of positive parts. Immutable once built.
class OrderedPartition {
 public:
  /// Throws DomainError when `parts` is empty or has a non-positive entry.
  explicit OrderedPartition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int weight() const { return weight_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int operator[](std::size_t i) const { return parts_[i]; }

  std::string to_string() const;

  friend bool operator==(const OrderedPartition&, const OrderedPartition&) = default;
  friend auto operator<=>(const OrderedPartition& a, const OrderedPartition& b) {
    return a.parts_ <=> b.parts_;
  }

 private:
  std::vector<int> parts_;
  int weight_ = 0;
};

/// All compositions of n (of length p when given), lexicographic in the parts.
std::vector<OrderedPartition> enumerate_ordered_partitions(int n, std::optional<int> p = std::nullopt);

/// Merges parts i and i+1 (0-based).
OrderedPartition contract_partition(const OrderedPartition& alpha, int i);

/// True iff consecutive blocks of `fine` sum, in order, to the parts of `coarse`.
bool refines(const OrderedPartition& coarse, const OrderedPartition& fine);

/// Cut points {a1, a1+a2, ...} below the weight, as a sorted list in [1, n-1].
std::vector<int> partition_to_subset(const OrderedPartition& alpha);
/// Inverse of partition_to_subset; `cuts` must be strictly increasing inside [1, n-1].
OrderedPartition subset_to_partition(int n, std::span<const int> cuts);

/// Concatenation of the parts of a sequence of partitions.
OrderedPartition concatenate(std::span<const OrderedPartition> pieces);

}  // namespace stoch
