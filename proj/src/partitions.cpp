#include "stoch/partitions.hpp"

#include <numeric>
#include <sstream>

#include "stoch/errors.hpp"

namespace stoch {

OrderedPartition::OrderedPartition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw DomainError("ordered partition must have at least one part");
  for (int part : parts_) {
    if (part < 1) throw DomainError("ordered partition parts must be positive");
    weight_ += part;
  }
}

std::string OrderedPartition::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i != 0) out << ',';
    out << parts_[i];
  }
  out << ')';
  return out.str();
}

namespace {

void compositions(int remaining, int slots_left, std::vector<int>& prefix, std::vector<OrderedPartition>& out) {
  if (remaining == 0) {
    if (slots_left <= 0) out.emplace_back(prefix);
    return;
  }
  if (slots_left == 0) return;
  // a later slot needs at least one unit each
  const int reserve = slots_left > 0 ? slots_left - 1 : 0;
  for (int part = 1; part <= remaining - reserve; ++part) {
    prefix.push_back(part);
    compositions(remaining - part, slots_left > 0 ? slots_left - 1 : slots_left, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<OrderedPartition> enumerate_ordered_partitions(int n, std::optional<int> p) {
  if (n < 1) throw DomainError("enumerate_ordered_partitions: n must be positive");
  if (p && (*p < 1 || *p > n)) throw DomainError("enumerate_ordered_partitions: need 1 <= p <= n");
  std::vector<OrderedPartition> out;
  std::vector<int> prefix;
  // slots_left < 0 means "any length"
  compositions(n, p ? *p : -1, prefix, out);
  return out;
}

OrderedPartition contract_partition(const OrderedPartition& alpha, int i) {
  if (i < 0 || i + 1 >= alpha.length()) {
    throw DomainError("contract_partition: index " + std::to_string(i) + " out of range for " + alpha.to_string());
  }
  std::vector<int> parts = alpha.parts();
  parts[static_cast<std::size_t>(i)] += parts[static_cast<std::size_t>(i) + 1];
  parts.erase(parts.begin() + i + 1);
  return OrderedPartition(std::move(parts));
}

bool refines(const OrderedPartition& coarse, const OrderedPartition& fine) {
  if (coarse.weight() != fine.weight()) throw DomainError("refines: partitions have different weights");
  std::size_t j = 0;
  for (int target : coarse.parts()) {
    int acc = 0;
    while (acc < target && j < fine.parts().size()) acc += fine[j++];
    if (acc != target) return false;
  }
  return j == fine.parts().size();
}

std::vector<int> partition_to_subset(const OrderedPartition& alpha) {
  std::vector<int> cuts;
  int sum = 0;
  for (std::size_t i = 0; i + 1 < alpha.parts().size(); ++i) {
    sum += alpha[i];
    cuts.push_back(sum);
  }
  return cuts;
}

OrderedPartition subset_to_partition(int n, std::span<const int> cuts) {
  if (n < 1) throw DomainError("subset_to_partition: n must be positive");
  std::vector<int> parts;
  int previous = 0;
  for (int cut : cuts) {
    if (cut <= previous || cut >= n) throw DomainError("subset_to_partition: cuts must increase inside [1, n-1]");
    parts.push_back(cut - previous);
    previous = cut;
  }
  parts.push_back(n - previous);
  return OrderedPartition(std::move(parts));
}

OrderedPartition concatenate(std::span<const OrderedPartition> pieces) {
  std::vector<int> parts;
  for (const auto& piece : pieces) parts.insert(parts.end(), piece.parts().begin(), piece.parts().end());
  return OrderedPartition(std::move(parts));
}

}  // namespace stoch
