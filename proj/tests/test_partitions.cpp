#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "stoch/arith.hpp"
#include "stoch/errors.hpp"
#include "stoch/partitions.hpp"

using namespace stoch;

namespace {

OrderedPartition op(std::vector<int> parts) { return OrderedPartition(std::move(parts)); }

// every composition of n, built from the 2^(n-1) cut patterns
std::vector<OrderedPartition> compositions_by_bits(int n) {
  std::vector<OrderedPartition> out;
  for (unsigned mask = 0; mask < (1U << (n - 1)); ++mask) {
    std::vector<int> parts{1};
    for (int gap = 0; gap < n - 1; ++gap) {
      if (mask >> gap & 1U) {
        parts.push_back(1);
      } else {
        ++parts.back();
      }
    }
    out.push_back(op(parts));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// coarse is reachable from fine by merging adjacent parts
bool reachable_by_contraction(const OrderedPartition& coarse, const OrderedPartition& fine) {
  if (coarse == fine) return true;
  for (int i = 0; i + 1 < fine.length(); ++i) {
    if (reachable_by_contraction(coarse, contract_partition(fine, i))) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("ordered partition basics") {
  const auto a = op({2, 1, 3});
  CHECK(a.weight() == 6);
  CHECK(a.length() == 3);
  CHECK(a.to_string() == "(2,1,3)");
  CHECK_THROWS_AS(op({}), DomainError);
  CHECK_THROWS_AS(op({1, 0}), DomainError);
  CHECK_THROWS_AS(op({-1, 2}), DomainError);
}

TEST_CASE("enumeration of small weights") {
  const auto three = enumerate_ordered_partitions(3);
  REQUIRE(three.size() == 4);
  CHECK(three[0] == op({1, 1, 1}));
  CHECK(three[1] == op({1, 2}));
  CHECK(three[2] == op({2, 1}));
  CHECK(three[3] == op({3}));
  CHECK(enumerate_ordered_partitions(1) == std::vector{op({1})});
  CHECK(enumerate_ordered_partitions(5, 2).size() == 4);
  CHECK_THROWS_AS(enumerate_ordered_partitions(0), DomainError);
  CHECK_THROWS_AS(enumerate_ordered_partitions(3, 4), DomainError);
  CHECK_THROWS_AS(enumerate_ordered_partitions(3, 0), DomainError);
}

TEST_CASE("enumeration agrees with cut patterns and binomial counts") {
  for (int n = 1; n <= 10; ++n) {
    const auto all = enumerate_ordered_partitions(n);
    CHECK(std::is_sorted(all.begin(), all.end()));
    if (n <= 8) CHECK(all == compositions_by_bits(n));
    CHECK(all.size() == (std::size_t{1} << (n - 1)));
    for (int p = 1; p <= n; ++p) {
      const auto some = enumerate_ordered_partitions(n, p);
      CHECK(BigInt(static_cast<unsigned long>(some.size())) == binomial(n - 1, p - 1));
      CHECK(std::all_of(some.begin(), some.end(), [&](const auto& a) { return a.length() == p; }));
    }
  }
}

TEST_CASE("contraction of partitions") {
  CHECK(contract_partition(op({2, 1, 3}), 0) == op({3, 3}));
  CHECK(contract_partition(op({1, 1}), 0) == op({2}));
  CHECK(contract_partition(contract_partition(op({1, 1, 1}), 1), 0) == op({3}));
  CHECK(contract_partition(contract_partition(op({1, 1, 1}), 0), 0) == op({3}));
  CHECK_THROWS_AS(contract_partition(op({1, 1}), 1), DomainError);
  CHECK_THROWS_AS(contract_partition(op({2}), 0), DomainError);
  CHECK_THROWS_AS(contract_partition(op({1, 1}), -1), DomainError);
}

TEST_CASE("simplicial identity for partition contractions") {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& a : enumerate_ordered_partitions(n)) {
      for (int j = 1; j + 1 < a.length(); ++j) {
        for (int i = 0; i < j; ++i) {
          CHECK(contract_partition(contract_partition(a, j), i) == contract_partition(contract_partition(a, i), j - 1));
        }
      }
    }
  }
}

TEST_CASE("refinement") {
  CHECK(refines(op({3}), op({1, 2})));
  CHECK(refines(op({2, 1}), op({1, 1, 1})));
  CHECK_FALSE(refines(op({2, 1}), op({1, 2})));
  CHECK_THROWS_AS(refines(op({2}), op({1, 2})), DomainError);
}

TEST_CASE("refinement matches contraction reachability and is a partial order") {
  for (int n = 1; n <= 6; ++n) {
    const auto all = enumerate_ordered_partitions(n);
    for (const auto& a : all) {
      CHECK(refines(a, a));
      for (const auto& b : all) {
        CHECK(refines(a, b) == reachable_by_contraction(a, b));
        if (a != b && refines(a, b)) CHECK_FALSE(refines(b, a));
        if (n > 5) continue;
        for (const auto& c : all) {
          if (refines(a, b) && refines(b, c)) CHECK(refines(a, c));
        }
      }
    }
  }
}

TEST_CASE("subsets of cut points") {
  CHECK(partition_to_subset(op({1, 1, 1})) == std::vector<int>{1, 2});
  CHECK(partition_to_subset(op({3})).empty());
  CHECK(partition_to_subset(op({2, 1, 3})) == std::vector<int>{2, 3});
  for (int n = 1; n <= 8; ++n) {
    std::set<std::vector<int>> seen;
    for (const auto& a : enumerate_ordered_partitions(n)) {
      const auto cuts = partition_to_subset(a);
      CHECK(subset_to_partition(n, cuts) == a);
      seen.insert(cuts);
    }
    CHECK(seen.size() == (std::size_t{1} << (n - 1)));
  }
  const std::vector<int> bad{2, 1};
  CHECK_THROWS_AS(subset_to_partition(3, bad), DomainError);
  const std::vector<int> outside{3};
  CHECK_THROWS_AS(subset_to_partition(3, outside), DomainError);
}

TEST_CASE("concatenation") {
  const std::vector<OrderedPartition> pieces{op({1, 2}), op({3})};
  CHECK(concatenate(pieces) == op({1, 2, 3}));
}
