#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "stoch/contingency.hpp"
#include "stoch/errors.hpp"
#include "stoch/metamatrix.hpp"

using namespace stoch;

namespace {

// Set partitions of {0..k-1} into exactly p blocks, by restricted growth strings.
long count_set_partitions(int k, int p) {
  long count = 0;
  std::vector<int> block(static_cast<std::size_t>(k), 0);
  std::function<void(int, int)> go = [&](int pos, int used) {
    if (pos == k) {
      if (used == p) ++count;
      return;
    }
    for (int b = 0; b <= used && b < p; ++b) {
      block[static_cast<std::size_t>(pos)] = b;
      go(pos + 1, std::max(used, b + 1));
    }
  };
  if (k == 0) return p == 0 ? 1 : 0;
  go(0, 0);
  return count;
}

// Coefficients of the rising factorial by repeated naive multiplication with (x + m).
std::vector<long> rising_factorial(int n) {
  std::vector<long> poly{1};
  for (int m = 0; m < n; ++m) {
    std::vector<long> next(poly.size() + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += m * poly[i];
      next[i + 1] += poly[i];
    }
    poly = next;
  }
  return poly;
}

// Nonnegative p x q matrices of weight n, zeros allowed, counted directly.
long count_generalized(int n, int cells) {
  if (cells == 1) return 1;
  long total = 0;
  for (int v = 0; v <= n; ++v) total += count_generalized(n - v, cells - 1);
  return total;
}

BigInt sum_of(const IntMatrix& m) {
  BigInt s = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j);
  }
  return s;
}

}  // namespace

TEST_CASE("generalized counts") {
  CHECK(generalized_count(0, 1, 1) == 1);
  CHECK(generalized_count(2, 2, 2) == 10);
  for (int n = 0; n <= 5; ++n) {
    for (int p = 1; p <= 3; ++p) {
      for (int q = 1; q <= 3; ++q) CHECK(generalized_count(n, p, q) == count_generalized(n, p * q));
    }
  }
  CHECK_THROWS_AS(generalized_count(-1, 1, 1), DomainError);
  // the 2 x 2 subgrid identity at n = 2 from enumerated counts
  const auto m = metamatrix(2, MetaMethod::enumeration);
  BigInt sum = 0;
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) sum += binomial(2, i) * binomial(2, j) * m(i - 1, j - 1);
  }
  CHECK(sum == 10);
}

TEST_CASE("Stirling and Fubini numbers") {
  CHECK(stirling_first(3, 1) == 2);
  CHECK(stirling_first(3, 2) == 3);
  CHECK(stirling_first(3, 3) == 1);
  CHECK(stirling_first(3, 4) == 0);
  CHECK(stirling_second(3, 2) == 3);
  CHECK(fubini(1) == 1);
  CHECK(fubini(2) == 3);
  CHECK(fubini(3) == 13);
  for (int k = 0; k <= 8; ++k) {
    for (int p = 0; p <= k; ++p) CHECK(stirling_second(k, p) == count_set_partitions(k, p));
  }
  for (int n = 0; n <= 10; ++n) {
    const auto poly = rising_factorial(n);
    for (int k = 0; k <= n; ++k) CHECK(stirling_first(n, k) == poly[static_cast<std::size_t>(k)]);
  }
  CHECK_THROWS_AS(stirling_second(-1, 0), DomainError);
}

TEST_CASE("count matrix") {
  CHECK(metamatrix(1) == IntMatrix{{1}});
  const IntMatrix three{{1, 2, 1}, {2, 8, 6}, {1, 6, 6}};
  CHECK(metamatrix(3, MetaMethod::enumeration) == three);
  CHECK(metamatrix(3, MetaMethod::inclusion_exclusion) == three);
  for (int n = 1; n <= 7; ++n) {
    const auto e = metamatrix(n, MetaMethod::enumeration);
    CHECK(e == metamatrix(n, MetaMethod::inclusion_exclusion));
    CHECK(e == e.transposed());
    CHECK(e(0, 0) == 1);
    CHECK(e(static_cast<std::size_t>(n - 1), static_cast<std::size_t>(n - 1)) == factorial(static_cast<unsigned>(n)));
    CHECK_FALSE(subgrid_sum_failure(e, n).has_value());
  }
  CHECK(sum_of(metamatrix(4, MetaMethod::enumeration)) == 281);
  CHECK_THROWS_AS(metamatrix(8, MetaMethod::enumeration), CapacityError);
  CHECK_THROWS_AS(metamatrix(0), DomainError);
  CHECK(parse_meta_method("enumeration") == MetaMethod::enumeration);
  CHECK_THROWS_AS(parse_meta_method("guess"), DomainError);
  IntMatrix broken = metamatrix(3);
  broken(1, 1) += 1;
  CHECK(subgrid_sum_failure(broken, 3) == std::pair{2, 2});
  CHECK(to_csv(metamatrix(3)) == "1,2,1\n2,8,6\n1,6,6\n");
}

TEST_CASE("structured matrices") {
  CHECK(pascal_matrix(2) == IntMatrix{{1, 0}, {2, 1}});
  for (int n = 1; n <= 20; ++n) {
    CHECK(pascal_matrix(n) * pascal_inverse_matrix(n) == IntMatrix::identity(static_cast<std::size_t>(n)));
  }
  const auto q = q_matrix(3);
  CHECK(q.is_upper_triangular());
  CHECK(q(0, 0) == 1);
  CHECK(q(1, 1) == 2);
  CHECK(q(2, 2) == 6);
  CHECK(vandermonde_matrix(2) == IntMatrix{{1, 1}, {2, 4}});
  CHECK(binomial_matrix(2) == IntMatrix{{1, 3}, {3, 10}});
}

TEST_CASE("factorizations") {
  for (int n = 1; n <= 20; ++n) {
    const auto report = verify_factorizations(n);
    CHECK(report.pass());
    CHECK(report.checks.size() == 7);
  }
  CHECK_THROWS_AS(verify_factorizations(21), CapacityError);
}

TEST_CASE("determinants of the count matrix") {
  const auto d1 = det_metamatrix(1);
  CHECK(d1.closed_form == 1);
  CHECK(det_metamatrix(2).closed_form == 1);
  CHECK(det_metamatrix(3).closed_form == 4);
  CHECK(*det_metamatrix(3).direct == determinant(IntMatrix{{1, 2, 1}, {2, 8, 6}, {1, 6, 6}}));
  CHECK(det_metamatrix(4).closed_form == 99);
  for (int n = 1; n <= 20; ++n) {
    const auto d = det_metamatrix(n);
    CHECK(d.pass());
    CHECK(d.closed_form_integral);
    CHECK(d.direct.has_value() == (n <= 12));
  }
}

TEST_CASE("total positivity") {
  const auto three = total_positivity(metamatrix(3));
  CHECK(three.is_tp);
  CHECK(three.minors_checked == 19);
  for (int n = 1; n <= 6; ++n) CHECK(total_positivity(metamatrix(n)).is_tp);

  const auto bad = total_positivity(IntMatrix{{1, 2}, {2, 1}});
  CHECK_FALSE(bad.is_tp);
  REQUIRE(bad.witness);
  CHECK(bad.witness->value == -3);
  CHECK(bad.witness->rows == std::vector<std::size_t>{1, 2});

  const auto id = total_positivity(IntMatrix::identity(2));
  CHECK_FALSE(id.is_tp);
  REQUIRE(id.witness);
  CHECK(id.witness->value == 0);
  CHECK(id.witness->rows == std::vector<std::size_t>{1});
  CHECK(id.witness->cols == std::vector<std::size_t>{2});
  CHECK_THROWS_AS(total_positivity(IntMatrix(2, 3)), DomainError);
}

TEST_CASE("three routes to the total") {
  CHECK(total_count(1) == 1);
  CHECK(total_count(3) == 33);
  CHECK(total_count(4) == 281);
  for (int n = 1; n <= 7; ++n) {
    const auto enumerated = total_count_enumerated(n);
    CHECK(total_count(n) == enumerated);
    CHECK(total_count_alternating(n) == enumerated);
    CHECK(enumerated == static_cast<long>(enumerate_cm(n).size()));
  }
  // the binomial-weight variant does not count anything
  for (int n = 1; n <= 10; ++n) CHECK(total_count_binomial_weights(n) == 1);
  for (int n = 8; n <= 20; ++n) CHECK(total_count(n) == sum_of(metamatrix(n)));
}
