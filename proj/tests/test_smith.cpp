#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stoch/exact_matrix.hpp"
#include "stoch/smith.hpp"

using namespace stoch;

namespace {

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto go = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  go(go, 0);
  return out;
}

// d_k = gcd of k x k minors; the invariant factors are d_k / d_(k-1).
std::vector<BigInt> factors_by_minors(const IntMatrix& m) {
  std::vector<BigInt> out;
  BigInt previous = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    BigInt g = 0;
    for (const auto& r : subsets(m.rows(), k)) {
      for (const auto& c : subsets(m.cols(), k)) g = gcd(g, determinant(m.submatrix(r, c)));
    }
    if (g == 0) break;
    out.push_back(g / previous);
    previous = g;
  }
  return out;
}

SparseIntMatrix to_sparse(const IntMatrix& m) {
  SparseIntMatrix s;
  s.rows = m.rows();
  s.columns.resize(m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (m(i, j) != 0) s.columns[j].push_back({static_cast<std::uint32_t>(i), m(i, j).get_si()});
    }
  }
  return s;
}

}  // namespace

TEST_CASE("determinants") {
  CHECK(determinant(IntMatrix{{1, 2}, {3, 4}}) == -2);
  CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK(determinant(IntMatrix{{1, 2, 1}, {2, 8, 6}, {1, 6, 6}}) == 4);
  CHECK(determinant(IntMatrix(0, 0)) == 1);
  CHECK(determinant(to_rational(IntMatrix{{2, 1}, {1, 1}})) == 1);
  CHECK(rank(to_rational(IntMatrix{{1, 2}, {2, 4}})) == 1);
  CHECK(is_invertible(RatMatrix(0, 0)));
  CHECK_FALSE(is_invertible(RatMatrix(1, 0)));
}

TEST_CASE("small Smith forms") {
  CHECK(smith_diagonal(IntMatrix{{2, 0}, {0, 3}}) == std::vector<BigInt>{1, 6});
  CHECK(smith_diagonal(IntMatrix{{2, 4}, {6, 8}}) == std::vector<BigInt>{2, 4});
  CHECK(smith_diagonal(IntMatrix{{0, 0}, {0, 0}}).empty());
}

TEST_CASE("Smith diagonal matches the gcd-of-minors ladder on random matrices") {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<int> entry(-5, 5);
  std::uniform_int_distribution<int> size(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    const auto rows = static_cast<std::size_t>(size(rng));
    const auto cols = static_cast<std::size_t>(size(rng));
    IntMatrix m(rows, cols);
    // sparse-ish so that rank deficiency and torsion both show up
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = trial % 3 == 0 ? entry(rng) : (entry(rng) % 3) * 2;
    }
    const auto expected = factors_by_minors(m);
    CHECK(smith_diagonal(m) == expected);

    const auto sparse = invariant_factors(to_sparse(m));
    CHECK(sparse.rank == expected.size());
    std::vector<BigInt> torsion;
    for (const auto& d : expected) {
      if (d > 1) torsion.push_back(d);
    }
    CHECK(sparse.torsion == torsion);

    if (const auto fast = reduce_with_unit_pivots(to_sparse(m))) {
      CHECK(fast->rank == expected.size());
      CHECK(torsion.empty());
    }
  }
}

TEST_CASE("sparse elimination falls back to big integers") {
  const BigInt big = BigInt(1) << 62;
  IntMatrix m{{1, big}, {big, 1}};
  SparseIntMatrix s;
  s.rows = 2;
  s.columns = {{{0, 1}, {1, std::int64_t{1} << 62}}, {{0, std::int64_t{1} << 62}, {1, 1}}};
  const auto f = invariant_factors(s);
  CHECK(f.rank == 2);
  REQUIRE(f.torsion.size() == 1);
  CHECK(f.torsion[0] == big * big - 1);
  CHECK_FALSE(reduce_with_unit_pivots(s).has_value());
  CHECK(smith_diagonal(m).back() == big * big - 1);
}
