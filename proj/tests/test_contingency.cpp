#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "stoch/contingency.hpp"
#include "stoch/errors.hpp"

using namespace stoch;

namespace {

using Grid = std::vector<std::vector<int>>;

ContingencyMatrix cm(const Grid& g) { return ContingencyMatrix(g); }
OrderedPartition op(std::vector<int> parts) { return OrderedPartition(std::move(parts)); }

// All p x q grids of weight n with no zero row/column: every weak composition of n into
// p*q cells, filtered.
std::vector<ContingencyMatrix> brute_force(int n) {
  std::vector<ContingencyMatrix> out;
  for (int p = 1; p <= n; ++p) {
    for (int q = 1; q <= n; ++q) {
      std::vector<int> e(static_cast<std::size_t>(p * q), 0);
      std::function<void(std::size_t, int)> place = [&](std::size_t cell, int left) {
        if (cell + 1 == e.size()) {
          e[cell] = left;
          bool ok = true;
          for (int i = 0; i < p && ok; ++i) {
            int s = 0;
            for (int j = 0; j < q; ++j) s += e[static_cast<std::size_t>(i * q + j)];
            ok = s > 0;
          }
          for (int j = 0; j < q && ok; ++j) {
            int s = 0;
            for (int i = 0; i < p; ++i) s += e[static_cast<std::size_t>(i * q + j)];
            ok = s > 0;
          }
          if (ok) out.emplace_back(p, q, e);
          return;
        }
        for (int v = 0; v <= left; ++v) {
          e[cell] = v;
          place(cell + 1, left - v);
        }
      };
      place(0, n);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Ways to cut [0, len) into `parts` consecutive nonempty blocks: block index per position.
std::vector<std::vector<int>> monotone_surjections(int len, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> f(static_cast<std::size_t>(len));
  std::function<void(int, int)> go = [&](int pos, int block) {
    if (pos == len) {
      if (block == parts - 1) out.push_back(f);
      return;
    }
    f[static_cast<std::size_t>(pos)] = block;
    go(pos + 1, block);
    if (pos > 0 && block + 1 < parts) {
      f[static_cast<std::size_t>(pos)] = block + 1;
      go(pos + 1, block + 1);
    }
  };
  if (len >= parts) {
    f[0] = 0;
    go(1, 0);
    if (len == 1 && parts == 1) out = {{0}};
  }
  return out;
}

// N <= M iff M is obtained from N by summing over monotone surjections of rows and columns.
bool leq_by_surjections(const ContingencyMatrix& lo, const ContingencyMatrix& hi) {
  for (const auto& f : monotone_surjections(lo.rows(), hi.rows())) {
    for (const auto& g : monotone_surjections(lo.cols(), hi.cols())) {
      std::vector<int> sums(static_cast<std::size_t>(hi.rows() * hi.cols()), 0);
      for (int i = 0; i < lo.rows(); ++i) {
        for (int j = 0; j < lo.cols(); ++j) {
          sums[static_cast<std::size_t>(f[static_cast<std::size_t>(i)] * hi.cols() + g[static_cast<std::size_t>(j)])] +=
              lo.at(i, j);
        }
      }
      if (sums == hi.entries()) return true;
    }
  }
  return false;
}

long factorial_l(int n) { return n <= 1 ? 1 : n * factorial_l(n - 1); }

}  // namespace

TEST_CASE("construction and validation") {
  const auto m = cm({{1, 0}, {0, 1}});
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 2);
  CHECK(m.weight() == 2);
  CHECK(m.to_string() == "[[1,0],[0,1]]");
  CHECK(m.flat_label() == "1 0|0 1");
  CHECK(m.is_permutation_matrix());
  CHECK(cm({{1, 1}, {1, 0}}).transposed() == cm({{1, 1}, {1, 0}}));
  CHECK(cm({{1, 2}}).transposed() == cm({{1}, {2}}));
  CHECK_THROWS_AS(cm({{1, 0}, {0, 0}}), DomainError);
  CHECK_THROWS_AS(cm({{1, 0}, {1, 0}}), DomainError);
  CHECK_THROWS_AS(cm({{1, -1}, {0, 1}}), DomainError);
  CHECK_THROWS_AS(cm({{1, 0}, {1}}), DomainError);
  CHECK_THROWS_AS(cm({}), DomainError);
}

TEST_CASE("margins") {
  auto check = [](const Grid& g, int w, std::vector<int> h, std::vector<int> v) {
    const auto mg = margins(cm(g));
    CHECK(mg.weight == w);
    CHECK(mg.horizontal == op(h));
    CHECK(mg.vertical == op(v));
  };
  check({{1, 0}, {0, 1}}, 2, {1, 1}, {1, 1});
  check({{1, 1}, {1, 0}}, 3, {2, 1}, {2, 1});
  check({{2}}, 2, {2}, {2});
}

TEST_CASE("contractions") {
  CHECK(contract(cm({{1, 0}, {0, 1}}), ContractionKind::horizontal, 0) == cm({{1, 1}}));
  CHECK(contract(cm({{1, 0}, {0, 1}}), ContractionKind::vertical, 0) == cm({{1}, {1}}));
  CHECK(contract(cm({{1, 1}, {1, 0}}), ContractionKind::horizontal, 0) == cm({{2, 1}}));
  CHECK_THROWS_AS(contract(cm({{1, 1}}), ContractionKind::horizontal, 0), DomainError);
  CHECK_THROWS_AS(contract(cm({{1, 1}}), ContractionKind::vertical, 1), DomainError);
  CHECK(contraction_count(cm({{1, 1}}), ContractionKind::vertical) == 1);
  CHECK(contraction_count(cm({{1, 1}}), ContractionKind::horizontal) == 0);

  CHECK(is_anodyne(cm({{1, 0}, {0, 1}}), ContractionKind::horizontal, 0));
  CHECK_FALSE(is_anodyne(cm({{1, 1}, {1, 0}}), ContractionKind::horizontal, 0));
  CHECK_FALSE(is_anodyne(cm({{2}, {1}}), ContractionKind::horizontal, 0));
  CHECK_THROWS_AS(is_anodyne(cm({{2}, {1}}), ContractionKind::vertical, 0), DomainError);

  CHECK(parse_contraction_kind("vertical") == ContractionKind::vertical);
  CHECK(to_string(ContractionKind::horizontal) == "horizontal");
  CHECK_THROWS_AS(parse_contraction_kind("diagonal"), DomainError);
}

TEST_CASE("contraction validity, margins and commuting identities") {
  using K = ContractionKind;
  for (int n = 1; n <= 6; ++n) {
    for (const auto& m : enumerate_cm(n)) {
      const auto mg = margins(m);
      for (int i = 0; i + 1 < m.rows(); ++i) {
        const auto c = contract(m, K::horizontal, i);
        CHECK(c.weight() == n);
        CHECK(c.rows() == m.rows() - 1);
        CHECK(margins(c).vertical == mg.vertical);
        CHECK(margins(c).horizontal == contract_partition(mg.horizontal, i));
      }
      for (int j = 0; j + 1 < m.cols(); ++j) {
        const auto c = contract(m, K::vertical, j);
        CHECK(c.cols() == m.cols() - 1);
        CHECK(margins(c).horizontal == mg.horizontal);
        CHECK(margins(c).vertical == contract_partition(mg.vertical, j));
      }
      if (n > 5) continue;
      for (int j = 1; j + 1 < m.rows(); ++j) {
        for (int i = 0; i < j; ++i) {
          CHECK(contract(contract(m, K::horizontal, j), K::horizontal, i) ==
                contract(contract(m, K::horizontal, i), K::horizontal, j - 1));
        }
      }
      for (int j = 1; j + 1 < m.cols(); ++j) {
        for (int i = 0; i < j; ++i) {
          CHECK(contract(contract(m, K::vertical, j), K::vertical, i) ==
                contract(contract(m, K::vertical, i), K::vertical, j - 1));
        }
      }
      for (int i = 0; i + 1 < m.rows(); ++i) {
        for (int j = 0; j + 1 < m.cols(); ++j) {
          CHECK(contract(contract(m, K::vertical, j), K::horizontal, i) ==
                contract(contract(m, K::horizontal, i), K::vertical, j));
        }
      }
    }
  }
}

TEST_CASE("enumeration examples") {
  const auto two = enumerate_cm(2);
  const std::set<ContingencyMatrix> expected{cm({{2}}), cm({{1, 1}}), cm({{1}, {1}}), cm({{1, 0}, {0, 1}}),
                                             cm({{0, 1}, {1, 0}})};
  CHECK(two.size() == 5);
  CHECK(std::set<ContingencyMatrix>(two.begin(), two.end()) == expected);
  CHECK(enumerate_cm(3, {2, 2, {}, {}}).size() == 8);
  const auto perms = enumerate_cm(3, {3, 3, {}, {}});
  CHECK(perms.size() == 6);
  CHECK(std::all_of(perms.begin(), perms.end(), [](const auto& m) { return m.is_permutation_matrix(); }));
  const auto fixed = enumerate_cm(3, {std::nullopt, std::nullopt, op({2, 1}), op({2, 1})});
  CHECK(std::set<ContingencyMatrix>(fixed.begin(), fixed.end()) ==
        std::set<ContingencyMatrix>{cm({{2, 0}, {0, 1}}), cm({{1, 1}, {1, 0}})});
  CHECK_THROWS_AS(enumerate_cm(3, {3, std::nullopt, op({2, 1}), std::nullopt}), DomainError);
  CHECK_THROWS_AS(enumerate_cm(3, {std::nullopt, std::nullopt, op({2, 2}), std::nullopt}), DomainError);
  CHECK_THROWS_AS(enumerate_cm(0), DomainError);
}

TEST_CASE("enumeration matches brute force in canonical order") {
  for (int n = 1; n <= 4; ++n) CHECK(enumerate_cm(n) == brute_force(n));
  const std::vector<long> totals{1, 5, 33, 281, 2961, 37277};
  for (int n = 1; n <= 6; ++n) {
    const auto all = enumerate_cm(n);
    CHECK(all.size() == static_cast<std::size_t>(totals[static_cast<std::size_t>(n - 1)]));
    CHECK(std::is_sorted(all.begin(), all.end()));
    BigInt by_size = 0;
    for (int p = 1; p <= n; ++p) {
      for (int q = 1; q <= n; ++q) by_size += count_cm(n, p, q);
    }
    CHECK(by_size == static_cast<long>(all.size()));
  }
}

TEST_CASE("double cosets and colored lifts") {
  CHECK(double_coset_count(op({1, 1, 1}), op({1, 1, 1})) == 6);
  CHECK(double_coset_count(op({4}), op({1, 2, 1})) == 1);
  CHECK(double_coset_count(op({2, 1}), op({2, 1})) == 2);
  CHECK_THROWS_AS(double_coset_count(op({7}), op({7})), CapacityError);
  CHECK_THROWS_AS(double_coset_count(op({2}), op({1})), DomainError);

  CHECK(colored_lift_count(cm({{1, 0}, {0, 1}})) == 2);
  CHECK(colored_lift_count(cm({{2}})) == 1);
  CHECK(colored_lift_count(cm({{1, 1}, {1, 0}})) == 6);

  for (int n = 1; n <= 5; ++n) {
    for (const auto& a : enumerate_ordered_partitions(n)) {
      for (const auto& b : enumerate_ordered_partitions(n)) {
        const auto fiber = enumerate_cm(n, {std::nullopt, std::nullopt, a, b});
        CHECK(double_coset_count(a, b) == static_cast<long>(fiber.size()));
        BigInt lifts = 0;
        for (const auto& m : fiber) lifts += colored_lift_count(m);
        long multinomial_a = factorial_l(n);
        long multinomial_b = factorial_l(n);
        for (int x : a.parts()) multinomial_a /= factorial_l(x);
        for (int x : b.parts()) multinomial_b /= factorial_l(x);
        CHECK(lifts == multinomial_a * multinomial_b);
      }
    }
  }
}

TEST_CASE("poset structure") {
  const auto one = build_poset(1);
  CHECK(one.size() == 1);
  CHECK(one.covers().empty());
  const auto two = build_poset(2);
  CHECK(two.size() == 5);
  CHECK(two.covers().size() == 6);
  for (std::size_t i = 0; i < two.size(); ++i) CHECK(two.leq(i, two.maximum()));
  CHECK(build_poset(3).size() == 33);

  for (int n = 1; n <= 5; ++n) {
    const auto poset = build_poset(n);
    CHECK(poset.element(poset.maximum()) == cm({{n}}));
    const auto minimal = poset.minimal_elements();
    CHECK(static_cast<long>(minimal.size()) == factorial_l(n));
    for (auto i : minimal) CHECK(poset.element(i).is_permutation_matrix());
    for (std::size_t c = 0; c < poset.covers().size(); ++c) {
      const auto& cover = poset.covers()[c];
      CHECK(contract(poset.element(cover.from), cover.kind, cover.pos) == poset.element(cover.to));
      CHECK(poset.rank(cover.to) == poset.rank(cover.from) + 1);
      CHECK(poset.cover_between(cover.from, cover.to) == c);
    }
  }
  CHECK(two.index_of(cm({{1, 1}})).has_value());
  CHECK_FALSE(two.index_of(cm({{3}})).has_value());
  CHECK_THROWS_AS(two.require_index(cm({{3}})), DomainError);
}

TEST_CASE("order agrees with the surjection oracle and with the union of the one-kind orders") {
  for (int n = 1; n <= 4; ++n) {
    const auto poset = build_poset(n);
    const std::size_t size = poset.size();
    // transitive closure of <=' union <='' by repeated squaring of the relation
    std::vector<std::vector<char>> closure(size, std::vector<char>(size, 0));
    for (std::size_t a = 0; a < size; ++a) {
      for (std::size_t b = 0; b < size; ++b) {
        closure[a][b] = poset.leq_horizontal(a, b) || poset.leq_vertical(a, b);
      }
    }
    for (std::size_t k = 0; k < size; ++k) {
      for (std::size_t a = 0; a < size; ++a) {
        if (!closure[a][k]) continue;
        for (std::size_t b = 0; b < size; ++b) closure[a][b] = closure[a][b] || closure[k][b];
      }
    }
    for (std::size_t a = 0; a < size; ++a) {
      for (std::size_t b = 0; b < size; ++b) {
        const bool leq = poset.leq(a, b);
        CHECK(leq == static_cast<bool>(closure[a][b]));
        if (n <= 3) CHECK(leq == leq_by_surjections(poset.element(a), poset.element(b)));
        if (poset.leq_horizontal(a, b)) CHECK(poset.element(a).cols() == poset.element(b).cols());
      }
    }
  }
}
