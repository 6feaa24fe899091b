#include "stoch/smith.hpp"

#include <algorithm>
#include <optional>
#include <queue>
#include <utility>

namespace stoch {

namespace {

void swap_rows(IntMatrix& a, std::size_t r1, std::size_t r2) {
  if (r1 == r2) return;
  for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r1, j), a(r2, j));
}

void swap_cols(IntMatrix& a, std::size_t c1, std::size_t c2) {
  if (c1 == c2) return;
  for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a(i, c1), a(i, c2));
}

// Smallest nonzero |entry| in rows/cols >= t, searching only row t and column t when `cross_only`.
std::optional<std::pair<std::size_t, std::size_t>> smallest_entry(const IntMatrix& a, std::size_t t, bool cross_only) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  BigInt best_abs;
  auto consider = [&](std::size_t i, std::size_t j) {
    const BigInt& v = a(i, j);
    if (v == 0) return;
    if (!best || abs(v) < best_abs) {
      best = {i, j};
      best_abs = abs(v);
    }
  };
  if (cross_only) {
    for (std::size_t i = t; i < a.rows(); ++i) consider(i, t);
    for (std::size_t j = t + 1; j < a.cols(); ++j) consider(t, j);
  } else {
    for (std::size_t i = t; i < a.rows(); ++i) {
      for (std::size_t j = t; j < a.cols(); ++j) consider(i, j);
    }
  }
  return best;
}

}  // namespace

std::vector<BigInt> smith_diagonal(IntMatrix a) {
  const std::size_t limit = std::min(a.rows(), a.cols());
  std::vector<BigInt> diagonal;
  for (std::size_t t = 0; t < limit; ++t) {
    auto start = smallest_entry(a, t, false);
    if (!start) break;
    swap_rows(a, t, start->first);
    swap_cols(a, t, start->second);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < a.rows(); ++i) {
        if (a(i, t) == 0) continue;
        const BigInt q = a(i, t) / a(t, t);
        for (std::size_t j = t; j < a.cols(); ++j) a(i, j) -= q * a(t, j);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (a(t, j) == 0) continue;
        const BigInt q = a(t, j) / a(t, t);
        for (std::size_t i = t; i < a.rows(); ++i) a(i, j) -= q * a(i, t);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) {
        // a remainder smaller than the pivot survived; bring it to the pivot spot
        auto next = smallest_entry(a, t, true);
        swap_rows(a, t, next->first);
        swap_cols(a, t, next->second);
        continue;
      }
      // the pivot must divide the whole trailing block
      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < a.rows() && !offending; ++i) {
        for (std::size_t j = t + 1; j < a.cols(); ++j) {
          if (a(i, j) % a(t, t) != 0) {
            offending = i;
            break;
          }
        }
      }
      if (!offending) break;
      for (std::size_t j = t; j < a.cols(); ++j) a(t, j) += a(*offending, j);
    }
    diagonal.push_back(abs(a(t, t)));
  }
  return diagonal;
}

namespace {

struct Overflow {};

inline std::int64_t sub_mul(std::int64_t a, std::int64_t f, std::int64_t b) {
  std::int64_t product = 0;
  std::int64_t result = 0;
  if (__builtin_mul_overflow(f, b, &product) || __builtin_sub_overflow(a, product, &result)) throw Overflow{};
  return result;
}

inline BigInt sub_mul(const BigInt& a, const BigInt& f, const BigInt& b) { return a - f * b; }

inline bool is_unit(std::int64_t v) { return v == 1 || v == -1; }
inline bool is_unit(const BigInt& v) { return v == 1 || v == -1; }

inline BigInt to_big(std::int64_t v) { return BigInt(static_cast<long>(v)); }
inline BigInt to_big(const BigInt& v) { return v; }

template <typename T>
class UnitEliminator {
 public:
  struct Entry {
    std::uint32_t row;
    T value;
  };

  explicit UnitEliminator(const SparseIntMatrix& m) : rows_(m.rows), row_cols_(m.rows) {
    cols_.resize(m.columns.size());
    alive_.assign(m.columns.size(), 1);
    for (std::size_t c = 0; c < m.columns.size(); ++c) {
      for (const auto& e : m.columns[c]) {
        cols_[c].push_back({e.row, T(e.value)});
        row_cols_[e.row].push_back(static_cast<std::uint32_t>(c));
      }
    }
  }

  InvariantFactors run() {
    for (std::size_t c = 0; c < cols_.size(); ++c) schedule(c);
    while (!queue_.empty()) {
      const auto [cost, c] = queue_.top();
      queue_.pop();
      if (!alive_[c]) continue;
      const auto best = best_pivot(c);
      if (!best) continue;
      if (best->second > cost) {
        queue_.push({best->second, c});
        continue;
      }
      eliminate(c, best->first);
    }
    return finish();
  }

 private:
  using Slot = std::pair<std::size_t, std::size_t>;  // (cost, column)

  const T* find(std::size_t c, std::uint32_t row) const {
    const auto& col = cols_[c];
    auto it = std::lower_bound(col.begin(), col.end(), row, [](const Entry& e, std::uint32_t r) { return e.row < r; });
    return it != col.end() && it->row == row ? &it->value : nullptr;
  }

  std::size_t row_count(std::uint32_t row) {
    auto& list = row_cols_[row];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    list.erase(std::remove_if(list.begin(), list.end(),
                              [&](std::uint32_t c) { return !alive_[c] || find(c, row) == nullptr; }),
               list.end());
    return list.size();
  }

  std::optional<std::pair<std::uint32_t, std::size_t>> best_pivot(std::size_t c) {
    std::optional<std::pair<std::uint32_t, std::size_t>> best;
    const std::size_t len = cols_[c].size();
    for (const auto& e : cols_[c]) {
      if (!is_unit(e.value)) continue;
      const std::size_t cost = (len - 1) * (row_count(e.row) - 1);
      if (!best || cost < best->second) best = {{e.row, cost}};
      if (cost == 0) break;
    }
    return best;
  }

  void schedule(std::size_t c) {
    if (auto best = best_pivot(c)) queue_.push({best->second, c});
  }

  void eliminate(std::size_t pivot_col, std::uint32_t pivot_row) {
    const T unit = *find(pivot_col, pivot_row);
    row_count(pivot_row);
    const std::vector<std::uint32_t> touched = row_cols_[pivot_row];
    const auto& source = cols_[pivot_col];
    for (std::uint32_t c : touched) {
      if (c == pivot_col) continue;
      const T* v = find(c, pivot_row);
      if (v == nullptr) continue;
      const T factor = *v * unit;  // v / unit, as unit = +-1
      std::vector<Entry> merged;
      merged.reserve(cols_[c].size() + source.size());
      auto a = cols_[c].begin();
      auto b = source.begin();
      while (a != cols_[c].end() || b != source.end()) {
        if (b == source.end() || (a != cols_[c].end() && a->row < b->row)) {
          merged.push_back(*a++);
        } else if (a == cols_[c].end() || b->row < a->row) {
          T value = sub_mul(T(0), factor, b->value);
          row_cols_[b->row].push_back(c);
          merged.push_back({b->row, std::move(value)});
          ++b;
        } else {
          T value = sub_mul(a->value, factor, b->value);
          if (value != 0) merged.push_back({a->row, std::move(value)});
          ++a;
          ++b;
        }
      }
      cols_[c] = std::move(merged);
      schedule(c);
    }
    alive_[pivot_col] = 0;
    ++pivots_;
  }

  InvariantFactors finish() {
    std::vector<std::size_t> live;
    std::vector<std::uint32_t> used_rows;
    for (std::size_t c = 0; c < cols_.size(); ++c) {
      if (!alive_[c] || cols_[c].empty()) continue;
      live.push_back(c);
      for (const auto& e : cols_[c]) used_rows.push_back(e.row);
    }
    std::sort(used_rows.begin(), used_rows.end());
    used_rows.erase(std::unique(used_rows.begin(), used_rows.end()), used_rows.end());
    InvariantFactors result;
    result.rank = pivots_;
    if (live.empty()) return result;
    IntMatrix dense(used_rows.size(), live.size());
    for (std::size_t j = 0; j < live.size(); ++j) {
      for (const auto& e : cols_[live[j]]) {
        const auto i = static_cast<std::size_t>(
            std::lower_bound(used_rows.begin(), used_rows.end(), e.row) - used_rows.begin());
        dense(i, j) = to_big(e.value);
      }
    }
    for (auto& d : smith_diagonal(std::move(dense))) {
      ++result.rank;
      if (d > 1) result.torsion.push_back(std::move(d));
    }
    return result;
  }

  std::size_t rows_;
  std::vector<std::vector<Entry>> cols_;
  std::vector<char> alive_;
  std::vector<std::vector<std::uint32_t>> row_cols_;
  std::priority_queue<Slot, std::vector<Slot>, std::greater<>> queue_;
  std::size_t pivots_ = 0;
};

}  // namespace

std::optional<UnitReduction> reduce_with_unit_pivots(const SparseIntMatrix& m, const std::vector<char>* skip) {
  using Entry = SparseIntMatrix::Entry;
  UnitReduction out;
  out.pivot_rows.assign(m.rows, 0);
  // pivot_of[r]: reduced column whose lowest entry sits in row r
  std::vector<std::uint32_t> pivot_of(m.rows, 0);
  std::vector<std::vector<Entry>> reduced(m.columns.size());
  std::vector<Entry> work;
  std::vector<Entry> merged;
  try {
    for (std::size_t c = 0; c < m.columns.size(); ++c) {
      if (skip && (*skip)[c]) continue;
      work = m.columns[c];
      while (!work.empty()) {
        const Entry low = work.back();
        if (!out.pivot_rows[low.row]) break;
        const auto& src = reduced[pivot_of[low.row]];
        const std::int64_t factor = low.value * src.back().value;  // pivot is +-1
        merged.clear();
        auto a = work.begin();
        auto b = src.begin();
        while (a != work.end() || b != src.end()) {
          if (b == src.end() || (a != work.end() && a->row < b->row)) {
            merged.push_back(*a++);
          } else if (a == work.end() || b->row < a->row) {
            merged.push_back({b->row, sub_mul(0, factor, b->value)});
            ++b;
          } else {
            const std::int64_t v = sub_mul(a->value, factor, b->value);
            if (v != 0) merged.push_back({a->row, v});
            ++a;
            ++b;
          }
        }
        work.swap(merged);
      }
      if (work.empty()) continue;
      if (!is_unit(work.back().value)) return std::nullopt;
      out.pivot_rows[work.back().row] = 1;
      pivot_of[work.back().row] = static_cast<std::uint32_t>(c);
      reduced[c] = work;
      ++out.rank;
    }
  } catch (const Overflow&) {
    return std::nullopt;
  }
  return out;
}

InvariantFactors invariant_factors(const SparseIntMatrix& m) {
  try {
    return UnitEliminator<std::int64_t>(m).run();
  } catch (const Overflow&) {
    return UnitEliminator<BigInt>(m).run();
  }
}

}  // namespace stoch
