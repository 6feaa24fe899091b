#include "stoch/contingency.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "stoch/errors.hpp"

namespace stoch {

ContingencyMatrix::ContingencyMatrix(const std::vector<std::vector<int>>& rows) {
  if (rows.empty() || rows.front().empty()) throw DomainError("contingency matrix must be non-empty");
  rows_ = static_cast<int>(rows.size());
  cols_ = static_cast<int>(rows.front().size());
  entries_.reserve(static_cast<std::size_t>(rows_ * cols_));
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != cols_) throw DomainError("contingency matrix rows have different lengths");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  validate();
}

ContingencyMatrix::ContingencyMatrix(int rows, int cols, std::vector<int> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ < 1 || cols_ < 1 || entries_.size() != static_cast<std::size_t>(rows_ * cols_)) {
    throw DomainError("contingency matrix shape does not match its entries");
  }
  validate();
}

void ContingencyMatrix::validate() {
  weight_ = 0;
  std::vector<bool> column_hit(static_cast<std::size_t>(cols_), false);
  for (int i = 0; i < rows_; ++i) {
    bool row_hit = false;
    for (int j = 0; j < cols_; ++j) {
      const int v = at(i, j);
      if (v < 0) throw DomainError("contingency matrix entries must be nonnegative");
      if (v > 0) {
        row_hit = true;
        column_hit[static_cast<std::size_t>(j)] = true;
      }
      weight_ += v;
    }
    if (!row_hit) throw DomainError("contingency matrix has a zero row");
  }
  if (std::find(column_hit.begin(), column_hit.end(), false) != column_hit.end()) {
    throw DomainError("contingency matrix has a zero column");
  }
}

std::vector<int> ContingencyMatrix::row(int i) const {
  const auto first = entries_.begin() + i * cols_;
  return {first, first + cols_};
}

std::vector<int> ContingencyMatrix::column(int j) const {
  std::vector<int> out(static_cast<std::size_t>(rows_));
  for (int i = 0; i < rows_; ++i) out[static_cast<std::size_t>(i)] = at(i, j);
  return out;
}

std::vector<std::vector<int>> ContingencyMatrix::to_rows() const {
  std::vector<std::vector<int>> out;
  for (int i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

ContingencyMatrix ContingencyMatrix::transposed() const {
  ContingencyMatrix t;
  t.rows_ = cols_;
  t.cols_ = rows_;
  t.weight_ = weight_;
  t.entries_.resize(entries_.size());
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) t.entries_[static_cast<std::size_t>(j * rows_ + i)] = at(i, j);
  }
  return t;
}

bool ContingencyMatrix::is_permutation_matrix() const {
  return rows_ == cols_ && weight_ == rows_ &&
         std::all_of(entries_.begin(), entries_.end(), [](int v) { return v <= 1; });
}

std::string ContingencyMatrix::to_string() const {
  std::ostringstream out;
  out << '[';
  for (int i = 0; i < rows_; ++i) {
    out << (i ? ",[" : "[");
    for (int j = 0; j < cols_; ++j) out << (j ? "," : "") << at(i, j);
    out << ']';
  }
  out << ']';
  return out.str();
}

std::string ContingencyMatrix::flat_label() const {
  std::ostringstream out;
  for (int i = 0; i < rows_; ++i) {
    if (i) out << '|';
    for (int j = 0; j < cols_; ++j) out << (j ? " " : "") << at(i, j);
  }
  return out.str();
}

std::strong_ordering operator<=>(const ContingencyMatrix& a, const ContingencyMatrix& b) {
  if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
  if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
  return a.entries_ <=> b.entries_;
}

std::size_t ContingencyMatrixHash::operator()(const ContingencyMatrix& m) const noexcept {
  std::size_t h = static_cast<std::size_t>(m.rows()) * 0x9e3779b97f4a7c15ULL + static_cast<std::size_t>(m.cols());
  for (int v : m.entries()) h = (h ^ static_cast<std::size_t>(v)) * 0x100000001b3ULL + (h >> 29);
  return h;
}

std::string_view to_string(ContractionKind kind) {
  return kind == ContractionKind::horizontal ? "horizontal" : "vertical";
}

ContractionKind parse_contraction_kind(std::string_view text) {
  if (text == "horizontal") return ContractionKind::horizontal;
  if (text == "vertical") return ContractionKind::vertical;
  throw DomainError("unknown contraction kind '" + std::string(text) + "'");
}

Margins margins(const ContingencyMatrix& m) {
  std::vector<int> hor(static_cast<std::size_t>(m.rows()), 0);
  std::vector<int> ver(static_cast<std::size_t>(m.cols()), 0);
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      hor[static_cast<std::size_t>(i)] += m.at(i, j);
      ver[static_cast<std::size_t>(j)] += m.at(i, j);
    }
  }
  return {m.weight(), OrderedPartition(std::move(hor)), OrderedPartition(std::move(ver))};
}

int contraction_count(const ContingencyMatrix& m, ContractionKind kind) {
  return (kind == ContractionKind::horizontal ? m.rows() : m.cols()) - 1;
}

namespace {

void check_contraction_index(const ContingencyMatrix& m, ContractionKind kind, int i) {
  if (i < 0 || i >= contraction_count(m, kind)) {
    throw DomainError(std::string(to_string(kind)) + " contraction index " + std::to_string(i) +
                      " out of range for a " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                      " matrix");
  }
}

}  // namespace

ContingencyMatrix contract(const ContingencyMatrix& m, ContractionKind kind, int i) {
  check_contraction_index(m, kind, i);
  std::vector<int> out;
  if (kind == ContractionKind::horizontal) {
    out.reserve(static_cast<std::size_t>((m.rows() - 1) * m.cols()));
    for (int r = 0; r < m.rows(); ++r) {
      if (r == i + 1) continue;
      for (int c = 0; c < m.cols(); ++c) out.push_back(m.at(r, c) + (r == i ? m.at(r + 1, c) : 0));
    }
    return ContingencyMatrix(m.rows() - 1, m.cols(), std::move(out));
  }
  out.reserve(static_cast<std::size_t>(m.rows() * (m.cols() - 1)));
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      if (c == i + 1) continue;
      out.push_back(m.at(r, c) + (c == i ? m.at(r, c + 1) : 0));
    }
  }
  return ContingencyMatrix(m.rows(), m.cols() - 1, std::move(out));
}

bool is_anodyne(const ContingencyMatrix& m, ContractionKind kind, int i) {
  check_contraction_index(m, kind, i);
  if (kind == ContractionKind::horizontal) {
    for (int c = 0; c < m.cols(); ++c) {
      if (m.at(i, c) != 0 && m.at(i + 1, c) != 0) return false;
    }
    return true;
  }
  for (int r = 0; r < m.rows(); ++r) {
    if (m.at(r, i) != 0 && m.at(r, i + 1) != 0) return false;
  }
  return true;
}

namespace {

// Entry-by-entry fill in row-major order; values ascend at every position, so
// matrices come out in lexicographic order of their flattened entries.
class Filler {
 public:
  Filler(int p, int q, int n, const CmFilter& filter, const std::function<void(const ContingencyMatrix&)>& visit)
      : p_(p), q_(q), n_(n), filter_(filter), visit_(visit),
        entries_(static_cast<std::size_t>(p * q), 0), colsum_(static_cast<std::size_t>(q), 0) {}

  void run() { place(0, 0, 0, n_, q_); }

 private:
  void place(int r, int c, int rowsum, int remaining, int zero_cols) {
    if (c == q_) {
      if (rowsum == 0) return;
      if (filter_.alpha && rowsum != (*filter_.alpha)[static_cast<std::size_t>(r)]) return;
      if (r + 1 == p_) {
        if (remaining == 0 && zero_cols == 0) emit();
        return;
      }
      place(r + 1, 0, 0, remaining, zero_cols);
      return;
    }
    const bool last_col = c + 1 == q_;
    const bool last_row = r + 1 == p_;
    int hi = remaining;
    if (filter_.alpha) hi = std::min(hi, (*filter_.alpha)[static_cast<std::size_t>(r)] - rowsum);
    if (filter_.beta) hi = std::min(hi, (*filter_.beta)[static_cast<std::size_t>(c)] - colsum_[static_cast<std::size_t>(c)]);
    int lo = 0;
    if (last_col && filter_.alpha) lo = (*filter_.alpha)[static_cast<std::size_t>(r)] - rowsum;
    if (last_row && filter_.beta) {
      lo = std::max(lo, (*filter_.beta)[static_cast<std::size_t>(c)] - colsum_[static_cast<std::size_t>(c)]);
    }
    if (last_row && colsum_[static_cast<std::size_t>(c)] == 0) lo = std::max(lo, 1);
    if (last_col && rowsum == 0) lo = std::max(lo, 1);
    for (int v = lo; v <= hi; ++v) {
      const bool opens = v > 0 && colsum_[static_cast<std::size_t>(c)] == 0;
      const int zero_after = zero_cols - (opens ? 1 : 0);
      const int left = remaining - v;
      // rows after this one each need a unit, as does every column still empty
      const int rows_needing = (p_ - r - 1) + ((rowsum + v == 0 && !last_col) ? 1 : 0);
      if (left < std::max(rows_needing, zero_after)) continue;
      entries_[static_cast<std::size_t>(r * q_ + c)] = v;
      colsum_[static_cast<std::size_t>(c)] += v;
      place(r, c + 1, rowsum + v, left, zero_after);
      colsum_[static_cast<std::size_t>(c)] -= v;
    }
    entries_[static_cast<std::size_t>(r * q_ + c)] = 0;
  }

  void emit() { visit_(ContingencyMatrix(p_, q_, entries_)); }

  int p_, q_, n_;
  const CmFilter& filter_;
  const std::function<void(const ContingencyMatrix&)>& visit_;
  std::vector<int> entries_;
  std::vector<int> colsum_;
};

}  // namespace

void for_each_cm(int n, const CmFilter& filter, const std::function<void(const ContingencyMatrix&)>& visit) {
  if (n < 1) throw DomainError("enumerate_cm: n must be positive");
  if (filter.p && *filter.p < 1) throw DomainError("enumerate_cm: p must be positive");
  if (filter.q && *filter.q < 1) throw DomainError("enumerate_cm: q must be positive");
  if (filter.alpha) {
    if (filter.alpha->weight() != n) throw DomainError("enumerate_cm: alpha has weight different from n");
    if (filter.p && *filter.p != filter.alpha->length()) throw DomainError("enumerate_cm: p differs from length(alpha)");
  }
  if (filter.beta) {
    if (filter.beta->weight() != n) throw DomainError("enumerate_cm: beta has weight different from n");
    if (filter.q && *filter.q != filter.beta->length()) throw DomainError("enumerate_cm: q differs from length(beta)");
  }
  const int p_lo = filter.alpha ? filter.alpha->length() : filter.p.value_or(1);
  const int p_hi = filter.alpha ? filter.alpha->length() : filter.p.value_or(n);
  const int q_lo = filter.beta ? filter.beta->length() : filter.q.value_or(1);
  const int q_hi = filter.beta ? filter.beta->length() : filter.q.value_or(n);
  for (int p = p_lo; p <= std::min(p_hi, n); ++p) {
    for (int q = q_lo; q <= std::min(q_hi, n); ++q) {
      Filler(p, q, n, filter, visit).run();
    }
  }
}

std::vector<ContingencyMatrix> enumerate_cm(int n, const CmFilter& filter) {
  std::vector<ContingencyMatrix> out;
  for_each_cm(n, filter, [&](const ContingencyMatrix& m) { out.push_back(m); });
  return out;
}

BigInt count_cm(int n, int p, int q) {
  unsigned long count = 0;
  CmFilter filter;
  filter.p = p;
  filter.q = q;
  for_each_cm(n, filter, [&](const ContingencyMatrix&) { ++count; });
  return BigInt(count);
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

// Lehmer-code rank of a permutation of {0..n-1}.
std::size_t permutation_rank(const std::vector<int>& perm) {
  std::size_t rank = 0;
  const std::size_t n = perm.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j) smaller += perm[j] < perm[i] ? 1 : 0;
    rank = rank * (n - i) + smaller;
  }
  return rank;
}

// Adjacent transpositions (k, k+1) generating the Young subgroup of alpha.
std::vector<int> block_generators(const OrderedPartition& alpha) {
  std::vector<int> gens;
  int start = 0;
  for (int part : alpha.parts()) {
    for (int k = start; k + 1 < start + part; ++k) gens.push_back(k);
    start += part;
  }
  return gens;
}

}  // namespace

long double_coset_count(const OrderedPartition& alpha, const OrderedPartition& beta) {
  if (alpha.weight() != beta.weight()) throw DomainError("double_coset_count: margins have different weights");
  const int n = alpha.weight();
  require_capacity(n, 6, "double_coset_count");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> all;
  do {
    all.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  DisjointSets sets(all.size());
  long components = static_cast<long>(all.size());
  const auto left = block_generators(alpha);
  const auto right = block_generators(beta);
  for (std::size_t idx = 0; idx < all.size(); ++idx) {
    for (int k : left) {
      // h o g with h = (k k+1): swap the values k and k+1
      auto moved = all[idx];
      for (int& v : moved) v = v == k ? k + 1 : (v == k + 1 ? k : v);
      if (sets.unite(idx, permutation_rank(moved))) --components;
    }
    for (int k : right) {
      // g o t with t = (k k+1): swap positions k and k+1
      auto moved = all[idx];
      std::swap(moved[static_cast<std::size_t>(k)], moved[static_cast<std::size_t>(k) + 1]);
      if (sets.unite(idx, permutation_rank(moved))) --components;
    }
  }
  return components;
}

BigInt colored_lift_count(const ContingencyMatrix& m) {
  BigInt result = factorial(static_cast<unsigned>(m.weight()));
  for (int v : m.entries()) result /= factorial(static_cast<unsigned>(v));
  return result;
}

CmPoset::CmPoset(int n) : n_(n), elements_(enumerate_cm(n)) {
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
  up_.resize(elements_.size());
  down_.resize(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const auto& m = elements_[i];
    for (ContractionKind kind : {ContractionKind::horizontal, ContractionKind::vertical}) {
      for (int pos = 0; pos < contraction_count(m, kind); ++pos) {
        const std::size_t target = index_.at(contract(m, kind, pos));
        up_[i].push_back(covers_.size());
        down_[target].push_back(covers_.size());
        covers_.push_back({i, target, kind, pos});
      }
    }
  }
}

std::optional<std::size_t> CmPoset::index_of(const ContingencyMatrix& m) const {
  if (auto it = index_.find(m); it != index_.end()) return it->second;
  return std::nullopt;
}

std::size_t CmPoset::require_index(const ContingencyMatrix& m) const {
  if (auto idx = index_of(m)) return *idx;
  throw DomainError("matrix " + m.to_string() + " is not an element of CM_" + std::to_string(n_));
}

std::optional<std::size_t> CmPoset::cover_between(std::size_t from, std::size_t to) const {
  for (std::size_t c : up_[from]) {
    if (covers_[c].to == to) return c;
  }
  return std::nullopt;
}

int CmPoset::rank(std::size_t i) const { return 2 * n_ - (elements_[i].rows() + elements_[i].cols()); }

std::size_t CmPoset::maximum() const { return 0; }

std::vector<std::size_t> CmPoset::minimal_elements() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (down_[i].empty()) out.push_back(i);
  }
  return out;
}

bool CmPoset::leq(std::size_t a, std::size_t b) const { return reachable(a, b, std::nullopt); }
bool CmPoset::leq_horizontal(std::size_t a, std::size_t b) const {
  return reachable(a, b, ContractionKind::horizontal);
}
bool CmPoset::leq_vertical(std::size_t a, std::size_t b) const { return reachable(a, b, ContractionKind::vertical); }

bool CmPoset::reachable(std::size_t a, std::size_t b, std::optional<ContractionKind> only) const {
  if (a == b) return true;
  const auto& target = elements_[b];
  std::vector<char> seen(elements_.size(), 0);
  std::vector<std::size_t> stack{a};
  seen[a] = 1;
  while (!stack.empty()) {
    const std::size_t cur = stack.back();
    stack.pop_back();
    for (std::size_t c : up_[cur]) {
      const auto& cover = covers_[c];
      if (only && cover.kind != *only) continue;
      const std::size_t next = cover.to;
      if (next == b) return true;
      const auto& m = elements_[next];
      if (seen[next] || m.rows() < target.rows() || m.cols() < target.cols()) continue;
      seen[next] = 1;
      stack.push_back(next);
    }
  }
  return false;
}

CmPoset build_poset(int n) {
  if (n < 1) throw DomainError("build_poset: n must be positive");
  require_capacity(n, 7, "build_poset");
  return CmPoset(n);
}

}  // namespace stoch
