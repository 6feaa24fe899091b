#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "stoch/arith.hpp"
#include "stoch/partitions.hpp"

namespace stoch {

/// A p x q grid of nonnegative integers with no zero row and no zero column.
///
/// Rows are the first index (real direction), columns the second (imaginary
/// direction). Ordering is canonical: (p, q, row-major entries).
class ContingencyMatrix {
 public:
  /// Throws DomainError on a ragged or empty grid, a negative entry, or a zero row/column.
  explicit ContingencyMatrix(const std::vector<std::vector<int>>& rows);
  ContingencyMatrix(int rows, int cols, std::vector<int> entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int weight() const { return weight_; }
  int at(int i, int j) const { return entries_[static_cast<std::size_t>(i * cols_ + j)]; }
  const std::vector<int>& entries() const { return entries_; }

  std::vector<int> row(int i) const;
  std::vector<int> column(int j) const;
  std::vector<std::vector<int>> to_rows() const;
  ContingencyMatrix transposed() const;
  bool is_permutation_matrix() const;

  /// "[[1,0],[0,1]]"
  std::string to_string() const;
  /// Entries joined by spaces, rows separated by '|': "1 0|0 1".
  std::string flat_label() const;

  friend bool operator==(const ContingencyMatrix&, const ContingencyMatrix&) = default;
  friend std::strong_ordering operator<=>(const ContingencyMatrix& a, const ContingencyMatrix& b);

 private:
  ContingencyMatrix() = default;
  void validate();

  int rows_ = 0;
  int cols_ = 0;
  int weight_ = 0;
  std::vector<int> entries_;
};

struct ContingencyMatrixHash {
  std::size_t operator()(const ContingencyMatrix& m) const noexcept;
};

/// Horizontal contractions merge adjacent rows; vertical ones merge adjacent columns.
enum class ContractionKind { horizontal, vertical };

std::string_view to_string(ContractionKind kind);
/// Accepts "horizontal" / "vertical"; throws DomainError otherwise.
ContractionKind parse_contraction_kind(std::string_view text);

struct Margins {
  int weight;
  OrderedPartition horizontal;  // row sums, length p
  OrderedPartition vertical;    // column sums, length q
};

Margins margins(const ContingencyMatrix& m);

/// Merges slices i and i+1 along `kind`. Throws DomainError when i is out of range.
ContingencyMatrix contract(const ContingencyMatrix& m, ContractionKind kind, int i);

/// True iff the two slices merged by contract(m, kind, i) have disjoint supports.
bool is_anodyne(const ContingencyMatrix& m, ContractionKind kind, int i);

/// Number of valid contraction positions of the given kind.
int contraction_count(const ContingencyMatrix& m, ContractionKind kind);

struct CmFilter {
  std::optional<int> p;
  std::optional<int> q;
  std::optional<OrderedPartition> alpha;  // horizontal margin
  std::optional<OrderedPartition> beta;   // vertical margin
};

/// Visits every contingency matrix of weight n accepted by `filter`, in canonical order.
/// Throws DomainError on inconsistent constraints.
void for_each_cm(int n, const CmFilter& filter, const std::function<void(const ContingencyMatrix&)>& visit);

/// Collected form of for_each_cm.
std::vector<ContingencyMatrix> enumerate_cm(int n, const CmFilter& filter = {});

/// Number of matrices in CM_n(p, q), counted by the same row-by-row search.
BigInt count_cm(int n, int p, int q);

/// |S_alpha \ S_n / S_beta| by union-find over all of S_n. Weight must be at most 6
/// (raised by CONTINGENCY_MAX_N); CapacityError otherwise.
long double_coset_count(const OrderedPartition& alpha, const OrderedPartition& beta);

/// n! / prod m_ij!, the number of colored matrices lying over m.
BigInt colored_lift_count(const ContingencyMatrix& m);

/// One contraction edge of the poset: elements[from] contracts to elements[to].
struct Cover {
  std::size_t from;
  std::size_t to;
  ContractionKind kind;
  int pos;
};

/// The poset (CM_n, <=) where N <= M iff M is reachable from N by contractions.
class CmPoset {
 public:
  explicit CmPoset(int n);

  int weight() const { return n_; }
  std::size_t size() const { return elements_.size(); }
  const std::vector<ContingencyMatrix>& elements() const { return elements_; }
  const ContingencyMatrix& element(std::size_t i) const { return elements_[i]; }
  const std::vector<Cover>& covers() const { return covers_; }
  /// Cover indices leaving element i (towards contracted matrices).
  const std::vector<std::size_t>& up_covers(std::size_t i) const { return up_[i]; }
  /// Cover indices arriving at element i.
  const std::vector<std::size_t>& down_covers(std::size_t i) const { return down_[i]; }

  std::optional<std::size_t> index_of(const ContingencyMatrix& m) const;
  /// Like index_of but throws DomainError for a matrix outside the poset.
  std::size_t require_index(const ContingencyMatrix& m) const;
  /// Index of the cover from -> to, if any.
  std::optional<std::size_t> cover_between(std::size_t from, std::size_t to) const;

  /// 2n - (p + q): the cell dimension of element i.
  int rank(std::size_t i) const;
  std::size_t maximum() const;
  std::vector<std::size_t> minimal_elements() const;

  bool leq(std::size_t a, std::size_t b) const;
  bool leq_horizontal(std::size_t a, std::size_t b) const;
  bool leq_vertical(std::size_t a, std::size_t b) const;

 private:
  bool reachable(std::size_t a, std::size_t b, std::optional<ContractionKind> only) const;

  int n_;
  std::vector<ContingencyMatrix> elements_;
  std::unordered_map<ContingencyMatrix, std::size_t, ContingencyMatrixHash> index_;
  std::vector<Cover> covers_;
  std::vector<std::vector<std::size_t>> up_;
  std::vector<std::vector<std::size_t>> down_;
};

/// Builds CM_n as a poset. n is capped at 7 unless CONTINGENCY_MAX_N says otherwise.
CmPoset build_poset(int n);

}  // namespace stoch
