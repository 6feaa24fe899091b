#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stoch/arith.hpp"
#include "stoch/contingency.hpp"
#include "stoch/partitions.hpp"

namespace stoch {

struct Point {
  Rational re;
  Rational im;
};

/// A divisor of degree n on the complex plane: n points, repetitions allowed.
class PointConfiguration {
 public:
  /// Throws DomainError when `points` is empty.
  explicit PointConfiguration(std::vector<Point> points);
  const std::vector<Point>& points() const { return points_; }
  int degree() const { return static_cast<int>(points_.size()); }

 private:
  std::vector<Point> points_;
};

/// Rows are the distinct real parts in increasing order, columns the distinct imaginary parts.
ContingencyMatrix contingency_label(const PointConfiguration& z);

/// Drops zero components, keeping the order. Throws DomainError when nothing positive remains
/// or an entry is negative.
OrderedPartition compress(std::span<const int> r);

/// [beta : gamma]: multiplicities of the occupied horizontal lines (bottom to top), and along
/// each line the multiplicities from left to right.
struct FnfLabel {
  OrderedPartition beta;
  std::vector<OrderedPartition> gamma;

  int dimension() const;
  /// The gamma parts concatenated.
  OrderedPartition flat_gamma() const;
  /// "[(1,1):(1,1)]", with gamma flattened.
  std::string to_string() const;

  friend bool operator==(const FnfLabel&, const FnfLabel&) = default;
  friend auto operator<=>(const FnfLabel& a, const FnfLabel& b) {
    if (auto c = a.beta <=> b.beta; c != 0) return c;
    return a.gamma <=> b.gamma;
  }
};

/// beta = column sums, gamma[j] = compress(column j).
FnfLabel fnf_label(const ContingencyMatrix& m);
/// The label of the transpose: row sums and compressed rows.
FnfLabel ifnf_label(const ContingencyMatrix& m);

/// Nonzero entries, sorted non-increasing.
std::vector<int> multiplicity_partition(const ContingencyMatrix& m);

/// Dimensions of the four cells containing a configuration with label m
/// (real dimensions; the complex stratum of a partition with l parts has dimension 2l).
struct CellDimensions {
  int contingency;
  int fnf;
  int ifnf;
  int complex;
};
CellDimensions cell_dimensions(const ContingencyMatrix& m);

/// Closure order on FNF labels, oriented so that degenerate (lower-dimensional) labels are smaller.
/// a <= b iff a.beta coarsens b.beta and, for each group of b's lines merging into one line of a,
/// a's line pattern arises from those lines' patterns by an order-preserving merge of parts:
/// every part of every line goes to one of a's parts, weakly monotonically along each line,
/// and each of a's parts is the sum of what it receives. Throws DomainError on unequal weights.
bool fnf_closure_leq(const FnfLabel& a, const FnfLabel& b);

/// Which anodyne contractions generate the equivalence relation.
enum class AnodyneKind { both, horizontal, vertical };
std::string_view to_string(AnodyneKind kind);
AnodyneKind parse_anodyne_kind(std::string_view text);

struct AnodyneClasses {
  int n;
  AnodyneKind kind;
  /// Element indices of CM_n, each class ascending, classes ordered by their first element.
  std::vector<std::vector<std::size_t>> classes;
  /// Number of fibers of the matching label map (Mult, fnf or ifnf).
  std::size_t fiber_count;
  /// True iff classes and fibers coincide.
  bool matches_fibers;
  /// When they differ: two elements in one and not the other.
  std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// Union-find over anodyne contractions, compared with the label fibers. n <= 5.
AnodyneClasses anodyne_classes(const CmPoset& poset, AnodyneKind kind);
AnodyneClasses anodyne_classes(int n, AnodyneKind kind);

struct MeetGroup {
  FnfLabel fnf;
  FnfLabel ifnf;
  std::vector<ContingencyMatrix> members;
  bool constant_shape;
};

struct MeetReport {
  int n;
  std::vector<MeetGroup> groups;  // ordered by (fnf, ifnf)
  bool pass() const;
};

/// Groups CM_n by (fnf_label, ifnf_label) and checks each group has one shape p x q. n <= 6.
MeetReport meet_check(int n);

}  // namespace stoch
