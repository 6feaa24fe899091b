#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "stoch/arith.hpp"
#include "stoch/contingency.hpp"
#include "stoch/smith.hpp"

namespace stoch {

/// A finite poset with its elements stored in a linear extension: local index
/// i < j whenever element i is below element j. `ids` carry caller labels
/// (for CM fragments, indices into the CmPoset).
class PosetFragment {
 public:
  PosetFragment() = default;
  /// Builds from Hasse (or any generating) pairs (lower, upper) over local labels 0..size-1.
  /// Elements are re-ordered by a deterministic topological sort; throws DomainError on a cycle.
  PosetFragment(std::vector<std::size_t> ids, const std::vector<std::pair<std::size_t, std::size_t>>& less_pairs);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<std::size_t>& ids() const { return ids_; }
  /// Local indices strictly above local element i, ascending.
  const std::vector<std::uint32_t>& above(std::size_t i) const { return above_[i]; }
  bool less(std::size_t a, std::size_t b) const;

 private:
  std::vector<std::size_t> ids_;
  std::vector<std::vector<std::uint32_t>> above_;
};

/// {N < M} (strict) or {N <= M} inside the poset. Throws DomainError for an index out of range.
PosetFragment lower_interval(const CmPoset& poset, std::size_t m, bool strict);
/// The whole poset as a fragment.
PosetFragment whole_poset(const CmPoset& poset);

/// Simplices grouped by dimension, each stored as a sorted tuple of vertex
/// indices; within a dimension the tuples are in lexicographic order.
class SimplicialComplex {
 public:
  explicit SimplicialComplex(std::vector<std::size_t> vertex_ids = {});

  /// Appends a simplex given as increasing vertex indices; callers add faces before cofaces
  /// and keep each dimension lexicographically sorted.
  void add_simplex(const std::vector<std::uint32_t>& vertices);

  const std::vector<std::size_t>& vertex_ids() const { return vertex_ids_; }
  /// Highest dimension present, -1 for the empty complex.
  int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
  std::size_t count(int dim) const;
  std::vector<std::uint32_t> simplex(int dim, std::size_t index) const;
  /// Index of a simplex within its dimension, if present.
  std::optional<std::size_t> find(const std::vector<std::uint32_t>& vertices) const;
  /// Face counts f_0, f_1, ... (the empty face excluded).
  std::vector<std::size_t> f_vector() const;
  /// Every listed simplex has all its facets listed.
  bool is_closed() const;

 private:
  std::vector<std::size_t> vertex_ids_;
  std::vector<std::vector<std::uint32_t>> by_dim_;  // flat, stride dim+1
};

/// Chains of distinct comparable elements.
SimplicialComplex order_complex(const PosetFragment& poset);

struct DegreeHomology {
  int degree;
  std::size_t betti;
  std::vector<BigInt> torsion;
};

/// Reduced integral homology in degrees -1 .. dim.
struct HomologyProfile {
  std::vector<DegreeHomology> degrees;

  std::size_t betti(int degree) const;
  const std::vector<BigInt>& torsion(int degree) const;
  bool is_acyclic() const;
  /// Z in degree d and nothing else (d = -1 is the empty complex).
  bool is_sphere(int d) const;
};

/// Boundary map C_dim -> C_{dim-1}; dim = 0 gives the augmentation onto the empty simplex.
SparseIntMatrix boundary_matrix(const SimplicialComplex& k, int dim);

/// Reduced homology over the integers. Cross-checks the Euler characteristic of the
/// chain complex against the Betti numbers and throws std::logic_error on disagreement.
HomologyProfile homology(const SimplicialComplex& k);

struct SphericityRecord {
  std::size_t element;
  int expected_sphere_dim;
  HomologyProfile strict_homology;
  HomologyProfile closed_homology;
  std::size_t strict_simplices;
  bool pass;
};

struct SphericityReport {
  int n;
  std::vector<SphericityRecord> records;
  std::vector<std::size_t> violations;  // positions into records
  bool pass() const { return violations.empty(); }
};

/// Checks, for every M in CM_n(p, q), that the strict lower interval has the reduced
/// homology of S^{2n-p-q-1} and the closed one is acyclic. n <= 4 unless raised by
/// CONTINGENCY_MAX_N. `jobs` > 1 spreads elements over threads.
SphericityReport verify_sphericity(int n, unsigned jobs = 1);
SphericityReport verify_sphericity(const CmPoset& poset, unsigned jobs = 1);

/// Number of M in CM_n by cell dimension 2n - (p+q).
std::map<int, BigInt> f_vector(int n);

}  // namespace stoch
