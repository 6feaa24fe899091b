#pragma once

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "stoch/contingency.hpp"
#include "stoch/exact_matrix.hpp"

namespace stoch {

/// Vector spaces over Q on the elements of CM_n with a linear map along every cover
/// N -> contract(N). The map of cover c has shape dim(to) x dim(from).
class Representation {
 public:
  /// Throws StructuralError when the number of spaces or maps is wrong or a map has the wrong shape.
  Representation(std::shared_ptr<const CmPoset> poset, std::vector<std::size_t> dims, std::vector<RatMatrix> maps);

  const CmPoset& poset() const { return *poset_; }
  std::shared_ptr<const CmPoset> poset_ptr() const { return poset_; }
  std::size_t dim(std::size_t element) const { return dims_[element]; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  /// Map along cover index c (see CmPoset::covers()).
  const RatMatrix& map(std::size_t c) const { return maps_[c]; }
  const std::vector<RatMatrix>& maps() const { return maps_; }

 private:
  std::shared_ptr<const CmPoset> poset_;
  std::vector<std::size_t> dims_;
  std::vector<RatMatrix> maps_;
};

/// Two saturated chains bottom -> left -> top and bottom -> right -> top.
struct Diamond {
  std::size_t bottom;
  std::size_t left;
  std::size_t right;
  std::size_t top;
};

struct ValidationReport {
  bool valid;
  std::size_t diamonds_checked;
  std::vector<Diamond> failures;
};

/// Compares the two composites around every length-2 interval.
ValidationReport validate(const Representation& rep);

/// The composite along some saturated chain from a up to b, or nullopt when a is not <= b.
/// Well defined once the representation validates.
std::optional<RatMatrix> generalization_map(const Representation& rep, std::size_t a, std::size_t b);

enum class Stratification { cont, fnf, ifnf, complex };
std::string_view to_string(Stratification s);
Stratification parse_stratification(std::string_view text);

struct ConstructibilityReport {
  bool constructible;
  /// First cover (by index) whose map is required to be invertible and is not.
  std::optional<std::size_t> witness;
  std::size_t maps_checked;
};

/// fnf: maps along anodyne horizontal contractions must be invertible; ifnf: anodyne vertical;
/// complex: every contraction that keeps the multiset of entries (these are exactly the anodyne
/// ones of either kind); cont: nothing to check. Throws StructuralError when rep fails validate().
ConstructibilityReport is_constructible(const Representation& rep, Stratification strat);

/// Dimension d everywhere, identity maps. n <= 5.
Representation constant_sheaf(int n, std::size_t d);

}  // namespace stoch
