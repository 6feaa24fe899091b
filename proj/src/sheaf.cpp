#include "stoch/sheaf.hpp"

#include <algorithm>
#include <map>
#include <queue>

#include "stoch/errors.hpp"
#include "stoch/strata.hpp"

namespace stoch {

Representation::Representation(std::shared_ptr<const CmPoset> poset, std::vector<std::size_t> dims,
                               std::vector<RatMatrix> maps)
    : poset_(std::move(poset)), dims_(std::move(dims)), maps_(std::move(maps)) {
  if (!poset_) throw StructuralError("representation without a poset");
  if (dims_.size() != poset_->size()) throw StructuralError("one space per poset element is required");
  if (maps_.size() != poset_->covers().size()) throw StructuralError("one map per cover is required");
  for (std::size_t c = 0; c < maps_.size(); ++c) {
    const auto& cover = poset_->covers()[c];
    if (maps_[c].rows() != dims_[cover.to] || maps_[c].cols() != dims_[cover.from]) {
      throw StructuralError("map " + std::to_string(cover.from) + " -> " + std::to_string(cover.to) +
                            " has shape " + std::to_string(maps_[c].rows()) + "x" + std::to_string(maps_[c].cols()) +
                            ", expected " + std::to_string(dims_[cover.to]) + "x" + std::to_string(dims_[cover.from]));
    }
  }
}

ValidationReport validate(const Representation& rep) {
  const auto& poset = rep.poset();
  ValidationReport report{true, 0, {}};
  for (std::size_t bottom = 0; bottom < poset.size(); ++bottom) {
    // top -> (middle, composite) of the first chain seen
    std::map<std::size_t, std::pair<std::size_t, RatMatrix>> seen;
    for (std::size_t c1 : poset.up_covers(bottom)) {
      const std::size_t mid = poset.covers()[c1].to;
      for (std::size_t c2 : poset.up_covers(mid)) {
        const std::size_t top = poset.covers()[c2].to;
        RatMatrix composite = rep.map(c2) * rep.map(c1);
        auto it = seen.find(top);
        if (it == seen.end()) {
          seen.emplace(top, std::pair{mid, std::move(composite)});
          continue;
        }
        ++report.diamonds_checked;
        if (!(it->second.second == composite)) {
          report.valid = false;
          report.failures.push_back({bottom, it->second.first, mid, top});
        }
      }
    }
  }
  return report;
}

std::optional<RatMatrix> generalization_map(const Representation& rep, std::size_t a, std::size_t b) {
  const auto& poset = rep.poset();
  if (a >= poset.size() || b >= poset.size()) throw DomainError("generalization_map: element out of range");
  if (!poset.leq(a, b)) return std::nullopt;
  RatMatrix composite = RatMatrix::identity(rep.dim(a));
  std::size_t cur = a;
  while (cur != b) {
    bool moved = false;
    for (std::size_t c : poset.up_covers(cur)) {
      const std::size_t next = poset.covers()[c].to;
      if (poset.leq(next, b)) {
        composite = rep.map(c) * composite;
        cur = next;
        moved = true;
        break;
      }
    }
    if (!moved) throw std::logic_error("generalization_map: no saturated chain found");
  }
  return composite;
}

std::string_view to_string(Stratification s) {
  switch (s) {
    case Stratification::cont:
      return "cont";
    case Stratification::fnf:
      return "fnf";
    case Stratification::ifnf:
      return "ifnf";
    default:
      return "complex";
  }
}

Stratification parse_stratification(std::string_view text) {
  if (text == "cont") return Stratification::cont;
  if (text == "fnf") return Stratification::fnf;
  if (text == "ifnf") return Stratification::ifnf;
  if (text == "complex") return Stratification::complex;
  throw DomainError("unknown stratification '" + std::string(text) + "'");
}

ConstructibilityReport is_constructible(const Representation& rep, Stratification strat) {
  if (!validate(rep).valid) throw StructuralError("representation does not validate");
  const auto& poset = rep.poset();
  ConstructibilityReport report{true, std::nullopt, 0};
  if (strat == Stratification::cont) return report;
  for (std::size_t c = 0; c < poset.covers().size(); ++c) {
    const auto& cover = poset.covers()[c];
    const auto& from = poset.element(cover.from);
    bool required = false;
    switch (strat) {
      case Stratification::fnf:
        required = cover.kind == ContractionKind::horizontal && is_anodyne(from, cover.kind, cover.pos);
        break;
      case Stratification::ifnf:
        required = cover.kind == ContractionKind::vertical && is_anodyne(from, cover.kind, cover.pos);
        break;
      default:
        required = multiplicity_partition(from) == multiplicity_partition(poset.element(cover.to));
        break;
    }
    if (!required) continue;
    ++report.maps_checked;
    if (!is_invertible(rep.map(c))) {
      report.constructible = false;
      report.witness = c;
      return report;
    }
  }
  return report;
}

Representation constant_sheaf(int n, std::size_t d) {
  if (n < 1) throw DomainError("constant_sheaf: n must be positive");
  require_capacity(n, 5, "constant_sheaf");
  auto poset = std::make_shared<const CmPoset>(build_poset(n));
  std::vector<RatMatrix> maps(poset->covers().size(), RatMatrix::identity(d));
  std::vector<std::size_t> dims(poset->size(), d);
  return Representation(std::move(poset), std::move(dims), std::move(maps));
}

}  // namespace stoch
