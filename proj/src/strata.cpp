#include "stoch/strata.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "stoch/errors.hpp"

namespace stoch {

PointConfiguration::PointConfiguration(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.empty()) throw DomainError("a configuration needs at least one point");
  for (auto& pt : points_) {
    pt.re.canonicalize();
    pt.im.canonicalize();
  }
}

ContingencyMatrix contingency_label(const PointConfiguration& z) {
  std::vector<Rational> xs;
  std::vector<Rational> ys;
  for (const auto& pt : z.points()) {
    xs.push_back(pt.re);
    ys.push_back(pt.im);
  }
  auto distinct = [](std::vector<Rational>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  distinct(xs);
  distinct(ys);
  const auto p = static_cast<int>(xs.size());
  const auto q = static_cast<int>(ys.size());
  std::vector<int> entries(static_cast<std::size_t>(p * q), 0);
  for (const auto& pt : z.points()) {
    const auto i = std::lower_bound(xs.begin(), xs.end(), pt.re) - xs.begin();
    const auto j = std::lower_bound(ys.begin(), ys.end(), pt.im) - ys.begin();
    ++entries[static_cast<std::size_t>(i * q + j)];
  }
  return ContingencyMatrix(p, q, std::move(entries));
}

OrderedPartition compress(std::span<const int> r) {
  std::vector<int> parts;
  for (int v : r) {
    if (v < 0) throw DomainError("compress: negative component");
    if (v > 0) parts.push_back(v);
  }
  if (parts.empty()) throw DomainError("compress: no positive component");
  return OrderedPartition(std::move(parts));
}

int FnfLabel::dimension() const {
  int d = beta.length();
  for (const auto& g : gamma) d += g.length();
  return d;
}

OrderedPartition FnfLabel::flat_gamma() const { return concatenate(gamma); }

std::string FnfLabel::to_string() const { return "[" + beta.to_string() + ":" + flat_gamma().to_string() + "]"; }

FnfLabel fnf_label(const ContingencyMatrix& m) {
  std::vector<int> sums;
  std::vector<OrderedPartition> gamma;
  for (int j = 0; j < m.cols(); ++j) {
    const auto column = m.column(j);
    sums.push_back(std::accumulate(column.begin(), column.end(), 0));
    gamma.push_back(compress(column));
  }
  return FnfLabel{OrderedPartition(std::move(sums)), std::move(gamma)};
}

FnfLabel ifnf_label(const ContingencyMatrix& m) { return fnf_label(m.transposed()); }

std::vector<int> multiplicity_partition(const ContingencyMatrix& m) {
  std::vector<int> parts;
  for (int v : m.entries()) {
    if (v > 0) parts.push_back(v);
  }
  std::sort(parts.begin(), parts.end(), std::greater<>());
  return parts;
}

CellDimensions cell_dimensions(const ContingencyMatrix& m) {
  return {m.rows() + m.cols(), fnf_label(m).dimension(), ifnf_label(m).dimension(),
          2 * static_cast<int>(multiplicity_partition(m).size())};
}

namespace {

// Can the parts of `lines` be sent, monotonically along each line, onto the parts of `target`
// so that each target part is the sum of what it receives?
class MergeSearch {
 public:
  MergeSearch(const OrderedPartition& target, const std::vector<const OrderedPartition*>& lines)
      : target_(target), lines_(lines) {}

  bool run() {
    std::vector<int> ptr(lines_.size(), 0);
    return fill_block(0, ptr);
  }

 private:
  bool fill_block(int block, std::vector<int>& ptr) {
    if (block == target_.length()) {
      for (std::size_t t = 0; t < lines_.size(); ++t) {
        if (ptr[t] != lines_[t]->length()) return false;
      }
      return true;
    }
    auto key = std::make_pair(block, ptr);
    if (failed_.count(key)) return false;
    std::vector<int> next = ptr;
    const bool ok = extend(block, 0, target_[static_cast<std::size_t>(block)], ptr, next);
    if (!ok) failed_.insert(std::move(key));
    return ok;
  }

  // Chooses how far line t advances within the current block.
  bool extend(int block, std::size_t t, int remaining, const std::vector<int>& ptr, std::vector<int>& next) {
    if (t == lines_.size()) return remaining == 0 && fill_block(block + 1, next);
    const auto& line = *lines_[t];
    int taken = 0;
    for (int end = ptr[t];; ++end) {
      next[t] = end;
      if (extend(block, t + 1, remaining - taken, ptr, next)) return true;
      if (end == line.length()) break;
      taken += line[static_cast<std::size_t>(end)];
      if (taken > remaining) break;
    }
    next[t] = ptr[t];
    return false;
  }

  const OrderedPartition& target_;
  const std::vector<const OrderedPartition*>& lines_;
  std::set<std::pair<int, std::vector<int>>> failed_;
};

}  // namespace

bool fnf_closure_leq(const FnfLabel& a, const FnfLabel& b) {
  if (a.beta.weight() != b.beta.weight()) throw DomainError("fnf_closure_leq: labels of different weights");
  if (!refines(a.beta, b.beta)) return false;
  std::size_t line = 0;
  for (int k = 0; k < a.beta.length(); ++k) {
    std::vector<const OrderedPartition*> group;
    int sum = 0;
    while (sum < a.beta[static_cast<std::size_t>(k)]) {
      sum += b.beta[line];
      group.push_back(&b.gamma[line]);
      ++line;
    }
    if (!MergeSearch(a.gamma[static_cast<std::size_t>(k)], group).run()) return false;
  }
  return true;
}

std::string_view to_string(AnodyneKind kind) {
  switch (kind) {
    case AnodyneKind::horizontal:
      return "horizontal";
    case AnodyneKind::vertical:
      return "vertical";
    default:
      return "both";
  }
}

AnodyneKind parse_anodyne_kind(std::string_view text) {
  if (text == "both") return AnodyneKind::both;
  if (text == "horizontal") return AnodyneKind::horizontal;
  if (text == "vertical") return AnodyneKind::vertical;
  throw DomainError("unknown anodyne kind '" + std::string(text) + "'");
}

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

}  // namespace

AnodyneClasses anodyne_classes(const CmPoset& poset, AnodyneKind kind) {
  require_capacity(poset.weight(), 5, "anodyne_classes");
  const std::size_t size = poset.size();
  UnionFind uf(size);
  for (const auto& c : poset.covers()) {
    const bool wanted = kind == AnodyneKind::both || (kind == AnodyneKind::horizontal) == (c.kind == ContractionKind::horizontal);
    if (wanted && is_anodyne(poset.element(c.from), c.kind, c.pos)) uf.unite(c.from, c.to);
  }

  // label fibers, numbered by first appearance
  std::vector<std::size_t> fiber(size);
  std::map<std::string, std::size_t> fiber_ids;
  for (std::size_t i = 0; i < size; ++i) {
    const auto& m = poset.element(i);
    std::string key;
    if (kind == AnodyneKind::both) {
      for (int v : multiplicity_partition(m)) key += std::to_string(v) + ",";
    } else {
      const FnfLabel label = kind == AnodyneKind::horizontal ? fnf_label(m) : ifnf_label(m);
      key = label.beta.to_string();
      for (const auto& g : label.gamma) key += g.to_string();
    }
    fiber[i] = fiber_ids.emplace(key, fiber_ids.size()).first->second;
  }

  AnodyneClasses out{poset.weight(), kind, {}, fiber_ids.size(), true, std::nullopt};
  std::map<std::size_t, std::size_t> class_pos;
  std::map<std::size_t, std::size_t> class_fiber;
  std::map<std::size_t, std::size_t> fiber_class;
  std::map<std::size_t, std::size_t> class_rep;
  std::map<std::size_t, std::size_t> fiber_rep;
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t root = uf.find(i);
    auto [it, fresh] = class_pos.emplace(root, out.classes.size());
    if (fresh) out.classes.emplace_back();
    out.classes[it->second].push_back(i);
    if (!out.matches_fibers) continue;
    class_rep.emplace(root, i);
    fiber_rep.emplace(fiber[i], i);
    const auto cf = class_fiber.emplace(root, fiber[i]).first->second;
    const auto fc = fiber_class.emplace(fiber[i], root).first->second;
    if (cf != fiber[i]) {
      out.matches_fibers = false;
      out.witness = std::pair{class_rep[root], i};  // same class, different fibers
    } else if (fc != root) {
      out.matches_fibers = false;
      out.witness = std::pair{fiber_rep[fiber[i]], i};  // same fiber, different classes
    }
  }
  return out;
}

AnodyneClasses anodyne_classes(int n, AnodyneKind kind) {
  if (n < 1) throw DomainError("anodyne_classes: n must be positive");
  require_capacity(n, 5, "anodyne_classes");
  return anodyne_classes(build_poset(n), kind);
}

bool MeetReport::pass() const {
  return std::all_of(groups.begin(), groups.end(), [](const MeetGroup& g) { return g.constant_shape; });
}

MeetReport meet_check(int n) {
  if (n < 1) throw DomainError("meet_check: n must be positive");
  require_capacity(n, 6, "meet_check");
  std::map<std::pair<FnfLabel, FnfLabel>, std::vector<ContingencyMatrix>> grouped;
  for_each_cm(n, {}, [&](const ContingencyMatrix& m) { grouped[{fnf_label(m), ifnf_label(m)}].push_back(m); });
  MeetReport report{n, {}};
  for (auto& [key, members] : grouped) {
    const bool constant = std::all_of(members.begin(), members.end(), [&](const ContingencyMatrix& m) {
      return m.rows() == members.front().rows() && m.cols() == members.front().cols();
    });
    report.groups.push_back({key.first, key.second, std::move(members), constant});
  }
  return report;
}

}  // namespace stoch
