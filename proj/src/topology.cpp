#include "stoch/topology.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <queue>
#include <stdexcept>
#include <thread>

#include "stoch/errors.hpp"

namespace stoch {

PosetFragment::PosetFragment(std::vector<std::size_t> ids,
                             const std::vector<std::pair<std::size_t, std::size_t>>& less_pairs) {
  const std::size_t n = ids.size();
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& [lo, hi] : less_pairs) {
    if (lo >= n || hi >= n) throw DomainError("poset relation refers to an unknown element");
    if (lo == hi) throw DomainError("poset relation must be irreflexive");
    succ[lo].push_back(hi);
    ++indegree[hi];
  }
  // Kahn's algorithm, smallest input label first
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const std::size_t v = ready.top();
    ready.pop();
    order.push_back(v);
    for (std::size_t w : succ[v]) {
      if (--indegree[w] == 0) ready.push(w);
    }
  }
  if (order.size() != n) throw DomainError("poset relation contains a cycle");
  std::vector<std::size_t> position(n);
  for (std::size_t k = 0; k < n; ++k) position[order[k]] = k;

  ids_.resize(n);
  for (std::size_t k = 0; k < n; ++k) ids_[k] = ids[order[k]];
  // transitive closure, sweeping from the top of the linear extension down
  const std::size_t words = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> reach(n, std::vector<std::uint64_t>(words, 0));
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t w : succ[order[k]]) {
      const std::size_t pw = position[w];
      reach[k][pw / 64] |= std::uint64_t{1} << (pw % 64);
      for (std::size_t x = 0; x < words; ++x) reach[k][x] |= reach[pw][x];
    }
  }
  above_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = k + 1; j < n; ++j) {
      if (reach[k][j / 64] >> (j % 64) & 1U) above_[k].push_back(static_cast<std::uint32_t>(j));
    }
  }
}

bool PosetFragment::less(std::size_t a, std::size_t b) const {
  const auto& list = above_[a];
  return std::binary_search(list.begin(), list.end(), static_cast<std::uint32_t>(b));
}

namespace {

PosetFragment fragment_from(const CmPoset& poset, std::vector<std::size_t> members) {
  std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
    const int ra = poset.rank(a);
    const int rb = poset.rank(b);
    return ra != rb ? ra < rb : a < b;
  });
  std::vector<std::size_t> local(poset.size(), poset.size());
  for (std::size_t k = 0; k < members.size(); ++k) local[members[k]] = k;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t k = 0; k < members.size(); ++k) {
    for (std::size_t c : poset.up_covers(members[k])) {
      const std::size_t to = poset.covers()[c].to;
      if (local[to] != poset.size()) pairs.emplace_back(k, local[to]);
    }
  }
  return PosetFragment(std::move(members), pairs);
}

}  // namespace

PosetFragment lower_interval(const CmPoset& poset, std::size_t m, bool strict) {
  if (m >= poset.size()) throw DomainError("lower_interval: element index out of range");
  std::vector<char> seen(poset.size(), 0);
  std::vector<std::size_t> stack{m};
  std::vector<std::size_t> members;
  seen[m] = 1;
  while (!stack.empty()) {
    const std::size_t cur = stack.back();
    stack.pop_back();
    if (cur != m || !strict) members.push_back(cur);
    for (std::size_t c : poset.down_covers(cur)) {
      const std::size_t from = poset.covers()[c].from;
      if (!seen[from]) {
        seen[from] = 1;
        stack.push_back(from);
      }
    }
  }
  return fragment_from(poset, std::move(members));
}

PosetFragment whole_poset(const CmPoset& poset) {
  std::vector<std::size_t> all(poset.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return fragment_from(poset, std::move(all));
}

SimplicialComplex::SimplicialComplex(std::vector<std::size_t> vertex_ids) : vertex_ids_(std::move(vertex_ids)) {}

void SimplicialComplex::add_simplex(const std::vector<std::uint32_t>& vertices) {
  if (vertices.empty()) throw DomainError("simplices need at least one vertex");
  const std::size_t dim = vertices.size() - 1;
  if (by_dim_.size() <= dim) by_dim_.resize(dim + 1);
  by_dim_[dim].insert(by_dim_[dim].end(), vertices.begin(), vertices.end());
}

std::size_t SimplicialComplex::count(int dim) const {
  if (dim < 0 || dim > dimension()) return 0;
  return by_dim_[static_cast<std::size_t>(dim)].size() / static_cast<std::size_t>(dim + 1);
}

std::vector<std::uint32_t> SimplicialComplex::simplex(int dim, std::size_t index) const {
  const auto stride = static_cast<std::size_t>(dim + 1);
  const auto first = by_dim_[static_cast<std::size_t>(dim)].begin() + static_cast<std::ptrdiff_t>(index * stride);
  return {first, first + static_cast<std::ptrdiff_t>(stride)};
}

std::optional<std::size_t> SimplicialComplex::find(const std::vector<std::uint32_t>& vertices) const {
  const int dim = static_cast<int>(vertices.size()) - 1;
  if (dim < 0 || dim > dimension()) return std::nullopt;
  const auto& flat = by_dim_[static_cast<std::size_t>(dim)];
  const auto stride = vertices.size();
  std::size_t lo = 0;
  std::size_t hi = flat.size() / stride;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const auto first = flat.begin() + static_cast<std::ptrdiff_t>(mid * stride);
    if (std::lexicographical_compare(first, first + static_cast<std::ptrdiff_t>(stride), vertices.begin(),
                                     vertices.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < flat.size() / stride &&
      std::equal(vertices.begin(), vertices.end(), flat.begin() + static_cast<std::ptrdiff_t>(lo * stride))) {
    return lo;
  }
  return std::nullopt;
}

std::vector<std::size_t> SimplicialComplex::f_vector() const {
  std::vector<std::size_t> f;
  for (int d = 0; d <= dimension(); ++d) f.push_back(count(d));
  return f;
}

bool SimplicialComplex::is_closed() const {
  for (int d = 1; d <= dimension(); ++d) {
    for (std::size_t s = 0; s < count(d); ++s) {
      const auto verts = simplex(d, s);
      for (std::size_t drop = 0; drop < verts.size(); ++drop) {
        auto face = verts;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
        if (!find(face)) return false;
      }
    }
  }
  return true;
}

SimplicialComplex order_complex(const PosetFragment& poset) {
  SimplicialComplex k(poset.ids());
  // collect chains by dimension first so every dimension stays lexicographic
  std::vector<std::vector<std::vector<std::uint32_t>>> chains;
  std::vector<std::uint32_t> chain;
  std::function<void()> extend = [&]() {
    const std::size_t dim = chain.size() - 1;
    if (chains.size() <= dim) chains.resize(dim + 1);
    chains[dim].push_back(chain);
    for (std::uint32_t next : poset.above(chain.back())) {
      chain.push_back(next);
      extend();
      chain.pop_back();
    }
  };
  for (std::size_t v = 0; v < poset.size(); ++v) {
    chain.assign(1, static_cast<std::uint32_t>(v));
    extend();
  }
  for (auto& dim_chains : chains) {
    for (auto& c : dim_chains) k.add_simplex(c);
    dim_chains.clear();
    dim_chains.shrink_to_fit();
  }
  return k;
}

std::size_t HomologyProfile::betti(int degree) const {
  for (const auto& d : degrees) {
    if (d.degree == degree) return d.betti;
  }
  return 0;
}

const std::vector<BigInt>& HomologyProfile::torsion(int degree) const {
  static const std::vector<BigInt> none;
  for (const auto& d : degrees) {
    if (d.degree == degree) return d.torsion;
  }
  return none;
}

bool HomologyProfile::is_acyclic() const {
  return std::all_of(degrees.begin(), degrees.end(),
                     [](const DegreeHomology& d) { return d.betti == 0 && d.torsion.empty(); });
}

bool HomologyProfile::is_sphere(int dim) const {
  bool found = false;
  for (const auto& d : degrees) {
    if (!d.torsion.empty()) return false;
    if (d.degree == dim) {
      if (d.betti != 1) return false;
      found = true;
    } else if (d.betti != 0) {
      return false;
    }
  }
  return found;
}

SparseIntMatrix boundary_matrix(const SimplicialComplex& k, int dim) {
  SparseIntMatrix m;
  m.rows = dim == 0 ? 1 : k.count(dim - 1);
  m.columns.resize(k.count(dim));
  for (std::size_t s = 0; s < k.count(dim); ++s) {
    auto& column = m.columns[s];
    if (dim == 0) {
      column.push_back({0, 1});
      continue;
    }
    const auto verts = k.simplex(dim, s);
    for (std::size_t drop = 0; drop < verts.size(); ++drop) {
      auto face = verts;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
      const auto row = k.find(face);
      if (!row) throw StructuralError("simplicial complex is not closed under faces");
      column.push_back({static_cast<std::uint32_t>(*row), drop % 2 == 0 ? 1 : -1});
    }
    std::sort(column.begin(), column.end(), [](const auto& a, const auto& b) { return a.row < b.row; });
  }
  return m;
}

HomologyProfile homology(const SimplicialComplex& k) {
  const int top = k.dimension();
  // rank_of[d] = rank of the boundary C_d -> C_{d-1}, d = 0 .. top+1
  std::vector<std::size_t> rank_of(static_cast<std::size_t>(top + 2), 0);
  std::vector<std::vector<BigInt>> torsion_of(static_cast<std::size_t>(top + 2));
  // Top dimension first: a simplex that is the unit pivot of a reduced column one
  // dimension up has a boundary that is an integral combination of earlier boundaries,
  // so its column can be skipped outright.
  std::vector<char> cleared;
  for (int d = top; d >= 0; --d) {
    const auto boundary = boundary_matrix(k, d);
    const bool usable = cleared.size() == boundary.columns.size();
    if (auto fast = reduce_with_unit_pivots(boundary, usable ? &cleared : nullptr)) {
      rank_of[static_cast<std::size_t>(d)] = fast->rank;
      cleared = std::move(fast->pivot_rows);
      continue;
    }
    auto factors = invariant_factors(boundary);
    rank_of[static_cast<std::size_t>(d)] = factors.rank;
    torsion_of[static_cast<std::size_t>(d)] = std::move(factors.torsion);
    cleared.clear();
  }
  HomologyProfile profile;
  long euler_chain = 0;
  long euler_betti = 0;
  for (int d = -1; d <= top; ++d) {
    const std::size_t faces = d < 0 ? 1 : k.count(d);
    const std::size_t out_rank = d < 0 ? 0 : rank_of[static_cast<std::size_t>(d)];
    const std::size_t in_rank = rank_of[static_cast<std::size_t>(d + 1)];
    if (out_rank + in_rank > faces) throw std::logic_error("homology: boundary ranks exceed chain group rank");
    DegreeHomology h{d, faces - out_rank - in_rank, torsion_of[static_cast<std::size_t>(d + 1)]};
    const long sign = (d % 2 == 0) ? 1 : -1;
    euler_chain += sign * static_cast<long>(faces);
    euler_betti += sign * static_cast<long>(h.betti);
    profile.degrees.push_back(std::move(h));
  }
  if (euler_chain != euler_betti) throw std::logic_error("homology: Euler characteristic mismatch");
  return profile;
}

SphericityReport verify_sphericity(int n, unsigned jobs) {
  if (n < 1) throw DomainError("verify_sphericity: n must be positive");
  require_capacity(n, 4, "verify_sphericity");
  return verify_sphericity(build_poset(n), jobs);
}

SphericityReport verify_sphericity(const CmPoset& poset, unsigned jobs) {
  require_capacity(poset.weight(), 4, "verify_sphericity");
  const int n = poset.weight();
  SphericityReport report{n, std::vector<SphericityRecord>(poset.size()), {}};
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < poset.size(); i = next++) {
      const auto& m = poset.element(i);
      SphericityRecord& rec = report.records[i];
      rec.element = i;
      rec.expected_sphere_dim = 2 * n - (m.rows() + m.cols()) - 1;
      const auto strict = order_complex(lower_interval(poset, i, true));
      rec.strict_simplices = 0;
      for (auto f : strict.f_vector()) rec.strict_simplices += f;
      rec.strict_homology = homology(strict);
      rec.closed_homology = homology(order_complex(lower_interval(poset, i, false)));
      rec.pass = rec.strict_homology.is_sphere(rec.expected_sphere_dim) && rec.closed_homology.is_acyclic();
    }
  };
  const unsigned threads = std::max(1U, jobs);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    if (!report.records[i].pass) report.violations.push_back(i);
  }
  return report;
}

std::map<int, BigInt> f_vector(int n) {
  if (n < 1) throw DomainError("f_vector: n must be positive");
  require_capacity(n, 7, "f_vector");
  std::map<int, BigInt> census;
  for (int p = 1; p <= n; ++p) {
    for (int q = 1; q <= n; ++q) {
      auto count = count_cm(n, p, q);
      if (count != 0) census[2 * n - (p + q)] += count;
    }
  }
  return census;
}

}  // namespace stoch
