#include "stoch/json_io.hpp"

#include <sstream>

#include "stoch/errors.hpp"

namespace stoch {

Json to_json(const BigInt& value) {
  if (value.fits_slong_p()) return value.get_si();
  return to_string(value);
}

Json to_json(const OrderedPartition& alpha) { return alpha.parts(); }

Json to_json(const ContingencyMatrix& m) { return Json{{"rows", m.to_rows()}}; }

Json to_json(const FnfLabel& label) {
  Json gamma = Json::array();
  for (const auto& g : label.gamma) gamma.push_back(to_json(g));
  return Json{{"beta", to_json(label.beta)}, {"gamma", gamma}, {"label", label.to_string()},
              {"dimension", label.dimension()}};
}

Json to_json(const HomologyProfile& h) {
  Json out = Json::array();
  for (const auto& d : h.degrees) {
    Json torsion = Json::array();
    for (const auto& t : d.torsion) torsion.push_back(to_json(t));
    out.push_back(Json{{"degree", d.degree}, {"betti", d.betti}, {"torsion", torsion}});
  }
  return out;
}

Json to_json(const SphericityRecord& record, const CmPoset& poset) {
  return Json{{"element", to_json(poset.element(record.element))},
              {"index", record.element},
              {"expected_sphere_dim", record.expected_sphere_dim},
              {"homology", to_json(record.strict_homology)},
              {"closed_acyclic", record.closed_homology.is_acyclic()},
              {"simplices", record.strict_simplices},
              {"pass", record.pass}};
}

Json to_json(const CmPoset& poset) {
  Json elements = Json::array();
  for (const auto& m : poset.elements()) elements.push_back(m.to_rows());
  Json covers = Json::array();
  for (const auto& c : poset.covers()) {
    covers.push_back(Json{{"from", c.from}, {"to", c.to}, {"kind", std::string(to_string(c.kind))}, {"pos", c.pos}});
  }
  return Json{{"n", poset.weight()}, {"elements", elements}, {"covers", covers}};
}

Json to_json(const Representation& rep) {
  Json spaces = Json::object();
  for (std::size_t i = 0; i < rep.dims().size(); ++i) spaces[std::to_string(i)] = rep.dim(i);
  Json maps = Json::array();
  for (std::size_t c = 0; c < rep.maps().size(); ++c) {
    const auto& cover = rep.poset().covers()[c];
    maps.push_back(Json{{"from", cover.from}, {"to", cover.to}, {"matrix", to_strings(rep.map(c))}});
  }
  return Json{{"n", rep.poset().weight()}, {"spaces", spaces}, {"maps", maps}};
}

Json classification_json(const ContingencyMatrix& m) {
  const auto dims = cell_dimensions(m);
  const auto mg = margins(m);
  return Json{{"contingency", to_json(m)},
              {"margins", {{"horizontal", to_json(mg.horizontal)}, {"vertical", to_json(mg.vertical)}}},
              {"fnf", to_json(fnf_label(m))},
              {"ifnf", to_json(ifnf_label(m))},
              {"multiplicity", multiplicity_partition(m)},
              {"dimensions",
               {{"contingency", dims.contingency}, {"fnf", dims.fnf}, {"ifnf", dims.ifnf}, {"complex", dims.complex}}}};
}

namespace {

[[noreturn]] void malformed(const std::string& what) { throw StructuralError("malformed input: " + what); }

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) malformed(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::size_t as_index(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) malformed(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

Rational as_rational(const Json& j, const char* what) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  malformed(std::string(what) + " must be a rational string or an integer");
}

}  // namespace

OrderedPartition partition_from_json(const Json& j) {
  if (!j.is_array()) malformed("a partition is an array of positive integers");
  std::vector<int> parts;
  for (const auto& v : j) parts.push_back(as_int(v, "partition part"));
  return OrderedPartition(std::move(parts));
}

ContingencyMatrix matrix_from_json(const Json& j) {
  const Json& rows = j.is_object() && j.contains("rows") ? j.at("rows") : j;
  if (!rows.is_array()) malformed("a matrix is {\"rows\": [[...]]}");
  std::vector<std::vector<int>> grid;
  for (const auto& row : rows) {
    if (!row.is_array()) malformed("matrix rows must be arrays");
    std::vector<int> r;
    for (const auto& v : row) r.push_back(as_int(v, "matrix entry"));
    grid.push_back(std::move(r));
  }
  return ContingencyMatrix(grid);
}

PointConfiguration configuration_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("points") || !j.at("points").is_array()) malformed("expected {\"points\": [...]}");
  std::vector<Point> points;
  for (const auto& p : j.at("points")) {
    if (!p.is_object() || !p.contains("re") || !p.contains("im")) malformed("each point needs \"re\" and \"im\"");
    points.push_back({as_rational(p.at("re"), "re"), as_rational(p.at("im"), "im")});
  }
  return PointConfiguration(std::move(points));
}

Representation representation_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n")) malformed("a representation needs \"n\"");
  const int n = as_int(j.at("n"), "n");
  if (n < 1) throw DomainError("n must be positive");
  require_capacity(n, 5, "representation");
  auto poset = std::make_shared<const CmPoset>(build_poset(n));
  std::vector<std::size_t> dims(poset->size(), 0);
  if (j.contains("spaces")) {
    const auto& spaces = j.at("spaces");
    if (!spaces.is_object()) malformed("\"spaces\" must be an object keyed by element index");
    for (const auto& [key, value] : spaces.items()) {
      std::size_t idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoul(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        malformed("space key '" + key + "' is not an element index");
      }
      if (idx >= dims.size()) malformed("space key '" + key + "' is out of range");
      dims[idx] = as_index(value, "space dimension");
    }
  }
  std::vector<RatMatrix> maps;
  for (const auto& c : poset->covers()) maps.emplace_back(dims[c.to], dims[c.from]);
  if (j.contains("maps")) {
    const auto& list = j.at("maps");
    if (!list.is_array()) malformed("\"maps\" must be an array");
    std::vector<char> given(maps.size(), 0);
    for (const auto& entry : list) {
      if (!entry.is_object() || !entry.contains("from") || !entry.contains("to") || !entry.contains("matrix")) {
        malformed("each map needs \"from\", \"to\" and \"matrix\"");
      }
      const auto from = as_index(entry.at("from"), "from");
      const auto to = as_index(entry.at("to"), "to");
      if (from >= dims.size() || to >= dims.size()) malformed("map endpoint out of range");
      const auto c = poset->cover_between(from, to);
      if (!c) malformed("no cover " + std::to_string(from) + " -> " + std::to_string(to));
      if (given[*c]) malformed("duplicate map " + std::to_string(from) + " -> " + std::to_string(to));
      given[*c] = 1;
      const auto& rows = entry.at("matrix");
      if (!rows.is_array()) malformed("\"matrix\" must be an array of rows");
      RatMatrix m(rows.size(), rows.empty() ? dims[from] : rows.at(0).size());
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (!rows[r].is_array() || rows[r].size() != m.cols()) malformed("ragged map matrix");
        for (std::size_t col = 0; col < m.cols(); ++col) m(r, col) = as_rational(rows[r][col], "map entry");
      }
      maps[*c] = std::move(m);
    }
  }
  return Representation(std::move(poset), std::move(dims), std::move(maps));
}

std::string to_dot(const CmPoset& poset) {
  std::ostringstream out;
  out << "digraph CM" << poset.weight() << " {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < poset.size(); ++i) {
    out << "  n" << i << " [label=\"" << poset.element(i).flat_label() << "\"];\n";
  }
  for (const auto& c : poset.covers()) {
    out << "  n" << c.from << " -> n" << c.to << " [label=\"" << (c.kind == ContractionKind::horizontal ? 'h' : 'v')
        << c.pos << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace stoch
