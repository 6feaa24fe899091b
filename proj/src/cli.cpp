#include "stoch/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "stoch/errors.hpp"
#include "stoch/json_io.hpp"
#include "stoch/metamatrix.hpp"
#include "stoch/sheaf.hpp"
#include "stoch/strata.hpp"
#include "stoch/topology.hpp"

namespace stoch {

namespace {

struct Outcome {
  Json parameters = Json::object();
  bool pass = true;
  std::string anchor;
  Json details = Json::object();
  std::optional<std::string> raw;  // printed verbatim instead of the envelope
};

struct Options {
  bool stable = false;
  bool pretty = false;
  unsigned jobs = 1;
  int n = 0;
  std::optional<int> p;
  std::optional<int> q;
  std::string alpha;
  std::string beta;
  bool partitions = false;
  std::string format = "json";
  std::string method = "inclusion_exclusion";
  std::string input;
  std::string kind = "both";
  std::string strat;
  std::size_t dim = 1;
};

void require_n(int n) {
  if (n < 1) throw DomainError("--n must be positive");
}

OrderedPartition parse_partition_arg(const std::string& text) {
  const std::string trimmed = !text.empty() && text.front() == '[' ? text : "[" + text + "]";
  return partition_from_json(Json::parse(trimmed));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StructuralError("cannot open '" + path + "'");
  return Json::parse(in);
}

Outcome cmd_enumerate(const Options& o) {
  require_n(o.n);
  require_capacity(o.n, 7, "enumerate");
  Outcome out;
  out.anchor = o.partitions ? "ordered partitions" : "contingency matrices of fixed weight";
  out.parameters["n"] = o.n;
  Json items = Json::array();
  if (o.partitions) {
    if (o.p) out.parameters["p"] = *o.p;
    for (const auto& a : enumerate_ordered_partitions(o.n, o.p)) items.push_back(to_json(a));
  } else {
    CmFilter filter;
    filter.p = o.p;
    filter.q = o.q;
    if (o.p) out.parameters["p"] = *o.p;
    if (o.q) out.parameters["q"] = *o.q;
    if (!o.alpha.empty()) {
      filter.alpha = parse_partition_arg(o.alpha);
      out.parameters["alpha"] = to_json(*filter.alpha);
    }
    if (!o.beta.empty()) {
      filter.beta = parse_partition_arg(o.beta);
      out.parameters["beta"] = to_json(*filter.beta);
    }
    for_each_cm(o.n, filter, [&](const ContingencyMatrix& m) { items.push_back(m.to_rows()); });
  }
  out.details["count"] = items.size();
  out.details["items"] = std::move(items);
  return out;
}

Outcome cmd_poset(const Options& o) {
  require_n(o.n);
  if (o.format != "json" && o.format != "dot") throw DomainError("--format must be json or dot");
  const CmPoset poset = build_poset(o.n);
  Outcome out;
  out.anchor = "contraction order on contingency matrices";
  out.parameters = Json{{"n", o.n}, {"format", o.format}};
  if (o.format == "dot") {
    out.raw = to_dot(poset);
  } else {
    out.details = to_json(poset);
  }
  return out;
}

Outcome cmd_sphericity(const Options& o) {
  require_n(o.n);
  const auto report = verify_sphericity(o.n, o.jobs);
  const CmPoset poset = build_poset(o.n);
  Outcome out;
  out.anchor = "strict lower intervals are homology spheres, closed ones acyclic";
  out.parameters = Json{{"n", o.n}};
  out.pass = report.pass();
  Json records = Json::array();
  for (const auto& r : report.records) records.push_back(to_json(r, poset));
  Json violations = Json::array();
  for (auto v : report.violations) violations.push_back(to_json(report.records[v], poset));
  out.details = Json{{"elements", report.records.size()}, {"violations", violations}, {"records", records}};
  return out;
}

Outcome cmd_f_vector(const Options& o) {
  require_n(o.n);
  const auto census = f_vector(o.n);
  BigInt total = 0;
  BigInt euler = 0;
  Json counts = Json::object();
  for (const auto& [dim, count] : census) {
    counts[std::to_string(dim)] = to_json(count);
    total += count;
    euler += dim % 2 == 0 ? count : BigInt(-count);
  }
  const BigInt expected = total_count(o.n);
  Outcome out;
  out.anchor = "cell census of the stochastihedron";
  out.parameters = Json{{"n", o.n}};
  out.pass = euler == 1 && total == expected;
  out.details = Json{{"f_vector", counts}, {"total", to_json(total)}, {"expected_total", to_json(expected)},
                     {"euler_characteristic", to_json(euler)}};
  return out;
}

Outcome cmd_metamatrix(const Options& o) {
  require_n(o.n);
  if (o.format != "json" && o.format != "csv") throw DomainError("--format must be json or csv");
  const MetaMethod method = parse_meta_method(o.method);
  const IntMatrix m = metamatrix(o.n, method);
  Outcome out;
  out.anchor = "counts of contingency matrices by size";
  out.parameters = Json{{"n", o.n}, {"method", std::string(to_string(method))}};
  if (o.format == "csv") {
    out.raw = to_csv(m);
    return out;
  }
  BigInt total = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) total += m(i, j);
  }
  out.pass = m == m.transposed();
  out.details = Json{{"matrix", to_strings(m)}, {"total", to_json(total)}, {"symmetric", out.pass}};
  return out;
}

Outcome cmd_verify_identities(const Options& o) {
  require_n(o.n);
  require_capacity(o.n, 20, "verify-identities");
  Outcome out;
  out.anchor = "counting identities for the size-count matrix";
  out.parameters = Json{{"n", o.n}};
  Json checks = Json::array();
  auto check = [&](const std::string& name, bool ok, Json value = nullptr) {
    Json c{{"name", name}, {"pass", ok}};
    if (!value.is_null()) c["value"] = std::move(value);
    checks.push_back(std::move(c));
    out.pass = out.pass && ok;
  };

  const IntMatrix formula = metamatrix(o.n, MetaMethod::inclusion_exclusion);
  const bool can_enumerate = o.n <= capacity_limit(7);
  const IntMatrix counted = can_enumerate ? metamatrix(o.n, MetaMethod::enumeration) : formula;
  BigInt total = 0;
  for (std::size_t i = 0; i < counted.rows(); ++i) {
    for (std::size_t j = 0; j < counted.cols(); ++j) total += counted(i, j);
  }
  if (can_enumerate) check("inclusion_exclusion_equals_enumeration", formula == counted);
  check("count_matrix_symmetric", counted == counted.transposed());
  const auto failure = subgrid_sum_failure(counted, o.n);
  check("subgrid_sums_equal_generalized_counts", !failure,
        failure ? Json{{"p", failure->first}, {"q", failure->second}} : Json(nullptr));
  for (const auto& c : verify_factorizations(o.n).checks) check(c.name, c.pass);

  const auto det = det_metamatrix(o.n);
  check("determinant_closed_form_integral", det.closed_form_integral, to_string(det.closed_form));
  if (det.direct) check("determinant_closed_form_equals_direct", Rational(*det.direct) == det.closed_form, to_json(*det.direct));

  const BigInt fubini_route = total_count(o.n);
  const BigInt alternating_route = total_count_alternating(o.n);
  check("total_stirling_fubini", fubini_route == total, to_json(fubini_route));
  check("total_alternating_sum", alternating_route == total, to_json(alternating_route));

  out.details = Json{{"total", to_json(total)},
                     {"total_source", can_enumerate ? "enumeration" : "inclusion_exclusion"},
                     {"determinant", to_string(det.closed_form)},
                     {"checks", checks},
                     {"notes",
                      Json::array({Json{{"name", "total_binomial_weight_form"},
                                        {"value", to_json(total_count_binomial_weights(o.n))},
                                        {"comment", "alternative binomial-weight form; evaluates to 1 for every n, so it is reported but not checked"}}})}};
  return out;
}

Outcome cmd_total_positivity(const Options& o) {
  require_n(o.n);
  require_capacity(o.n, 7, "total-positivity");
  const auto report = total_positivity(metamatrix(o.n, MetaMethod::inclusion_exclusion));
  Outcome out;
  out.anchor = "total positivity of the size-count matrix";
  out.parameters = Json{{"n", o.n}};
  out.pass = report.is_tp;
  out.details = Json{{"minors_checked", report.minors_checked}};
  if (report.witness) {
    out.details["witness"] =
        Json{{"rows", report.witness->rows}, {"cols", report.witness->cols}, {"value", to_json(report.witness->value)}};
  }
  return out;
}

Outcome cmd_classify(const Options& o) {
  const auto z = configuration_from_json(read_json_file(o.input));
  Outcome out;
  out.anchor = "cell labels of a point configuration";
  out.parameters = Json{{"input", o.input}, {"degree", z.degree()}};
  out.details = classification_json(contingency_label(z));
  return out;
}

Outcome cmd_anodyne_classes(const Options& o) {
  require_n(o.n);
  const AnodyneKind kind = parse_anodyne_kind(o.kind);
  const CmPoset poset = build_poset(o.n);
  const auto result = anodyne_classes(poset, kind);
  Outcome out;
  out.anchor = "anodyne classes equal label fibers";
  out.parameters = Json{{"n", o.n}, {"kind", std::string(to_string(kind))}};
  out.pass = result.matches_fibers;
  Json classes = Json::array();
  for (const auto& cls : result.classes) {
    Json members = Json::array();
    for (auto i : cls) members.push_back(poset.element(i).to_rows());
    classes.push_back(std::move(members));
  }
  out.details = Json{{"class_count", result.classes.size()},
                     {"fiber_count", result.fiber_count},
                     {"fiber_label", kind == AnodyneKind::both ? "multiplicity" : (kind == AnodyneKind::horizontal ? "fnf" : "ifnf")},
                     {"classes", classes}};
  if (result.witness) {
    out.details["witness"] = Json::array(
        {poset.element(result.witness->first).to_rows(), poset.element(result.witness->second).to_rows()});
  }
  return out;
}

Outcome cmd_meet_join(const Options& o) {
  require_n(o.n);
  const auto meet = meet_check(o.n);
  Outcome out;
  out.anchor = "meet and join of the FNF stratification and its transpose";
  out.parameters = Json{{"n", o.n}};
  out.pass = meet.pass();
  Json groups = Json::array();
  Json bad = Json::array();
  for (const auto& g : meet.groups) {
    Json shapes = Json::array();
    for (const auto& m : g.members) shapes.push_back(m.to_rows());
    Json entry{{"fnf", g.fnf.to_string()},
               {"ifnf", g.ifnf.to_string()},
               {"p", g.members.front().rows()},
               {"q", g.members.front().cols()},
               {"size", g.members.size()},
               {"constant_shape", g.constant_shape},
               {"members", shapes}};
    if (!g.constant_shape) bad.push_back(entry);
    groups.push_back(std::move(entry));
  }
  out.details["meet"] = Json{{"group_count", meet.groups.size()}, {"violations", bad}, {"groups", groups}};
  if (o.n <= capacity_limit(5)) {
    const auto join = anodyne_classes(o.n, AnodyneKind::both);
    out.pass = out.pass && join.matches_fibers;
    out.details["join"] = Json{{"class_count", join.classes.size()},
                               {"multiplicity_fibers", join.fiber_count},
                               {"matches_fibers", join.matches_fibers}};
  } else {
    out.details["join"] = Json{{"skipped", "anodyne classes are computed for n <= 5"}};
  }
  return out;
}

Json cover_json(const CmPoset& poset, std::size_t c) {
  const auto& cover = poset.covers()[c];
  return Json{{"cover", c},
              {"from", cover.from},
              {"to", cover.to},
              {"from_matrix", poset.element(cover.from).to_rows()},
              {"to_matrix", poset.element(cover.to).to_rows()},
              {"kind", std::string(to_string(cover.kind))},
              {"pos", cover.pos}};
}

Outcome cmd_sheaf_check(const Options& o) {
  const Stratification strat = parse_stratification(o.strat);
  const Representation rep = representation_from_json(read_json_file(o.input));
  const auto& poset = rep.poset();
  Outcome out;
  out.anchor = "constructibility along anodyne contractions";
  out.parameters = Json{{"input", o.input}, {"strat", std::string(to_string(strat))}, {"n", poset.weight()}};
  const auto validation = validate(rep);
  Json failures = Json::array();
  for (const auto& d : validation.failures) {
    failures.push_back(Json{{"bottom", d.bottom}, {"left", d.left}, {"right", d.right}, {"top", d.top}});
  }
  out.details["validation"] =
      Json{{"valid", validation.valid}, {"diamonds_checked", validation.diamonds_checked}, {"failures", failures}};
  if (!validation.valid) {
    out.pass = false;
    return out;
  }
  const auto report = is_constructible(rep, strat);
  out.pass = report.constructible;
  out.details["constructible"] = report.constructible;
  out.details["maps_checked"] = report.maps_checked;
  if (report.witness) out.details["witness"] = cover_json(poset, *report.witness);
  return out;
}

Outcome cmd_constant_sheaf(const Options& o) {
  require_n(o.n);
  const Representation rep = constant_sheaf(o.n, o.dim);
  Outcome out;
  out.anchor = "constant representation";
  out.parameters = Json{{"n", o.n}, {"dim", o.dim}};
  const auto validation = validate(rep);
  out.pass = validation.valid;
  for (auto s : {Stratification::cont, Stratification::fnf, Stratification::ifnf, Stratification::complex}) {
    const bool ok = is_constructible(rep, s).constructible;
    out.details["constructible"][std::string(to_string(s))] = ok;
    out.pass = out.pass && ok;
  }
  out.details["representation"] = to_json(rep);
  return out;
}

void print_pretty(std::ostream& os, const Json& envelope) {
  os << envelope.at("command").get<std::string>() << ": " << (envelope.at("pass").get<bool>() ? "PASS" : "FAIL")
     << "\n  anchor: " << envelope.at("anchor").get<std::string>() << '\n';
  for (const auto& [key, value] : envelope.at("parameters").items()) os << "  " << key << " = " << value.dump() << '\n';
  for (const auto& [key, value] : envelope.at("details").items()) {
    if (value.is_array() && !value.empty() && value.front().is_array()) {
      os << "  " << key << ":\n";
      for (const auto& row : value) os << "    " << row.dump() << '\n';
    } else {
      os << "  " << key << ": " << value.dump() << '\n';
    }
  }
  if (envelope.contains("elapsed_ms")) os << "  elapsed_ms: " << envelope.at("elapsed_ms").get<long long>() << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contingency matrices, the stochastihedron and stratifications of Sym^n(C)", "stoch"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--stable", o.stable, "Omit elapsed_ms so output is byte-identical across runs");
  app.add_flag("--pretty", o.pretty, "Human-readable text instead of JSON");
  app.add_option("--jobs", o.jobs, "Worker threads for sphericity")->check(CLI::Range(1U, 256U));

  std::map<std::string, std::function<Outcome(const Options&)>> handlers;
  auto sub = [&](const std::string& name, const std::string& help, std::function<Outcome(const Options&)> fn) {
    handlers[name] = std::move(fn);
    auto* s = app.add_subcommand(name, help);
    // global flags are accepted after the subcommand name too
    s->fallthrough();
    return s;
  };
  auto add_n = [&](CLI::App* s) { s->add_option("--n", o.n, "Weight")->required(); };

  auto* e = sub("enumerate", "List contingency matrices (or ordered partitions) of weight n", cmd_enumerate);
  add_n(e);
  e->add_option("--p", o.p, "Number of rows (or parts)");
  e->add_option("--q", o.q, "Number of columns");
  e->add_option("--alpha", o.alpha, "Row sums, e.g. 2,1");
  e->add_option("--beta", o.beta, "Column sums");
  e->add_flag("--partitions", o.partitions, "Enumerate ordered partitions instead");

  auto* po = sub("poset", "Export the contraction poset", cmd_poset);
  add_n(po);
  po->add_option("--format", o.format, "json or dot");

  add_n(sub("sphericity", "Homology of every lower interval", cmd_sphericity));
  add_n(sub("f-vector", "Cell counts by dimension", cmd_f_vector));

  auto* mm = sub("metamatrix", "Counts by size p x q", cmd_metamatrix);
  add_n(mm);
  mm->add_option("--method", o.method, "enumeration or inclusion_exclusion");
  mm->add_option("--format", o.format, "json or csv");

  add_n(sub("verify-identities", "Check every counting identity and factorization", cmd_verify_identities));
  add_n(sub("total-positivity", "Scan all minors of the count matrix", cmd_total_positivity));

  auto* cl = sub("classify", "Labels of a point configuration", cmd_classify);
  cl->add_option("--input", o.input, "Configuration JSON file")->required();

  auto* an = sub("anodyne-classes", "Classes of the anodyne equivalence", cmd_anodyne_classes);
  add_n(an);
  an->add_option("--kind", o.kind, "both, horizontal or vertical");

  add_n(sub("meet-join", "Meet and join checks for the FNF stratifications", cmd_meet_join));

  auto* sh = sub("sheaf-check", "Validate a representation and test constructibility", cmd_sheaf_check);
  sh->add_option("--input", o.input, "Representation JSON file")->required();
  sh->add_option("--strat", o.strat, "cont, fnf, ifnf or complex")->required();

  auto* cs = sub("constant-sheaf", "Constant representation and its checks", cmd_constant_sheaf);
  add_n(cs);
  cs->add_option("--dim", o.dim, "Dimension of every space");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error, out, err);
    return code == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const auto start = std::chrono::steady_clock::now();
  Outcome result;
  try {
    result = handlers.at(command)(o);
  } catch (const CapacityError& error) {
    err << "stoch: " << error.what() << '\n';
    return 3;
  } catch (const DomainError& error) {
    err << "stoch: " << error.what() << '\n';
    return 2;
  } catch (const StructuralError& error) {
    err << "stoch: " << error.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& error) {
    err << "stoch: malformed JSON: " << error.what() << '\n';
    return 2;
  }
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  if (result.raw) {
    out << *result.raw;
    return result.pass ? 0 : 1;
  }
  Json envelope{{"command", command},
                {"parameters", result.parameters},
                {"pass", result.pass},
                {"anchor", result.anchor},
                {"details", result.details}};
  if (!o.stable) envelope["elapsed_ms"] = elapsed;
  if (o.pretty) {
    print_pretty(out, envelope);
  } else {
    out << envelope.dump() << '\n';
  }
  return result.pass ? 0 : 1;
}

}  // namespace stoch
