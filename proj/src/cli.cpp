#include "torusos/cli.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "torusos/algebra.hpp"
#include "torusos/io.hpp"
#include "torusos/matroid.hpp"
#include "torusos/toric.hpp"

namespace torusos::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::string command;
  std::string file;
  std::string output = "json";
  long seed = 0;
  // ring
  std::optional<std::size_t> degree;
  bool all = false;
  bool structure = false;
  std::vector<std::string> probes;
  // check
  std::string suite = "all";
  std::optional<std::size_t> index;
  std::size_t samples = 100;
  // reconstruct
  std::vector<std::size_t> basis;
};

json int_str(const Integer& v) { return v.get_str(); }

json ints(const std::vector<Integer>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

json matrix_json(const IntMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(ints(m.row(i)));
  return out;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

std::string text_of(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::string row_text(const json& row) {
  std::vector<std::string> parts;
  for (const auto& x : row) parts.push_back(text_of(x));
  return "[" + join(parts, ", ") + "]";
}

// ---- poset ----

json cmd_poset(const ToricArrangement& a) {
  const auto poset = layer_poset(a);
  json layers = json::array();
  std::vector<std::size_t> counts(poset.max_rank() + 1, 0);
  for (std::size_t i = 0; i < poset.size(); ++i) {
    const auto& l = poset.layer(i);
    ++counts[l.rank()];
    json phases = json::array();
    for (const auto& p : l.phases) phases.push_back(p.str());
    layers.push_back({{"id", poset.id(i)},
                      {"rank", l.rank()},
                      {"lattice", matrix_json(l.lattice)},
                      {"phases", phases},
                      {"support", elements(l.support)},
                      {"multiplicity", int_str(multiplicity(a, l.support))},
                      {"mobius", int_str(poset.mobius(i))}});
  }
  json edges = json::array();
  for (const auto& [i, j] : poset.poset().hasse_edges()) edges.push_back({poset.id(i), poset.id(j)});
  return {{"dim", a.dim()}, {"hypertori", a.size()}, {"layer_count", poset.size()},
          {"layers_by_rank", counts}, {"layers", layers}, {"hasse_edges", edges}};
}

void text_poset(const json& r, std::ostream& out) {
  out << "layers: " << r["layer_count"].get<std::size_t>() << " (by rank " << row_text(r["layers_by_rank"]) << ")\n";
  for (const auto& l : r["layers"]) {
    std::vector<std::string> rows;
    for (const auto& row : l["lattice"]) rows.push_back(row_text(row));
    out << "  " << l["id"].get<std::string>() << "  rank " << l["rank"].get<std::size_t>() << "  lattice [" << join(rows, " ")
        << "]  phases " << row_text(l["phases"]) << "  support " << row_text(l["support"]) << "  multiplicity "
        << text_of(l["multiplicity"]) << "  mobius " << text_of(l["mobius"]) << "\n";
  }
  out << "hasse edges: " << r["hasse_edges"].size() << "\n";
  for (const auto& e : r["hasse_edges"]) out << "  " << text_of(e[0]) << " < " << text_of(e[1]) << "\n";
}

// ---- poincare ----

json cmd_poincare(const ToricArrangement& a) {
  const auto poset = layer_poset(a);
  const auto p = poincare_polynomial(poset);
  return {{"coefficients", ints(p)}, {"polynomial", poly_str(p)}, {"nbc_pair_counts", ints(nbc_pair_counts(poset))}};
}

void text_poincare(const json& r, std::ostream& out) {
  out << "P(t) = " << r["polynomial"].get<std::string>() << "\n";
  out << "coefficients: " << row_text(r["coefficients"]) << "\n";
  out << "N_j: " << row_text(r["nbc_pair_counts"]) << "\n";
}

// ---- ring ----

// "x:v1,...,vd" (torus class), "y:i" (hypertorus class) or "1"
ToricClass parse_probe(const ToricCohomology& h, const std::string& text) {
  if (text == "1") return ToricClass::basis(0, 0, 0);
  const auto colon = text.find(':');
  if (colon == std::string::npos || colon != 1 || (text[0] != 'x' && text[0] != 'y'))
    throw Error(ErrorCode::InvalidArgument, "probe '" + text + "' is not of the form x:v1,..,vd or y:i");
  std::vector<Integer> values;
  std::stringstream in(text.substr(2));
  std::string item;
  while (std::getline(in, item, ',')) {
    Integer v;
    if (item.empty() || v.set_str(item, 10) != 0) throw Error(ErrorCode::InvalidArgument, "probe '" + text + "' has a malformed integer");
    values.push_back(v);
  }
  if (text[0] == 'x') return torus_class(h, values);
  if (values.size() != 1 || values[0] < 0 || !values[0].fits_ulong_p())
    throw Error(ErrorCode::InvalidArgument, "probe '" + text + "' needs one hypertorus index");
  return hypertorus_class(h, values[0].get_ui());
}

json cmd_ring(const ToricArrangement& a, const Options& o) {
  const ToricCohomology h(a);
  std::vector<std::size_t> degrees;
  if (o.degree) {
    degrees.push_back(*o.degree);
  } else {
    for (std::size_t k = 0; k <= a.dim(); ++k) degrees.push_back(k);
  }
  const auto snap = ring_snapshot(h, degrees, o.structure);
  json ranks = json::array();
  for (auto k : snap.degrees)
    ranks.push_back({{"degree", k},
                     {"rank", std::count(snap.degree_of.begin(), snap.degree_of.end(), k)},
                     {"betti", int_str(betti(a, k))}});
  json basis = json::array();
  for (std::size_t i = 0; i < snap.basis.size(); ++i)
    basis.push_back({{"index", i}, {"degree", snap.degree_of[i]}, {"label", snap.labels[i]}});
  json r{{"degrees", snap.degrees}, {"ranks", ranks}, {"basis", basis}};
  if (o.structure) {
    json constants = json::array();
    for (const auto& c : snap.constants) constants.push_back({c.left, c.right, c.product, int_str(c.coefficient)});
    r["structure_constants"] = constants;
  }
  if (!o.probes.empty()) {
    if (o.probes.size() != 2) throw Error(ErrorCode::InvalidArgument, "--probe must be given exactly twice");
    const auto u = parse_probe(h, o.probes[0]), v = parse_probe(h, o.probes[1]);
    const auto p = multiply_A(h, u, v);
    r["probe"] = {{"left", o.probes[0]},
                  {"right", o.probes[1]},
                  {"left_class", class_str(h, u)},
                  {"right_class", class_str(h, v)},
                  {"product", class_str(h, p)},
                  {"zero", p.is_zero()}};
  }
  return r;
}

void text_ring(const json& r, std::ostream& out) {
  for (const auto& k : r["ranks"])
    out << "degree " << k["degree"].get<std::size_t>() << ": rank " << k["rank"].get<std::size_t>() << " (betti "
        << text_of(k["betti"]) << ")\n";
  for (const auto& b : r["basis"])
    out << "  [" << b["index"].get<std::size_t>() << "] deg " << b["degree"].get<std::size_t>() << "  "
        << b["label"].get<std::string>() << "\n";
  if (r.contains("structure_constants")) {
    out << "structure constants (i * j = c k):\n";
    for (const auto& c : r["structure_constants"])
      out << "  " << c[0].get<std::size_t>() << " * " << c[1].get<std::size_t>() << " = " << text_of(c[3]) << " ["
          << c[2].get<std::size_t>() << "]\n";
  }
  if (r.contains("probe")) {
    const auto& p = r["probe"];
    out << "probe: (" << p["left_class"].get<std::string>() << ") * (" << p["right_class"].get<std::string>()
        << ") = " << p["product"].get<std::string>() << "\n";
  }
}

// ---- check ----

json suite_whitney(const ToricCohomology& h) {
  const auto report = whitney_check(h);
  json rows = json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"layer", h.poset().id(r.layer)}, {"mobius", int_str(r.mobius)}, {"nbc", r.nbc}, {"pass", r.ok()}});
  return {{"name", "whitney"}, {"pass", report.ok()}, {"layers", rows}};
}

json suite_delres(const ToricArrangement& a, const Options& o) {
  std::vector<std::size_t> indices;
  if (o.index) {
    if (*o.index >= a.size()) throw Error(ErrorCode::IndexOutOfRange, "--index " + std::to_string(*o.index) + " out of range");
    indices.push_back(*o.index);
  } else {
    for (std::size_t i = 0; i < a.size(); ++i) indices.push_back(i);
  }
  bool pass = true;
  json rows = json::array();
  const auto p = poincare_polynomial(a);
  for (auto i : indices) {
    json row{{"index", i}, {"valid", restriction_is_valid(a, i)}};
    if (row["valid"].get<bool>()) {
      const auto pd = poincare_polynomial(deletion(a, i));
      const auto pr = poincare_polynomial(restriction(a, i));
      auto rhs = poly_add(pd, poly_shift(pr, 1));
      auto lhs = p;
      while (lhs.size() < rhs.size()) lhs.push_back(0);
      while (rhs.size() < lhs.size()) rhs.push_back(0);
      const bool ok = lhs == rhs;
      pass = pass && ok;
      row["poincare"] = poly_str(p);
      row["deletion"] = poly_str(pd);
      row["restriction"] = poly_str(pr);
      row["pass"] = ok;
    }
    rows.push_back(row);
  }
  return {{"name", "delres"}, {"pass", pass}, {"indices", rows}};
}

json suite_coherence(const ToricCohomology& h, const Options& o) {
  std::vector<ToricClass> gens;
  for (std::size_t k = 0; k <= h.dim(); ++k)
    for (const auto& key : ring_basis(h, k)) gens.push_back(ToricClass::basis(key.layer, key.exterior, key.os));
  std::vector<ToricClass> images;
  std::size_t coherent = 0, section = 0;
  for (const auto& g : gens) {
    images.push_back(embed_p(h, g));
    if (is_coherent(h, images.back())) ++coherent;
    if (project_pi(h, images.back()) == g) ++section;
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  const std::size_t total = gens.size() * gens.size();
  if (total <= o.samples) {
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j < gens.size(); ++j) pairs.emplace_back(i, j);
  } else {
    std::mt19937 rng(static_cast<std::mt19937::result_type>(o.seed));
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    for (std::size_t s = 0; s < o.samples; ++s) pairs.emplace_back(pick(rng), pick(rng));
  }
  std::size_t products_ok = 0;
  for (const auto& [i, j] : pairs) {
    const auto b = multiply_B(h, images[i], images[j]);
    if (b == embed_p(h, multiply_A(h, gens[i], gens[j])) && b == multiply_natural(h, images[i], images[j])) ++products_ok;
  }
  const bool pass = coherent == gens.size() && section == gens.size() && products_ok == pairs.size();
  return {{"name", "coherence"},
          {"pass", pass},
          {"generators", gens.size()},
          {"coherent_images", coherent},
          {"section_identities", section},
          {"products_checked", pairs.size()},
          {"products_ok", products_ok},
          {"exhaustive", total <= o.samples},
          {"seed", o.seed}};
}

json suite_deg1(const ToricCohomology& h) {
  const auto report = degree1_generation(h);
  json rows = json::array();
  bool sane = true;
  std::string summary = "generated";
  for (const auto& r : report.rows) {
    sane = sane && r.product_rank <= r.betti;
    rows.push_back({{"degree", r.degree}, {"betti", r.betti}, {"product_rank", r.product_rank}, {"index", int_str(r.index)}});
    if (r.product_rank < r.betti && summary == "generated")
      summary = "not generated, " + std::to_string(r.product_rank) + " < " + std::to_string(r.betti) + " in degree " +
                std::to_string(r.degree);
  }
  if (report.generated() && !report.generated_over_z()) summary = "generated over Q only (finite index)";
  return {{"name", "deg1"},
          {"pass", sane},
          {"generated", report.generated()},
          {"generated_over_z", report.generated_over_z()},
          {"summary", summary},
          {"degrees", rows}};
}

json cmd_check(const ToricArrangement& a, const Options& o) {
  static const std::vector<std::string> known{"whitney", "coherence", "delres", "deg1"};
  std::vector<std::string> suites = o.suite == "all" ? known : std::vector<std::string>{o.suite};
  std::optional<ToricCohomology> h;
  auto ring = [&]() -> const ToricCohomology& {
    if (!h) h.emplace(a);
    return *h;
  };
  json out = json::array();
  bool pass = true;
  for (const auto& s : suites) {
    json r;
    if (s == "whitney") r = suite_whitney(ring());
    else if (s == "coherence") r = suite_coherence(ring(), o);
    else if (s == "delres") r = suite_delres(a, o);
    else r = suite_deg1(ring());
    pass = pass && r["pass"].get<bool>();
    out.push_back(r);
  }
  return {{"pass", pass}, {"suites", out}};
}

void text_check(const json& r, std::ostream& out) {
  for (const auto& s : r["suites"]) {
    const auto name = s["name"].get<std::string>();
    out << name << ": " << (s["pass"].get<bool>() ? "PASS" : "FAIL");
    if (name == "deg1") out << "  (" << s["summary"].get<std::string>() << ")";
    out << "\n";
    if (name == "whitney") {
      for (const auto& l : s["layers"])
        out << "  " << l["layer"].get<std::string>() << "  mu " << text_of(l["mobius"]) << ", max nbc sets "
            << l["nbc"].get<std::size_t>() << (l["pass"].get<bool>() ? "" : "  MISMATCH") << "\n";
    } else if (name == "delres") {
      for (const auto& i : s["indices"]) {
        out << "  index " << i["index"].get<std::size_t>() << ": ";
        if (!i["valid"].get<bool>()) {
          out << "not applicable\n";
          continue;
        }
        out << i["poincare"].get<std::string>() << " = (" << i["deletion"].get<std::string>() << ") + t("
            << i["restriction"].get<std::string>() << ")  " << (i["pass"].get<bool>() ? "ok" : "FAIL") << "\n";
      }
    } else if (name == "coherence") {
      out << "  generators " << s["generators"].get<std::size_t>() << ", coherent images "
          << s["coherent_images"].get<std::size_t>() << ", section identities " << s["section_identities"].get<std::size_t>()
          << ", products " << s["products_ok"].get<std::size_t>() << "/" << s["products_checked"].get<std::size_t>()
          << "\n";
    } else {
      for (const auto& d : s["degrees"])
        out << "  degree " << d["degree"].get<std::size_t>() << ": products span rank "
            << d["product_rank"].get<std::size_t>() << " of " << d["betti"].get<std::size_t>() << "\n";
    }
  }
  out << "overall: " << (r["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
}

// ---- reconstruct ----

json cmd_reconstruct(const MultiplicityOracle& o, const Options& opt) {
  std::vector<std::size_t> basis = opt.basis;
  if (basis.empty()) {
    auto b = find_unimodular_basis(o);
    if (!b) throw Error(ErrorCode::InvalidArgument, "the oracle has no basis of multiplicity 1");
    basis = *b;
  }
  const auto axioms = check_axioms(o);
  json violations = json::array();
  for (const auto& v : axioms.violations)
    violations.push_back({{"axiom", v.axiom}, {"set", elements(v.set)}, {"detail", v.detail}});
  const IntMatrix m = reconstruct(o, basis);
  return {{"n", o.n()},
          {"d", o.d()},
          {"basis", basis},
          {"matrix", matrix_json(m)},
          {"verified", oracle_from_matrix(m) == o},
          {"axioms", {{"exhaustive", axioms.exhaustive}, {"violations", violations}}}};
}

void text_reconstruct(const json& r, std::ostream& out) {
  out << "basis " << row_text(r["basis"]) << "\n";
  for (const auto& row : r["matrix"]) out << "  " << row_text(row) << "\n";
  out << (r["verified"].get<bool>() ? "verified" : "NOT verified") << "\n";
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ParseError:
      return kParseError;
    case ErrorCode::InconsistentOracle:
      return kInconsistentOracle;
    default:
      return kDomainError;
  }
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--output", o.output, "json or text")->check(CLI::IsMember({"json", "text"}));
  app->add_option("--seed", o.seed, "seed for randomized suites");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact computations for toric arrangements", "torusos"};
  app.require_subcommand(1, 1);
  add_common(&app, o);

  auto* poset = app.add_subcommand("poset", "layers, Hasse diagram, supports and multiplicities");
  auto* poincare = app.add_subcommand("poincare", "Poincare polynomial of the complement");
  auto* ring = app.add_subcommand("ring", "graded bases and structure constants of the cohomology ring");
  auto* check = app.add_subcommand("check", "property suites");
  auto* recon = app.add_subcommand("reconstruct", "matrix from a multiplicity oracle");
  for (auto* sub : {poset, poincare, ring, check, recon}) {
    sub->add_option("file", o.file, "input JSON file")->required();
    add_common(sub, o);
  }
  auto* deg = ring->add_option("--degree", o.degree, "a single degree");
  ring->add_flag("--all", o.all, "every degree (default)")->excludes(deg);
  ring->add_flag("--structure-constants", o.structure, "emit products of basis elements");
  ring->add_option("--probe", o.probes, "class x:v1,..,vd, y:i or 1; give twice to multiply");
  check->add_option("--suite", o.suite, "coherence, whitney, delres, deg1 or all")
      ->check(CLI::IsMember({"all", "coherence", "whitney", "delres", "deg1"}));
  check->add_option("--index", o.index, "hypertorus for delres (default: all)");
  check->add_option("--samples", o.samples, "product pairs sampled by the coherence suite");
  recon->add_option("--basis", o.basis, "unimodular basis, comma separated")->delimiter(',');

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (!args.empty() && args[0].rfind("-", 0) != 0 && app.get_subcommand_no_throw(args[0]) == nullptr)
      err << "torusos: unknown command '" << args[0] << "' (expected poset, poincare, ring, check or reconstruct)\n";
    else
      err << "torusos: " << e.what() << "\n";
    return kUsage;
  }
  for (auto* sub : {poset, poincare, ring, check, recon})
    if (sub->parsed()) o.command = sub->get_name();

  json report;
  report["command"] = args;
  int code = kOk;
  json result;
  try {
    const std::string bytes = read_file(o.file);
    report["input"] = {{"file", o.file}, {"digest", digest(bytes)}};
    if (o.command == "reconstruct") {
      result = cmd_reconstruct(parse_oracle(bytes), o);
      if (!result["verified"].get<bool>()) code = kChecksFailed;
    } else {
      const auto a = parse_arrangement(bytes);
      if (o.command == "poset") result = cmd_poset(a);
      else if (o.command == "poincare") result = cmd_poincare(a);
      else if (o.command == "ring") result = cmd_ring(a, o);
      else {
        result = cmd_check(a, o);
        if (!result["pass"].get<bool>()) code = kChecksFailed;
      }
    }
  } catch (const Error& e) {
    code = exit_for(e);
    report["status"] = "error";
    report["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
    err << "torusos: " << to_string(e.code()) << ": " << e.what() << "\n";
    if (o.output == "json") out << report.dump(2) << "\n";
    return code;
  } catch (const std::exception& e) {
    err << "torusos: internal error: " << e.what() << "\n";
    return kInternalError;
  }

  report["status"] = code == kOk ? "ok" : "checks_failed";
  report["result"] = result;
  if (o.output == "json") {
    out << report.dump(2) << "\n";
  } else if (o.command == "poset") {
    text_poset(result, out);
  } else if (o.command == "poincare") {
    text_poincare(result, out);
  } else if (o.command == "ring") {
    text_ring(result, out);
  } else if (o.command == "check") {
    text_check(result, out);
  } else {
    text_reconstruct(result, out);
  }
  return code;
}

}  // namespace torusos::cli
