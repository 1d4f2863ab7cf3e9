#pragma once

#include "CLI11.hpp"
#include "report.hpp"
#include "reproduce.hpp"

#include "locglob/cohomology.hpp"
#include "locglob/elliptic.hpp"
#include "locglob/hilbert.hpp"
#include "locglob/localglobal.hpp"
#include "locglob/padic.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#ifndef LOCGLOB_GOLDEN_PATH
#define LOCGLOB_GOLDEN_PATH "data/golden.json"
#endif

namespace locglob::cli {

struct Options {
  std::int64_t precision = kDefaultPrecision;
  std::string format = "json";
  std::string input;
  std::string builtin;
  bool timing = false;

  // subcommand arguments
  std::vector<std::string> t;
  std::int64_t n = 0;
  std::string a;
  std::string b;
  std::string place;
  std::string non_decomposed;
  std::int64_t sweep = 1000;
  std::string e = "-15,5,10";
  std::string point = "1561/144,19459/1728";
  int k = 2;
  std::int64_t m = 0;
  bool halve = false;
  std::vector<std::string> polys;
  std::string golden = LOCGLOB_GOLDEN_PATH;
  bool oracle = false;
};

namespace detail {

inline Json load_input(const Options& o) {
  if (!o.input.empty() && !o.builtin.empty()) throw InvalidInput("give either --input or --builtin, not both");
  if (!o.builtin.empty()) return builtin_input(o.builtin);
  if (!o.input.empty()) return read_json_file(o.input);
  throw InvalidInput("this command needs --input FILE or --builtin mu8|mu2");
}

inline Json sha_json(const ShaGroup& s) {
  Json j;
  j["t"] = labels_json(s.t);
  j["order"] = s.order();
  j["structure"] = vec_json(s.members.structure().factors());
  j["support_set"] = labels_json(s.support_set);
  return j;
}

inline Json optional_cocycle(const std::optional<CocycleClass>& c) {
  return c ? cocycle_json(*c) : Json(nullptr);
}

inline RationalPoint parse_point(const Curve& curve, const std::string& text) {
  const auto parts = split(text);
  if (parts.size() != 2) throw InvalidInput("--point: expected \"x,y\" or \"O\"");
  return rational_point(curve, num::parse_rational(parts[0]), num::parse_rational(parts[1]));
}

inline std::optional<Place> parse_optional_place(const std::string& text) {
  if (text.empty() || text == "Q") return std::nullopt;
  return Place::parse(text);
}

inline std::int64_t default_precision() {
  if (const char* env = std::getenv("LOCGLOB_PRECISION")) {
    const Rational r = num::parse_rational(env);
    if (denominator(r) != 1 || r < 1 || r > 100000) throw InvalidInput("LOCGLOB_PRECISION must be an integer in 1..100000");
    return static_cast<std::int64_t>(numerator(r));
  }
  return kDefaultPrecision;
}

}  // namespace detail

inline void cmd_h1(const Options& o, RunReport& r) {
  const Json in = detail::load_input(o);
  const GModule m = module_from_json(in);
  const H1Group h = h1(m);
  r.inputs["group_order"] = m.group().order();
  r.inputs["invariant_factors"] = vec_json(m.space().factors());
  r.results["structure"] = vec_json(h.structure().factors());
  r.results["order"] = h.order();
  Json gens = Json::array();
  for (const auto& g : h.generators()) gens.push_back(cocycle_json(g));
  r.results["generators"] = gens;
  r.results["cross_checked"] = cochain_count(m, H1Options{}.brute_force_limit) <= H1Options{}.brute_force_limit;
  for (const auto& g : h.generators()) r.check("generator_is_cocycle", cochains::is_cocycle(m, g.values()));
}

inline void cmd_h1star(const Options& o, RunReport& r) {
  const Json in = detail::load_input(o);
  const GModule m = module_from_json(in);
  const H1Subgroup s = h1_star(m);
  r.inputs["group_order"] = m.group().order();
  r.inputs["invariant_factors"] = vec_json(m.space().factors());
  r.results["structure"] = vec_json(s.structure().factors());
  r.results["order"] = s.order();
  Json members = Json::array();
  if (s.order() <= 256) {
    for (const auto& c : s.members()) members.push_back(cocycle_json(c));
  }
  r.results["members"] = members;
  const HomothetyResult hom = homothety_criterion(m);
  r.results["homothety"] = hom.applies;
  if (hom.applies) r.check("homothety_implies_trivial", s.order() == 1);
  r.check("contained_in_h1", s.cocycles().subset_of(s.ambient().cocycles()));
}

inline void cmd_hasse(const Options& o, RunReport& r) {
  const Json in = detail::load_input(o);
  const PlaceModel model = model_from_json(in);
  std::vector<LabelSet> queries;
  for (const std::string& t : o.t) queries.push_back(parse_labels(t));
  const Verdict v = verdict(model, queries);
  r.inputs["labels"] = labels_json(model.labels());
  r.inputs["archimedean"] = labels_json(model.archimedean());
  r.results["hasse"] = v.hasse;
  r.results["strong_hasse"] = v.strong_hasse;
  r.results["hasse_witness"] = detail::optional_cocycle(v.hasse_witness);
  r.results["strong_hasse_witness"] = detail::optional_cocycle(v.strong_hasse_witness);
  r.results["support_bound"] = labels_json(finite_support_bound(model));
  Json qs = Json::array();
  for (const SingularityResult& q : v.queries) {
    Json j;
    j["t"] = labels_json(q.t);
    j["sha"] = detail::sha_json(sha_of_model(model, q.t));
    j["t_singular"] = q.singular;
    j["witness"] = detail::optional_cocycle(q.witness);
    j["witness_place"] = q.witness_place ? Json(*q.witness_place) : Json(nullptr);
    qs.push_back(j);
  }
  r.results["queries"] = qs;
  const auto chi = chi_from_json(in, model.module());
  if (chi) {
    Json wa = Json::array();
    for (const LabelSet& t : queries) {
      const WeakApproxVerdict w = weak_approx_verdict(model, *chi, t);
      Json j;
      j["t"] = labels_json(t);
      j["surjective"] = w.surjective;
      j["reason"] = w.reason;
      if (w.witness) j["witness"] = num::to_string(*w.witness);
      wa.push_back(j);
    }
    r.results["weak_approximation"] = wa;
  }
  r.check("strong_hasse_implies_hasse", !v.strong_hasse || v.hasse);
  r.check("strong_hasse_iff_h1_star_trivial", v.strong_hasse == (h1_star(model.module()).order() == 1));
}

inline void cmd_gw(const Options& o, RunReport& r) {
  if (o.n == 0) throw InvalidInput("gw: --n is required");
  std::set<std::uint64_t> t;
  for (const std::string& s : o.t) {
    const auto part = parse_primes(s);
    t.insert(part.begin(), part.end());
  }
  std::optional<std::set<std::uint64_t>> nd;
  if (!o.non_decomposed.empty()) nd = parse_primes(o.non_decomposed);
  const GwDecision d = gw_decision(o.n, t, nd, static_cast<std::uint64_t>(o.sweep));
  r.inputs["n"] = o.n;
  r.inputs["t"] = std::vector<std::uint64_t>(t.begin(), t.end());
  r.inputs["non_decomposed"] = std::vector<std::uint64_t>(d.non_decomposed.begin(), d.non_decomposed.end());
  r.results["r"] = d.r;
  r.results["kernel_order"] = d.kernel_order;
  r.results["witness"] = d.witness ? Json(num::to_string(*d.witness)) : Json(nullptr);
  if (d.check) {
    r.results["places_checked"] = d.check->places_checked;
    r.results["local_failures"] = d.check->local_failures;
    r.results["global_nth_power"] = d.check->global_nth_power;
    r.check("witness_verified", d.check->ok());
  }
}

inline void cmd_power(const Options& o, RunReport& r) {
  if (o.a.empty() || o.n == 0 || o.place.empty()) throw InvalidInput("power: --a, --n and --place are required");
  const Rational a = num::parse_rational(o.a);
  const Place v = Place::parse(o.place);
  const PowerDecision d = decide_nth_power(a, o.n, v, o.precision);
  r.inputs["a"] = num::to_string(a);
  r.inputs["n"] = o.n;
  r.inputs["place"] = v.str();
  r.results["holds"] = d.holds;
  r.results["precision"] = d.precision;
  r.results["retries"] = d.retries;
  if (d.holds) {
    const auto root = nth_root(a, o.n, v, o.precision);
    r.results["root"] = root->describe();
  }
  r.check("is_nth_power", d.holds);
}

inline void cmd_hilbert(const Options& o, RunReport& r) {
  if (o.a.empty() || o.b.empty()) throw InvalidInput("hilbert: --a and --b are required");
  const Rational a = num::parse_rational(o.a);
  const Rational b = num::parse_rational(o.b);
  r.inputs["a"] = num::to_string(a);
  r.inputs["b"] = num::to_string(b);
  if (!o.place.empty()) {
    const Place v = Place::parse(o.place);
    r.inputs["place"] = v.str();
    r.results["symbol"] = hilbert_symbol(a, b, v);
  }
  const ProductFormulaReport pf = product_formula_check(a, b);
  Json places = Json::object();
  for (const auto& [v, s] : pf.symbols) places[v.str()] = s;
  r.results["symbols"] = places;
  r.results["product"] = pf.product;
  r.check("product_formula", pf.product == 1);
}

inline void cmd_ec_div(const Options& o, RunReport& r) {
  const auto roots = split(o.e);
  if (roots.size() != 3) throw InvalidInput("--e: expected three roots \"e1,e2,e3\"");
  const Curve curve(num::parse_rational(roots[0]), num::parse_rational(roots[1]), num::parse_rational(roots[2]));
  const RationalPoint p = o.point == "O" ? RationalPoint::at_infinity() : detail::parse_point(curve, o.point);
  const std::optional<Place> v = detail::parse_optional_place(o.place);
  r.inputs["curve"] = curve.describe();
  r.inputs["point"] = describe(RationalField{}, p);
  r.inputs["place"] = v ? v->str() : "Q";
  if (o.halve) {
    const auto halves = halve_point(curve, p, v, o.precision);
    r.results["halves"] = halves;
    r.check("halvable", !halves.empty());
    return;
  }
  DivisibilityVerdict d;
  if (o.m != 0) {
    if (!v) throw InvalidInput("ec-div: --m needs a local --place");
    r.inputs["n"] = std::uint64_t{1} << o.k;
    r.inputs["m"] = o.m;
    d = propagation_check(curve, p, std::uint64_t{1} << o.k, static_cast<std::uint64_t>(o.m), *v, o.precision);
  } else {
    r.inputs["k"] = o.k;
    d = divisible_by_2k(curve, p, o.k, v, o.precision);
  }
  r.results["divisible"] = d.divisible;
  r.results["precision"] = d.precision;
  r.results["retries"] = d.retries;
  if (d.identity_component) r.results["identity_component"] = *d.identity_component;
  r.check("divisible", d.divisible);
}

inline void cmd_quadroots(const Options& o, RunReport& r) {
  if (o.polys.empty() || o.place.empty()) throw InvalidInput("quadroots: --poly and --p are required");
  std::vector<Quadratic> polys;
  Json shown = Json::array();
  for (const std::string& text : o.polys) {
    const auto bc = split(text);
    if (bc.size() != 2) throw InvalidInput("--poly: expected \"b,c\" for x^2 + b x + c");
    polys.push_back({num::parse_rational(bc[0]), num::parse_rational(bc[1])});
    shown.push_back(Json::array({num::to_string(polys.back().b), num::to_string(polys.back().c)}));
  }
  const Place v = Place::parse(o.place);
  r.inputs["polys"] = shown;
  r.inputs["place"] = v.str();
  const bool holds = quad_local_roots(polys, v);
  r.results["has_root"] = holds;
  r.check("has_root", holds);
}

/// Returns the golden document in oracle mode, otherwise fills the report.
inline std::optional<Json> cmd_reproduce(const Options& o, RunReport& r) {
  if (o.oracle) {
    Suite s(r, nullptr, o.precision);
    suite::run_all(s);
    Json doc;
    doc["format"] = 1;
    doc["entries"] = s.produced();
    return doc;
  }
  const Json golden = read_json_file(o.golden);
  if (!golden.is_object() || golden.value("format", 0) != 1 || !golden.contains("entries") || !golden["entries"].is_object()) {
    throw InvalidInput("golden file '" + o.golden + "' is not a format-1 golden document");
  }
  r.inputs["golden"] = o.golden;
  Suite s(r, &golden, o.precision);
  suite::run_all(s);
  return std::nullopt;
}

/// Entry point shared by the executable and the tests. Output goes to `out`
/// only on success; errors go to `err`. Exit: 0 ok, 1 a failed check or an
/// undecidable computation, 2 bad input.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Local-global computations for Galois modules, p-adic powers and elliptic curves", "locglob"};
  app.require_subcommand(1);
  std::optional<std::int64_t> precision;
  app.add_option("--precision", precision, "p-adic working precision in digits (default 64, or LOCGLOB_PRECISION)")
      ->check(CLI::Range(1, 100000));
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--timing", o.timing, "report elapsed seconds");

  auto module_inputs = [&](CLI::App* sub) {
    sub->add_option("--input", o.input, "JSON input file");
    sub->add_option("--builtin", o.builtin, "built-in input: mu8 or mu2");
  };
  auto* h1c = app.add_subcommand("h1", "H^1(G, M) with canonical generators");
  module_inputs(h1c);
  auto* h1s = app.add_subcommand("h1star", "classes locally trivial on every cyclic subgroup");
  module_inputs(h1s);
  auto* hasse = app.add_subcommand("hasse", "Hasse and strong Hasse verdicts, Sha and T-singularity");
  module_inputs(hasse);
  hasse->add_option("--t", o.t, "label set to query, comma separated (repeatable; \"\" is the empty set)");
  auto* gw = app.add_subcommand("gw", "kernel of Q^x/Q^xn -> prod over v not in T");
  gw->add_option("--n", o.n, "exponent")->required();
  gw->add_option("--t", o.t, "excluded primes, comma separated");
  gw->add_option("--non-decomposed", o.non_decomposed, "override the non-decomposed set (default 2)");
  gw->add_option("--sweep", o.sweep, "witness sweep bound on primes")->check(CLI::Range(2, 1000000));
  auto* power = app.add_subcommand("power", "is a an n-th power in Q_v");
  power->add_option("--a", o.a, "rational")->required();
  power->add_option("--n", o.n, "exponent")->required();
  power->add_option("--place", o.place, "prime or inf")->required();
  auto* hil = app.add_subcommand("hilbert", "Hilbert symbols and the product formula");
  hil->add_option("--a", o.a, "rational")->required();
  hil->add_option("--b", o.b, "rational")->required();
  hil->add_option("--place", o.place, "prime or inf");
  auto* ec = app.add_subcommand("ec-div", "divisibility of a point by 2^k on y^2 = (x - e1)(x - e2)(x - e3)");
  ec->add_option("--e", o.e, "roots e1,e2,e3");
  ec->add_option("--point", o.point, "x,y or O");
  ec->add_option("--k", o.k, "exponent of 2")->check(CLI::Range(1, 12));
  ec->add_option("--place", o.place, "prime, inf, or Q (default Q)");
  ec->add_option("--m", o.m, "propagation: test mP in m 2^k E(Q_v)");
  ec->add_flag("--halve", o.halve, "list the halves instead");
  auto* quad = app.add_subcommand("quadroots", "does some x^2 + b x + c have a root in Q_v");
  quad->add_option("--poly", o.polys, "b,c (repeatable)")->required();
  quad->add_option("--p", o.place, "prime or inf")->required();
  auto* rep = app.add_subcommand("reproduce", "run the reproduction suite against the golden file");
  rep->add_option("--golden", o.golden, "golden file");
  rep->add_flag("--oracle", o.oracle, "print a golden file computed by the oracles alone");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  RunReport report;
  report.command = Json(args);
  const auto start = std::chrono::steady_clock::now();
  std::optional<Json> raw;
  try {
    o.precision = precision ? *precision : detail::default_precision();
    const std::string name = chosen->get_name();
    if (name == "h1") cmd_h1(o, report);
    else if (name == "h1star") cmd_h1star(o, report);
    else if (name == "hasse") cmd_hasse(o, report);
    else if (name == "gw") cmd_gw(o, report);
    else if (name == "power") cmd_power(o, report);
    else if (name == "hilbert") cmd_hilbert(o, report);
    else if (name == "ec-div") cmd_ec_div(o, report);
    else if (name == "quadroots") cmd_quadroots(o, report);
    else raw = cmd_reproduce(o, report);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const PrecisionExhausted& e) {
    err << "undecided: " << e.what() << "\n";
    return 1;
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << "\n";
    return 1;
  }
  if (raw) {
    out << raw->dump(2) << "\n";
    return 0;
  }
  report.inputs["precision"] = o.precision;
  if (o.timing) {
    report.results["elapsed_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  out << render(report, o.format);
  return report.checks_failed == 0 ? 0 : 1;
}

}  // namespace locglob::cli
