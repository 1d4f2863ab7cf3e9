#pragma once

// RunReport and input parsing shared by the CLI subcommands.

#include "json.hpp"

#include "locglob/gmodule.hpp"
#include "locglob/localglobal.hpp"
#include "locglob/models.hpp"
#include "locglob/number.hpp"
#include "locglob/padic.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace locglob::cli {

using Json = nlohmann::ordered_json;

struct RunReport {
  Json command = Json::array();
  Json inputs = Json::object();
  Json results = Json::object();
  int checks_passed = 0;
  int checks_failed = 0;
  std::vector<std::string> failures;

  void check(const std::string& name, bool ok) {
    if (ok) {
      ++checks_passed;
    } else {
      ++checks_failed;
      failures.push_back(name);
    }
  }

  Json to_json() const {
    Json j;
    j["command"] = command;
    j["inputs"] = inputs;
    j["results"] = results;
    j["checks_passed"] = checks_passed;
    j["checks_failed"] = checks_failed;
    j["failed_checks"] = failures;
    return j;
  }
};

namespace detail {

inline void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else if (j.is_string()) {
    out << prefix << ": " << j.get<std::string>() << "\n";
  } else {
    out << prefix << ": " << j.dump() << "\n";
  }
}

}  // namespace detail

/// Text rendering: one "dotted.key: value" line per leaf.
inline std::string render(const RunReport& report, const std::string& format) {
  if (format == "json") return report.to_json().dump(2) + "\n";
  std::ostringstream out;
  detail::flatten(report.to_json(), "", out);
  return out.str();
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open input file '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("malformed JSON in '" + path + "': " + e.what());
  }
}

inline std::vector<std::string> split(const std::string& text, char sep = ',') {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline LabelSet parse_labels(const std::string& text) {
  LabelSet out;
  for (const std::string& s : split(text)) {
    if (s.empty()) throw InvalidInput("empty label in '" + text + "'");
    out.insert(s);
  }
  return out;
}

inline std::set<std::uint64_t> parse_primes(const std::string& text) {
  std::set<std::uint64_t> out;
  for (const std::string& s : split(text)) {
    const Place v = Place::parse(s);
    if (v.is_real()) throw InvalidInput("expected a prime, got 'inf'");
    out.insert(v.p());
  }
  return out;
}

inline Json labels_json(const LabelSet& t) { return Json(std::vector<std::string>(t.begin(), t.end())); }

inline Json vec_json(const Vec& v) { return Json(std::vector<std::int64_t>(v.begin(), v.end())); }

inline Json cocycle_json(const CocycleClass& c) {
  Json out = Json::array();
  for (const Vec& v : c.values()) out.push_back(vec_json(v));
  return out;
}

namespace detail {

inline std::int64_t get_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw InvalidInput(what + ": expected an integer");
  return j.get<std::int64_t>();
}

inline Vec get_vec(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InvalidInput(what + ": expected an array");
  Vec out;
  for (const Json& x : j) out.push_back(get_int(x, what));
  return out;
}

inline Matrix get_matrix(const Json& j, std::size_t r, const std::string& what) {
  if (!j.is_array() || j.size() != r) throw InvalidInput(what + ": expected a " + std::to_string(r) + "x" + std::to_string(r) + " matrix");
  Matrix m;
  for (const Json& row : j) {
    Vec v = get_vec(row, what);
    if (v.size() != r) throw InvalidInput(what + ": row has the wrong length");
    m.push_back(std::move(v));
  }
  return m;
}

inline GroupTable group_from_json(const Json& j) {
  if (j.contains("group")) {
    if (!j["group"].is_string()) throw InvalidInput("group: expected a name");
    const std::string name = j["group"].get<std::string>();
    if (name == "V4") return GroupTable::product(GroupTable::cyclic(2), GroupTable::cyclic(2));
    if (name == "S3") return GroupTable::symmetric3();
    if (name == "(Z/8)^x") return GroupTable::units_mod(8);
    if (name.rfind("Z/", 0) == 0) {
      const Rational n = num::parse_rational(name.substr(2));
      if (n < 1 || n > 64 || denominator(n) != 1) throw InvalidInput("group: cyclic order must be 1..64");
      return GroupTable::cyclic(static_cast<int>(numerator(n)));
    }
    throw InvalidInput("group: unknown name '" + name + "' (use Z/n, V4, S3 or (Z/8)^x)");
  }
  if (!j.contains("order") || !j.contains("table")) throw InvalidInput("module: need \"group\" or \"order\" and \"table\"");
  const std::int64_t order = get_int(j["order"], "order");
  if (order < 1 || order > 64) throw InvalidInput("order: must be 1..64");
  Vec flat = get_vec(j["table"], "table");
  std::vector<int> table(flat.begin(), flat.end());
  return GroupTable(static_cast<int>(order), table);
}

}  // namespace detail

/// Module schema: group ("group" name, or "order" + row-major "table"),
/// "invariant_factors", and "action" (array indexed by element, or object
/// keyed by element index, of row-major integer matrices; default trivial).
inline GModule module_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidInput("input: expected a JSON object");
  const GroupTable g = detail::group_from_json(j);
  const Vec factors = j.contains("invariant_factors") ? detail::get_vec(j["invariant_factors"], "invariant_factors") : Vec{};
  const FinAb space(factors);
  if (!j.contains("action")) return GModule::trivial(g, space);
  const Json& a = j["action"];
  std::vector<Matrix> action(static_cast<std::size_t>(g.order()));
  std::vector<bool> seen(action.size(), false);
  auto put = [&](std::int64_t idx, const Json& m) {
    if (idx < 0 || idx >= g.order()) throw InvalidInput("action: element index " + std::to_string(idx) + " out of range");
    action[static_cast<std::size_t>(idx)] = detail::get_matrix(m, space.rank(), "action[" + std::to_string(idx) + "]");
    seen[static_cast<std::size_t>(idx)] = true;
  };
  if (a.is_array()) {
    for (std::size_t i = 0; i < a.size(); ++i) put(static_cast<std::int64_t>(i), a[i]);
  } else if (a.is_object()) {
    for (const auto& [k, m] : a.items()) {
      const Rational idx = num::parse_rational(k);
      if (denominator(idx) != 1) throw InvalidInput("action: bad element index '" + k + "'");
      put(static_cast<std::int64_t>(numerator(idx)), m);
    }
  } else {
    throw InvalidInput("action: expected an array or an object");
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw InvalidInput("action: missing matrix for element " + std::to_string(i));
  }
  return GModule(g, space, action);
}

inline std::optional<CyclotomicData> chi_from_json(const Json& j, const GModule& m) {
  if (!j.contains("chi")) return std::nullopt;
  const std::int64_t n = j.contains("chi_modulus") ? detail::get_int(j["chi_modulus"], "chi_modulus") : m.space().exponent();
  return CyclotomicData(m.group(), n, detail::get_vec(j["chi"], "chi"));
}

/// Model schema: module fields plus "designated" (label -> element list)
/// and "archimedean" (list of labels).
inline PlaceModel model_from_json(const Json& j) {
  GModule m = module_from_json(j);
  std::map<std::string, std::vector<int>> designated;
  if (j.contains("designated")) {
    if (!j["designated"].is_object()) throw InvalidInput("designated: expected an object");
    for (const auto& [label, elems] : j["designated"].items()) {
      const Vec v = detail::get_vec(elems, "designated." + label);
      designated[label] = std::vector<int>(v.begin(), v.end());
    }
  }
  LabelSet arch;
  if (j.contains("archimedean")) {
    if (!j["archimedean"].is_array()) throw InvalidInput("archimedean: expected an array of labels");
    for (const Json& l : j["archimedean"]) {
      if (!l.is_string()) throw InvalidInput("archimedean: expected label strings");
      arch.insert(l.get<std::string>());
    }
  }
  return PlaceModel(std::move(m), designated, arch);
}

/// Built-in inputs, as JSON in the input schema.
inline Json builtin_input(const std::string& name) {
  if (name == "mu8" || name == "mu2") {
    std::vector<int> residues;
    const GroupTable g = GroupTable::units_mod(8, &residues);
    Json j;
    j["order"] = g.order();
    j["table"] = g.table();
    j["invariant_factors"] = name == "mu8" ? std::vector<int>{8} : std::vector<int>{2};
    Json action = Json::array();
    for (int r : residues) action.push_back(Json::array({Json::array({name == "mu8" ? r : 1})}));
    j["action"] = action;
    j["chi"] = name == "mu8" ? Json(residues) : Json(std::vector<int>(residues.size(), 1));
    j["designated"] = Json::object({{"2", {0, 1, 2, 3}}, {"inf", {0, models::unit_index(7)}}});
    j["archimedean"] = Json::array({"inf"});
    return j;
  }
  throw InvalidInput("unknown builtin '" + name + "' (use mu8 or mu2)");
}

}  // namespace locglob::cli
