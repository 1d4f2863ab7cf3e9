#pragma once

// Local-global principles over a finite place model: Sha(V, T), the Hasse
// and strong Hasse verdicts, T-singularity, the Grunwald-Wang kernel over Q,
// and weak-approximation verdicts for the dual module.
//
// A PlaceModel lists finitely many labeled places with explicit
// decomposition subgroups. Every cyclic subgroup is also taken to occur at
// infinitely many unlabeled places, so restriction to each cyclic subgroup
// is always imposed.

#include "locglob/cohomology.hpp"
#include "locglob/hilbert.hpp"
#include "locglob/padic.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace locglob {

using LabelSet = std::set<std::string>;

class PlaceModel {
 public:
  PlaceModel(GModule module, const std::map<std::string, std::vector<int>>& designated,
             const LabelSet& archimedean = {})
      : module_(std::make_shared<const GModule>(std::move(module))), archimedean_(archimedean) {
    for (const auto& [label, elements] : designated) {
      if (label.empty()) throw InvalidInput("place model: empty place label");
      designated_.emplace(label, module_->group().subgroup(elements));
    }
    for (const std::string& label : archimedean_) {
      const auto it = designated_.find(label);
      if (it == designated_.end()) throw InvalidInput("place model: archimedean label '" + label + "' is not designated");
      if (it->second.size() > 2) {
        throw InvalidInput("place model: archimedean place '" + label + "' has a decomposition group of order " +
                           std::to_string(it->second.size()));
      }
    }
  }

  const GModule& module() const { return *module_; }
  const std::shared_ptr<const GModule>& module_ptr() const { return module_; }
  const std::map<std::string, GroupSubset>& designated() const { return designated_; }
  const LabelSet& archimedean() const { return archimedean_; }

  LabelSet labels() const {
    LabelSet out;
    for (const auto& entry : designated_) out.insert(entry.first);
    return out;
  }

  const GroupSubset& decomposition(const std::string& label) const {
    const auto it = designated_.find(label);
    if (it == designated_.end()) throw InvalidInput("unknown place label '" + label + "'");
    return it->second;
  }

  /// H^1(G, M), computed once per model.
  const std::shared_ptr<const H1Group>& h1_group() const {
    if (!h1_) h1_ = std::make_shared<const H1Group>(h1(*module_));
    return h1_;
  }

 private:
  std::shared_ptr<const GModule> module_;
  std::map<std::string, GroupSubset> designated_;
  LabelSet archimedean_;
  mutable std::shared_ptr<const H1Group> h1_;
};

struct ShaGroup {
  LabelSet t;
  H1Subgroup members;
  LabelSet support_set;  // labels where some member restricts nontrivially

  const H1Group& ambient() const { return members.ambient(); }
  std::int64_t order() const { return members.order(); }
  bool trivial() const { return members.order() == 1; }
};

/// Sha(V, T): classes of V (default all of H^1) that restrict to coboundaries
/// on every cyclic subgroup and on every designated subgroup outside T.
inline ShaGroup sha_of_model(const PlaceModel& model, const LabelSet& t,
                             const std::optional<std::vector<CocycleClass>>& v = std::nullopt) {
  for (const std::string& label : t) model.decomposition(label);
  const auto& ambient = model.h1_group();
  const GModule& module = model.module();
  Subgroup k = ambient->cocycles();
  if (v) {
    std::vector<Vec> gens = ambient->coboundaries().generators();
    for (const CocycleClass& c : *v) gens.push_back(c.flat());
    k = Subgroup::generated(ambient->cocycles().moduli(), gens);
    if (!k.subset_of(ambient->cocycles())) throw InvalidInput("sha_of_model: V contains a non-cocycle");
  }
  for (const GroupSubset& c : cyclic_subgroups(module.group())) k = k.intersect(cochains::restriction_kernel(module, c));
  for (const auto& [label, sub] : model.designated()) {
    if (!t.count(label)) k = k.intersect(cochains::restriction_kernel(module, sub));
  }
  ShaGroup out{t, H1Subgroup(ambient, k), {}};
  for (const auto& [label, sub] : model.designated()) {
    for (const CocycleClass& g : out.members.generators()) {
      if (!restricts_trivially(g, sub)) {
        out.support_set.insert(label);
        break;
      }
    }
  }
  return out;
}

struct SingularityResult {
  LabelSet t;
  bool singular = false;
  std::int64_t sha_order = 1;
  std::optional<CocycleClass> witness;  // lex-smallest member nontrivial at a place of T
  std::optional<std::string> witness_place;
};

struct Verdict {
  bool hasse = true;
  bool strong_hasse = true;
  std::optional<CocycleClass> hasse_witness;
  std::optional<CocycleClass> strong_hasse_witness;
  std::vector<SingularityResult> queries;
};

namespace detail {

inline std::optional<CocycleClass> first_nonzero(const ShaGroup& sha) {
  for (const CocycleClass& c : sha.members.members()) {
    if (!sha.ambient().is_coboundary(c)) return c;
  }
  return std::nullopt;
}

}  // namespace detail

inline SingularityResult t_singularity(const PlaceModel& model, const LabelSet& t) {
  const ShaGroup sha = sha_of_model(model, t);
  SingularityResult out{t, false, sha.order(), std::nullopt, std::nullopt};
  for (const std::string& label : t) out.singular = out.singular || sha.support_set.count(label);
  if (!out.singular) return out;
  for (const CocycleClass& c : sha.members.members()) {
    for (const std::string& label : t) {
      if (!restricts_trivially(c, model.decomposition(label))) {
        out.witness = c;
        out.witness_place = label;
        return out;
      }
    }
  }
  throw ConsistencyError("t_singularity: support set is nonempty but no member restricts nontrivially");
}

/// hasse: Sha(empty) = 0. strong_hasse: Sha(all labels) = 0, which is
/// H^1_* = 0 since only the cyclic conditions remain.
inline Verdict verdict(const PlaceModel& model, const std::vector<LabelSet>& queries = {}) {
  Verdict out;
  const ShaGroup none = sha_of_model(model, {});
  const ShaGroup all = sha_of_model(model, model.labels());
  out.hasse = none.trivial();
  out.strong_hasse = all.trivial();
  if (!out.hasse) out.hasse_witness = detail::first_nonzero(none);
  if (!out.strong_hasse) out.strong_hasse_witness = detail::first_nonzero(all);
  for (const LabelSet& t : queries) out.queries.push_back(t_singularity(model, t));
  return out;
}

/// Labels whose decomposition group is not cyclic; Sha(T) lies in Sha(S)
/// for every T and vanishes when T misses S.
inline LabelSet finite_support_bound(const PlaceModel& model) {
  LabelSet out;
  for (const auto& [label, sub] : model.designated()) {
    if (!model.module().group().is_cyclic(sub)) out.insert(label);
  }
  return out;
}

struct GwWitnessCheck {
  std::size_t places_checked = 0;
  std::vector<std::string> local_failures;  // swept places where the witness is not an n-th power
  bool global_nth_power = false;
  bool half_power = false;

  bool ok() const { return local_failures.empty() && !global_nth_power && half_power; }
};

struct GwDecision {
  std::int64_t n = 0;
  int r = 0;  // 2-adic valuation of n
  std::set<std::uint64_t> t;
  std::set<std::uint64_t> non_decomposed;
  int kernel_order = 1;
  std::optional<Rational> witness;
  std::optional<GwWitnessCheck> check;
};

/// Sweeps the witness over primes p <= sweep_bound outside T and the real place.
inline GwWitnessCheck check_gw_witness(const Rational& w, std::int64_t n, const std::set<std::uint64_t>& t,
                                       std::uint64_t sweep_bound = 1000) {
  GwWitnessCheck out;
  std::vector<Place> places;
  for (std::uint64_t p : num::primes_up_to(sweep_bound)) {
    if (!t.count(p)) places.push_back(Place::prime(p));
  }
  places.push_back(Place::real());
  for (const Place& v : places) {
    ++out.places_checked;
    if (!is_nth_power(w, n, v)) out.local_failures.push_back(v.str());
  }
  out.global_nth_power = num::exact_root(w, static_cast<std::uint64_t>(n)).has_value();
  out.half_power = num::exact_root(w, static_cast<std::uint64_t>(n / 2)).has_value();
  return out;
}

/// Kernel of Q^x/Q^xn -> prod_{v not in T} Q_v^x/Q_v^xn. With n = 2^r n', it is
/// nontrivial iff r >= 3 and T contains every prime that does not decompose
/// in Q(mu_2^r), which over Q is {2}. A caller-supplied set replaces {2} to
/// emulate other base fields; no witness is produced then.
inline GwDecision gw_decision(std::int64_t n, const std::set<std::uint64_t>& t,
                              const std::optional<std::set<std::uint64_t>>& non_decomposed = std::nullopt,
                              std::uint64_t sweep_bound = 1000) {
  if (n < 2) throw InvalidInput("gw_decision: n must be >= 2");
  for (std::uint64_t p : t) {
    if (!num::is_prime(p)) throw InvalidInput("gw_decision: " + std::to_string(p) + " is not prime");
  }
  GwDecision out;
  out.n = n;
  out.t = t;
  out.non_decomposed = non_decomposed.value_or(std::set<std::uint64_t>{2});
  for (std::int64_t m = n; m % 2 == 0; m /= 2) ++out.r;
  bool covered = true;
  for (std::uint64_t p : out.non_decomposed) covered = covered && t.count(p);
  if (out.r < 3 || !covered) return out;
  out.kernel_order = 2;
  if (non_decomposed) return out;
  out.witness = num::pow(Rational(16), n / 8);
  out.check = check_gw_witness(*out.witness, n, t, sweep_bound);
  if (!out.check->ok()) {
    throw ConsistencyError("gw_decision: witness " + num::to_string(*out.witness) + " fails verification for n=" +
                           std::to_string(n));
  }
  return out;
}

struct WeakApproxVerdict {
  bool surjective = true;
  std::string reason;
  GModule dual;
  std::optional<CocycleClass> obstruction;
  std::map<Place, Rational> targets;
  std::optional<Rational> witness;  // n = 2 only
};

/// Is k^x-valued data for the dual module approximable at T? Surjective iff
/// the model is not T-singular. In the self-dual n = 2 case, labels naming
/// places of Q get a constructive witness hitting the given square classes
/// (default: a uniformizer at each prime, -1 at the real place).
inline WeakApproxVerdict weak_approx_verdict(const PlaceModel& model, const CyclotomicData& chi, const LabelSet& t,
                                             std::map<Place, Rational> targets = {}) {
  WeakApproxVerdict out;
  out.dual = dual_module(model.module(), chi);
  if (t.empty()) {
    out.reason = "T is empty";
    return out;
  }
  const SingularityResult s = t_singularity(model, t);
  out.surjective = !s.singular;
  if (!out.surjective) {
    out.obstruction = s.witness;
    out.reason = "singular at " + *s.witness_place;
    return out;
  }
  out.reason = "Sha restricts trivially at every place of T";
  if (chi.modulus() != 2 || model.module().space().order() != 2) return out;
  if (targets.empty()) {
    for (const std::string& label : t) {
      const Place v = Place::parse(label);
      targets.emplace(v, v.is_real() ? Rational(-1) : Rational(static_cast<std::int64_t>(v.p())));
    }
  }
  out.targets = targets;
  out.witness = square_class_approximate(targets);
  return out;
}

}  // namespace locglob
