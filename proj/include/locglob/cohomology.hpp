#pragma once

// First cohomology of a finite group with coefficients in a finite module.
//
// A 1-cochain f : G -> M is flattened into (Z/d)^{|G| r} with coordinate
// g * r + i holding f(g)_i. Z^1 is the kernel of the coboundary
// (df)(a, b) = f(ab) - f(a) - a f(b) imposed on every pair, B^1 is the image
// of m -> (g -> g m - m), and H^1 = Z^1 / B^1 is computed by Smith form.

#include "locglob/finite_abelian.hpp"
#include "locglob/gmodule.hpp"
#include "locglob/group.hpp"
#include "locglob/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace locglob {

namespace cochains {

inline Vec moduli(const GModule& module) {
  Vec out;
  for (int g = 0; g < module.group().order(); ++g) {
    out.insert(out.end(), module.space().factors().begin(), module.space().factors().end());
  }
  return out;
}

inline Vec flatten(const std::vector<Vec>& values) {
  Vec out;
  for (const Vec& v : values) out.insert(out.end(), v.begin(), v.end());
  return out;
}

inline std::vector<Vec> unflatten(const GModule& module, const Vec& flat) {
  const std::size_t r = module.space().rank();
  std::vector<Vec> out;
  for (int g = 0; g < module.group().order(); ++g) {
    const auto begin = flat.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(g) * r);
    out.emplace_back(begin, begin + static_cast<std::ptrdiff_t>(r));
  }
  return out;
}

/// Z^1 as a subgroup of C^1.
inline Subgroup cocycles(const GModule& module) {
  const GroupTable& group = module.group();
  const std::size_t m = static_cast<std::size_t>(group.order());
  const std::size_t r = module.space().rank();
  const Vec c1 = moduli(module);
  Vec c2;
  for (std::size_t k = 0; k < m; ++k) c2.insert(c2.end(), c1.begin(), c1.end());
  Matrix delta(m * m * r, Vec(m * r, 0));
  for (int a = 0; a < group.order(); ++a) {
    for (int b = 0; b < group.order(); ++b) {
      const std::size_t row = (static_cast<std::size_t>(a) * m + static_cast<std::size_t>(b)) * r;
      const Matrix& act = module.matrix(a);
      for (std::size_t i = 0; i < r; ++i) {
        delta[row + i][static_cast<std::size_t>(group.mul(a, b)) * r + i] += 1;
        delta[row + i][static_cast<std::size_t>(a) * r + i] -= 1;
        for (std::size_t j = 0; j < r; ++j) delta[row + i][static_cast<std::size_t>(b) * r + j] -= act[i][j];
      }
    }
  }
  return Homomorphism(c1, c2, std::move(delta)).kernel();
}

/// d0(m) = (g -> g m - m) for a basis vector m = e_j.
inline Vec coboundary_of_basis(const GModule& module, std::size_t j) {
  const std::size_t r = module.space().rank();
  Vec out;
  for (int g = 0; g < module.group().order(); ++g) {
    for (std::size_t i = 0; i < r; ++i) out.push_back(module.matrix(g)[i][j] - (i == j ? 1 : 0));
  }
  return detail::reduce_mod(out, moduli(module));
}

/// B^1 as a subgroup of C^1.
inline Subgroup coboundaries(const GModule& module) {
  std::vector<Vec> gens;
  for (std::size_t j = 0; j < module.space().rank(); ++j) gens.push_back(coboundary_of_basis(module, j));
  return Subgroup::generated(moduli(module), gens);
}

/// Cochains whose restriction to the subgroup is a coboundary there.
inline Subgroup restriction_kernel(const GModule& module, const GroupSubset& sub) {
  const std::size_t r = module.space().rank();
  std::vector<Vec> gens;
  const Vec mod = moduli(module);
  for (int g = 0; g < module.group().order(); ++g) {
    if (sub.contains(g)) continue;
    for (std::size_t i = 0; i < r; ++i) {
      Vec e(mod.size(), 0);
      e[static_cast<std::size_t>(g) * r + i] = 1;
      gens.push_back(std::move(e));
    }
  }
  for (std::size_t j = 0; j < r; ++j) {
    Vec b = coboundary_of_basis(module, j);
    for (int g = 0; g < module.group().order(); ++g) {
      if (sub.contains(g)) continue;
      for (std::size_t i = 0; i < r; ++i) b[static_cast<std::size_t>(g) * r + i] = 0;
    }
    gens.push_back(std::move(b));
  }
  return Subgroup::generated(mod, gens);
}

inline bool is_cocycle(const GModule& module, const std::vector<Vec>& values) {
  const GroupTable& group = module.group();
  const FinAb& space = module.space();
  for (int a = 0; a < group.order(); ++a) {
    for (int b = 0; b < group.order(); ++b) {
      const Vec rhs = space.add(values[static_cast<std::size_t>(a)], module.act(a, values[static_cast<std::size_t>(b)]));
      if (space.reduce(values[static_cast<std::size_t>(group.mul(a, b))]) != rhs) return false;
    }
  }
  return true;
}

}  // namespace cochains

/// A 1-cocycle, standing for its class in H^1.
class CocycleClass {
 public:
  CocycleClass(std::shared_ptr<const GModule> module, std::vector<Vec> values) : module_(std::move(module)) {
    if (values.size() != static_cast<std::size_t>(module_->group().order())) {
      throw InvalidInput("cocycle: need one value per group element");
    }
    for (Vec& v : values) values_.push_back(module_->space().reduce(std::move(v)));
    if (!cochains::is_cocycle(*module_, values_)) throw InvalidInput("cocycle: f(gh) != f(g) + g f(h)");
  }

  const GModule& module() const { return *module_; }
  const std::shared_ptr<const GModule>& module_ptr() const { return module_; }
  const std::vector<Vec>& values() const { return values_; }
  Vec flat() const { return cochains::flatten(values_); }

  std::string describe() const {
    std::string out;
    for (std::size_t g = 0; g < values_.size(); ++g) out += (g ? " " : "") + to_string(values_[g]);
    return out;
  }

  friend bool operator==(const CocycleClass& a, const CocycleClass& b) { return a.values_ == b.values_; }

 private:
  std::shared_ptr<const GModule> module_;
  std::vector<Vec> values_;
};

struct H1Options {
  bool cross_check = true;
  std::int64_t brute_force_limit = std::int64_t{1} << 20;  // on |M|^|G|
};

/// H^1(G, M) with explicit generators, a membership solver and canonical
/// representatives (the lexicographically smallest cocycle in each class
/// when B^1 is small enough to enumerate).
class H1Group {
 public:
  explicit H1Group(std::shared_ptr<const GModule> module)
      : module_(std::move(module)),
        cocycles_(cochains::cocycles(*module_)),
        coboundaries_(cochains::coboundaries(*module_)),
        quotient_(cocycles_, coboundaries_) {
    if (coboundaries_.order() <= (std::int64_t{1} << 16)) boundary_elements_ = coboundaries_.elements();
    for (const Vec& g : quotient_.generators()) generators_.push_back(canonical(g));
  }

  const GModule& module() const { return *module_; }
  const std::shared_ptr<const GModule>& module_ptr() const { return module_; }
  const FinAb& structure() const { return quotient_.structure(); }
  std::int64_t order() const { return structure().order(); }
  const std::vector<CocycleClass>& generators() const { return generators_; }
  const Subgroup& cocycles() const { return cocycles_; }
  const Subgroup& coboundaries() const { return coboundaries_; }

  Vec coordinates(const CocycleClass& c) const { return coordinates_of_flat(c.flat()); }
  Vec coordinates_of_flat(const Vec& flat) const { return quotient_.coordinates(flat); }

  bool is_coboundary(const CocycleClass& c) const { return coboundaries_.contains(c.flat()); }

  CocycleClass element(const Vec& coords) const { return canonical(quotient_.lift(structure().reduce(coords))); }

  /// The canonical cocycle in the class of a flattened cocycle.
  CocycleClass canonical(const Vec& flat) const {
    const Vec& mod = cocycles_.moduli();
    Vec best = detail::reduce_mod(flat, mod);
    for (const Vec& b : boundary_elements_) {
      Vec candidate(flat.size());
      for (std::size_t k = 0; k < flat.size(); ++k) candidate[k] = num::mod(flat[k] + b[k], mod[k]);
      best = std::min(best, candidate);
    }
    return CocycleClass(module_, cochains::unflatten(*module_, best));
  }

  /// All classes, listed by coordinate vector in mixed-radix order.
  std::vector<CocycleClass> elements(std::int64_t limit = 1 << 16) const {
    if (order() > limit) throw InvalidInput("H1Group::elements: group too large to enumerate");
    std::vector<CocycleClass> out;
    for (std::int64_t i = 0; i < order(); ++i) out.push_back(element(structure().element_at(i)));
    return out;
  }

 private:
  std::shared_ptr<const GModule> module_;
  Subgroup cocycles_;
  Subgroup coboundaries_;
  Quotient quotient_;
  std::vector<Vec> boundary_elements_;
  std::vector<CocycleClass> generators_;
};

/// |M|^|G|, saturating at limit + 1.
inline std::int64_t cochain_count(const GModule& module, std::int64_t limit) {
  std::int64_t c = 1;
  for (int g = 0; g < module.group().order(); ++g) {
    c *= module.space().order();
    if (c > limit) return limit + 1;
  }
  return c;
}

/// H^1(G, M). Small cases are cross-checked against exhaustive enumeration
/// of all maps G -> M; a disagreement raises ConsistencyError.
inline H1Group h1(const GModule& module, const H1Options& options = {}) {
  H1Group out(std::make_shared<const GModule>(module));
  if (options.cross_check && cochain_count(module, options.brute_force_limit) <= options.brute_force_limit) {
    const oracle::BruteH1 brute = oracle::brute_force_h1(module);
    if (brute.cocycle_count != out.cocycles().order() || brute.coboundary_count != out.coboundaries().order() ||
        !(brute.structure == out.structure())) {
      throw ConsistencyError("h1: Smith-form result " + out.structure().describe() +
                             " disagrees with enumeration " + brute.structure.describe());
    }
  }
  return out;
}

/// The cocycle restricted to a subgroup, as a cocycle of the restricted module.
inline CocycleClass restrict_class(const CocycleClass& c, const GroupSubset& sub) {
  auto restricted = std::make_shared<const GModule>(restrict_module(c.module(), sub));
  std::vector<Vec> values;
  for (int g : sub.elements) values.push_back(c.values()[static_cast<std::size_t>(g)]);
  return CocycleClass(std::move(restricted), std::move(values));
}

inline bool restricts_trivially(const CocycleClass& c, const GroupSubset& sub) {
  return cochains::restriction_kernel(c.module(), sub).contains(c.flat());
}

/// A subgroup K / B^1 of H^1, given by a lattice of cocycles B^1 <= K <= Z^1.
class H1Subgroup {
 public:
  H1Subgroup(std::shared_ptr<const H1Group> ambient, Subgroup cocycles)
      : ambient_(std::move(ambient)), cocycles_(std::move(cocycles)), quotient_(cocycles_, ambient_->coboundaries()) {
    if (!cocycles_.subset_of(ambient_->cocycles())) throw InvalidInput("H1Subgroup: lattice contains non-cocycles");
    for (const Vec& g : quotient_.generators()) generators_.push_back(ambient_->canonical(g));
  }

  const H1Group& ambient() const { return *ambient_; }
  const std::shared_ptr<const H1Group>& ambient_ptr() const { return ambient_; }
  const FinAb& structure() const { return quotient_.structure(); }
  std::int64_t order() const { return structure().order(); }
  const std::vector<CocycleClass>& generators() const { return generators_; }
  const Subgroup& cocycles() const { return cocycles_; }

  bool contains(const CocycleClass& c) const { return cocycles_.contains(c.flat()); }

  CocycleClass element(const Vec& coords) const {
    return ambient_->canonical(quotient_.lift(structure().reduce(coords)));
  }

  /// Members sorted by their canonical representatives.
  std::vector<CocycleClass> members(std::int64_t limit = 1 << 16) const {
    if (order() > limit) throw InvalidInput("H1Subgroup::members: subgroup too large to enumerate");
    std::vector<std::pair<Vec, std::int64_t>> keyed;
    std::vector<CocycleClass> all;
    for (std::int64_t i = 0; i < order(); ++i) {
      all.push_back(element(structure().element_at(i)));
      keyed.emplace_back(all.back().flat(), i);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<CocycleClass> out;
    for (const auto& [flat, i] : keyed) out.push_back(all[static_cast<std::size_t>(i)]);
    return out;
  }

 private:
  std::shared_ptr<const H1Group> ambient_;
  Subgroup cocycles_;
  Quotient quotient_;
  std::vector<CocycleClass> generators_;
};

/// Classes whose restriction to every cyclic subgroup vanishes.
inline H1Subgroup h1_star(const GModule& module, const H1Options& options = {}) {
  auto ambient = std::make_shared<const H1Group>(h1(module, options));
  Subgroup k = ambient->cocycles();
  for (const GroupSubset& c : cyclic_subgroups(module.group())) {
    k = k.intersect(cochains::restriction_kernel(module, c));
  }
  H1Subgroup out(ambient, k);
  if (options.cross_check && cochain_count(module, options.brute_force_limit) <= options.brute_force_limit) {
    const std::int64_t brute = oracle::brute_force_h1_star_order(module);
    if (brute != out.order()) {
      throw ConsistencyError("h1_star: order " + std::to_string(out.order()) + " disagrees with enumeration " +
                             std::to_string(brute));
    }
  }
  return out;
}

struct HomothetyResult {
  bool applies = false;
  int sigma = 0;                 // central element acting as a scalar
  std::int64_t multiplier = 1;   // sigma acts as multiplication by this
  bool h1_vanishes = false;      // verified by computing H^1
};

/// Looks for a central sigma acting on M as m * id with gcd(m - 1, exp M) = 1.
/// Such an element forces H^1 = 0; when found, this is verified by computing
/// H^1 and a nonzero result raises ConsistencyError. M = 0 applies vacuously.
inline HomothetyResult homothety_criterion(const GModule& module) {
  HomothetyResult out;
  const std::int64_t e = module.space().exponent();
  for (int g = 0; g < module.group().order() && !out.applies; ++g) {
    if (!module.group().is_central(g)) continue;
    for (std::int64_t m = 0; m < e; ++m) {
      if (module.acts_as_scalar(g, m) && std::gcd(num::mod(m - 1, e), e) == 1) {
        out.applies = true;
        out.sigma = g;
        out.multiplier = e == 1 ? 1 : m;
        break;
      }
    }
  }
  if (out.applies) {
    const H1Group group = h1(module);
    out.h1_vanishes = group.order() == 1;
    if (!out.h1_vanishes) {
      throw ConsistencyError("homothety criterion: central homothety found but H^1 = " + group.structure().describe());
    }
  }
  return out;
}

}  // namespace locglob
