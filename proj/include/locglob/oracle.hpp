#pragma once

// Brute-force reference computations. Nothing here shares code paths with
// the lattice/Smith machinery: everything is plain enumeration over element
// indices, so these routines serve as independent cross-checks.

#include "locglob/gmodule.hpp"
#include "locglob/number.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <vector>

namespace locglob::oracle {

/// Addition and action tables on element indices of a small module.
class ModuleTables {
 public:
  explicit ModuleTables(const GModule& module) : module_(&module) {
    const FinAb& space = module.space();
    size_ = space.order();
    for (std::int64_t x = 0; x < size_; ++x) elements_.push_back(space.element_at(x));
    if (size_ <= 1024) {
      add_.assign(static_cast<std::size_t>(size_ * size_), 0);
      for (std::int64_t x = 0; x < size_; ++x) {
        for (std::int64_t y = 0; y < size_; ++y) {
          add_[static_cast<std::size_t>(x * size_ + y)] = space.index_of(space.add(element(x), element(y)));
        }
      }
    }
    const int m = module.group().order();
    act_.assign(static_cast<std::size_t>(m), std::vector<std::int64_t>(static_cast<std::size_t>(size_)));
    for (int g = 0; g < m; ++g) {
      for (std::int64_t x = 0; x < size_; ++x) {
        act_[static_cast<std::size_t>(g)][static_cast<std::size_t>(x)] =
            space.index_of(module.act(g, elements_[static_cast<std::size_t>(x)]));
      }
    }
  }

  std::int64_t size() const { return size_; }
  std::int64_t act(int g, std::int64_t x) const {
    return act_[static_cast<std::size_t>(g)][static_cast<std::size_t>(x)];
  }
  std::int64_t add(std::int64_t x, std::int64_t y) const {
    if (!add_.empty()) return add_[static_cast<std::size_t>(x * size_ + y)];
    return module_->space().index_of(
        module_->space().add(elements_[static_cast<std::size_t>(x)], elements_[static_cast<std::size_t>(y)]));
  }
  std::int64_t sub(std::int64_t x, std::int64_t y) const {
    return module_->space().index_of(module_->space().add(
        elements_[static_cast<std::size_t>(x)], module_->space().neg(elements_[static_cast<std::size_t>(y)])));
  }
  std::int64_t scale(std::int64_t x, std::int64_t k) const {
    return module_->space().index_of(module_->space().scale(elements_[static_cast<std::size_t>(x)], k));
  }
  const Vec& element(std::int64_t x) const { return elements_[static_cast<std::size_t>(x)]; }

 private:
  const GModule* module_;
  std::int64_t size_ = 0;
  std::vector<Vec> elements_;
  std::vector<std::vector<std::int64_t>> act_;
  std::vector<std::int64_t> add_;
};

using Map = std::vector<std::int64_t>;  // value index for each group element

/// Every crossed homomorphism f(gh) = f(g) + g f(h), by depth-first search
/// over all maps G -> M with pruning on completed pairs.
inline std::vector<Map> all_cocycles(const GModule& module, const ModuleTables& t) {
  const GroupTable& g = module.group();
  const int m = g.order();
  std::vector<Map> out;
  Map f(static_cast<std::size_t>(m), 0);
  // Pair (a, b) is checked once all of a, b, ab are assigned, i.e. at index max.
  std::vector<std::vector<std::pair<int, int>>> due(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) due[static_cast<std::size_t>(std::max({a, b, g.mul(a, b)}))].emplace_back(a, b);
  }
  auto ok = [&](int level) {
    for (const auto& [a, b] : due[static_cast<std::size_t>(level)]) {
      const std::int64_t lhs = f[static_cast<std::size_t>(g.mul(a, b))];
      const std::int64_t rhs = t.add(f[static_cast<std::size_t>(a)], t.act(a, f[static_cast<std::size_t>(b)]));
      if (lhs != rhs) return false;
    }
    return true;
  };
  auto dfs = [&](auto&& self, int level) -> void {
    if (level == m) {
      out.push_back(f);
      return;
    }
    for (std::int64_t v = 0; v < t.size(); ++v) {
      f[static_cast<std::size_t>(level)] = v;
      if (ok(level)) self(self, level + 1);
    }
  };
  dfs(dfs, 0);
  return out;
}

/// The set of principal crossed homomorphisms g -> g m - m.
inline std::set<Map> all_coboundaries(const GModule& module, const ModuleTables& t) {
  std::set<Map> out;
  for (std::int64_t x = 0; x < t.size(); ++x) {
    Map f;
    for (int g = 0; g < module.group().order(); ++g) f.push_back(t.sub(t.act(g, x), x));
    out.insert(std::move(f));
  }
  return out;
}

/// Rebuilds a finite abelian group from the counts #{x : d x = 0} for all d
/// dividing the exponent bound e.
inline FinAb group_from_torsion_counts(std::int64_t e, const std::function<std::int64_t(std::int64_t)>& killed_by) {
  Vec cyclic;
  for (const auto& [p, k] : num::factor(static_cast<std::uint64_t>(e))) {
    // log_p #{x : p^j x = 0} = sum_i min(j, e_i)
    std::vector<int> logs{0};
    std::int64_t q = 1;
    for (int j = 1; j <= k; ++j) {
      q *= static_cast<std::int64_t>(p);
      std::int64_t c = killed_by(q);
      int l = 0;
      while (c % static_cast<std::int64_t>(p) == 0) {
        c /= static_cast<std::int64_t>(p);
        ++l;
      }
      if (c != 1) throw ConsistencyError("torsion count is not a prime power");
      logs.push_back(l);
    }
    // Factors of exponent >= j: logs[j] - logs[j-1].
    for (int j = 1; j <= k; ++j) {
      const int at_least_j = logs[static_cast<std::size_t>(j)] - logs[static_cast<std::size_t>(j - 1)];
      const int at_least_next = j < k ? logs[static_cast<std::size_t>(j + 1)] - logs[static_cast<std::size_t>(j)] : 0;
      std::int64_t pj = 1;
      for (int i = 0; i < j; ++i) pj *= static_cast<std::int64_t>(p);
      for (int c = 0; c < at_least_j - at_least_next; ++c) cyclic.push_back(pj);
    }
  }
  return FinAb::from_cyclic_orders(cyclic);
}

struct BruteH1 {
  std::int64_t cocycle_count = 0;
  std::int64_t coboundary_count = 0;
  FinAb structure;
};

/// H^1 by exhaustive enumeration: structure recovered from the number of
/// classes killed by each divisor of exp(M).
inline BruteH1 brute_force_h1(const GModule& module) {
  const ModuleTables t(module);
  const std::vector<Map> z = all_cocycles(module, t);
  const std::set<Map> b = all_coboundaries(module, t);
  BruteH1 out;
  out.cocycle_count = static_cast<std::int64_t>(z.size());
  out.coboundary_count = static_cast<std::int64_t>(b.size());
  auto killed_by = [&](std::int64_t d) {
    std::int64_t c = 0;
    for (const Map& f : z) {
      Map df;
      for (std::int64_t v : f) df.push_back(t.scale(v, d));
      if (b.count(df) != 0) ++c;
    }
    return c / out.coboundary_count;
  };
  out.structure = group_from_torsion_counts(module.space().exponent(), killed_by);
  return out;
}

/// Is f restricted to the subgroup a coboundary there? Enumerates m in M.
inline bool restriction_is_coboundary(const ModuleTables& t, const Map& f, const GroupSubset& sub) {
  for (std::int64_t x = 0; x < t.size(); ++x) {
    bool all = true;
    for (int g : sub.elements) {
      if (t.sub(t.act(g, x), x) != f[static_cast<std::size_t>(g)]) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

/// Order of the subgroup of H^1 of classes trivial on every cyclic subgroup.
inline std::int64_t brute_force_h1_star_order(const GModule& module) {
  const ModuleTables t(module);
  const std::vector<Map> z = all_cocycles(module, t);
  const std::set<Map> b = all_coboundaries(module, t);
  std::vector<GroupSubset> cyclic;
  for (int g = 0; g < module.group().order(); ++g) cyclic.push_back(module.group().cyclic_subgroup(g));
  std::int64_t count = 0;
  for (const Map& f : z) {
    bool locally_trivial = true;
    for (const GroupSubset& c : cyclic) {
      if (!restriction_is_coboundary(t, f, c)) {
        locally_trivial = false;
        break;
      }
    }
    if (locally_trivial) ++count;
  }
  return count / static_cast<std::int64_t>(b.size());
}

/// Order of the classes trivial on every listed subgroup and on every
/// cyclic subgroup, by enumerating cocycles.
inline std::int64_t brute_force_kernel_order(const GModule& module, std::vector<GroupSubset> subs) {
  const ModuleTables t(module);
  for (int g = 0; g < module.group().order(); ++g) subs.push_back(module.group().cyclic_subgroup(g));
  std::int64_t count = 0;
  for (const Map& f : all_cocycles(module, t)) {
    bool trivial = true;
    for (const GroupSubset& s : subs) {
      if (!restriction_is_coboundary(t, f, s)) {
        trivial = false;
        break;
      }
    }
    if (trivial) ++count;
  }
  return count / static_cast<std::int64_t>(all_coboundaries(module, t).size());
}

/// H^1 of a cyclic group <s> as ker(N) / (s - 1)M, counted by enumeration.
inline std::int64_t cyclic_h1_order(const GModule& module, int generator) {
  const ModuleTables t(module);
  const GroupTable& g = module.group();
  std::int64_t kernel = 0;
  std::set<std::int64_t> image;
  for (std::int64_t x = 0; x < t.size(); ++x) {
    std::int64_t norm = 0;
    int s = 0;
    do {
      norm = t.add(norm, t.act(s, x));
      s = g.mul(s, generator);
    } while (s != 0);
    if (norm == 0) ++kernel;
    image.insert(t.sub(t.act(generator, x), x));
  }
  return kernel / static_cast<std::int64_t>(image.size());
}

/// Annihilator of a subgroup under a pairing, by enumerating the whole group.
inline std::vector<Vec> brute_annihilator(const FinAb& space, const std::vector<Vec>& subgroup_elements,
                                          const std::function<std::int64_t(const Vec&, const Vec&)>& pairing) {
  std::vector<Vec> out;
  for (std::int64_t i = 0; i < space.order(); ++i) {
    const Vec b = space.element_at(i);
    bool all = true;
    for (const Vec& a : subgroup_elements) {
      if (pairing(a, b) != 0) {
        all = false;
        break;
      }
    }
    if (all) out.push_back(b);
  }
  return out;
}

/// Hilbert symbol (a, b)_p by searching for a primitive solution of
/// z^2 = a x^2 + b y^2 modulo p^3 (p odd) or 2^5, with the unit coordinate
/// scaled to 1. Arguments are nonzero integers.
inline int hilbert_by_search(BigInt a, BigInt b, std::uint64_t p) {
  if (a == 0 || b == 0) throw InvalidInput("hilbert_by_search: zero argument");
  const BigInt p2 = BigInt(p) * p;
  while (a % p2 == 0) a /= p2;
  while (b % p2 == 0) b /= p2;
  const std::int64_t q = static_cast<std::int64_t>(num::pow(BigInt(p), p == 2 ? 5 : 3));
  const std::int64_t ar = static_cast<std::int64_t>(num::mod(a, BigInt(q)));
  const std::int64_t br = static_cast<std::int64_t>(num::mod(b, BigInt(q)));
  std::vector<bool> square(static_cast<std::size_t>(q), false);
  std::vector<bool> b_times_square(static_cast<std::size_t>(q), false);
  for (std::int64_t t = 0; t < q; ++t) {
    square[static_cast<std::size_t>(t * t % q)] = true;
    b_times_square[static_cast<std::size_t>(br * (t * t % q) % q)] = true;
  }
  for (std::int64_t t = 0; t < q; ++t) {
    const std::int64_t t2 = t * t % q;
    if (square[static_cast<std::size_t>((ar + br * t2) % q)]) return 1;                       // x = 1, y = t
    if (square[static_cast<std::size_t>((ar * t2 + br) % q)]) return 1;                       // y = 1, x = t
    if (b_times_square[static_cast<std::size_t>(num::mod(1 - ar * t2, q))]) return 1;        // z = 1, x = t
  }
  return -1;
}

/// Is the rational a an n-th power in Q_p? Uses the structure of the unit
/// group instead of lifting: for odd p, Z_p^x = mu_(p-1) x (1 + pZ_p) and
/// (1 + pZ_p)^(p^s) = 1 + p^(s+1) Z_p; for p = 2 the n-th powers of units
/// are 1 + 2^(s+2) Z_2 when s = v_2(n) >= 1.
inline bool nth_power_by_structure(const Rational& a, std::int64_t n, std::uint64_t p) {
  BigInt num = boost::multiprecision::numerator(a);
  BigInt den = boost::multiprecision::denominator(a);
  const std::int64_t v = num::strip_valuation(num, p) - num::strip_valuation(den, p);
  if (v % n != 0) return false;
  std::int64_t s = 0;
  for (std::int64_t m = n; m % static_cast<std::int64_t>(p) == 0; m /= static_cast<std::int64_t>(p)) ++s;
  const BigInt unit_mod = num::pow(BigInt(p), static_cast<std::uint64_t>(s + 2));
  const BigInt u = num::mod(num * num::inverse_mod(den, unit_mod), unit_mod);
  if (p == 2) {
    if (s == 0) return true;
    return num::mod(u - 1, unit_mod) == 0;
  }
  const std::uint64_t g = std::gcd(static_cast<std::uint64_t>(n), p - 1);
  const std::uint64_t u0 = static_cast<std::uint64_t>(num::mod(u, BigInt(p)));
  if (num::powmod(u0, (p - 1) / g, p) != 1) return false;
  const BigInt ps1 = num::pow(BigInt(p), static_cast<std::uint64_t>(s + 1));
  return num::powm(u, BigInt(p - 1), ps1) == 1;
}

/// Legendre symbol by listing the squares mod p.
inline int legendre_by_squares(std::int64_t a, std::int64_t p) {
  a = num::mod(a, p);
  if (a == 0) return 0;
  for (std::int64_t t = 1; t < p; ++t) {
    if (t * t % p == a) return 1;
  }
  return -1;
}

/// Hilbert symbol for odd p from the valuation/residue rule, with residues
/// found by listing squares. Arguments are nonzero integers.
inline int hilbert_by_residues(BigInt a, BigInt b, std::uint64_t p) {
  std::int64_t alpha = 0, beta = 0;
  while (a % p == 0) {
    a /= p;
    ++alpha;
  }
  while (b % p == 0) {
    b /= p;
    ++beta;
  }
  const auto ip = static_cast<std::int64_t>(p);
  const std::int64_t ar = static_cast<std::int64_t>(num::mod(a, BigInt(p)));
  const std::int64_t br = static_cast<std::int64_t>(num::mod(b, BigInt(p)));
  int sign = (alpha % 2 == 1 && beta % 2 == 1 && p % 4 == 3) ? -1 : 1;
  if (beta % 2 == 1) sign *= legendre_by_squares(ar, ip);
  if (alpha % 2 == 1) sign *= legendre_by_squares(br, ip);
  return sign;
}

}  // namespace locglob::oracle
