#pragma once

// Hand-rolled generators for property tests: small groups, small abelian
// groups, their automorphisms, and G-module structures.

#include "locglob/gmodule.hpp"
#include "locglob/group.hpp"
#include "locglob/localglobal.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace testgen {

using locglob::FinAb;
using locglob::GModule;
using locglob::GroupTable;
using locglob::Matrix;
using locglob::Vec;

struct NamedGroup {
  std::string name;
  GroupTable table;
};

/// Every group of order <= 6 up to isomorphism.
inline std::vector<NamedGroup> small_groups() {
  std::vector<NamedGroup> out;
  for (int n = 1; n <= 6; ++n) out.push_back({"Z/" + std::to_string(n), GroupTable::cyclic(n)});
  out.push_back({"V4", GroupTable::product(GroupTable::cyclic(2), GroupTable::cyclic(2))});
  out.push_back({"S3", GroupTable::symmetric3()});
  return out;
}

/// Every finite abelian group of order <= bound, as invariant-factor chains.
inline std::vector<FinAb> abelian_groups(std::int64_t bound) {
  std::vector<FinAb> out;
  // Build chains d_1 | d_2 | ... by extending on the right with multiples.
  std::vector<std::pair<Vec, std::int64_t>> stack{{{}, 1}};
  while (!stack.empty()) {
    auto [chain, order] = stack.back();
    stack.pop_back();
    out.emplace_back(chain);
    const std::int64_t last = chain.empty() ? 1 : chain.back();
    for (std::int64_t d = std::max<std::int64_t>(2, last); order * d <= bound; d += last) {
      if (d % last != 0) continue;
      Vec next = chain;
      next.push_back(d);
      stack.emplace_back(next, order * d);
    }
  }
  std::sort(out.begin(), out.end(), [](const FinAb& a, const FinAb& b) {
    return a.order() < b.order() || (a.order() == b.order() && a.factors() < b.factors());
  });
  return out;
}

inline Matrix identity(std::size_t r) { return locglob::detail::identity_matrix(r); }

inline Matrix compose(const FinAb& space, const Matrix& a, const Matrix& b) {
  return locglob::detail::compose(space, a, b);
}

inline bool is_bijective(const FinAb& space, const Matrix& a) {
  std::set<std::int64_t> seen;
  for (std::int64_t x = 0; x < space.order(); ++x) {
    const Vec v = space.element_at(x);
    Vec w(space.rank(), 0);
    for (std::size_t i = 0; i < space.rank(); ++i) {
      for (std::size_t j = 0; j < space.rank(); ++j) w[i] += a[i][j] * v[j];
    }
    seen.insert(space.index_of(w));
  }
  return static_cast<std::int64_t>(seen.size()) == space.order();
}

/// All automorphisms of a small abelian group as reduced matrices.
inline std::vector<Matrix> automorphisms(const FinAb& space) {
  const std::size_t r = space.rank();
  // Entry (i, j) must be a multiple of d_i / gcd(d_i, d_j).
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  std::vector<std::int64_t> step, count;
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      const std::int64_t di = space.factors()[i], dj = space.factors()[j];
      cells.emplace_back(i, j);
      step.push_back(di / std::gcd(di, dj));
      count.push_back(std::gcd(di, dj));
    }
  }
  std::vector<Matrix> out;
  std::vector<std::int64_t> idx(cells.size(), 0);
  for (;;) {
    Matrix a(r, Vec(r, 0));
    for (std::size_t c = 0; c < cells.size(); ++c) a[cells[c].first][cells[c].second] = idx[c] * step[c];
    if (is_bijective(space, a)) out.push_back(a);
    std::size_t c = 0;
    while (c < cells.size() && ++idx[c] == count[c]) idx[c++] = 0;
    if (c == cells.size()) break;
  }
  return out;
}

/// Greedy generating set, preferring small indices.
inline std::vector<int> generating_set(const GroupTable& g) {
  std::vector<int> gens;
  std::set<int> span{0};
  auto close = [&]() {
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<int> cur(span.begin(), span.end());
      for (int a : cur) {
        for (int s : gens) {
          if (span.insert(g.mul(a, s)).second) grew = true;
        }
      }
    }
  };
  for (int x = 1; x < g.order(); ++x) {
    if (span.count(x) != 0) continue;
    gens.push_back(x);
    close();
  }
  return gens;
}

/// Extends generator images to all of G; empty result if not a homomorphism.
inline std::vector<Matrix> extend(const GroupTable& g, const FinAb& space, const std::vector<int>& gens,
                                  const std::vector<Matrix>& images) {
  std::vector<Matrix> rho(static_cast<std::size_t>(g.order()));
  std::vector<bool> known(static_cast<std::size_t>(g.order()), false);
  rho[0] = locglob::detail::reduce_matrix(space, identity(space.rank()));
  known[0] = true;
  std::vector<int> queue{0};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const int a = queue[q];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const int b = g.mul(a, gens[k]);
      const Matrix m = compose(space, rho[static_cast<std::size_t>(a)], images[k]);
      if (!known[static_cast<std::size_t>(b)]) {
        rho[static_cast<std::size_t>(b)] = m;
        known[static_cast<std::size_t>(b)] = true;
        queue.push_back(b);
      } else if (rho[static_cast<std::size_t>(b)] != m) {
        return {};
      }
    }
  }
  for (int a = 0; a < g.order(); ++a) {
    for (int b = 0; b < g.order(); ++b) {
      if (compose(space, rho[static_cast<std::size_t>(a)], rho[static_cast<std::size_t>(b)]) !=
          rho[static_cast<std::size_t>(g.mul(a, b))]) {
        return {};
      }
    }
  }
  return rho;
}

inline bool matrix_power_is_identity(const FinAb& space, const Matrix& a, int n) {
  Matrix p = locglob::detail::reduce_matrix(space, identity(space.rank()));
  for (int i = 0; i < n; ++i) p = compose(space, p, a);
  return p == locglob::detail::reduce_matrix(space, identity(space.rank()));
}

/// All actions of G on the space, up to conjugation by Aut(M).
inline std::vector<GModule> all_modules(const GroupTable& g, const FinAb& space, const std::vector<Matrix>& auts) {
  const std::vector<int> gens = generating_set(g);
  std::vector<std::vector<Matrix>> candidates;
  for (int s : gens) {
    std::vector<Matrix> c;
    for (const Matrix& a : auts) {
      if (matrix_power_is_identity(space, a, g.element_order(s))) c.push_back(a);
    }
    candidates.push_back(std::move(c));
  }
  const Matrix one = locglob::detail::reduce_matrix(space, identity(space.rank()));
  std::vector<Matrix> inverses;
  for (const Matrix& a : auts) {
    Matrix prev = one, cur = a;
    while (cur != one) {
      prev = cur;
      cur = compose(space, cur, a);
    }
    inverses.push_back(prev);
  }
  std::set<std::vector<Matrix>> seen;
  std::vector<GModule> out;
  std::vector<Matrix> images(gens.size());
  auto mark_orbit = [&](const std::vector<Matrix>& im) {
    for (std::size_t k = 0; k < auts.size(); ++k) {
      std::vector<Matrix> c;
      for (const Matrix& m : im) c.push_back(compose(space, compose(space, auts[k], m), inverses[k]));
      seen.insert(std::move(c));
    }
  };
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == gens.size()) {
      if (seen.count(images) != 0) return;
      std::vector<Matrix> rho = extend(g, space, gens, images);
      if (rho.empty()) return;
      mark_orbit(images);
      out.emplace_back(g, space, std::move(rho));
      return;
    }
    for (const Matrix& a : candidates[k]) {
      images[k] = a;
      self(self, k + 1);
    }
  };
  rec(rec, 0);
  return out;
}

/// The small groups plus the abelian groups of order 8.
inline std::vector<NamedGroup> groups_up_to_8() {
  std::vector<NamedGroup> out = small_groups();
  const GroupTable z2 = GroupTable::cyclic(2);
  out.push_back({"Z/8", GroupTable::cyclic(8)});
  out.push_back({"Z/2xZ/4", GroupTable::product(z2, GroupTable::cyclic(4))});
  out.push_back({"(Z/2)^3", GroupTable::product(z2, GroupTable::product(z2, z2))});
  return out;
}

/// A random G-module: random small group, random space, random action.
class ModuleSampler {
 public:
  ModuleSampler(std::uint64_t seed, std::int64_t max_order) : rng_(seed), groups_(small_groups()) {
    for (const FinAb& a : abelian_groups(max_order)) {
      spaces_.push_back(a);
      auts_.push_back(automorphisms(a));
    }
  }

  GModule next() {
    const NamedGroup& g = groups_[pick(groups_.size())];
    const std::size_t s = pick(spaces_.size());
    return random_action(g.table, s);
  }

  GModule random_action(const GroupTable& g, std::size_t space_index) {
    const FinAb& space = spaces_[space_index];
    const std::vector<Matrix>& auts = auts_[space_index];
    const std::vector<int> gens = generating_set(g);
    std::vector<std::vector<const Matrix*>> candidates;
    for (int s : gens) {
      std::vector<const Matrix*> c;
      for (const Matrix& a : auts) {
        if (matrix_power_is_identity(space, a, g.element_order(s))) c.push_back(&a);
      }
      candidates.push_back(std::move(c));
    }
    for (int attempt = 0; attempt < 200; ++attempt) {
      std::vector<Matrix> images;
      for (const auto& c : candidates) images.push_back(*c[pick(c.size())]);
      std::vector<Matrix> rho = extend(g, space, gens, images);
      if (!rho.empty()) return GModule(g, space, std::move(rho));
    }
    return GModule::trivial(g, space);
  }

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  std::mt19937_64& rng() { return rng_; }

  /// Subgroup generated by one or two random elements.
  locglob::GroupSubset random_subgroup(const GroupTable& g) {
    std::set<int> elems{0};
    const int a = static_cast<int>(pick(static_cast<std::size_t>(g.order())));
    const int b = pick(2) ? static_cast<int>(pick(static_cast<std::size_t>(g.order()))) : 0;
    bool grew = true;
    while (grew) {
      grew = false;
      for (int x : std::vector<int>(elems.begin(), elems.end())) {
        for (int y : {a, b}) grew = elems.insert(g.mul(x, y)).second || grew;
      }
    }
    return g.subgroup(std::vector<int>(elems.begin(), elems.end()));
  }

  /// A module with up to three designated places, one of them possibly
  /// archimedean (decomposition group of order <= 2).
  locglob::PlaceModel random_place_model(const std::vector<NamedGroup>& groups) {
    const GroupTable& g = groups[pick(groups.size())].table;
    GModule m = random_action(g, pick(spaces_.size()));
    std::map<std::string, std::vector<int>> designated;
    const std::size_t count = pick(4);
    for (std::size_t i = 0; i < count; ++i) designated["p" + std::to_string(i)] = random_subgroup(g).elements;
    std::set<std::string> arch;
    if (pick(2)) {
      std::vector<int> conj{0};
      for (int x = 1; x < g.order(); ++x) {
        if (g.element_order(x) == 2 && pick(2)) {
          conj.push_back(x);
          break;
        }
      }
      designated["inf"] = conj;
      arch.insert("inf");
    }
    return locglob::PlaceModel(std::move(m), designated, arch);
  }
  const std::vector<FinAb>& spaces() const { return spaces_; }
  const std::vector<NamedGroup>& groups() const { return groups_; }

 private:
  std::mt19937_64 rng_;
  std::vector<NamedGroup> groups_;
  std::vector<FinAb> spaces_;
  std::vector<std::vector<Matrix>> auts_;
};

}  // namespace testgen
