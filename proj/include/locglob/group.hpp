#pragma once

// Finite groups given by full multiplication tables.

#include "locglob/number.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace locglob {

/// A set of group elements (sorted indices) closed under the group law.
struct GroupSubset {
  std::vector<int> elements;
  int generator = 0;  // meaningful for cyclic subgroups

  std::size_t size() const { return elements.size(); }
  bool contains(int g) const { return std::binary_search(elements.begin(), elements.end(), g); }
  friend bool operator==(const GroupSubset& a, const GroupSubset& b) { return a.elements == b.elements; }
};

/// Finite group as an m x m table of element indices; index 0 is the identity.
class GroupTable {
 public:
  GroupTable() : GroupTable(1, {0}) {}

  GroupTable(int order, std::vector<int> table) : order_(order), table_(std::move(table)) {
    if (order_ < 1) throw InvalidInput("GroupTable: order must be positive");
    if (table_.size() != static_cast<std::size_t>(order_) * static_cast<std::size_t>(order_)) {
      throw InvalidInput("GroupTable: table must have order^2 entries");
    }
    for (int x : table_) {
      if (x < 0 || x >= order_) throw InvalidInput("GroupTable: entry out of range");
    }
    for (int g = 0; g < order_; ++g) {
      if (mul(0, g) != g || mul(g, 0) != g) throw InvalidInput("GroupTable: index 0 is not the identity");
    }
    for (int a = 0; a < order_; ++a) {
      for (int b = 0; b < order_; ++b) {
        for (int c = 0; c < order_; ++c) {
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw InvalidInput("GroupTable: table is not associative");
        }
      }
    }
    inverse_.assign(static_cast<std::size_t>(order_), -1);
    for (int g = 0; g < order_; ++g) {
      for (int h = 0; h < order_; ++h) {
        if (mul(g, h) == 0 && mul(h, g) == 0) {
          inverse_[static_cast<std::size_t>(g)] = h;
          break;
        }
      }
      if (inverse_[static_cast<std::size_t>(g)] < 0) throw InvalidInput("GroupTable: element without inverse");
    }
  }

  /// Z/n written additively.
  static GroupTable cyclic(int n) {
    std::vector<int> t(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a * n + b)] = (a + b) % n;
    }
    return GroupTable(n, std::move(t));
  }

  /// Direct product; element (a, b) has index a * |H| + b.
  static GroupTable product(const GroupTable& g, const GroupTable& h) {
    const int m = g.order() * h.order();
    std::vector<int> t(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    for (int x = 0; x < m; ++x) {
      for (int y = 0; y < m; ++y) {
        const int a = g.mul(x / h.order(), y / h.order());
        const int b = h.mul(x % h.order(), y % h.order());
        t[static_cast<std::size_t>(x * m + y)] = a * h.order() + b;
      }
    }
    return GroupTable(m, std::move(t));
  }

  /// Units modulo n >= 2, listed in increasing order (index 0 is the residue 1).
  static GroupTable units_mod(int n, std::vector<int>* residues = nullptr) {
    if (n < 2) throw InvalidInput("units_mod: modulus must be >= 2");
    std::vector<int> units;
    for (int a = 1; a < n; ++a) {
      if (std::gcd(a, n) == 1) units.push_back(a);
    }
    const int m = static_cast<int>(units.size());
    std::vector<int> t(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
    for (int x = 0; x < m; ++x) {
      for (int y = 0; y < m; ++y) {
        const int prod = units[static_cast<std::size_t>(x)] * units[static_cast<std::size_t>(y)] % n;
        t[static_cast<std::size_t>(x * m + y)] =
            static_cast<int>(std::find(units.begin(), units.end(), prod) - units.begin());
      }
    }
    if (residues != nullptr) *residues = units;
    return GroupTable(m, std::move(t));
  }

  /// Symmetric group S_3 (permutations of {0,1,2} in lexicographic order).
  static GroupTable symmetric3() {
    std::vector<std::vector<int>> perms;
    std::vector<int> p{0, 1, 2};
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::vector<int> t(36);
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b) {
        std::vector<int> c(3);
        for (int i = 0; i < 3; ++i) c[static_cast<std::size_t>(i)] = perms[static_cast<std::size_t>(a)][static_cast<std::size_t>(perms[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)])];
        t[static_cast<std::size_t>(a * 6 + b)] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
      }
    }
    return GroupTable(6, std::move(t));
  }

  int order() const { return order_; }
  int identity() const { return 0; }
  const std::vector<int>& table() const { return table_; }

  int mul(int a, int b) const {
    return table_[static_cast<std::size_t>(a) * static_cast<std::size_t>(order_) + static_cast<std::size_t>(b)];
  }
  int inverse(int g) const { return inverse_[static_cast<std::size_t>(g)]; }

  int power(int g, std::int64_t k) const {
    const int ord = element_order(g);
    k = num::mod(k, ord);
    int out = 0;
    for (std::int64_t i = 0; i < k; ++i) out = mul(out, g);
    return out;
  }

  int element_order(int g) const {
    int x = g, n = 1;
    while (x != 0) {
      x = mul(x, g);
      ++n;
    }
    return n;
  }

  bool is_central(int g) const {
    for (int h = 0; h < order_; ++h) {
      if (mul(g, h) != mul(h, g)) return false;
    }
    return true;
  }

  bool is_abelian() const {
    for (int g = 0; g < order_; ++g) {
      if (!is_central(g)) return false;
    }
    return true;
  }

  /// <g> as a sorted element set.
  GroupSubset cyclic_subgroup(int g) const {
    GroupSubset s;
    int x = 0;
    do {
      s.elements.push_back(x);
      x = mul(x, g);
    } while (x != 0);
    std::sort(s.elements.begin(), s.elements.end());
    s.generator = g;
    return s;
  }

  /// Validates that a list of indices is a subgroup and returns it sorted.
  GroupSubset subgroup(std::vector<int> elements) const {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (elements.empty() || elements.front() != 0) throw InvalidInput("subgroup must contain the identity");
    for (int x : elements) {
      if (x < 0 || x >= order_) throw InvalidInput("subgroup element out of range");
    }
    GroupSubset s{elements, 0};
    for (int a : elements) {
      for (int b : elements) {
        if (!s.contains(mul(a, b))) throw InvalidInput("element set is not closed under the group law");
      }
    }
    // A closed nonempty subset of a finite group is a subgroup.
    for (int a : elements) {
      if (s.elements.size() == static_cast<std::size_t>(element_order(a)) && cyclic_subgroup(a) == s) {
        s.generator = a;
        break;
      }
    }
    return s;
  }

  bool is_cyclic(const GroupSubset& s) const {
    for (int a : s.elements) {
      if (static_cast<std::size_t>(element_order(a)) == s.size()) return true;
    }
    return false;
  }

 private:
  int order_;
  std::vector<int> table_;
  std::vector<int> inverse_;
};

/// Every distinct cyclic subgroup exactly once, ordered by (size, elements).
/// The chosen generator is the smallest index generating the subgroup.
inline std::vector<GroupSubset> cyclic_subgroups(const GroupTable& group) {
  std::map<std::vector<int>, int> found;
  for (int g = 0; g < group.order(); ++g) {
    GroupSubset s = group.cyclic_subgroup(g);
    found.emplace(s.elements, g);  // first (smallest) generator wins
  }
  std::vector<GroupSubset> out;
  for (const auto& [elements, generator] : found) out.push_back({elements, generator});
  std::stable_sort(out.begin(), out.end(), [](const GroupSubset& a, const GroupSubset& b) {
    return a.size() < b.size() || (a.size() == b.size() && a.elements < b.elements);
  });
  return out;
}

}  // namespace locglob
