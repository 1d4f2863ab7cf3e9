#pragma once

// Linear algebra over finite abelian groups.
//
// Every group here is a subgroup of an ambient product Z/a_0 x ... x Z/a_{n-1}.
// A subgroup S is stored as a triangular basis of its preimage lattice
// L = {x in Z^n : x mod a in S}; L always contains diag(a) Z^n, so every
// basis entry can be kept reduced modulo the matching a_k and nothing
// overflows 64-bit words as long as the moduli stay below 2^31.

#include "locglob/number.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace locglob {

using Vec = std::vector<std::int64_t>;
using Matrix = std::vector<Vec>;

inline std::string to_string(const Vec& v) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ']';
  return out.str();
}

/// Finite abelian group in invariant-factor form d_1 | d_2 | ... | d_r.
class FinAb {
 public:
  FinAb() = default;

  explicit FinAb(Vec invariant_factors) : factors_(std::move(invariant_factors)) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (factors_[i] < 2) throw InvalidInput("FinAb: invariant factors must be >= 2");
      if (i > 0 && factors_[i] % factors_[i - 1] != 0) {
        throw InvalidInput("FinAb: invariant factors must form a divisibility chain");
      }
    }
  }

  /// Invariant-factor form of an arbitrary product of cyclic groups.
  static FinAb from_cyclic_orders(const Vec& orders) {
    // Collect prime-power parts per prime, then rebuild the chain.
    std::map<std::uint64_t, std::vector<std::int64_t>> parts;
    for (std::int64_t d : orders) {
      if (d < 1) throw InvalidInput("FinAb: cyclic orders must be positive");
      for (const auto& [p, e] : num::factor(static_cast<std::uint64_t>(d))) {
        std::int64_t q = 1;
        for (int i = 0; i < e; ++i) q *= static_cast<std::int64_t>(p);
        parts[p].push_back(q);
      }
    }
    std::size_t length = 0;
    for (auto& [p, qs] : parts) {
      std::sort(qs.begin(), qs.end(), std::greater<>());
      length = std::max(length, qs.size());
    }
    Vec chain(length, 1);
    for (const auto& [p, qs] : parts) {
      for (std::size_t i = 0; i < qs.size(); ++i) chain[length - 1 - i] *= qs[i];
    }
    return FinAb(std::move(chain));
  }

  const Vec& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  bool trivial() const { return factors_.empty(); }

  std::int64_t order() const {
    std::int64_t o = 1;
    for (std::int64_t d : factors_) {
      if (o > std::numeric_limits<std::int64_t>::max() / d) throw InvalidInput("FinAb: order overflows");
      o *= d;
    }
    return o;
  }

  std::int64_t exponent() const { return factors_.empty() ? 1 : factors_.back(); }

  Vec zero() const { return Vec(rank(), 0); }

  Vec reduce(Vec x) const {
    check_size(x);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = num::mod(x[i], factors_[i]);
    return x;
  }

  Vec add(const Vec& x, const Vec& y) const {
    check_size(x);
    check_size(y);
    Vec out(rank());
    for (std::size_t i = 0; i < rank(); ++i) out[i] = num::mod(x[i] + y[i], factors_[i]);
    return out;
  }

  Vec scale(const Vec& x, std::int64_t k) const {
    check_size(x);
    Vec out(rank());
    for (std::size_t i = 0; i < rank(); ++i) out[i] = num::mod(num::mod(x[i], factors_[i]) * num::mod(k, factors_[i]), factors_[i]);
    return out;
  }

  Vec neg(const Vec& x) const { return scale(x, -1); }

  bool is_zero(const Vec& x) const {
    check_size(x);
    for (std::size_t i = 0; i < rank(); ++i) {
      if (num::mod(x[i], factors_[i]) != 0) return false;
    }
    return true;
  }

  /// Mixed-radix enumeration index (first coordinate varies fastest).
  Vec element_at(std::int64_t index) const {
    Vec out(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
      out[i] = index % factors_[i];
      index /= factors_[i];
    }
    return out;
  }

  std::int64_t index_of(const Vec& x) const {
    const Vec r = reduce(x);
    std::int64_t index = 0;
    for (std::size_t i = rank(); i-- > 0;) index = index * factors_[i] + r[i];
    return index;
  }

  /// Number of elements killed by d; determines the group up to isomorphism.
  std::int64_t torsion_count(std::int64_t d) const {
    std::int64_t c = 1;
    for (std::int64_t f : factors_) c *= std::gcd(f, d);
    return c;
  }

  friend bool operator==(const FinAb& a, const FinAb& b) { return a.factors_ == b.factors_; }

  std::string describe() const {
    if (factors_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      out += (i ? " x " : "") + std::string("Z/") + std::to_string(factors_[i]);
    }
    return out;
  }

 private:
  void check_size(const Vec& x) const {
    if (x.size() != rank()) throw InvalidInput("FinAb: element has wrong length");
  }

  Vec factors_;
};

inline std::ostream& operator<<(std::ostream& os, const FinAb& a) { return os << a.describe(); }

namespace detail {

inline std::int64_t lcm_of(const Vec& moduli) {
  std::int64_t e = 1;
  for (std::int64_t a : moduli) e = num::lcm(e, a);
  return e;
}

inline Vec reduce_mod(Vec x, const Vec& moduli) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = num::mod(x[i], moduli[i]);
  return x;
}

}  // namespace detail

/// Triangular basis of a lattice L with diag(moduli) Z^n contained in L.
/// Row j has its pivot (a positive divisor of moduli[j]) in column j.
class LatticeBasis {
 public:
  LatticeBasis() = default;

  explicit LatticeBasis(Vec moduli) : moduli_(std::move(moduli)) {
    rows_.assign(moduli_.size(), Vec(moduli_.size(), 0));
    for (std::size_t j = 0; j < moduli_.size(); ++j) {
      if (moduli_[j] < 1) throw InvalidInput("LatticeBasis: moduli must be positive");
      if (moduli_[j] >= (std::int64_t{1} << 31)) throw InvalidInput("LatticeBasis: modulus too large");
      rows_[j][j] = moduli_[j];
    }
  }

  std::size_t dim() const { return moduli_.size(); }
  const Vec& moduli() const { return moduli_; }
  const std::vector<Vec>& rows() const { return rows_; }
  std::int64_t pivot(std::size_t j) const { return rows_[j][j]; }

  void insert(Vec v) {
    if (v.size() != dim()) throw InvalidInput("LatticeBasis: vector has wrong length");
    for (std::size_t j = 0; j < dim(); ++j) {
      reduce_tail(v, j);
      if (v[j] == 0) continue;
      Vec& h = rows_[j];
      std::int64_t s = 0, t = 0;
      const std::int64_t g = num::xgcd(h[j], v[j], s, t);
      const std::int64_t hq = h[j] / g;
      const std::int64_t vq = v[j] / g;
      Vec new_h(dim(), 0), new_v(dim(), 0);
      for (std::size_t k = j; k < dim(); ++k) {
        const std::int64_t m = moduli_[k];
        new_h[k] = num::mod(num::mod(s, m) * h[k] + num::mod(t, m) * v[k], m);
        new_v[k] = num::mod(hq % m * v[k] - num::mod(vq, m) * h[k], m);
      }
      new_h[j] = g;
      new_v[j] = 0;
      h = std::move(new_h);
      v = std::move(new_v);
    }
  }

  /// Eliminates coordinates [0, stop) of x using the basis. Returns false if
  /// some coordinate cannot be cleared (x is not in L modulo the rows >= stop).
  bool reduce(Vec& x, std::size_t stop) const {
    if (x.size() != dim()) throw InvalidInput("LatticeBasis: vector has wrong length");
    for (std::size_t j = 0; j < stop; ++j) {
      reduce_tail(x, j);
      if (x[j] == 0) continue;
      const Vec& h = rows_[j];
      if (x[j] % h[j] != 0) return false;
      const std::int64_t q = x[j] / h[j];
      for (std::size_t k = j; k < dim(); ++k) {
        x[k] = num::mod(x[k] - num::mod(q, moduli_[k]) * h[k], moduli_[k]);
      }
    }
    reduce_tail(x, stop);
    return true;
  }

  bool contains(Vec x) const {
    if (!reduce(x, dim())) return false;
    for (std::int64_t c : x) {
      if (c != 0) return false;
    }
    return true;
  }

 private:
  void reduce_tail(Vec& v, std::size_t from) const {
    for (std::size_t k = from; k < dim(); ++k) v[k] = num::mod(v[k], moduli_[k]);
  }

  Vec moduli_;
  std::vector<Vec> rows_;
};

/// A subgroup of Z/a_0 x ... x Z/a_{n-1}.
class Subgroup {
 public:
  Subgroup() = default;

  static Subgroup zero(const Vec& moduli) { return Subgroup(LatticeBasis(moduli)); }

  static Subgroup whole(const Vec& moduli) {
    Subgroup s = zero(moduli);
    for (std::size_t j = 0; j < moduli.size(); ++j) {
      Vec e(moduli.size(), 0);
      e[j] = 1;
      s.basis_.insert(e);
    }
    return s;
  }

  static Subgroup generated(const Vec& moduli, const std::vector<Vec>& generators) {
    Subgroup s = zero(moduli);
    for (const Vec& g : generators) s.basis_.insert(g);
    return s;
  }

  const Vec& moduli() const { return basis_.moduli(); }
  std::size_t dim() const { return basis_.dim(); }
  std::int64_t exponent_bound() const { return detail::lcm_of(moduli()); }

  bool contains(const Vec& x) const { return basis_.contains(x); }

  /// |S| = prod(a_j / pivot_j).
  std::int64_t order() const {
    std::int64_t o = 1;
    for (std::size_t j = 0; j < dim(); ++j) o *= moduli()[j] / basis_.pivot(j);
    return o;
  }

  bool is_zero() const { return order() == 1; }

  /// Generators reduced modulo the ambient moduli; zero rows dropped.
  std::vector<Vec> generators() const {
    std::vector<Vec> out;
    for (const Vec& row : basis_.rows()) {
      Vec r = detail::reduce_mod(row, moduli());
      bool nonzero = false;
      for (std::int64_t c : r) nonzero = nonzero || c != 0;
      if (nonzero) out.push_back(std::move(r));
    }
    return out;
  }

  bool subset_of(const Subgroup& other) const {
    for (const Vec& g : generators()) {
      if (!other.contains(g)) return false;
    }
    return true;
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.moduli() == b.moduli() && a.subset_of(b) && b.subset_of(a);
  }

  Subgroup operator+(const Subgroup& other) const {
    check_same_ambient(other);
    Subgroup s = *this;
    for (const Vec& g : other.generators()) s.basis_.insert(g);
    return s;
  }

  Subgroup intersect(const Subgroup& other) const {
    check_same_ambient(other);
    const std::size_t n = dim();
    Vec doubled = moduli();
    doubled.insert(doubled.end(), moduli().begin(), moduli().end());
    LatticeBasis graph(doubled);
    for (const Vec& g : generators()) {
      Vec v = g;
      v.insert(v.end(), g.begin(), g.end());
      graph.insert(std::move(v));
    }
    for (const Vec& g : other.generators()) {
      Vec v = g;
      v.resize(2 * n, 0);
      graph.insert(std::move(v));
    }
    Subgroup out = zero(moduli());
    for (std::size_t j = n; j < 2 * n; ++j) {
      out.basis_.insert(Vec(graph.rows()[j].begin() + static_cast<std::ptrdiff_t>(n), graph.rows()[j].end()));
    }
    return out;
  }

  /// All elements in sorted order; only for small subgroups.
  std::vector<Vec> elements(std::int64_t limit = 1 << 20) const {
    if (order() > limit) throw InvalidInput("Subgroup::elements: subgroup too large to enumerate");
    std::set<Vec> seen{Vec(dim(), 0)};
    for (const Vec& g : generators()) {
      std::set<Vec> next;
      for (const Vec& x : seen) {
        Vec y = x;
        do {
          next.insert(y);
          for (std::size_t k = 0; k < dim(); ++k) y[k] = num::mod(y[k] + g[k], moduli()[k]);
        } while (y != x);
      }
      seen = std::move(next);
    }
    return {seen.begin(), seen.end()};
  }

  const LatticeBasis& basis() const { return basis_; }

 private:
  explicit Subgroup(LatticeBasis basis) : basis_(std::move(basis)) {}

  void check_same_ambient(const Subgroup& other) const {
    if (moduli() != other.moduli()) throw InvalidInput("Subgroup: ambient groups differ");
  }

  LatticeBasis basis_;
};

/// Smith normal form over Z/e of a square relation matrix. Only the column
/// transform V (and its inverse) is tracked: the quotient (Z/e)^k / rowspan(R)
/// is isomorphic to sum Z/d_t via c -> c V.
struct SmithModE {
  std::int64_t modulus = 1;
  Vec diagonal;  // gcd(d_t, e); 1 = trivial factor, e = free factor
  Matrix v;
  Matrix v_inverse;
};

inline SmithModE smith_mod(Matrix m, std::size_t k, std::int64_t e) {
  SmithModE out;
  out.modulus = e;
  out.v.assign(k, Vec(k, 0));
  out.v_inverse.assign(k, Vec(k, 0));
  for (std::size_t i = 0; i < k; ++i) out.v[i][i] = out.v_inverse[i][i] = 1 % e;
  const std::size_t rows = m.size();
  for (auto& row : m) {
    for (auto& x : row) x = num::mod(x, e);
  }

  auto row_op = [&](std::size_t a, std::size_t b, std::int64_t s, std::int64_t t, std::int64_t u, std::int64_t w) {
    // row_a <- s row_a + t row_b ; row_b <- u row_a + w row_b
    for (std::size_t j = 0; j < k; ++j) {
      const std::int64_t x = m[a][j], y = m[b][j];
      m[a][j] = num::mod(num::mod(s, e) * x + num::mod(t, e) * y, e);
      m[b][j] = num::mod(num::mod(u, e) * x + num::mod(w, e) * y, e);
    }
  };
  auto col_op = [&](std::size_t a, std::size_t b, std::int64_t s, std::int64_t t, std::int64_t u, std::int64_t w) {
    // col_a <- s col_a + t col_b ; col_b <- u col_a + w col_b  (det = s w - t u = 1)
    for (std::size_t i = 0; i < rows; ++i) {
      const std::int64_t x = m[i][a], y = m[i][b];
      m[i][a] = num::mod(num::mod(s, e) * x + num::mod(t, e) * y, e);
      m[i][b] = num::mod(num::mod(u, e) * x + num::mod(w, e) * y, e);
    }
    for (std::size_t i = 0; i < k; ++i) {
      const std::int64_t x = out.v[i][a], y = out.v[i][b];
      out.v[i][a] = num::mod(num::mod(s, e) * x + num::mod(t, e) * y, e);
      out.v[i][b] = num::mod(num::mod(u, e) * x + num::mod(w, e) * y, e);
    }
    // V^{-1} <- T^{-1} V^{-1}, with T^{-1} acting on rows a, b.
    for (std::size_t j = 0; j < k; ++j) {
      const std::int64_t x = out.v_inverse[a][j], y = out.v_inverse[b][j];
      out.v_inverse[a][j] = num::mod(num::mod(w, e) * x - num::mod(u, e) * y, e);
      out.v_inverse[b][j] = num::mod(num::mod(-t, e) * x + num::mod(s, e) * y, e);
    }
  };

  out.diagonal.assign(k, e);
  for (std::size_t t = 0; t < k && t < rows; ++t) {
    // Pivot: entry generating the largest ideal, then smallest value.
    std::size_t pi = rows, pj = k;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < k; ++j) {
        if (m[i][j] == 0) continue;
        if (pi == rows || std::gcd(m[i][j], e) < std::gcd(m[pi][pj], e) ||
            (std::gcd(m[i][j], e) == std::gcd(m[pi][pj], e) && m[i][j] < m[pi][pj])) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == rows) break;
    std::swap(m[t], m[pi]);
    if (pj != t) col_op(t, pj, 0, 1, -1, 0);  // swap with a sign to keep det 1

    for (;;) {
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        const std::int64_t a = m[t][t], b = m[i][t];
        if (b % a == 0) {
          row_op(t, i, 1, 0, -(b / a), 1);
          continue;
        }
        std::int64_t s = 0, u = 0;
        const std::int64_t g = num::xgcd(a, b, s, u);
        row_op(t, i, s, u, -b / g, a / g);
      }
      for (std::size_t j = t + 1; j < k; ++j) {
        if (m[t][j] == 0) continue;
        const std::int64_t a = m[t][t], b = m[t][j];
        if (b % a == 0) {
          col_op(t, j, 1, 0, -(b / a), 1);
          continue;
        }
        std::int64_t s = 0, u = 0;
        const std::int64_t g = num::xgcd(a, b, s, u);
        col_op(t, j, s, u, -b / g, a / g);
      }
      bool column_clear = true;
      for (std::size_t i = t + 1; i < rows; ++i) column_clear = column_clear && m[i][t] == 0;
      if (!column_clear) continue;
      // Row and column are clear; the pivot must divide the rest (as ideals of Z/e).
      const std::int64_t g = std::gcd(m[t][t], e);
      bool divides_all = true;
      for (std::size_t i = t + 1; i < rows && divides_all; ++i) {
        for (std::size_t j = t + 1; j < k; ++j) {
          if (m[i][j] % g != 0) {
            row_op(t, i, 1, 1, 0, 1);
            divides_all = false;
            break;
          }
        }
      }
      if (divides_all) break;
    }
    out.diagonal[t] = std::gcd(m[t][t], e);
  }
  return out;
}

/// Quotient S / S' of two subgroups of a common ambient group, with explicit
/// generators and a coordinate map S -> invariant-factor form.
class Quotient {
 public:
  Quotient() = default;

  Quotient(const Subgroup& numerator, const Subgroup& denominator) : ambient_moduli_(numerator.moduli()) {
    if (numerator.moduli() != denominator.moduli()) throw InvalidInput("Quotient: ambient groups differ");
    if (!denominator.subset_of(numerator)) throw InvalidInput("Quotient: denominator is not a subgroup");
    source_generators_ = numerator.generators();
    exponent_ = numerator.exponent_bound();
    const std::size_t n = ambient_moduli_.size();
    const std::size_t k = source_generators_.size();
    Vec moduli = ambient_moduli_;
    moduli.insert(moduli.end(), k, exponent_);
    graph_ = LatticeBasis(moduli);
    for (std::size_t i = 0; i < k; ++i) {
      Vec v = source_generators_[i];
      v.resize(n + k, 0);
      v[n + i] = 1;
      graph_.insert(std::move(v));
    }
    for (const Vec& g : denominator.generators()) {
      Vec v = g;
      v.resize(n + k, 0);
      graph_.insert(std::move(v));
    }
    Matrix relations(k, Vec(k, 0));
    for (std::size_t i = 0; i < k; ++i) {
      const Vec& row = graph_.rows()[n + i];
      relations[i] = Vec(row.begin() + static_cast<std::ptrdiff_t>(n), row.end());
    }
    smith_ = smith_mod(relations, k, exponent_);

    Vec orders;
    for (std::size_t t = 0; t < k; ++t) {
      if (smith_.diagonal[t] > 1) {
        kept_.push_back(t);
        orders.push_back(smith_.diagonal[t]);
      }
    }
    // Smith diagonal entries already form a divisibility chain (as ideals).
    std::vector<std::size_t> order_index(kept_.size());
    std::iota(order_index.begin(), order_index.end(), 0);
    std::stable_sort(order_index.begin(), order_index.end(),
                     [&](std::size_t a, std::size_t b) { return orders[a] < orders[b]; });
    std::vector<std::size_t> sorted_kept;
    Vec sorted_orders;
    for (std::size_t idx : order_index) {
      sorted_kept.push_back(kept_[idx]);
      sorted_orders.push_back(orders[idx]);
    }
    kept_ = std::move(sorted_kept);
    structure_ = FinAb(sorted_orders);

    for (std::size_t l : kept_) {
      Vec g(n, 0);
      for (std::size_t i = 0; i < k; ++i) {
        const std::int64_t c = smith_.v_inverse[l][i];
        for (std::size_t j = 0; j < n; ++j) g[j] = num::mod(g[j] + c * source_generators_[i][j], ambient_moduli_[j]);
      }
      generators_.push_back(std::move(g));
    }
  }

  const FinAb& structure() const { return structure_; }
  const std::vector<Vec>& generators() const { return generators_; }
  const Vec& ambient_moduli() const { return ambient_moduli_; }

  /// Coordinates of an element of the numerator subgroup.
  Vec coordinates(const Vec& x) const {
    const std::size_t n = ambient_moduli_.size();
    const std::size_t k = source_generators_.size();
    Vec w = x;
    w.resize(n + k, 0);
    if (!graph_.reduce(w, n)) throw InvalidInput("Quotient: element is not in the numerator subgroup");
    for (std::size_t j = 0; j < n; ++j) {
      if (w[j] != 0) throw InvalidInput("Quotient: element is not in the numerator subgroup");
    }
    // w = (0, -c) with sum c_i g_i = x modulo the denominator.
    Vec c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = num::mod(-w[n + i], exponent_);
    Vec out;
    for (std::size_t l : kept_) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < k; ++i) s = num::mod(s + c[i] * smith_.v[i][l], exponent_);
      out.push_back(num::mod(s, smith_.diagonal[l]));
    }
    return out;
  }

  /// Ambient representative of a coordinate vector.
  Vec lift(const Vec& coordinates) const {
    Vec out(ambient_moduli_.size(), 0);
    for (std::size_t l = 0; l < generators_.size(); ++l) {
      for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = num::mod(out[j] + coordinates[l] % ambient_moduli_[j] * generators_[l][j], ambient_moduli_[j]);
      }
    }
    return out;
  }

 private:
  Vec ambient_moduli_;
  std::vector<Vec> source_generators_;
  std::int64_t exponent_ = 1;
  LatticeBasis graph_;
  SmithModE smith_;
  std::vector<std::size_t> kept_;
  FinAb structure_;
  std::vector<Vec> generators_;
};

/// Homomorphism sum Z/a_j -> sum Z/b_i given by an integer matrix acting on
/// column vectors: (phi x)_i = sum_j m_ij x_j mod b_i.
class Homomorphism {
 public:
  Homomorphism(Vec domain, Vec codomain, Matrix matrix)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    if (matrix_.size() != codomain_.size()) throw InvalidInput("Homomorphism: row count mismatch");
    for (std::size_t i = 0; i < codomain_.size(); ++i) {
      if (matrix_[i].size() != domain_.size()) throw InvalidInput("Homomorphism: column count mismatch");
      for (std::size_t j = 0; j < domain_.size(); ++j) {
        matrix_[i][j] = num::mod(matrix_[i][j], codomain_[i]);
        if (num::mod(matrix_[i][j] * (domain_[j] % codomain_[i]), codomain_[i]) != 0) {
          throw InvalidInput("Homomorphism: matrix is not well defined on the domain");
        }
      }
    }
  }

  const Vec& domain() const { return domain_; }
  const Vec& codomain() const { return codomain_; }
  const Matrix& matrix() const { return matrix_; }

  Vec apply(const Vec& x) const {
    Vec out(codomain_.size(), 0);
    for (std::size_t i = 0; i < codomain_.size(); ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < domain_.size(); ++j) {
        s = num::mod(s + matrix_[i][j] * num::mod(x[j], codomain_[i]), codomain_[i]);
      }
      out[i] = s;
    }
    return out;
  }

  /// phi^{-1}(target) as a subgroup of the domain.
  Subgroup preimage(const Subgroup& target) const {
    if (target.moduli() != codomain_) throw InvalidInput("Homomorphism::preimage: target ambient mismatch");
    const std::size_t m = codomain_.size();
    const std::size_t n = domain_.size();
    Vec moduli = codomain_;
    moduli.insert(moduli.end(), domain_.begin(), domain_.end());
    LatticeBasis graph(moduli);
    for (std::size_t j = 0; j < n; ++j) {
      Vec v(m + n, 0);
      for (std::size_t i = 0; i < m; ++i) v[i] = matrix_[i][j];
      v[m + j] = 1;
      graph.insert(std::move(v));
    }
    for (const Vec& g : target.generators()) {
      Vec v = g;
      v.resize(m + n, 0);
      graph.insert(std::move(v));
    }
    std::vector<Vec> gens;
    for (std::size_t j = m; j < m + n; ++j) {
      gens.emplace_back(graph.rows()[j].begin() + static_cast<std::ptrdiff_t>(m), graph.rows()[j].end());
    }
    return Subgroup::generated(domain_, gens);
  }

  Subgroup kernel() const { return preimage(Subgroup::zero(codomain_)); }

  Subgroup image() const {
    std::vector<Vec> gens;
    for (std::size_t j = 0; j < domain_.size(); ++j) {
      Vec e(domain_.size(), 0);
      e[j] = 1;
      gens.push_back(apply(e));
    }
    return Subgroup::generated(codomain_, gens);
  }

 private:
  Vec domain_;
  Vec codomain_;
  Matrix matrix_;
};

}  // namespace locglob
