#pragma once

// Finite G-modules: a finite abelian group with a group action by
// automorphisms, plus cyclotomic characters and the twisted dual.

#include "locglob/finite_abelian.hpp"
#include "locglob/group.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace locglob {

namespace detail {

/// Well-definedness of an integer matrix as an endomorphism of sum Z/d_i.
inline void check_endomorphism(const FinAb& space, const Matrix& a) {
  const std::size_t r = space.rank();
  if (a.size() != r) throw InvalidInput("action matrix has wrong size");
  for (std::size_t i = 0; i < r; ++i) {
    if (a[i].size() != r) throw InvalidInput("action matrix has wrong size");
    for (std::size_t j = 0; j < r; ++j) {
      const std::int64_t di = space.factors()[i];
      if (num::mod(num::mod(a[i][j], di) * (space.factors()[j] % di), di) != 0) {
        throw InvalidInput("action matrix violates a_ij * d_j = 0 mod d_i");
      }
    }
  }
}

inline Matrix reduce_matrix(const FinAb& space, Matrix a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (auto& x : a[i]) x = num::mod(x, space.factors()[i]);
  }
  return a;
}

inline Matrix compose(const FinAb& space, const Matrix& a, const Matrix& b) {
  const std::size_t r = space.rank();
  Matrix c(r, Vec(r, 0));
  for (std::size_t i = 0; i < r; ++i) {
    const std::int64_t di = space.factors()[i];
    for (std::size_t k = 0; k < r; ++k) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < r; ++j) s = num::mod(s + a[i][j] * num::mod(b[j][k], di), di);
      c[i][k] = s;
    }
  }
  return c;
}

inline Matrix identity_matrix(std::size_t r) {
  Matrix m(r, Vec(r, 0));
  for (std::size_t i = 0; i < r; ++i) m[i][i] = 1;
  return m;
}

}  // namespace detail

/// Finite abelian group with a G-action; action[g] is an r x r matrix acting
/// on column vectors.
class GModule {
 public:
  GModule() = default;

  GModule(GroupTable group, FinAb space, std::vector<Matrix> action)
      : group_(std::move(group)), space_(std::move(space)) {
    if (action.size() != static_cast<std::size_t>(group_.order())) {
      throw InvalidInput("GModule: need one action matrix per group element");
    }
    for (auto& a : action) {
      detail::check_endomorphism(space_, a);
      action_.push_back(detail::reduce_matrix(space_, std::move(a)));
    }
    if (action_[0] != detail::reduce_matrix(space_, detail::identity_matrix(space_.rank()))) {
      throw InvalidInput("GModule: identity must act trivially");
    }
    for (int g = 0; g < group_.order(); ++g) {
      for (int h = 0; h < group_.order(); ++h) {
        if (detail::compose(space_, matrix(g), matrix(h)) != matrix(group_.mul(g, h))) {
          throw InvalidInput("GModule: action is not a homomorphism (g.(h.m) != (gh).m)");
        }
      }
    }
    // Every g has an inverse acting as an inverse map, so each action is bijective.
  }

  /// Trivial action of a group on a space.
  static GModule trivial(GroupTable group, FinAb space) {
    std::vector<Matrix> action(static_cast<std::size_t>(group.order()), detail::identity_matrix(space.rank()));
    return GModule(std::move(group), std::move(space), std::move(action));
  }

  /// Cyclic module Z/n (n >= 2) where g acts as multiplication by multiplier[g].
  static GModule scalar(GroupTable group, std::int64_t n, const Vec& multiplier) {
    std::vector<Matrix> action;
    for (std::int64_t m : multiplier) action.push_back(Matrix{Vec{m}});
    return GModule(std::move(group), FinAb(Vec{n}), std::move(action));
  }

  const GroupTable& group() const { return group_; }
  const FinAb& space() const { return space_; }
  const Matrix& matrix(int g) const { return action_[static_cast<std::size_t>(g)]; }
  const std::vector<Matrix>& action() const { return action_; }

  Vec act(int g, const Vec& m) const {
    const Matrix& a = matrix(g);
    const std::size_t r = space_.rank();
    Vec out(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
      const std::int64_t di = space_.factors()[i];
      std::int64_t s = 0;
      for (std::size_t j = 0; j < r; ++j) s = num::mod(s + a[i][j] * num::mod(m[j], di), di);
      out[i] = s;
    }
    return out;
  }

  /// Is g acting as multiplication by the integer k?
  bool acts_as_scalar(int g, std::int64_t k) const {
    const Matrix& a = matrix(g);
    for (std::size_t i = 0; i < space_.rank(); ++i) {
      for (std::size_t j = 0; j < space_.rank(); ++j) {
        const std::int64_t want = i == j ? num::mod(k, space_.factors()[i]) : 0;
        if (a[i][j] != want) return false;
      }
    }
    return true;
  }

 private:
  GroupTable group_;
  FinAb space_;
  std::vector<Matrix> action_;
};

/// Restriction of a module to a subgroup. The subgroup's elements are
/// re-indexed in sorted order (the identity stays at index 0).
inline GModule restrict_module(const GModule& module, const GroupSubset& sub) {
  const GroupTable& g = module.group();
  const int m = static_cast<int>(sub.size());
  std::vector<int> table(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
  auto local = [&](int x) {
    auto it = std::lower_bound(sub.elements.begin(), sub.elements.end(), x);
    if (it == sub.elements.end() || *it != x) throw InvalidInput("restrict_module: subset is not closed");
    return static_cast<int>(it - sub.elements.begin());
  };
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      table[static_cast<std::size_t>(a * m + b)] =
          local(g.mul(sub.elements[static_cast<std::size_t>(a)], sub.elements[static_cast<std::size_t>(b)]));
    }
  }
  std::vector<Matrix> action;
  for (int x : sub.elements) action.push_back(module.matrix(x));
  return GModule(GroupTable(m, std::move(table)), module.space(), std::move(action));
}

/// A multiplicative character G -> (Z/n)^x.
class CyclotomicData {
 public:
  CyclotomicData(const GroupTable& group, std::int64_t n, Vec character) : n_(n), character_(std::move(character)) {
    if (n_ < 1) throw InvalidInput("CyclotomicData: modulus must be positive");
    if (character_.size() != static_cast<std::size_t>(group.order())) {
      throw InvalidInput("CyclotomicData: need one value per group element");
    }
    for (auto& c : character_) {
      c = num::mod(c, n_);
      if (std::gcd(c, n_) != 1 && n_ > 1) throw InvalidInput("CyclotomicData: values must be units");
    }
    if (num::mod(character_[0] - 1, n_) != 0) throw InvalidInput("CyclotomicData: chi(identity) must be 1");
    for (int g = 0; g < group.order(); ++g) {
      for (int h = 0; h < group.order(); ++h) {
        if (num::mod(character_[static_cast<std::size_t>(g)] * character_[static_cast<std::size_t>(h)] -
                         character_[static_cast<std::size_t>(group.mul(g, h))],
                     n_) != 0) {
          throw InvalidInput("CyclotomicData: character is not multiplicative");
        }
      }
    }
  }

  static CyclotomicData trivial(const GroupTable& group, std::int64_t n) {
    return CyclotomicData(group, n, Vec(static_cast<std::size_t>(group.order()), 1));
  }

  std::int64_t modulus() const { return n_; }
  std::int64_t operator()(int g) const { return character_[static_cast<std::size_t>(g)]; }
  const Vec& values() const { return character_; }

 private:
  std::int64_t n_;
  Vec character_;
};

/// Hom(M, Z/n) with (g.f)(m) = chi(g) f(g^{-1} m).
///
/// Coordinates: the dual of sum Z/d_i is written with the same invariant
/// factors, c <-> (f : e_i -> c_i * n/d_i). Then the action of g is
/// D(g)_{ji} = chi(g) * A_ij * d_j / d_i mod d_j with A = action(g^{-1}).
inline GModule dual_module(const GModule& module, const CyclotomicData& chi) {
  const FinAb& space = module.space();
  const std::int64_t n = chi.modulus();
  if (n % space.exponent() != 0) throw InvalidInput("dual_module: module exponent must divide n");
  const std::size_t r = space.rank();
  std::vector<Matrix> action;
  for (int g = 0; g < module.group().order(); ++g) {
    const Matrix& a = module.matrix(module.group().inverse(g));
    Matrix d(r, Vec(r, 0));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        const std::int64_t di = space.factors()[i];
        const std::int64_t dj = space.factors()[j];
        d[j][i] = num::mod(num::mod(chi(g), dj) * num::mod(a[i][j] * dj / di, dj), dj);
      }
    }
    action.push_back(std::move(d));
  }
  return GModule(module.group(), space, std::move(action));
}

/// Evaluation pairing M x Hom(M, Z/n) -> Z/n in the coordinates above.
inline std::int64_t evaluate_dual(const FinAb& space, std::int64_t n, const Vec& m, const Vec& f) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < space.rank(); ++i) {
    s = num::mod(s + num::mod(m[i], space.factors()[i]) * num::mod(f[i], space.factors()[i]) % n * (n / space.factors()[i]), n);
  }
  return s;
}

/// The natural map M -> M^vv, m -> (f -> f(m)), as a matrix, after verifying
/// it is a G-equivariant bijection and the evaluation pairing is perfect.
/// Element checks run for |M| <= element_limit.
inline Matrix double_dual_isomorphism(const GModule& module, const CyclotomicData& chi,
                                      std::int64_t element_limit = 512) {
  const GModule dual = dual_module(module, chi);
  const GModule double_dual = dual_module(dual, chi);
  const FinAb& space = module.space();
  const std::int64_t n = chi.modulus();
  // ev_m(f_j) = f_j(m) = m_j * n/d_j, i.e. coordinate j of ev_m is m_j.
  const Matrix iso = detail::identity_matrix(space.rank());
  if (space.order() <= element_limit) {
    for (std::int64_t idx = 0; idx < space.order(); ++idx) {
      const Vec m = space.element_at(idx);
      for (int g = 0; g < module.group().order(); ++g) {
        if (double_dual.act(g, m) != module.act(g, m)) {
          throw ConsistencyError("double dual: evaluation map is not equivariant");
        }
      }
      if (space.is_zero(m)) continue;
      bool detected = false;
      for (std::int64_t fdx = 0; fdx < space.order() && !detected; ++fdx) {
        detected = evaluate_dual(space, n, m, space.element_at(fdx)) != 0;
      }
      if (!detected) throw ConsistencyError("double dual: evaluation pairing is degenerate");
    }
  } else {
    for (int g = 0; g < module.group().order(); ++g) {
      if (double_dual.matrix(g) != module.matrix(g)) throw ConsistencyError("double dual: action mismatch");
    }
  }
  return iso;
}

}  // namespace locglob
