#pragma once

// Annihilators under a perfect pairing and the duality between a chain
// quotient A2/A1 and A1^perp/A2^perp.

#include "locglob/finite_abelian.hpp"
#include "locglob/number.hpp"

#include <set>
#include <string>
#include <vector>

namespace locglob {

/// Bilinear pairing A x A -> Z/n, <x, y> = sum_ij x_i v_ij y_j mod n.
class Pairing {
 public:
  Pairing(FinAb space, std::int64_t n, Matrix values) : space_(std::move(space)), n_(n), values_(std::move(values)) {
    const std::size_t r = space_.rank();
    if (n_ < 1) throw InvalidInput("pairing: modulus must be positive");
    if (values_.size() != r) throw InvalidInput("pairing: matrix has the wrong shape");
    for (std::size_t i = 0; i < r; ++i) {
      if (values_[i].size() != r) throw InvalidInput("pairing: matrix has the wrong shape");
      for (std::size_t j = 0; j < r; ++j) {
        values_[i][j] = num::mod(values_[i][j], n_);
        if (values_[i][j] * space_.factors()[i] % n_ != 0 || values_[i][j] * space_.factors()[j] % n_ != 0) {
          throw InvalidInput("pairing: entry (" + std::to_string(i) + ", " + std::to_string(j) + ") is not well defined");
        }
      }
    }
  }

  /// <e_i, e_i> = n / d_i with n the exponent.
  static Pairing standard(const FinAb& space) {
    const std::size_t r = space.rank();
    Matrix v(r, Vec(r, 0));
    for (std::size_t i = 0; i < r; ++i) v[i][i] = space.exponent() / space.factors()[i];
    return Pairing(space, space.exponent(), v);
  }

  const FinAb& space() const { return space_; }
  std::int64_t modulus() const { return n_; }
  const Matrix& values() const { return values_; }

  std::int64_t operator()(const Vec& x, const Vec& y) const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < space_.rank(); ++i) {
      for (std::size_t j = 0; j < space_.rank(); ++j) s = num::mod(s + num::mod(x[i] * values_[i][j], n_) * y[j], n_);
    }
    return s;
  }

  /// y -> (<e_i, y>)_i into (Z/n)^r.
  Homomorphism right_map() const {
    const std::size_t r = space_.rank();
    Matrix m(r, Vec(r, 0));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) m[i][j] = values_[i][j];
    }
    return Homomorphism(space_.factors(), Vec(r, n_), m);
  }

  bool perfect() const { return right_map().kernel().is_zero(); }

  /// {y : <a, y> = 0 for all a in sub}.
  Subgroup annihilator(const Subgroup& sub) const {
    const std::vector<Vec> gens = sub.generators();
    if (gens.empty()) return Subgroup::whole(space_.factors());
    Matrix m(gens.size(), Vec(space_.rank(), 0));
    for (std::size_t k = 0; k < gens.size(); ++k) {
      for (std::size_t j = 0; j < space_.rank(); ++j) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < space_.rank(); ++i) s = num::mod(s + gens[k][i] * values_[i][j], n_);
        m[k][j] = s;
      }
    }
    return Homomorphism(space_.factors(), Vec(gens.size(), n_), m).kernel();
  }

 private:
  FinAb space_;
  std::int64_t n_;
  Matrix values_;
};

/// A1^perp / A2^perp identified with the characters of A2/A1 by
/// y -> <., y> restricted to A2. Characters are written in the coordinates of
/// A2/A1: value on generator k, as an element of Z/f_k.
struct ChainDuality {
  Subgroup a1_perp;
  Subgroup a2_perp;
  Quotient chain;  // A2 / A1
  Quotient perp;   // A1^perp / A2^perp
  std::int64_t n = 1;

  Vec character_of(const Pairing& pairing, const Vec& y) const {
    Vec out;
    for (std::size_t k = 0; k < chain.generators().size(); ++k) {
      const std::int64_t f = chain.structure().factors()[k];
      out.push_back(pairing(chain.generators()[k], y) / (n / f));
    }
    return out;
  }

  /// Image of a coordinate vector of A1^perp / A2^perp.
  Vec apply(const Pairing& pairing, const Vec& coords) const { return character_of(pairing, perp.lift(coords)); }
};

/// Builds the duality for A1 <= A2 <= A3 and verifies it is a bijection by
/// mapping every element when |A1^perp / A2^perp| <= element_limit.
inline ChainDuality orthogonal_complement_chain(const Subgroup& a1, const Subgroup& a2, const Pairing& pairing,
                                                std::int64_t element_limit = 1 << 12) {
  if (a1.moduli() != pairing.space().factors() || a2.moduli() != pairing.space().factors()) {
    throw InvalidInput("orthogonal_complement_chain: subgroups do not live in the paired group");
  }
  if (!a1.subset_of(a2)) throw InvalidInput("orthogonal_complement_chain: A1 is not contained in A2");
  if (!pairing.perfect()) throw InvalidInput("orthogonal_complement_chain: pairing is degenerate");
  ChainDuality d;
  d.n = pairing.modulus();
  d.a1_perp = pairing.annihilator(a1);
  d.a2_perp = pairing.annihilator(a2);
  d.chain = Quotient(a2, a1);
  d.perp = Quotient(d.a1_perp, d.a2_perp);
  if (d.chain.structure().order() != d.perp.structure().order()) {
    throw ConsistencyError("orthogonal_complement_chain: |A2/A1| = " + std::to_string(d.chain.structure().order()) +
                           " but |A1perp/A2perp| = " + std::to_string(d.perp.structure().order()));
  }
  if (d.perp.structure().order() <= element_limit) {
    std::set<Vec> images;
    for (std::int64_t i = 0; i < d.perp.structure().order(); ++i) {
      images.insert(d.apply(pairing, d.perp.structure().element_at(i)));
    }
    if (static_cast<std::int64_t>(images.size()) != d.perp.structure().order()) {
      throw ConsistencyError("orthogonal_complement_chain: duality map is not injective");
    }
  }
  return d;
}

}  // namespace locglob
