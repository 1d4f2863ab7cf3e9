#pragma once

// Reference modules and place models over Q.

#include "locglob/gmodule.hpp"
#include "locglob/localglobal.hpp"

#include <vector>

namespace locglob::models {

/// (Z/8)^x = {1, 3, 5, 7} acting on mu_8 = Z/8 by multiplication, i.e. the
/// Galois module mu_8 over Q(mu_8)/Q.
inline GModule mu8_module() {
  std::vector<int> residues;
  const GroupTable g = GroupTable::units_mod(8, &residues);
  return GModule::scalar(g, 8, Vec(residues.begin(), residues.end()));
}

/// Cyclotomic character of Q(mu_8)/Q: g -> its residue mod 8.
inline CyclotomicData mu8_character() {
  std::vector<int> residues;
  const GroupTable g = GroupTable::units_mod(8, &residues);
  return CyclotomicData(g, 8, Vec(residues.begin(), residues.end()));
}

inline int unit_index(int residue) {
  std::vector<int> residues;
  GroupTable::units_mod(8, &residues);
  for (std::size_t i = 0; i < residues.size(); ++i) {
    if (residues[i] == residue) return static_cast<int>(i);
  }
  throw InvalidInput("not a unit mod 8");
}

/// Place "2" is totally ramified (full group); complex conjugation is 7.
inline PlaceModel mu8_model() {
  return PlaceModel(mu8_module(), {{"2", {0, 1, 2, 3}}, {"inf", {0, unit_index(7)}}}, {"inf"});
}

/// mu_2 over the same Klein extension: the action is trivial.
inline PlaceModel mu2_model() {
  std::vector<int> residues;
  const GroupTable g = GroupTable::units_mod(8, &residues);
  return PlaceModel(GModule::trivial(g, FinAb({2})), {{"2", {0, 1, 2, 3}}, {"inf", {0, unit_index(7)}}}, {"inf"});
}

}  // namespace locglob::models
