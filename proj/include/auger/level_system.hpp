#pragma once

#include <map>
#include <string>
#include <vector>

namespace auger {

// Hole orbital ladder plus the trion state. Energies are measured from h1
// (h1 = 0 by definition). dipole_rel holds the dipole moment of the
// T+ <-> h_n transition relative to the fundamental one (h1 == 1).
struct LevelSystem {
  std::vector<std::string> levels;               // e.g. h1..h5, T+
  std::map<std::string, double> orbital_energy;  // meV above h1
  std::map<std::string, double> dipole_rel;      // dimensionless
  double trion_lifetime = 400.0;                 // ps
  std::map<std::string, double> hole_lifetime;   // ps, h2..h5

  void validate() const;

  // Orbital splitting between two hole levels, meV.
  double splitting(const std::string& a, const std::string& b) const;
};

// The shipped defaults: h2 splitting and lifetimes are measured quantities,
// the h3..h5 energies are approximate placements used only as configuration
// seeds, never as test oracles.
LevelSystem default_level_system();

}  // namespace auger
