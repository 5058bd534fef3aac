#include "auger/level_system.hpp"

#include <cmath>

#include "auger/error.hpp"

namespace auger {

void LevelSystem::validate() const {
  double prev = -1.0;
  bool first_hole = true;
  for (const auto& name : levels) {
    if (name == "T+") continue;
    auto it = orbital_energy.find(name);
    if (it == orbital_energy.end())
      throw Error("invalid_system", "missing orbital energy for " + name);
    if (first_hole) {
      if (it->second != 0.0)
        throw Error("invalid_system", "ground orbital energy must be exactly 0");
      first_hole = false;
    } else if (!(it->second > prev)) {
      throw Error("invalid_system", "orbital energies must be strictly increasing");
    }
    prev = it->second;
  }
  for (const auto& [name, d] : dipole_rel) {
    if (!(d > 0.0))
      throw Error("invalid_system", "dipole_rel must be > 0 for " + name);
  }
  auto h1 = dipole_rel.find("h1");
  if (h1 != dipole_rel.end() && h1->second != 1.0)
    throw Error("invalid_system", "dipole_rel(h1) must be 1");
  if (!(trion_lifetime > 0.0))
    throw Error("invalid_system", "trion lifetime must be > 0");
  for (const auto& [name, tau] : hole_lifetime) {
    if (!(tau > 0.0) || !std::isfinite(tau))
      throw Error("invalid_system", "hole lifetime must be > 0 for " + name);
  }
}

double LevelSystem::splitting(const std::string& a, const std::string& b) const {
  auto ea = orbital_energy.find(a);
  auto eb = orbital_energy.find(b);
  if (ea == orbital_energy.end() || eb == orbital_energy.end())
    throw Error("invalid_system", "unknown level in splitting query");
  return std::abs(ea->second - eb->second);
}

LevelSystem default_level_system() {
  LevelSystem s;
  s.levels = {"h1", "h2", "h3", "h4", "h5", "T+"};
  s.orbital_energy = {{"h1", 0.0}, {"h2", 4.36}, {"h3", 5.9}, {"h4", 7.3}, {"h5", 8.7}};
  s.dipole_rel = {{"h1", 1.0}, {"h2", 0.2}};
  s.trion_lifetime = 400.0;
  s.hole_lifetime = {{"h2", 161.0}, {"h3", 28.0}, {"h4", 22.0}, {"h5", 15.0}};
  return s;
}

}  // namespace auger
