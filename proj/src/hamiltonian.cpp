#include "auger/hamiltonian.hpp"

#include <cmath>
#include <complex>

#include "auger/constants.hpp"
#include "auger/error.hpp"

namespace auger {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void check_family_detunings(const std::vector<Pulse>& family, const char* name) {
  for (std::size_t i = 1; i < family.size(); ++i) {
    if (std::abs(family[i].detuning - family[0].detuning) > 1e-12) {
      throw Error("invalid_sequence",
                  std::string("all ") + name +
                      " pulses must share one detuning; the rotating frame "
                      "tracks a single carrier per transition");
    }
  }
}

}  // namespace

void HamiltonianSpec::validate() const {
  if (basis.size() != 3) {
    throw Error("invalid_basis", "hamiltonian requires a three-state basis, got " +
                                     std::to_string(basis.size()) + " labels");
  }
  if (dipole_ratio <= 0.0 || !std::isfinite(dipole_ratio)) {
    throw Error("invalid_system", "dipole_ratio must be positive and finite");
  }
  if (!std::isfinite(delta12)) {
    throw Error("invalid_system", "delta12 must be finite");
  }
  pump.validate();
  control.validate();
}

double DriveTerms::mismatch_angular() const {
  return (delta12 + control_detuning) / constants::hbar;
}

double DriveTerms::t_begin(double margin_fwhm) const {
  double t = 0.0;
  bool any = false;
  for (const auto* fam : {&pump_family, &control_family}) {
    for (const auto& p : *fam) {
      double lo = p.arrival - margin_fwhm * p.fwhm;
      if (!any || lo < t) t = lo, any = true;
    }
  }
  return t;
}

double DriveTerms::t_end(double margin_fwhm) const {
  double t = 0.0;
  bool any = false;
  for (const auto* fam : {&pump_family, &control_family}) {
    for (const auto& p : *fam) {
      double hi = p.arrival + margin_fwhm * p.fwhm;
      if (!any || hi > t) t = hi, any = true;
    }
  }
  return t;
}

DriveTerms make_drive(const HamiltonianSpec& spec) {
  spec.validate();
  DriveTerms d;
  // Zero-area pulses are kept: they contribute nothing to the drive but keep
  // time spans and detunings stable across parameter sweeps.
  d.pump_family.push_back(spec.pump);
  d.control_family.push_back(spec.control);
  d.pump_detuning = spec.pump.detuning;
  d.control_detuning = spec.control.detuning;
  d.delta12 = spec.delta12;
  d.cross_coupling = spec.cross_coupling;
  d.dipole_ratio = spec.dipole_ratio;
  d.phase_origin = spec.pump.arrival;
  const double mism = d.mismatch_angular();
  for (const auto& p : d.control_family) {
    d.control_carrier_phase.push_back(p.phase + mism * (p.arrival - d.phase_origin));
  }
  return d;
}

DriveTerms make_drive(const PulseSequence& seq, double delta12, bool cross_coupling,
                      double dipole_ratio) {
  seq.validate();
  if (dipole_ratio <= 0.0 || !std::isfinite(dipole_ratio)) {
    throw Error("invalid_system", "dipole_ratio must be positive and finite");
  }
  DriveTerms d;
  d.delta12 = delta12;
  d.cross_coupling = cross_coupling;
  d.dipole_ratio = dipole_ratio;
  for (const auto& p : seq.pulses) {
    if (p.target == "h1") {
      d.pump_family.push_back(p);
    } else {
      d.control_family.push_back(p);
    }
  }
  check_family_detunings(d.pump_family, "pump-family");
  check_family_detunings(d.control_family, "control-family");
  if (!d.pump_family.empty()) d.pump_detuning = d.pump_family[0].detuning;
  if (!d.control_family.empty()) d.control_detuning = d.control_family[0].detuning;
  d.phase_origin = d.pump_family.empty()
                       ? (d.control_family.empty() ? 0.0 : d.control_family[0].arrival)
                       : d.pump_family[0].arrival;
  const double mism = d.mismatch_angular();
  for (const auto& p : d.control_family) {
    d.control_carrier_phase.push_back(p.phase + mism * (p.arrival - d.phase_origin));
  }
  return d;
}

Eigen::Matrix3cd hamiltonian_over_hbar(const DriveTerms& d, double t) {
  using std::exp;
  const double mism = d.mismatch_angular();
  const std::complex<double> slip = exp(-kI * (mism * (t - d.phase_origin)));

  // a couples T+ <-> h1, c couples T+ <-> h2 (upper-triangle entries).
  std::complex<double> a{0.0, 0.0};
  std::complex<double> c{0.0, 0.0};

  for (const auto& p : d.pump_family) {
    const double half = 0.5 * envelope(p, t);
    const std::complex<double> ph = exp(kI * p.phase);
    a += half * ph;
    if (d.cross_coupling) {
      c += (half / d.dipole_ratio) * std::conj(ph) * slip;
    }
  }
  for (std::size_t k = 0; k < d.control_family.size(); ++k) {
    const auto& p = d.control_family[k];
    const double half = 0.5 * envelope(p, t);
    const std::complex<double> ph = exp(kI * d.control_carrier_phase[k]);
    c += half * std::conj(ph);
    if (d.cross_coupling) {
      a += (half * d.dipole_ratio) * ph * slip;
    }
  }

  Eigen::Matrix3cd m = Eigen::Matrix3cd::Zero();
  m(0, 1) = a;
  m(1, 0) = std::conj(a);
  m(1, 2) = c;
  m(2, 1) = std::conj(c);
  m(1, 1) = d.pump_detuning / constants::hbar;
  m(2, 2) = -d.control_detuning / constants::hbar;
  return m;
}

Eigen::Matrix3cd build_hamiltonian(const HamiltonianSpec& spec, double t) {
  return constants::hbar * hamiltonian_over_hbar(make_drive(spec), t);
}

}  // namespace auger
