// Copyright 2026 The ghzforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ghzforge/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "ghzforge/errors.hpp"
#include "ghzforge/units.hpp"

namespace ghzforge {
namespace {

constexpr double kRwaWarnRatio = 0.2;
constexpr double kStrongDriveFactor = 5.0;
constexpr double kResonanceRelTol = 1e-12;

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

// Embedded single-factor operators for one circuit space.
struct Factors {
  explicit Factors(const HilbertSpace& s) : space(s) {}

  Operator qubit(const Operator& op, std::size_t k) const {
    return embed(op, space.qubit_factor(k), space);
  }
  Operator sx(std::size_t k) const { return qubit(pauli(Axis::X), k); }
  Operator sy(std::size_t k) const { return qubit(pauli(Axis::Y), k); }
  Operator sz(std::size_t k) const { return qubit(pauli(Axis::Z), k); }
  Operator sp(std::size_t k) const { return qubit(sigma_plus(), k); }
  Operator sm(std::size_t k) const { return qubit(sigma_minus(), k); }
  Operator a(std::size_t mode) const {
    return embed(annihilation(space.mode_truncations()[mode]), space.mode_factor(mode), space);
  }
  Operator n(std::size_t mode) const {
    return embed(number(space.mode_truncations()[mode]), space.mode_factor(mode), space);
  }

  const HilbertSpace& space;
};

void check_space(const HilbertSpace& space, std::size_t qubits, std::size_t modes,
                 const char* builder) {
  if (space.qubit_count() != qubits || space.mode_count() != modes) {
    std::ostringstream msg;
    msg << builder << ": space " << space.describe() << " does not match circuit with " << qubits
        << " qubit(s) and " << modes << " mode(s)";
    throw InputError(msg.str());
  }
}

void check_qubits(const std::vector<QubitSpec>& qubits) {
  if (qubits.empty()) throw InputError("circuit has no qubits");
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    const QubitSpec& q = qubits[k];
    if (!(q.gap > 0.0) || !std::isfinite(q.gap)) {
      throw InputError("qubit " + std::to_string(k) + ": gap must be positive");
    }
    if (!(q.coupling >= 0.0) || !std::isfinite(q.coupling)) {
      throw InputError("qubit " + std::to_string(k) + ": coupling must be non-negative");
    }
    if (q.bias != 0.0) {
      throw InputError("qubit " + std::to_string(k) +
                       ": nonzero flux bias is not supported (optimal point only)");
    }
    if (q.rabi && !std::isfinite(*q.rabi)) {
      throw InputError("qubit " + std::to_string(k) + ": Rabi amplitude must be finite");
    }
  }
}

void check_resonant(const std::vector<QubitSpec>& qubits, double drive_frequency,
                    const char* builder) {
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    if (std::abs(qubits[k].gap - drive_frequency) > kResonanceRelTol * std::abs(drive_frequency)) {
      throw InputError(std::string(builder) + ": qubit " + std::to_string(k) + " gap " +
                       fmt(qubits[k].gap) + " differs from drive frequency " +
                       fmt(drive_frequency) + " (resonant drive required)");
    }
  }
}

void warn_rwa(const std::vector<QubitSpec>& qubits, double resonator_frequency,
              double drive_frequency, double rabi_max, const char* builder) {
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    if (qubits[k].coupling > kRwaWarnRatio * resonator_frequency) {
      warn(std::string(builder) + ": g/omega_r = " +
           fmt(qubits[k].coupling / resonator_frequency) + " for qubit " + std::to_string(k) +
           " exceeds " + fmt(kRwaWarnRatio) + "; rotating-wave approximation is doubtful");
    }
  }
  if (std::abs(rabi_max) > kRwaWarnRatio * drive_frequency) {
    warn(std::string(builder) + ": Omega_R/omega_d = " + fmt(std::abs(rabi_max) / drive_frequency) +
         " exceeds " + fmt(kRwaWarnRatio) + "; rotating-wave approximation is doubtful");
  }
}

void warn_strong_drive(double rabi_min, double scale, const char* builder) {
  if (std::abs(rabi_min) < kStrongDriveFactor * scale) {
    warn(std::string(builder) + ": Omega_R = " + fmt(rabi_min) + " is below " +
         fmt(kStrongDriveFactor) + " x " + fmt(scale) +
         "; fast-term elimination is not justified");
  }
}

template <typename Circuit>
std::pair<double, double> rabi_range(const Circuit& c) {
  double lo = std::abs(c.rabi_for(0));
  double hi = lo;
  for (std::size_t k = 1; k < c.qubit_count(); ++k) {
    lo = std::min(lo, std::abs(c.rabi_for(k)));
    hi = std::max(hi, std::abs(c.rabi_for(k)));
  }
  return {lo, hi};
}

double max_coupling(const std::vector<QubitSpec>& qubits) {
  double g = 0.0;
  for (const auto& q : qubits) g = std::max(g, q.coupling);
  return g;
}

void validate_single(const SingleTlrCircuit& c, const HilbertSpace& space, const char* builder) {
  check_qubits(c.qubits);
  check_space(space, c.qubit_count(), 1, builder);
  if (!(c.resonator_frequency > 0.0)) throw InputError("resonator frequency must be positive");
  if (!(c.drive_frequency > 0.0)) throw InputError("drive frequency must be positive");
  if (c.detuning() == 0.0) {
    throw PreconditionError(std::string(builder) + ": detuning omega_r - omega_d is zero");
  }
  check_resonant(c.qubits, c.drive_frequency, builder);
  warn_rwa(c.qubits, c.resonator_frequency, c.drive_frequency, rabi_range(c).second, builder);
}

void validate_coupled(const CoupledTlrCircuit& c, const HilbertSpace& space, const char* builder) {
  check_qubits(c.qubits);
  check_space(space, c.qubit_count(), 2, builder);
  if (!(c.frequency_a > 0.0)) throw InputError("resonator frequency must be positive");
  if (std::abs(c.frequency_a - c.frequency_b) > kResonanceRelTol * c.frequency_a) {
    throw InputError(std::string(builder) +
                     ": normal-mode construction needs equal resonator frequencies, got " +
                     fmt(c.frequency_a) + " and " + fmt(c.frequency_b));
  }
  if (!(c.drive_frequency > 0.0)) throw InputError("drive frequency must be positive");
  if (std::abs(std::abs(c.detuning()) - std::abs(c.resonator_coupling)) <=
      1e-12 * std::max(std::abs(c.detuning()), 1e-300)) {
    throw PreconditionError(std::string(builder) + ": |delta'| equals |J|; a normal mode is resonant");
  }
  check_resonant(c.qubits, c.drive_frequency, builder);
  warn_rwa(c.qubits, c.frequency_a, c.drive_frequency, rabi_range(c).second, builder);
}

double mode_sign(const QubitSpec& q) { return q.resonator == Resonator::A ? 1.0 : -1.0; }

// Normal-mode static part shared by the RWA and full coupled builders.
Operator coupled_static(const CoupledTlrCircuit& c, const HilbertSpace& space) {
  const Factors f(space);
  const double dp = c.detuning();
  const double j = c.resonator_coupling;
  const Operator p = f.a(0);
  const Operator q = f.a(1);
  Operator h = (dp + j) * f.n(0) + (dp - j) * f.n(1);
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t k = 0; k < c.qubit_count(); ++k) {
    const double g = c.qubits[k].coupling * r;
    const double s = mode_sign(c.qubits[k]);
    const Operator sp = f.sp(k);
    const Operator sm = f.sm(k);
    h += g * (sm * p.adjoint() + sp * p);
    h += (s * g) * (sm * q.adjoint() + sp * q);
    h += (c.rabi_for(k) / 2.0) * f.sx(k);
  }
  return h;
}

}  // namespace

double SingleTlrCircuit::rabi_for(std::size_t qubit) const {
  return qubits.at(qubit).rabi.value_or(rabi);
}

double CoupledTlrCircuit::rabi_for(std::size_t qubit) const {
  return qubits.at(qubit).rabi.value_or(rabi);
}

void assign_default_split(CoupledTlrCircuit& circuit) {
  const std::size_t half = circuit.qubits.size() / 2;
  for (std::size_t k = 0; k < circuit.qubits.size(); ++k) {
    circuit.qubits[k].resonator = k < half ? Resonator::A : Resonator::B;
  }
}

TimeDependentHamiltonian::TimeDependentHamiltonian(HilbertSpace space, std::string label,
                                                   double fastest_frequency)
    : space_(std::move(space)), label_(std::move(label)), declared_frequency_(fastest_frequency) {}

void TimeDependentHamiltonian::refresh_norm_bound() {
  // ||M||_2 <= sqrt(||M||_1 ||M||_inf).
  norm_bound_ = 0.0;
  for (const auto& term : terms_) {
    const double col = term.matrix.cwiseAbs().colwise().sum().maxCoeff();
    const double row = term.matrix.cwiseAbs().rowwise().sum().maxCoeff();
    norm_bound_ += std::sqrt(col * row);
  }
}

void TimeDependentHamiltonian::add(double frequency, const Operator& op) {
  if (!(op.space() == space_)) {
    throw InputError("Hamiltonian term on " + op.space().describe() + " added to " +
                     space_.describe());
  }
  for (auto& term : terms_) {
    if (term.frequency == frequency) {
      term.matrix += op.matrix();
      refresh_norm_bound();
      return;
    }
  }
  terms_.push_back({frequency, op.matrix()});
  declared_frequency_ = std::max(declared_frequency_, std::abs(frequency));
  refresh_norm_bound();
}

void TimeDependentHamiltonian::add_hermitian_pair(double frequency, const Operator& op) {
  if (frequency == 0.0) {
    add(0.0, op + op.adjoint());
    return;
  }
  add(frequency, op);
  add(-frequency, op.adjoint());
}

Operator TimeDependentHamiltonian::operator()(double t) const {
  Matrix h = Matrix::Zero(static_cast<Eigen::Index>(space_.dim()),
                          static_cast<Eigen::Index>(space_.dim()));
  for (const auto& term : terms_) {
    h += std::exp(kI * (term.frequency * t)) * term.matrix;
  }
  return {space_, std::move(h)};
}

void TimeDependentHamiltonian::apply(double t, const Vector& psi, Vector& out,
                                     Vector& scratch) const {
  out.setZero(psi.size());
  for (const auto& term : terms_) {
    scratch.noalias() = term.matrix * psi;
    if (term.frequency == 0.0) {
      out += scratch;
    } else {
      out += std::exp(kI * (term.frequency * t)) * scratch;
    }
  }
}

bool TimeDependentHamiltonian::is_time_independent() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& term) { return term.frequency == 0.0; });
}

Operator TimeDependentHamiltonian::static_part() const {
  Operator h = Operator::zero(space_);
  for (const auto& term : terms_) {
    if (term.frequency == 0.0) h.matrix() += term.matrix;
  }
  return h;
}

Operator persistent_to_energy_basis(const HilbertSpace& space) {
  // Columns are |-> = (|0> - |1>)/sqrt2 and |+> = (|0> + |1>)/sqrt2.
  const double r = 1.0 / std::sqrt(2.0);
  Matrix w(2, 2);
  w << r, r, -r, r;
  Operator out = Operator::identity(space);
  for (std::size_t k = 0; k < space.qubit_count(); ++k) {
    out = out * embed(Operator(HilbertSpace::qubits(1), w), space.qubit_factor(k), space);
  }
  return out;
}

TimeDependentHamiltonian h_lab_single(const SingleTlrCircuit& circuit, const ResonatorDrive& drive,
                                      const HilbertSpace& space) {
  check_qubits(circuit.qubits);
  check_space(space, circuit.qubit_count(), 1, "h_lab_single");
  // In the persistent-current basis sbar_z = sigma_z and sbar_x = sigma_x.
  const Factors f(space);
  const Operator a = f.a(0);
  Operator h = circuit.resonator_frequency * f.n(0);
  double spread = circuit.resonator_frequency *
                  static_cast<double>(space.mode_truncations()[0] - 1);
  for (std::size_t k = 0; k < circuit.qubit_count(); ++k) {
    const QubitSpec& q = circuit.qubits[k];
    h -= (q.gap / 2.0) * f.sx(k);
    h += q.coupling * ((a + a.adjoint()) * f.sz(k));
    spread += q.gap / 2.0;
  }
  TimeDependentHamiltonian out(space, "lab", spread + drive.frequency);
  out.add(0.0, h);
  if (drive.amplitude != 0.0) out.add_hermitian_pair(-drive.frequency, drive.amplitude * a.adjoint());
  return out;
}

DisplacementReport displace_to_qubit_drive(const SingleTlrCircuit& circuit,
                                           const ResonatorDrive& drive) {
  const double delta = circuit.resonator_frequency - drive.frequency;
  if (delta == 0.0) {
    throw PreconditionError("displacement: resonator and drive frequencies coincide");
  }
  if (!std::isfinite(drive.amplitude)) throw InputError("displacement: drive amplitude not finite");
  DisplacementReport report;
  report.circuit = circuit;
  report.circuit.drive_frequency = drive.frequency;
  report.displacement_amplitude = std::abs(drive.amplitude / delta);
  for (const auto& q : circuit.qubits) {
    report.rabi_per_qubit.push_back(-2.0 * q.coupling * drive.amplitude / delta);
  }
  report.homogeneous = std::all_of(report.rabi_per_qubit.begin(), report.rabi_per_qubit.end(),
                                   [&](double r) { return r == report.rabi_per_qubit.front(); });
  report.circuit.rabi = report.rabi_per_qubit.empty() ? 0.0 : report.rabi_per_qubit.front();
  for (std::size_t k = 0; k < report.circuit.qubits.size(); ++k) {
    report.circuit.qubits[k].rabi =
        report.homogeneous ? std::nullopt : std::optional<double>(report.rabi_per_qubit[k]);
  }
  return report;
}

Operator h_rotating_single(const SingleTlrCircuit& circuit, const HilbertSpace& space) {
  validate_single(circuit, space, "h_rotating_single");
  const Factors f(space);
  const Operator a = f.a(0);
  Operator h = circuit.detuning() * f.n(0);
  for (std::size_t k = 0; k < circuit.qubit_count(); ++k) {
    const double g = circuit.qubits[k].coupling;
    h += g * (a.adjoint() * f.sm(k) + a * f.sp(k));
    h += (circuit.rabi_for(k) / 2.0) * f.sx(k);
  }
  return h;
}

TimeDependentHamiltonian h_full_sim_single(const SingleTlrCircuit& circuit,
                                           const HilbertSpace& space) {
  const Operator h2 = h_rotating_single(circuit, space);
  const Factors f(space);
  const Operator a = f.a(0);
  const double wc = circuit.resonator_frequency + circuit.drive_frequency;
  TimeDependentHamiltonian out(space, "full", wc);
  out.add(0.0, h2);
  Operator drive = Operator::zero(space);
  Operator counter = Operator::zero(space);
  for (std::size_t k = 0; k < circuit.qubit_count(); ++k) {
    drive += (circuit.rabi_for(k) / 2.0) * f.sp(k);
    counter += circuit.qubits[k].coupling * (a.adjoint() * f.sp(k));
  }
  out.add_hermitian_pair(2.0 * circuit.drive_frequency, drive);
  out.add_hermitian_pair(wc, counter);
  return out;
}

TimeDependentHamiltonian h_eff_intermediate(const SingleTlrCircuit& circuit,
                                            const HilbertSpace& space,
                                            double oscillating_amplitude) {
  validate_single(circuit, space, "h_eff_intermediate");
  const auto [rabi_lo, rabi_hi] = rabi_range(circuit);
  const double delta = circuit.detuning();
  warn_strong_drive(rabi_lo, std::max(std::abs(delta), max_coupling(circuit.qubits)),
                    "h_eff_intermediate");
  const Factors f(space);
  const Operator a = f.a(0);
  TimeDependentHamiltonian out(space, "intermediate", rabi_hi + std::abs(delta));
  for (std::size_t k = 0; k < circuit.qubit_count(); ++k) {
    const double g = circuit.qubits[k].coupling;
    const double w = circuit.rabi_for(k);
    const Operator sz = f.sz(k);
    const Operator sy = f.sy(k);
    out.add_hermitian_pair(-delta, (g / 2.0) * (a * f.sx(k)));
    if (oscillating_amplitude == 0.0) continue;
    const Complex c = g / 4.0 * oscillating_amplitude;
    out.add_hermitian_pair(w - delta, -c * (a * (sz - kI * sy)));
    out.add_hermitian_pair(-w - delta, c * (a * (sz + kI * sy)));
  }
  return out;
}

TimeDependentHamiltonian h_eff_final(const SingleTlrCircuit& circuit, const HilbertSpace& space) {
  validate_single(circuit, space, "h_eff_final");
  const double delta = circuit.detuning();
  warn_strong_drive(rabi_range(circuit).first,
                    std::max(std::abs(delta), max_coupling(circuit.qubits)), "h_eff_final");
  const Factors f(space);
  const Operator a = f.a(0);
  Operator coupling = Operator::zero(space);
  for (std::size_t k = 0; k < circuit.qubit_count(); ++k) {
    coupling += (circuit.qubits[k].coupling / 2.0) * (a * f.sx(k));
  }
  TimeDependentHamiltonian out(space, "effective", std::abs(delta));
  out.add_hermitian_pair(-delta, coupling);
  return out;
}

Operator h_rotating_coupled(const CoupledTlrCircuit& circuit, const HilbertSpace& space) {
  validate_coupled(circuit, space, "h_rotating_coupled");
  return coupled_static(circuit, space);
}

Operator h_rotating_coupled_resonator_basis(const CoupledTlrCircuit& circuit,
                                            const HilbertSpace& space) {
  validate_coupled(circuit, space, "h_rotating_coupled_resonator_basis");
  const Factors f(space);
  const Operator a = f.a(0);
  const Operator b = f.a(1);
  const double dp = circuit.detuning();
  Operator h = dp * (f.n(0) + f.n(1)) +
               circuit.resonator_coupling * (a.adjoint() * b + a * b.adjoint());
  for (std::size_t k = 0; k < circuit.qubit_count(); ++k) {
    const Operator& m = circuit.qubits[k].resonator == Resonator::A ? a : b;
    h += circuit.qubits[k].coupling * (f.sm(k) * m.adjoint() + f.sp(k) * m);
    h += (circuit.rabi_for(k) / 2.0) * f.sx(k);
  }
  return h;
}

TimeDependentHamiltonian h_full_sim_coupled(const CoupledTlrCircuit& circuit,
                                            const HilbertSpace& space) {
  validate_coupled(circuit, space, "h_full_sim_coupled");
  const Factors f(space);
  const Operator p = f.a(0);
  const Operator q = f.a(1);
  const double wc = circuit.frequency_a + circuit.drive_frequency;
  TimeDependentHamiltonian out(space, "full", wc);
  out.add(0.0, coupled_static(circuit, space));
  Operator drive = Operator::zero(space);
  Operator counter = Operator::zero(space);
  const double r = 1.0 / std::sqrt(2.0);
  for (std::size_t k = 0; k < circuit.qubit_count(); ++k) {
    const double g = circuit.qubits[k].coupling * r;
    drive += (circuit.rabi_for(k) / 2.0) * f.sp(k);
    counter += g * ((p.adjoint() + mode_sign(circuit.qubits[k]) * q.adjoint()) * f.sp(k));
  }
  out.add_hermitian_pair(2.0 * circuit.drive_frequency, drive);
  out.add_hermitian_pair(wc, counter);
  return out;
}

TimeDependentHamiltonian h_eff_coupled(const CoupledTlrCircuit& circuit,
                                       const HilbertSpace& space) {
  validate_coupled(circuit, space, "h_eff_coupled");
  const double dp = circuit.detuning();
  const double j = circuit.resonator_coupling;
  warn_strong_drive(rabi_range(circuit).first,
                    std::max({max_coupling(circuit.qubits), std::abs(dp), std::abs(j)}),
                    "h_eff_coupled");
  const Factors f(space);
  const Operator p = f.a(0);
  const Operator q = f.a(1);
  Operator p_term = Operator::zero(space);
  Operator q_term = Operator::zero(space);
  const double c = std::sqrt(2.0) / 4.0;
  for (std::size_t k = 0; k < circuit.qubit_count(); ++k) {
    const Operator sx = f.sx(k);
    const double g = c * circuit.qubits[k].coupling;
    p_term += g * (p * sx);
    q_term += (mode_sign(circuit.qubits[k]) * g) * (q * sx);
  }
  TimeDependentHamiltonian out(space, "effective", std::abs(dp) + std::abs(j));
  out.add_hermitian_pair(-(dp + j), p_term);
  out.add_hermitian_pair(-(dp - j), q_term);
  return out;
}

double coupling_strength(double mutual_ph, double persistent_current_na, double inductance_nh,
                         double resonator_frequency) {
  if (!(mutual_ph >= 0.0) || !std::isfinite(mutual_ph)) {
    throw InputError("coupling_strength: mutual inductance must be non-negative");
  }
  if (!(persistent_current_na >= 0.0) || !std::isfinite(persistent_current_na)) {
    throw InputError("coupling_strength: persistent current must be non-negative");
  }
  if (!(inductance_nh > 0.0)) throw InputError("coupling_strength: inductance must be positive");
  if (!(resonator_frequency > 0.0)) {
    throw InputError("coupling_strength: resonator frequency must be positive");
  }
  const double m = mutual_ph * units::kPicohenry;
  const double ip = persistent_current_na * units::kNanoampere;
  const double l = inductance_nh * units::kNanohenry;
  const double w = resonator_frequency / units::kNanosecond;  // rad/s
  const double zero_point_current = std::sqrt(units::kReducedPlanck * w / l);
  return units::joule_to_angular(m * ip * zero_point_current);
}

}  // namespace ghzforge
