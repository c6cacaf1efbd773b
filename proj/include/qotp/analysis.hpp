#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "qotp/info.hpp"
#include "qotp/protocol.hpp"

namespace qotp {

/// Security figures of a shared two-qubit state rho:
///   fidelity        F = sqrt(<psi-|rho|psi->)
///   gamma           1 - F^2, the singlet-weight deficit
///   detection_exact per-control-round coincidence probability
///   detection_bound gamma/2 (always <= detection_exact)
///   entropy_cap     S of the maximizing diagonal state, Eve's information cap
///   bell_diagonal   (p_phi+, p_phi-, p_psi+, p_psi-), sums to 1
struct GammaReport {
  double fidelity = 0.0;
  double gamma = 0.0;
  double detection_exact = 0.0;
  double detection_bound = 0.0;
  double entropy_cap_bits = 0.0;
  std::array<double, 4> bell_diagonal = {0.0, 0.0, 0.0, 0.0};
};

struct TradeoffPoint {
  double gamma = 0.0;
  double detection_bound = 0.0;
  double entropy_cap_bits = 0.0;
};

/// Per-protocol-step accounting for the efficiency metric.
struct EfficiencyInput {
  double secret_bits = 0.0;     // expected secret bits transmitted (b_s)
  double qubits = 0.0;          // qubits exchanged on the quantum channel (q_t)
  double classical_bits = 0.0;  // classical bits announced (b_t)
};

struct HolevoCheck {
  double entropy_bits = 0.0;
  double cap_bits = 0.0;
  bool satisfied = false;
};

struct DetectionEstimate {
  std::size_t trials = 0;
  std::size_t detections = 0;
  double frequency = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
};

/// Average post-attack state of a fresh singlet: the attack's nonselective
/// channel applied to the travel qubit.
inline DensityMatrix shared_state_after(const AttackModel& attack) {
  const DensityMatrix singlet = density_from_pure(bell_state(BellKind::PsiMinus));
  return apply_channel(attack_average_channel(attack), singlet, 0);
}

/// Exact per-control-round detection probability
///   d = 1/2 [ P(coincide | both Z) + P(coincide | both X) ]
/// with P(coincide | Z) = <00|rho|00> + <11|rho|11> and the X term read off
/// in the |++>, |--> directions.
inline double detection_probability_exact(const DensityMatrix& rho) {
  if (rho.n_qubits() != 2) {
    throw std::invalid_argument("detection_probability_exact: expected a 2-qubit state");
  }
  const double z = std::real(rho(0, 0)) + std::real(rho(3, 3));

  const auto& x_kets = basis_kets(MeasurementBasis::X);
  const auto joint = [](const std::vector<cplx>& a, const std::vector<cplx>& b) {
    return std::vector<cplx>{a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]};
  };
  const double x = std::real(expectation(joint(x_kets[0], x_kets[0]), rho.matrix())) +
                   std::real(expectation(joint(x_kets[1], x_kets[1]), rho.matrix()));

  return std::clamp(0.5 * (z + x), 0.0, 1.0);
}

/// Entropy cap S(gamma) = -(1-gamma) log2(1-gamma) - gamma log2(gamma/3),
/// the entropy of the diagonal state (1-gamma, gamma/3, gamma/3, gamma/3).
/// Endpoints by convention: S(0) = 0 and S(1) = log2(3); inputs within
/// 1e-12 of an endpoint snap to it.
inline double entropy_cap(double gamma) {
  if (!(gamma >= -1e-12 && gamma <= 1.0 + 1e-12)) {
    throw std::invalid_argument("entropy_cap: gamma must lie in [0,1]");
  }
  if (gamma <= 1e-12) return 0.0;
  if (gamma >= 1.0 - 1e-12) return std::log2(3.0);
  return -(1.0 - gamma) * std::log2(1.0 - gamma) - gamma * std::log2(gamma / 3.0);
}

/// Full report for a shared state. gamma = 1 - F^2; the Bell diagonal gives
/// the closed form d = p_phi+ + (p_phi- + p_psi+)/2 and p_psi- = 1 - gamma.
inline GammaReport gamma_of(const DensityMatrix& rho) {
  if (rho.n_qubits() != 2) {
    throw std::invalid_argument("gamma_of: expected a 2-qubit state");
  }
  GammaReport report;
  report.fidelity = fidelity_pure(bell_state(BellKind::PsiMinus), rho);
  report.gamma = std::clamp(1.0 - report.fidelity * report.fidelity, 0.0, 1.0);
  for (std::size_t i = 0; i < kAllBellKinds.size(); ++i) {
    report.bell_diagonal[i] = std::real(
        expectation(bell_state(kAllBellKinds[i]).amplitudes(), rho.matrix()));
  }
  report.detection_exact = detection_probability_exact(rho);
  report.detection_bound = 0.5 * report.gamma;
  report.entropy_cap_bits = entropy_cap(report.gamma);
  return report;
}

inline GammaReport attack_report(const AttackModel& attack) {
  return gamma_of(shared_state_after(attack));
}

/// (gamma, gamma/2, entropy_cap) along a grid of gamma values.
inline std::vector<TradeoffPoint> tradeoff_curve(std::span<const double> grid) {
  std::vector<TradeoffPoint> points;
  points.reserve(grid.size());
  for (const double g : grid) {
    if (!(g >= 0.0 && g <= 1.0)) {
      throw std::invalid_argument("tradeoff_curve: gamma values must lie in [0,1]");
    }
    points.push_back(TradeoffPoint{g, 0.5 * g, entropy_cap(g)});
  }
  return points;
}

/// epsilon = b_s / (q_t + b_t); 0.5 for this protocol, 0.25 for BB84.
inline double efficiency(const EfficiencyInput& e) {
  if (e.secret_bits < 0.0 || e.qubits < 0.0 || e.classical_bits < 0.0) {
    throw std::invalid_argument("efficiency: inputs must be nonnegative");
  }
  const double denom = e.qubits + e.classical_bits;
  if (denom <= 0.0) {
    throw std::invalid_argument("efficiency: qubit plus classical budget must be positive");
  }
  return e.secret_bits / denom;
}

/// Checks S(rho) <= entropy_cap(gamma) + 1e-9. gamma must agree with the
/// state's own gamma to 1e-9. The flag is only a proven bound for
/// gamma <= 3/4; beyond that it is reported as computed.
inline HolevoCheck holevo_check(const DensityMatrix& rho, double gamma) {
  const GammaReport report = gamma_of(rho);
  if (std::abs(report.gamma - gamma) >= 1e-9) {
    throw std::invalid_argument("holevo_check: gamma is inconsistent with the state");
  }
  HolevoCheck check;
  check.entropy_bits = von_neumann_entropy(rho);
  check.cap_bits = entropy_cap(gamma);
  check.satisfied = check.entropy_bits <= check.cap_bits + 1e-9;
  return check;
}

/// Empirical per-control-round detection frequency with a 95% normal
/// confidence interval. Trial i uses its own stream derive_seed(seed, i),
/// so results do not depend on execution order.
inline DetectionEstimate monte_carlo_detection(const AttackModel& attack,
                                               std::size_t trials, std::uint64_t seed) {
  if (trials == 0) {
    throw std::invalid_argument("monte_carlo_detection: trials must be positive");
  }
  const DensityMatrix singlet = density_from_pure(bell_state(BellKind::PsiMinus));
  std::size_t hits = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng(derive_seed(seed, i));
    const AttackResult attacked = attack_travel_qubit(attack, singlet, rng, i);
    if (control_round(attacked.state, i, rng).detected) ++hits;
  }
  DetectionEstimate est;
  est.trials = trials;
  est.detections = hits;
  est.frequency = static_cast<double>(hits) / static_cast<double>(trials);
  const double half =
      1.96 * std::sqrt(std::max(est.frequency * (1.0 - est.frequency), 0.0) /
                       static_cast<double>(trials));
  est.ci95_low = std::max(0.0, est.frequency - half);
  est.ci95_high = std::min(1.0, est.frequency + half);
  return est;
}

}  // namespace qotp
