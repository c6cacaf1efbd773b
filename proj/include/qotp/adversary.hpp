#pragma once

#include <optional>
#include <string>
#include <utility>

#include "qotp/channels.hpp"
#include "qotp/protocol_types.hpp"

namespace qotp {

enum class BasisPolicy { AlwaysZ, AlwaysX, RandomZX };

/// Eve's move on the travel qubit. InterceptResend measures and forwards the
/// collapsed eigenstate (giving her a per-round outcome); Depolarizing and
/// GeneralKraus act as deterministic trace-preserving maps and leave no
/// measurement record.
class AttackModel {
 public:
  enum class Kind { NoAttack, InterceptResend, GeneralKraus, Depolarizing };

  static AttackModel none() { return AttackModel(Kind::NoAttack); }

  static AttackModel intercept_resend(BasisPolicy policy) {
    AttackModel m(Kind::InterceptResend);
    m.policy_ = policy;
    return m;
  }

  static AttackModel depolarizing(double p) {
    AttackModel m(Kind::Depolarizing);
    m.p_ = p;
    m.channel_ = KrausChannel::depolarizing(p);  // validates p
    return m;
  }

  static AttackModel general_kraus(KrausChannel channel) {
    AttackModel m(Kind::GeneralKraus);
    m.channel_ = std::move(channel);
    return m;
  }

  Kind kind() const { return kind_; }
  BasisPolicy basis_policy() const { return policy_; }
  double depolarizing_p() const { return p_; }

  const KrausChannel& channel() const {
    if (!channel_) throw std::logic_error("AttackModel: no channel for this variant");
    return *channel_;
  }

  std::string label() const {
    switch (kind_) {
      case Kind::NoAttack:
        return "none";
      case Kind::InterceptResend:
        switch (policy_) {
          case BasisPolicy::AlwaysZ:
            return "intercept_resend(always_z)";
          case BasisPolicy::AlwaysX:
            return "intercept_resend(always_x)";
          case BasisPolicy::RandomZX:
            return "intercept_resend(random_zx)";
        }
        return "intercept_resend";
      case Kind::Depolarizing:
      case Kind::GeneralKraus:
        return channel_->label();
    }
    return "unknown";
  }

 private:
  explicit AttackModel(Kind kind) : kind_(kind) {}

  Kind kind_;
  BasisPolicy policy_ = BasisPolicy::AlwaysZ;
  double p_ = 0.0;
  std::optional<KrausChannel> channel_;
};

/// Eve's per-round bookkeeping. guessed_bit is only filled when she holds a
/// measurement record and saw the round's announcement.
struct EveRecord {
  std::size_t round_id = 0;
  std::optional<MeasurementBasis> measured_basis;
  std::optional<int> measured_outcome;
  std::optional<int> guessed_bit;

  bool operator==(const EveRecord&) const = default;
};

struct AttackResult {
  DensityMatrix state;
  EveRecord record;
};

/// Applies the attack to the travel qubit (qubit 0) of the fresh pair. Eve
/// never touches Bob's qubit. Draw order for InterceptResend: the RandomZX
/// basis choice first, then the Born draw of her measurement.
inline AttackResult attack_travel_qubit(const AttackModel& model,
                                        const DensityMatrix& joint_state, Rng& rng,
                                        std::size_t round_id = 0) {
  if (joint_state.n_qubits() != 2) {
    throw std::invalid_argument("attack_travel_qubit: expected a 2-qubit state");
  }
  EveRecord record;
  record.round_id = round_id;
  switch (model.kind()) {
    case AttackModel::Kind::NoAttack:
      return AttackResult{joint_state, record};
    case AttackModel::Kind::InterceptResend: {
      MeasurementBasis basis = MeasurementBasis::Z;
      switch (model.basis_policy()) {
        case BasisPolicy::AlwaysZ:
          basis = MeasurementBasis::Z;
          break;
        case BasisPolicy::AlwaysX:
          basis = MeasurementBasis::X;
          break;
        case BasisPolicy::RandomZX:
          basis = rng.uniform_bit() == 0 ? MeasurementBasis::Z : MeasurementBasis::X;
          break;
      }
      MeasurementResult m = measure_qubit(joint_state, 0, basis, rng);
      record.measured_basis = basis;
      record.measured_outcome = m.outcome;
      return AttackResult{std::move(m.post_state), record};
    }
    case AttackModel::Kind::Depolarizing:
    case AttackModel::Kind::GeneralKraus:
      return AttackResult{apply_channel(model.channel(), joint_state, 0), record};
  }
  throw std::logic_error("attack_travel_qubit: unknown attack kind");
}

/// The attack averaged over Eve's randomness, as a Kraus channel. For
/// intercept-resend this is the nonselective projection; RandomZX mixes the
/// Z and X projections with weight 1/2 each.
inline KrausChannel attack_average_channel(const AttackModel& model) {
  switch (model.kind()) {
    case AttackModel::Kind::NoAttack:
      return KrausChannel::identity(2);
    case AttackModel::Kind::InterceptResend:
      switch (model.basis_policy()) {
        case BasisPolicy::AlwaysZ:
          return KrausChannel::basis_projection(MeasurementBasis::Z);
        case BasisPolicy::AlwaysX:
          return KrausChannel::basis_projection(MeasurementBasis::X);
        case BasisPolicy::RandomZX: {
          const cplx w = 1.0 / std::sqrt(2.0);
          return KrausChannel({w * basis_projector(MeasurementBasis::Z, 0),
                               w * basis_projector(MeasurementBasis::Z, 1),
                               w * basis_projector(MeasurementBasis::X, 0),
                               w * basis_projector(MeasurementBasis::X, 1)},
                              "intercept_resend(random_zx)");
        }
      }
      throw std::logic_error("attack_average_channel: unknown basis policy");
    case AttackModel::Kind::Depolarizing:
    case AttackModel::Kind::GeneralKraus:
      return model.channel();
  }
  throw std::logic_error("attack_average_channel: unknown attack kind");
}

/// Eve's exact decoding rule for a Z-basis record: her collapsed outcome
/// equals Alice's later Z outcome, so guess = outcome XOR (announcement=Yes).
inline int eve_infer_bit(const EveRecord& record, AnnouncementValue announcement) {
  if (!record.measured_outcome.has_value() ||
      record.measured_basis != MeasurementBasis::Z) {
    throw std::invalid_argument("eve_infer_bit: requires a Z-basis measurement record");
  }
  return *record.measured_outcome ^ (announcement == AnnouncementValue::Yes ? 1 : 0);
}

/// Fraction of message rounds where Eve's guess matched the sent bit.
inline double eve_accuracy(const SessionStats& stats) {
  if (stats.eve_guesses.empty()) {
    throw std::invalid_argument("eve_accuracy: no guesses recorded");
  }
  if (stats.eve_guesses.size() != stats.sent_bits.size()) {
    throw std::invalid_argument("eve_accuracy: guess list does not match sent bits");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < stats.eve_guesses.size(); ++i) {
    if (stats.eve_guesses[i] == stats.sent_bits[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(stats.eve_guesses.size());
}

}  // namespace qotp
