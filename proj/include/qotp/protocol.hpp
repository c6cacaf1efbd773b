#pragma once

#include <cstdint>
#include <vector>

#include "qotp/adversary.hpp"
#include "qotp/protocol_types.hpp"

namespace qotp {

struct RunConfig {
  std::vector<int> message;
  double control_probability = 0.0;
  AttackModel attack = AttackModel::none();
  std::uint64_t seed = 0;
  std::size_t max_rounds = 0;
  bool abort_on_detection = false;

  void validate() const {
    if (!(control_probability >= 0.0 && control_probability <= 1.0)) {
      throw std::invalid_argument("RunConfig: control_probability must lie in [0,1]");
    }
    if (max_rounds < message.size()) {
      throw std::invalid_argument("RunConfig: max_rounds must cover the message length");
    }
    for (const int b : message) {
      if (b != 0 && b != 1) {
        throw std::invalid_argument("RunConfig: message bits must be 0 or 1");
      }
    }
  }
};

struct RunResult {
  SessionStats stats;
  std::vector<RoundRecord> rounds;
  std::vector<EveRecord> eve_records;
};

/// Alice's signal: Yes iff the logical bit differs from her Z outcome
/// (announce-as-bit = bit XOR outcome, a one-time pad keyed by her outcome).
inline AnnouncementValue encode_announcement(int bit, int alice_outcome) {
  return bit != alice_outcome ? AnnouncementValue::Yes : AnnouncementValue::No;
}

/// Bob's inverse rule under singlet anti-correlation (his outcome is the
/// complement of Alice's): Yes -> his own outcome, No -> its complement.
inline int decode_bit(AnnouncementValue announcement, int bob_outcome) {
  return announcement == AnnouncementValue::Yes ? bob_outcome : 1 - bob_outcome;
}

/// Message round on the (post-channel) shared pair. Strict temporal order:
/// Alice measures qubit A in Z, the announcement is formed, then Bob
/// measures qubit B in Z on the collapsed state and decodes.
inline RoundRecord message_round(const DensityMatrix& shared_state, int bit,
                                 std::size_t round_id, Rng& rng) {
  if (shared_state.n_qubits() != 2) {
    throw std::invalid_argument("message_round: expected a 2-qubit state");
  }
  const MeasurementResult alice = measure_qubit(shared_state, 0, MeasurementBasis::Z, rng);
  const AnnouncementValue value = encode_announcement(bit, alice.outcome);
  const MeasurementResult bob =
      measure_qubit(alice.post_state, 1, MeasurementBasis::Z, rng);

  RoundRecord rec;
  rec.round_id = round_id;
  rec.mode = Mode::Message;
  rec.alice_basis = MeasurementBasis::Z;
  rec.bob_basis = MeasurementBasis::Z;
  rec.alice_outcome = alice.outcome;
  rec.bob_outcome = bob.outcome;
  rec.announcement = Announcement{round_id, value};
  rec.decoded_bit = decode_bit(value, bob.outcome);
  rec.detected = false;
  return rec;
}

/// Control round: Alice draws Z or X with probability 1/2, announces basis
/// and result, Bob measures the collapsed state in the same basis.
/// Coinciding outcomes expose tampering (the singlet never coincides).
inline RoundRecord control_round(const DensityMatrix& shared_state,
                                 std::size_t round_id, Rng& rng) {
  if (shared_state.n_qubits() != 2) {
    throw std::invalid_argument("control_round: expected a 2-qubit state");
  }
  const MeasurementBasis basis =
      rng.uniform_bit() == 0 ? MeasurementBasis::Z : MeasurementBasis::X;
  const MeasurementResult alice = measure_qubit(shared_state, 0, basis, rng);
  const MeasurementResult bob = measure_qubit(alice.post_state, 1, basis, rng);

  RoundRecord rec;
  rec.round_id = round_id;
  rec.mode = Mode::Control;
  rec.alice_basis = basis;
  rec.bob_basis = basis;
  rec.alice_outcome = alice.outcome;
  rec.bob_outcome = bob.outcome;
  rec.detected = alice.outcome == bob.outcome;
  return rec;
}

/// Runs a full session: a fresh singlet every round, the attack applied to
/// the travel qubit only, control mode entered with probability c. The
/// session ends when the message is exhausted, max_rounds is reached, or a
/// detection fires with abort_on_detection set.
///
/// All randomness comes from a single generator seeded with config.seed, in
/// a fixed per-round draw order, so traces are fully reproducible:
///   1. mode selection (control iff u < c)
///   2. attack randomness (RandomZX basis choice, then Eve's Born draw)
///   3. control round: Alice's basis, Alice's Born draw, Bob's Born draw
///      message round: Alice's Born draw, Bob's Born draw, then Eve's blind
///      guess draw when she has no Z-basis record
inline RunResult run_session(const RunConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const DensityMatrix singlet = density_from_pure(bell_state(BellKind::PsiMinus));

  RunResult result;
  SessionStats& stats = result.stats;
  std::size_t next_bit = 0;

  while (stats.rounds_total < config.max_rounds && next_bit < config.message.size()) {
    const std::size_t round_id = stats.rounds_total;
    const bool control = rng.uniform() < config.control_probability;
    AttackResult attacked = attack_travel_qubit(config.attack, singlet, rng, round_id);

    if (control) {
      RoundRecord rec = control_round(attacked.state, round_id, rng);
      ++stats.rounds_total;
      ++stats.control_rounds;
      if (rec.detected) ++stats.detections;
      const bool stop = rec.detected && config.abort_on_detection;
      result.rounds.push_back(std::move(rec));
      result.eve_records.push_back(std::move(attacked.record));
      if (stop) {
        stats.aborted = true;
        break;
      }
    } else {
      const int bit = config.message[next_bit++];
      RoundRecord rec = message_round(attacked.state, bit, round_id, rng);
      ++stats.rounds_total;
      ++stats.message_rounds;
      stats.sent_bits.push_back(bit);
      stats.decoded_bits.push_back(*rec.decoded_bit);
      if (*rec.decoded_bit != bit) ++stats.bit_error_count;

      EveRecord& record = attacked.record;
      int guess = 0;
      if (record.measured_basis == MeasurementBasis::Z &&
          record.measured_outcome.has_value()) {
        guess = eve_infer_bit(record, rec.announcement->value);
      } else {
        guess = rng.uniform_bit();
        ++stats.eve_fallback_rounds;
      }
      if (record.measured_outcome.has_value()) record.guessed_bit = guess;
      stats.eve_guesses.push_back(guess);

      result.rounds.push_back(std::move(rec));
      result.eve_records.push_back(std::move(attacked.record));
    }
  }
  return result;
}

}  // namespace qotp
