#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qotp/measurement.hpp"

namespace qotp {

enum class Mode { Message, Control };

/// Alice's one-bit public signal in a message round.
enum class AnnouncementValue { No, Yes };

struct Announcement {
  std::size_t round_id = 0;
  AnnouncementValue value = AnnouncementValue::No;

  bool operator==(const Announcement&) const = default;
};

/// One protocol round. Message rounds carry an announcement and a decoded
/// bit and are never "detected"; control rounds use one shared basis and
/// flag detected exactly when both outcomes coincide.
struct RoundRecord {
  std::size_t round_id = 0;
  Mode mode = Mode::Message;
  MeasurementBasis alice_basis = MeasurementBasis::Z;
  MeasurementBasis bob_basis = MeasurementBasis::Z;
  int alice_outcome = 0;
  int bob_outcome = 0;
  std::optional<Announcement> announcement;
  std::optional<int> decoded_bit;
  bool detected = false;

  bool operator==(const RoundRecord&) const = default;
};

struct SessionStats {
  std::size_t rounds_total = 0;
  std::size_t message_rounds = 0;
  std::size_t control_rounds = 0;
  std::size_t detections = 0;
  bool aborted = false;
  std::vector<int> sent_bits;     // message prefix actually consumed
  std::vector<int> decoded_bits;  // Bob's decode, aligned with sent_bits
  std::size_t bit_error_count = 0;
  std::vector<int> eve_guesses;        // one guess per message round
  std::size_t eve_fallback_rounds = 0; // message rounds where Eve guessed blind

  bool operator==(const SessionStats&) const = default;
};

}  // namespace qotp
