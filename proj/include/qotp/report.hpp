#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "qotp/adversary.hpp"
#include "qotp/analysis.hpp"
#include "qotp/errors.hpp"
#include "qotp/protocol_types.hpp"

namespace qotp {

/// 12 significant digits, lowercase scientific notation where needed. Keeps
/// golden files stable across runs.
inline std::string format_real(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

inline std::string bits_to_string(const std::vector<int>& bits) {
  std::string s;
  s.reserve(bits.size());
  for (const int b : bits) s.push_back(b ? '1' : '0');
  return s;
}

inline const char* basis_name(MeasurementBasis basis) {
  return basis == MeasurementBasis::Z ? "Z" : "X";
}

/// columns: round_id,mode,alice_basis,bob_basis,alice_outcome,bob_outcome,
/// announcement,decoded_bit,detected. Control rounds leave announcement and
/// decoded_bit empty.
inline std::string trace_csv(const std::vector<RoundRecord>& rounds) {
  std::string out =
      "round_id,mode,alice_basis,bob_basis,alice_outcome,bob_outcome,"
      "announcement,decoded_bit,detected\n";
  for (const RoundRecord& r : rounds) {
    out += std::to_string(r.round_id);
    out += r.mode == Mode::Message ? ",message," : ",control,";
    out += basis_name(r.alice_basis);
    out += ',';
    out += basis_name(r.bob_basis);
    out += ',';
    out += std::to_string(r.alice_outcome);
    out += ',';
    out += std::to_string(r.bob_outcome);
    out += ',';
    if (r.announcement) {
      out += r.announcement->value == AnnouncementValue::Yes ? "yes" : "no";
    }
    out += ',';
    if (r.decoded_bit) out += std::to_string(*r.decoded_bit);
    out += ',';
    out += r.detected ? "1\n" : "0\n";
  }
  return out;
}

inline std::string stats_json(const SessionStats& s) {
  std::string out = "{\n";
  out += "  \"rounds_total\": " + std::to_string(s.rounds_total) + ",\n";
  out += "  \"message_rounds\": " + std::to_string(s.message_rounds) + ",\n";
  out += "  \"control_rounds\": " + std::to_string(s.control_rounds) + ",\n";
  out += "  \"detections\": " + std::to_string(s.detections) + ",\n";
  out += "  \"detection_frequency\": ";
  out += s.control_rounds == 0
             ? "null"
             : format_real(static_cast<double>(s.detections) /
                           static_cast<double>(s.control_rounds));
  out += ",\n";
  out += std::string("  \"aborted\": ") + (s.aborted ? "true" : "false") + ",\n";
  out += "  \"sent_bits\": \"" + bits_to_string(s.sent_bits) + "\",\n";
  out += "  \"decoded_bits\": \"" + bits_to_string(s.decoded_bits) + "\",\n";
  out += "  \"bit_error_count\": " + std::to_string(s.bit_error_count) + ",\n";
  out += "  \"eve_guesses\": ";
  out += s.eve_guesses.empty() ? "null" : '"' + bits_to_string(s.eve_guesses) + '"';
  out += ",\n";
  out += "  \"eve_guess_fallback_rounds\": " + std::to_string(s.eve_fallback_rounds) + ",\n";
  out += "  \"eve_accuracy\": ";
  out += s.eve_guesses.empty() ? "null" : format_real(eve_accuracy(s));
  out += "\n}\n";
  return out;
}

inline std::string gamma_report_json(const GammaReport& report,
                                     const std::string& attack_label,
                                     const DetectionEstimate* monte_carlo = nullptr) {
  std::string out = "{\n";
  out += "  \"attack\": \"" + attack_label + "\",\n";
  out += "  \"fidelity\": " + format_real(report.fidelity) + ",\n";
  out += "  \"gamma\": " + format_real(report.gamma) + ",\n";
  out += "  \"detection_exact\": " + format_real(report.detection_exact) + ",\n";
  out += "  \"detection_bound\": " + format_real(report.detection_bound) + ",\n";
  out += "  \"entropy_cap_bits\": " + format_real(report.entropy_cap_bits) + ",\n";
  out += "  \"bell_diagonal\": {\n";
  out += "    \"phi_plus\": " + format_real(report.bell_diagonal[0]) + ",\n";
  out += "    \"phi_minus\": " + format_real(report.bell_diagonal[1]) + ",\n";
  out += "    \"psi_plus\": " + format_real(report.bell_diagonal[2]) + ",\n";
  out += "    \"psi_minus\": " + format_real(report.bell_diagonal[3]) + "\n";
  out += "  }";
  if (monte_carlo) {
    out += ",\n  \"monte_carlo\": {\n";
    out += "    \"trials\": " + std::to_string(monte_carlo->trials) + ",\n";
    out += "    \"detections\": " + std::to_string(monte_carlo->detections) + ",\n";
    out += "    \"frequency\": " + format_real(monte_carlo->frequency) + ",\n";
    out += "    \"ci95_low\": " + format_real(monte_carlo->ci95_low) + ",\n";
    out += "    \"ci95_high\": " + format_real(monte_carlo->ci95_high) + "\n";
    out += "  }";
  }
  out += "\n}\n";
  return out;
}

inline std::string tradeoff_csv(const std::vector<TradeoffPoint>& points) {
  std::string out = "gamma,detection_bound,entropy_cap_bits\n";
  for (const TradeoffPoint& p : points) {
    out += format_real(p.gamma) + "," + format_real(p.detection_bound) + "," +
           format_real(p.entropy_cap_bits) + "\n";
  }
  return out;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace qotp
