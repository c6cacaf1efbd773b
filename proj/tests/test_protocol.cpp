#include <catch2/catch.hpp>

#include "qotp/protocol.hpp"
#include "support/test_support.hpp"

using namespace qotp;
using namespace testsupport;

namespace {

DensityMatrix singlet() { return density_from_pure(bell_state(BellKind::PsiMinus)); }

DensityMatrix z_intercepted() {
  return apply_channel(KrausChannel::basis_projection(MeasurementBasis::Z), singlet(), 0);
}

std::vector<int> random_bits(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> bits(n);
  for (int& b : bits) b = rng.uniform_bit();
  return bits;
}

}  // namespace

TEST_CASE("announcement encode rule") {
  CHECK(encode_announcement(0, 1) == AnnouncementValue::Yes);
  CHECK(encode_announcement(1, 0) == AnnouncementValue::Yes);
  CHECK(encode_announcement(0, 0) == AnnouncementValue::No);
  CHECK(encode_announcement(1, 1) == AnnouncementValue::No);
}

TEST_CASE("decode rule from the exhaustive four-case table") {
  CHECK(decode_bit(AnnouncementValue::Yes, 0) == 0);
  CHECK(decode_bit(AnnouncementValue::Yes, 1) == 1);
  CHECK(decode_bit(AnnouncementValue::No, 1) == 0);
  CHECK(decode_bit(AnnouncementValue::No, 0) == 1);
}

TEST_CASE("encode/decode round-trip identity") {
  // decode(encode(bit, a), 1 - a) == bit for every combination
  for (int bit = 0; bit < 2; ++bit) {
    for (int alice = 0; alice < 2; ++alice) {
      CHECK(decode_bit(encode_announcement(bit, alice), 1 - alice) == bit);
    }
  }
}

TEST_CASE("announcement as a bit is bit XOR alice outcome") {
  for (int bit = 0; bit < 2; ++bit) {
    for (int alice = 0; alice < 2; ++alice) {
      const int ann = encode_announcement(bit, alice) == AnnouncementValue::Yes ? 1 : 0;
      CHECK(ann == (bit ^ alice));
    }
  }
}

TEST_CASE("message round decodes correctly on the singlet") {
  const DensityMatrix shared = singlet();
  for (std::uint64_t seed = 0; seed < 32; ++seed) {
    Rng rng(seed);
    const RoundRecord rec = message_round(shared, 0, 0, rng);
    REQUIRE(rec.decoded_bit.has_value());
    CHECK(*rec.decoded_bit == 0);
    CHECK(rec.mode == Mode::Message);
    CHECK(rec.alice_basis == MeasurementBasis::Z);
    CHECK(rec.bob_basis == MeasurementBasis::Z);
    REQUIRE(rec.announcement.has_value());
    CHECK(rec.announcement->value ==
          encode_announcement(0, rec.alice_outcome));
    CHECK_FALSE(rec.detected);
  }
}

TEST_CASE("message round on a Z-intercepted pair still decodes") {
  const DensityMatrix shared = z_intercepted();
  Rng rng(404);
  for (int bit = 0; bit < 2; ++bit) {
    for (int rep = 0; rep < 200; ++rep) {
      const RoundRecord rec = message_round(shared, bit, 0, rng);
      CHECK(*rec.decoded_bit == bit);
    }
  }
}

TEST_CASE("message round on phi+ decodes the complement") {
  const DensityMatrix shared = density_from_pure(bell_state(BellKind::PhiPlus));
  Rng rng(405);
  for (int bit = 0; bit < 2; ++bit) {
    for (int rep = 0; rep < 200; ++rep) {
      const RoundRecord rec = message_round(shared, bit, 0, rng);
      CHECK(*rec.decoded_bit == 1 - bit);
    }
  }
}

TEST_CASE("control rounds flag coincidences") {
  SECTION("the singlet never trips detection") {
    Rng rng(1);
    const DensityMatrix shared = singlet();
    for (int rep = 0; rep < 2000; ++rep) {
      const RoundRecord rec = control_round(shared, 0, rng);
      CHECK(rec.alice_basis == rec.bob_basis);
      REQUIRE_FALSE(rec.detected);
      CHECK_FALSE(rec.announcement.has_value());
      CHECK_FALSE(rec.decoded_bit.has_value());
    }
  }
  SECTION("phi+ always trips detection") {
    Rng rng(2);
    const DensityMatrix shared = density_from_pure(bell_state(BellKind::PhiPlus));
    for (int rep = 0; rep < 2000; ++rep) {
      REQUIRE(control_round(shared, 0, rng).detected);
    }
  }
  SECTION("phi- trips detection half the time") {
    Rng rng(3);
    const DensityMatrix shared = density_from_pure(bell_state(BellKind::PhiMinus));
    const std::size_t trials = 20000;
    std::size_t hits = 0;
    for (std::size_t rep = 0; rep < trials; ++rep) {
      if (control_round(shared, 0, rng).detected) ++hits;
    }
    const double freq = static_cast<double>(hits) / trials;
    CHECK(std::abs(freq - 0.5) < three_sigma(0.5, trials));
  }
}

TEST_CASE("run_session without attack transmits faithfully") {
  RunConfig config;
  config.message = {1, 0, 1, 1, 0, 0, 1, 0};
  config.control_probability = 0.0;
  config.seed = 7;
  config.max_rounds = 16;

  const RunResult result = run_session(config);
  CHECK(result.stats.rounds_total == 8);
  CHECK(result.stats.message_rounds == 8);
  CHECK(result.stats.control_rounds == 0);
  CHECK(result.stats.detections == 0);
  CHECK(result.stats.bit_error_count == 0);
  CHECK(result.stats.decoded_bits == config.message);
  CHECK_FALSE(result.stats.aborted);
  CHECK(result.rounds.size() == 8);
}

TEST_CASE("control probability one never consumes the message") {
  RunConfig config;
  config.message = {1};
  config.control_probability = 1.0;
  config.seed = 9;
  config.max_rounds = 50;

  const RunResult result = run_session(config);
  CHECK(result.stats.rounds_total == 50);
  CHECK(result.stats.message_rounds == 0);
  CHECK(result.stats.control_rounds == 50);
}

TEST_CASE("intercept-resend detection frequency in a mixed session") {
  // half control rounds against a Z intercept: detection frequency 1/4
  RunConfig config;
  config.message = random_bits(100000, 55);
  config.control_probability = 0.5;
  config.attack = AttackModel::intercept_resend(BasisPolicy::AlwaysZ);
  config.seed = 56;
  config.max_rounds = 220000;

  const RunResult result = run_session(config);
  REQUIRE(result.stats.control_rounds >= 100000);
  const double freq = static_cast<double>(result.stats.detections) /
                      static_cast<double>(result.stats.control_rounds);
  CHECK(std::abs(freq - 0.25) < three_sigma(0.25, result.stats.control_rounds));
}

TEST_CASE("announcement stream is uniform whatever the message") {
  for (const int fill : {0, 1}) {
    RunConfig config;
    config.message.assign(10000, fill);
    config.control_probability = 0.0;
    config.seed = 1000 + static_cast<std::uint64_t>(fill);
    config.max_rounds = 10000;

    const RunResult result = run_session(config);
    std::size_t yes = 0;
    for (const RoundRecord& r : result.rounds) {
      if (r.announcement && r.announcement->value == AnnouncementValue::Yes) ++yes;
    }
    // chi-square, 1 dof: do not reject uniformity at p = 0.01
    CHECK(chi_square_fair_bit(yes, result.rounds.size()) < 6.635);
  }
}

TEST_CASE("identical configs produce identical traces") {
  RunConfig config;
  config.message = random_bits(500, 77);
  config.control_probability = 0.3;
  config.attack = AttackModel::intercept_resend(BasisPolicy::RandomZX);
  config.seed = 78;
  config.max_rounds = 1200;

  const RunResult a = run_session(config);
  const RunResult b = run_session(config);
  CHECK(a.stats == b.stats);
  REQUIRE(a.rounds.size() == b.rounds.size());
  CHECK(a.rounds == b.rounds);
  CHECK(a.eve_records == b.eve_records);
}

TEST_CASE("no attack means no detections and no bit errors for any seed") {
  for (const std::uint64_t seed : {1ull, 1234ull, 987654321ull}) {
    for (const double c : {0.0, 0.3, 0.9}) {
      RunConfig config;
      config.message = random_bits(200, seed + 13);
      config.control_probability = c;
      config.seed = seed;
      config.max_rounds = 20000;

      const RunResult result = run_session(config);
      CHECK(result.stats.detections == 0);
      CHECK(result.stats.bit_error_count == 0);
      CHECK(result.stats.decoded_bits == result.stats.sent_bits);
    }
  }
}

TEST_CASE("control-round fraction converges to c") {
  RunConfig config;
  config.message = random_bits(100000, 91);
  config.control_probability = 0.3;
  config.seed = 92;
  config.max_rounds = 100000;

  const RunResult result = run_session(config);
  REQUIRE(result.stats.rounds_total == 100000);
  const double freq = static_cast<double>(result.stats.control_rounds) /
                      static_cast<double>(result.stats.rounds_total);
  CHECK(std::abs(freq - 0.3) < three_sigma(0.3, result.stats.rounds_total));
}

TEST_CASE("abort on first detection") {
  RunConfig config;
  config.message = random_bits(1000, 101);
  config.control_probability = 0.5;
  config.attack = AttackModel::intercept_resend(BasisPolicy::AlwaysZ);
  config.seed = 102;
  config.max_rounds = 5000;
  config.abort_on_detection = true;

  const RunResult result = run_session(config);
  REQUIRE(result.stats.aborted);
  CHECK(result.stats.detections == 1);
  CHECK(result.rounds.back().detected);
  // every earlier control round passed
  for (std::size_t i = 0; i + 1 < result.rounds.size(); ++i) {
    CHECK_FALSE(result.rounds[i].detected);
  }
}

TEST_CASE("run config validation") {
  RunConfig config;
  config.message = {1, 0};
  config.max_rounds = 1;
  CHECK_THROWS_AS(run_session(config), std::invalid_argument);

  config.max_rounds = 4;
  config.control_probability = 1.5;
  CHECK_THROWS_AS(run_session(config), std::invalid_argument);

  config.control_probability = 0.5;
  config.message = {2};
  CHECK_THROWS_AS(run_session(config), std::invalid_argument);
}
