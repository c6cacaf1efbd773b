#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qotp {

/// splitmix64 finalizer.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for an independent stream (base_seed, stream_index). Used wherever a
/// batch of trials must be reproducible independent of execution order.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return mix_seed(base ^ mix_seed(index + 1));
}

/// Deterministic uniform source on top of mt19937_64. Doubles come from the
/// top 53 bits of the engine output; std distributions are avoided because
/// their draw sequences are implementation-defined and the trace files must
/// be byte-identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// uniform double in [0, 1); exactly one engine draw
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// fair bit; exactly one engine draw
  int uniform_bit() { return uniform() < 0.5 ? 0 : 1; }

  /// standard normal via Box-Muller; consumes two draws every other call
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace qotp
