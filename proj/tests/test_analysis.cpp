#include <catch2/catch.hpp>

#include "qotp/analysis.hpp"
#include "support/test_support.hpp"

using namespace qotp;
using namespace testsupport;

namespace {

DensityMatrix singlet() { return density_from_pure(bell_state(BellKind::PsiMinus)); }

DensityMatrix z_intercepted() {
  return shared_state_after(AttackModel::intercept_resend(BasisPolicy::AlwaysZ));
}

}  // namespace

TEST_CASE("shared_state_after built-in attacks") {
  SECTION("no attack keeps the singlet") {
    CHECK(shared_state_after(AttackModel::none())
              .matrix()
              .max_abs_diff(singlet().matrix()) < 1e-15);
  }
  SECTION("Z intercept yields the even |01>/|10> mixture") {
    const DensityMatrix rho = z_intercepted();
    CHECK(std::real(rho(1, 1)) == Approx(0.5).margin(1e-12));
    CHECK(std::real(rho(2, 2)) == Approx(0.5).margin(1e-12));
    CHECK(std::abs(rho(1, 2)) < 1e-15);
  }
  SECTION("full depolarizing yields I/4") {
    CHECK(shared_state_after(AttackModel::depolarizing(1.0))
              .matrix()
              .max_abs_diff(cplx(0.25) * Matrix::identity(4)) < 1e-12);
  }
}

TEST_CASE("gamma_of landmark states") {
  SECTION("the singlet itself") {
    const GammaReport r = gamma_of(singlet());
    CHECK(r.gamma == Approx(0.0).margin(1e-12));
    CHECK(r.fidelity == Approx(1.0).margin(1e-12));
    CHECK(r.bell_diagonal[3] == Approx(1.0).margin(1e-12));
    CHECK(r.entropy_cap_bits == Approx(0.0).margin(1e-12));
  }
  SECTION("Z-intercepted pair") {
    const GammaReport r = gamma_of(z_intercepted());
    CHECK(r.gamma == Approx(0.5).margin(1e-9));
    CHECK(r.fidelity == Approx(std::sqrt(0.5)).margin(1e-9));
    CHECK(r.bell_diagonal[2] == Approx(0.5).margin(1e-9));  // psi+
    CHECK(r.bell_diagonal[3] == Approx(0.5).margin(1e-9));  // psi-
  }
  SECTION("maximally mixed pair") {
    const GammaReport r = gamma_of(DensityMatrix(cplx(0.25) * Matrix::identity(4)));
    CHECK(r.gamma == Approx(0.75).margin(1e-12));
  }
}

TEST_CASE("gamma report internal invariants") {
  Rng rng(61);
  for (int rep = 0; rep < 50; ++rep) {
    const KrausChannel ch = random_channel(2, 4, rng, "rand");
    const GammaReport r = gamma_of(apply_channel(ch, singlet(), 0));

    double diag_sum = 0.0;
    for (const double p : r.bell_diagonal) diag_sum += p;
    CHECK(diag_sum == Approx(1.0).margin(1e-9));
    CHECK(r.bell_diagonal[3] == Approx(1.0 - r.gamma).margin(1e-9));
    CHECK(r.detection_exact >= r.detection_bound - 1e-9);
    // closed form d = p_phi+ + (p_phi- + p_psi+)/2
    const double closed =
        r.bell_diagonal[0] + 0.5 * (r.bell_diagonal[1] + r.bell_diagonal[2]);
    CHECK(r.detection_exact == Approx(closed).margin(1e-12));
  }
}

TEST_CASE("exact detection probabilities for the Bell states") {
  const std::array<double, 4> expected = {1.0, 0.5, 0.5, 0.0};
  for (std::size_t i = 0; i < 4; ++i) {
    const DensityMatrix rho = density_from_pure(bell_state(kAllBellKinds[i]));
    const double d = detection_probability_exact(rho);
    CHECK(std::abs(d - expected[i]) <= 1e-12);

    // outcome-enumeration oracle: average the same-outcome mass over bases
    double oracle = 0.0;
    for (const MeasurementBasis basis : {MeasurementBasis::Z, MeasurementBasis::X}) {
      const auto joint = joint_distribution(rho.matrix(), basis);
      oracle += 0.5 * (joint[0][0] + joint[1][1]);
    }
    CHECK(d == Approx(oracle).margin(1e-12));
  }
}

TEST_CASE("Z-intercepted pair is caught a quarter of the time") {
  const double d = detection_probability_exact(z_intercepted());
  CHECK(d == Approx(0.25).margin(1e-9));
  CHECK(d == Approx(0.5 * gamma_of(z_intercepted()).gamma).margin(1e-9));
}

TEST_CASE("entropy cap values") {
  CHECK(entropy_cap(0.0) == 0.0);
  CHECK(entropy_cap(0.75) == Approx(2.0).margin(1e-12));
  CHECK(entropy_cap(1.0) == Approx(std::log2(3.0)).margin(1e-15));
  CHECK(entropy_cap(0.5) == Approx(1.792481250360578).margin(1e-12));
  CHECK(entropy_cap(0.19) == Approx(1.0).margin(5e-3));
  CHECK_THROWS_AS(entropy_cap(-0.2), std::invalid_argument);
  CHECK_THROWS_AS(entropy_cap(1.2), std::invalid_argument);
}

TEST_CASE("one bit of leakage costs roughly 9.5% detection risk") {
  // entropy_cap is increasing on [0, 0.75]; bisect entropy_cap(gamma) = 1
  const double root = bisect([](double g) { return entropy_cap(g) - 1.0; }, 0.0, 0.75);
  CHECK(root >= 0.185);
  CHECK(root <= 0.195);
  CHECK(0.5 * root >= 0.0925);
  CHECK(0.5 * root <= 0.0975);
}

TEST_CASE("entropy cap is continuous in gamma") {
  // 1e4-point grid. The stated 10*step bound holds away from the endpoints;
  // near gamma = 0 and gamma = 1 the exact derivative log2(3(1-g)/g) blows
  // up logarithmically, so a log modulus is asserted there instead.
  const std::size_t points = 10000;
  const double step = 1.0 / static_cast<double>(points - 1);
  double prev = entropy_cap(0.0);
  for (std::size_t i = 1; i < points; ++i) {
    const double g = static_cast<double>(i) * step;
    const double cur = entropy_cap(std::min(g, 1.0));
    const double diff = std::abs(cur - prev);
    const double left = g - step;
    if (left >= 0.01 && g <= 0.99) {
      CHECK(diff < 10.0 * step);
    }
    const double modulus =
        2.0 + std::log2(3.0 / std::max(left, step)) + std::log2(1.0 / std::max(1.0 - g, step));
    CHECK(diff <= step * modulus);
    prev = cur;
  }
}

TEST_CASE("tradeoff curve") {
  const std::vector<double> grid = {0.0, 0.5, 0.75};
  const std::vector<TradeoffPoint> points = tradeoff_curve(grid);
  REQUIRE(points.size() == 3);
  CHECK(points[0].gamma == 0.0);
  CHECK(points[0].detection_bound == 0.0);
  CHECK(points[0].entropy_cap_bits == 0.0);
  CHECK(points[1].detection_bound == Approx(0.25).margin(1e-15));
  CHECK(points[1].entropy_cap_bits == Approx(1.792481250360578).margin(1e-12));
  CHECK(points[2].detection_bound == Approx(0.375).margin(1e-15));
  CHECK(points[2].entropy_cap_bits == Approx(2.0).margin(1e-12));

  const std::vector<double> bad = {0.2, 1.4};
  CHECK_THROWS_AS(tradeoff_curve(bad), std::invalid_argument);
}

TEST_CASE("efficiency metric") {
  CHECK(efficiency({0.5, 1.0, 1.0}) == Approx(0.25).margin(1e-15));  // BB84
  CHECK(efficiency({1.0, 1.0, 1.0}) == Approx(0.5).margin(1e-15));   // this protocol
  CHECK(efficiency({0.0, 1.0, 1.0}) == 0.0);
  CHECK(efficiency({1.0, 1.0, 1.0}) / efficiency({0.5, 1.0, 1.0}) == 2.0);
  CHECK_THROWS_AS(efficiency({1.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(efficiency({-1.0, 1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("holevo check") {
  SECTION("the singlet leaks nothing") {
    const HolevoCheck c = holevo_check(singlet(), 0.0);
    CHECK(c.entropy_bits == Approx(0.0).margin(1e-9));
    CHECK(c.cap_bits == Approx(0.0).margin(1e-12));
    CHECK(c.satisfied);
  }
  SECTION("Z-intercepted pair: one bit against a 1.79-bit cap") {
    const DensityMatrix rho = z_intercepted();
    const double gamma = gamma_of(rho).gamma;
    const HolevoCheck c = holevo_check(rho, gamma);
    CHECK(c.entropy_bits == Approx(1.0).margin(1e-9));
    CHECK(c.cap_bits == Approx(1.792481250360578).margin(1e-9));
    CHECK(c.satisfied);
  }
  SECTION("maximally mixed pair sits exactly on the cap") {
    const HolevoCheck c =
        holevo_check(DensityMatrix(cplx(0.25) * Matrix::identity(4)), 0.75);
    CHECK(c.entropy_bits == Approx(2.0).margin(1e-9));
    CHECK(c.cap_bits == Approx(2.0).margin(1e-12));
    CHECK(c.satisfied);
  }
  SECTION("inconsistent gamma is rejected") {
    CHECK_THROWS_AS(holevo_check(singlet(), 0.5), std::invalid_argument);
  }
}

TEST_CASE("Monte-Carlo detection matches the exact value for built-in attacks") {
  const std::vector<AttackModel> attacks = {
      AttackModel::none(),
      AttackModel::intercept_resend(BasisPolicy::AlwaysZ),
      AttackModel::intercept_resend(BasisPolicy::AlwaysX),
      AttackModel::intercept_resend(BasisPolicy::RandomZX),
      AttackModel::depolarizing(0.3),
      AttackModel::depolarizing(1.0)};
  std::uint64_t seed = 9000;
  for (const AttackModel& attack : attacks) {
    const double exact = detection_probability_exact(shared_state_after(attack));
    const DetectionEstimate est = monte_carlo_detection(attack, 100000, seed++);
    CHECK(std::abs(est.frequency - exact) <= three_sigma(exact, est.trials));
    CHECK(est.ci95_low <= est.frequency);
    CHECK(est.frequency <= est.ci95_high);
  }
  CHECK_THROWS_AS(monte_carlo_detection(AttackModel::none(), 0, 1),
                  std::invalid_argument);
}

TEST_CASE("Eve's empirical information stays under the entropy cap") {
  const std::vector<AttackModel> attacks = {
      AttackModel::none(),
      AttackModel::intercept_resend(BasisPolicy::AlwaysZ),
      AttackModel::intercept_resend(BasisPolicy::AlwaysX),
      AttackModel::depolarizing(0.5)};
  std::uint64_t seed = 777;
  for (const AttackModel& attack : attacks) {
    RunConfig config;
    Rng bit_rng(seed);
    config.message.resize(20000);
    for (int& b : config.message) b = bit_rng.uniform_bit();
    config.control_probability = 0.0;
    config.attack = attack;
    config.seed = seed++;
    config.max_rounds = config.message.size();

    const SessionStats stats = run_session(config).stats;
    std::array<std::array<std::size_t, 2>, 2> counts{};
    for (std::size_t i = 0; i < stats.sent_bits.size(); ++i) {
      ++counts[static_cast<std::size_t>(stats.sent_bits[i])]
              [static_cast<std::size_t>(stats.eve_guesses[i])];
    }
    const double mi = mutual_information_bits(counts);
    const double cap = entropy_cap(gamma_of(shared_state_after(attack)).gamma);
    CHECK(mi <= cap + 0.02);
  }
}
