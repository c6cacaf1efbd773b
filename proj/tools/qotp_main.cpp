#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qotp/qotp.hpp"

namespace fs = std::filesystem;

namespace {

fs::path ensure_out_dir(const std::string& out_dir) {
  fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw qotp::IoError("cannot create output directory: " + dir.string());
  return dir;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::optional<std::uint64_t>& seed_override,
            const std::optional<double>& c_override,
            const std::optional<std::string>& message_override) {
  qotp::FileConfig file = qotp::load_config_file(config_path);
  if (seed_override) file.seed = *seed_override;
  if (c_override) file.control_probability = *c_override;
  if (message_override) file.message = qotp::parse_bit_string(*message_override);

  const qotp::RunConfig config = qotp::to_run_config(file);
  const qotp::RunResult result = qotp::run_session(config);

  const fs::path dir = ensure_out_dir(out_dir);
  qotp::write_file(dir / "trace.csv", qotp::trace_csv(result.rounds));
  qotp::write_file(dir / "stats.json", qotp::stats_json(result.stats));

  const qotp::SessionStats& s = result.stats;
  std::cout << "run: attack=" << config.attack.label() << " rounds=" << s.rounds_total
            << " message=" << s.message_rounds << " control=" << s.control_rounds
            << " detections=" << s.detections << " bit_errors=" << s.bit_error_count
            << " aborted=" << (s.aborted ? "true" : "false") << " out=" << dir.string()
            << "\n";
  return 0;
}

int cmd_attack_eval(const std::string& config_path, const std::string& out_dir,
                    std::size_t trials, const std::optional<std::uint64_t>& seed_override) {
  const qotp::FileConfig file = qotp::load_config_file(config_path);
  const qotp::AttackModel& attack = file.attack;

  const qotp::GammaReport report = qotp::attack_report(attack);
  const std::uint64_t seed = seed_override ? *seed_override : file.seed.value_or(0);
  const qotp::DetectionEstimate estimate =
      qotp::monte_carlo_detection(attack, trials, seed);

  const fs::path dir = ensure_out_dir(out_dir);
  qotp::write_file(dir / "gamma_report.json",
                   qotp::gamma_report_json(report, attack.label(), &estimate));

  std::cout << "attack-eval: attack=" << attack.label()
            << " gamma=" << qotp::format_real(report.gamma)
            << " d_exact=" << qotp::format_real(report.detection_exact)
            << " cap_bits=" << qotp::format_real(report.entropy_cap_bits)
            << " mc_frequency=" << qotp::format_real(estimate.frequency)
            << " trials=" << estimate.trials << " out=" << dir.string() << "\n";
  return 0;
}

int cmd_tradeoff(double gamma_min, double gamma_max, std::size_t steps,
                 const std::string& out_dir) {
  if (!(gamma_min >= 0.0 && gamma_max <= 1.0 && gamma_min <= gamma_max)) {
    throw qotp::ConfigError("tradeoff grid requires 0 <= gamma-min <= gamma-max <= 1");
  }
  if (steps == 0 || (steps == 1 && gamma_min != gamma_max)) {
    throw qotp::ConfigError("tradeoff needs steps >= 2 to span a nontrivial range");
  }

  std::vector<double> grid;
  grid.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) {
    grid.push_back(steps == 1 ? gamma_min
                              : gamma_min + (gamma_max - gamma_min) *
                                                static_cast<double>(i) /
                                                static_cast<double>(steps - 1));
  }
  const std::vector<qotp::TradeoffPoint> points = qotp::tradeoff_curve(grid);

  const fs::path dir = ensure_out_dir(out_dir);
  qotp::write_file(dir / "tradeoff.csv", qotp::tradeoff_csv(points));

  const double eps_protocol = qotp::efficiency({1.0, 1.0, 1.0});
  const double eps_bb84 = qotp::efficiency({0.5, 1.0, 1.0});
  std::cout << "tradeoff: wrote " << points.size() << " points to "
            << (dir / "tradeoff.csv").string() << "\n";
  std::cout << "efficiency: this protocol " << qotp::format_real(eps_protocol)
            << " (b_s=1, q_t=1, b_t=1); BB84 " << qotp::format_real(eps_bb84)
            << " (b_s=0.5, q_t=1, b_t=1); ratio "
            << qotp::format_real(eps_protocol / eps_bb84) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"singlet one-time-pad protocol simulator and security analyzer"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed_override;
  std::optional<double> c_override;
  std::optional<std::string> message_override;
  std::size_t trials = 100000;
  double gamma_min = 0.0, gamma_max = 0.0;
  std::size_t steps = 0;

  CLI::App* run = app.add_subcommand("run", "execute a protocol session");
  run->add_option("--config", config_path, "JSON run configuration")->required();
  run->add_option("--seed", seed_override, "override the config seed");
  run->add_option("--c", c_override, "override the control-mode probability");
  run->add_option("--message", message_override, "override the message bit string");
  run->add_option("--out", out_dir, "output directory (trace.csv, stats.json)");

  CLI::App* eval = app.add_subcommand("attack-eval", "security report for an attack");
  eval->add_option("--config", config_path, "JSON config naming the attack")->required();
  eval->add_option("--trials", trials, "Monte-Carlo control rounds");
  eval->add_option("--seed", seed_override, "Monte-Carlo base seed");
  eval->add_option("--out", out_dir, "output directory (gamma_report.json)");

  CLI::App* tradeoff = app.add_subcommand("tradeoff", "detection/information curve");
  tradeoff->add_option("--gamma-min", gamma_min, "grid start")->required();
  tradeoff->add_option("--gamma-max", gamma_max, "grid end")->required();
  tradeoff->add_option("--steps", steps, "number of grid points")->required();
  tradeoff->add_option("--out", out_dir, "output directory (tradeoff.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      return cmd_run(config_path, out_dir, seed_override, c_override, message_override);
    }
    if (eval->parsed()) {
      return cmd_attack_eval(config_path, out_dir, trials, seed_override);
    }
    return cmd_tradeoff(gamma_min, gamma_max, steps, out_dir);
  } catch (const qotp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const qotp::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
