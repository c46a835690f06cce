#include <algorithm>
#include <cmath>

#include "parallel.hpp"
#include "qmpsig/attacks.hpp"
#include "qmpsig/error.hpp"
#include "qmpsig/rng.hpp"

namespace qmpsig {
namespace {

constexpr std::uint64_t kTagHonest = 0x686f6e;
constexpr std::uint64_t kTagForgery = 0x666f72;
constexpr std::uint64_t kTagTomoState = 0x74737461;

// Pure state from a random layered circuit, mixed toward I with a random weight.
DensityMatrix random_test_state(int k, std::uint64_t seed) {
  Rng rng(seed);
  const auto pure = prepare_state(random_layered_circuit(k, 3, rng));
  return mix(pure, DensityMatrix::maximally_mixed(k), rng.uniform());
}

}  // namespace

double percentile(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidArgument("percentile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("percentile rank must be in [0, 1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

CalibrationReport calibrate_threshold(const SessionConfig& cfg, double noise_p, int trials, std::uint64_t seed) {
  if (trials < kMinCalibrationTrials) {
    throw InvalidArgument("calibration needs at least " + std::to_string(kMinCalibrationTrials) + " trials");
  }
  if (!(noise_p >= 0.0 && noise_p <= 1.0)) throw InvalidArgument("noise_p must be in [0, 1]");
  cfg.validate();
  if (cfg.shots == 0) throw InvalidArgument("calibration needs an explicit shot count");

  const auto keys = keygen(cfg.lambda, cfg.num_qubits, cfg.k, cfg.seed);
  const auto rule = default_rule();
  SessionConfig run = cfg;
  run.diagnostic = true;
  run.noise_p = 0.0;

  CalibrationReport report{.noise_p = noise_p, .trials = trials, .shots = cfg.shots};
  report.honest.resize(static_cast<std::size_t>(trials));
  report.forgery.resize(static_cast<std::size_t>(trials));

  detail::parallel_for(static_cast<std::size_t>(trials), [&](std::size_t i) {
    SessionConfig honest = run;
    honest.seed = derive_seed(seed, {kTagHonest, i});
    const auto ch = make_challenge(honest, honest.seed);
    const auto m = hash_message("calibrate:" + std::to_string(i), rule.gamma, rule.alphabet);
    auto bundle = sign(keys.private_key, ch, m, rule, honest);
    bundle.state = transmit(bundle.state, noise_p);
    report.honest[i] = verify(keys.public_key, m, bundle, honest, rule).max_distance();

    SessionConfig forged = run;
    forged.seed = derive_seed(seed, {kTagForgery, i});
    const auto fch = make_challenge(forged, forged.seed);
    const auto fb = random_state_forgery(keys.public_key, fch, m, rule, forged, forged.seed);
    report.forgery[i] = verify(keys.public_key, m, fb, forged, rule).max_distance();
  });

  report.honest_p99 = percentile(report.honest, 0.99);
  report.forgery_p01 = percentile(report.forgery, 0.01);
  if (report.forgery_p01 > report.honest_p99) {
    report.epsilon_star = 0.5 * (report.honest_p99 + report.forgery_p01);
  }
  return report;
}

double tomography_success_rate(int k, double epsilon, std::uint64_t shots, int trials, std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("trials must be positive");
  const auto subset = QubitSubset::first(k);
  std::vector<char> ok(static_cast<std::size_t>(trials), 0);
  detail::parallel_for(ok.size(), [&](std::size_t i) {
    const auto rho = random_test_state(k, derive_seed(seed, {kTagTomoState, i}));
    const auto records = measure_all_bases(rho, subset, shots, derive_seed(seed, {i}));
    ok[i] = trace_distance(reconstruct(records, subset).projected, rho) <= epsilon;
  });
  return static_cast<double>(std::count(ok.begin(), ok.end(), 1)) / trials;
}

ShotCalibration calibrate_shot_constant(int k, double epsilon, double delta, int trials, std::uint64_t seed,
                                        int repeats, double step) {
  if (!(step > 0.0)) throw InvalidArgument("grid step must be positive");
  if (repeats < 1) throw InvalidArgument("repeats must be positive");
  ShotCalibration out{.k = k, .epsilon = epsilon, .delta = delta, .trials = trials, .repeats = repeats};
  for (int i = 1; i * step <= 10.0 + 1e-12; ++i) {
    const double c = i * step;
    const auto shots = required_shots(k, epsilon, delta, c);
    double worst = 1.0;
    for (int r = 0; r < repeats && worst >= 1.0 - delta; ++r) {
      worst = std::min(worst, tomography_success_rate(k, epsilon, shots, trials, seed + static_cast<std::uint64_t>(r)));
    }
    if (worst >= 1.0 - delta) {
      out.constant = c;
      out.shots = shots;
      out.success_rate = worst;
      return out;
    }
  }
  throw InvalidArgument("no shot constant up to 10 meets the target");
}

}  // namespace qmpsig
