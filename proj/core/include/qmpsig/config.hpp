#pragma once

#include <cstdint>

namespace qmpsig::config {

/// Artifact schema version written into every JSON document.
inline constexpr int kFormatVersion = 1;
inline constexpr const char* kCodeVersion = "0.1.0";

/// Constant in the per-subsystem copy budget c * 4^k * ln(2/delta) / eps^2.
/// Smallest value on a 0.05 grid for which each of 10 batches of 200 random
/// two-qubit states is reconstructed within eps in at least 1 - delta of the
/// trials (eps = 0.1, delta = 0.05, seeds 2024..2033); see
/// `qmpsig calibrate-shots`.
inline constexpr double kShotConstant = 0.55;

/// Default failure budget of a verification session.
inline constexpr double kDefaultDelta = 0.05;

/// Desk-scale fixture used for calibration and the attack suite.
inline constexpr int kFixtureLambda = 2;
inline constexpr int kFixtureQubits = 6;
inline constexpr int kFixtureK = 2;
inline constexpr int kFixtureM = 4;
inline constexpr std::uint64_t kFixtureSeed = 1;

/// Calibration point: honest noise level and shots per subsystem.
inline constexpr double kCalibrationNoise = 0.02;
inline constexpr std::uint64_t kCalibrationShots = 10000;
inline constexpr int kCalibrationTrials = 200;
inline constexpr std::uint64_t kCalibrationSeed = 2024;

/// Acceptance threshold produced by `qmpsig calibrate` at the calibration point.
inline constexpr double kCalibratedEpsilon = 0.29385785650724833;

}  // namespace qmpsig::config
