#include <gtest/gtest.h>

#include <random>

#include "qmpsig/attacks.hpp"
#include "qmpsig/config.hpp"
#include "qmpsig/error.hpp"
#include "qmpsig/tomography.hpp"
#include "support.hpp"

namespace qmpsig {
namespace {

using test::max_abs;

TEST(RequiredShots, ScalesAsFourToTheKOverEpsilonSquared) {
  for (int k = 1; k <= 3; ++k) {
    const double halved = static_cast<double>(required_shots(k, 0.05, 0.05)) / required_shots(k, 0.1, 0.05);
    EXPECT_NEAR(halved, 4.0, 0.01);
    const double grown = static_cast<double>(required_shots(k + 1, 0.1, 0.05)) / required_shots(k, 0.1, 0.05);
    EXPECT_NEAR(grown, 4.0, 0.01);
  }
  EXPECT_EQ(required_shots(1, 0.1, 0.05, 1.0), 1476U);
}

TEST(RequiredShots, RejectsDegenerateParameters) {
  EXPECT_THROW(required_shots(2, 0.0, 0.05), InvalidArgument);
  EXPECT_THROW(required_shots(2, 0.1, 0.0), InvalidArgument);
  EXPECT_THROW(required_shots(2, 0.1, 1.0), InvalidArgument);
  EXPECT_THROW(required_shots(0, 0.1, 0.05), InvalidArgument);
}

TEST(SampleMeasurements, ZBasisOnZeroIsAlwaysPlus) {
  const auto rec = sample_measurements(DensityMatrix::basis_state(1, 0), QubitSubset({0}), "Z", 100, 1);
  EXPECT_EQ(rec.counts[0], 100U);
  EXPECT_EQ(rec.counts[1], 0U);
}

TEST(SampleMeasurements, ZBasisOnMixedStateIsBalanced) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto rec = sample_measurements(DensityMatrix::maximally_mixed(1), QubitSubset({0}), "Z", 10000, seed);
    EXPECT_NEAR(static_cast<double>(rec.counts[0]) / 10000.0, 0.5, 0.02);
  }
}

TEST(SampleMeasurements, ZZOnBellIsCorrelated) {
  const auto rec = sample_measurements(test::bell_phi_plus(), QubitSubset({0, 1}), "ZZ", 1000, 3);
  EXPECT_EQ(rec.counts[1] + rec.counts[2], 0U);
  EXPECT_EQ(rec.counts[0] + rec.counts[3], 1000U);
  EXPECT_GT(rec.counts[0], 0U);
  EXPECT_GT(rec.counts[3], 0U);
}

TEST(SampleMeasurements, SeedDeterminism) {
  std::mt19937_64 gen(30);
  const auto rho = test::random_state(3, gen);
  const auto a = sample_measurements(rho, QubitSubset({0, 2}), "XY", 500, 77);
  const auto b = sample_measurements(rho, QubitSubset({0, 2}), "XY", 500, 77);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_NE(a.counts, sample_measurements(rho, QubitSubset({0, 2}), "XY", 500, 78).counts);
}

TEST(SampleMeasurements, RejectsMalformedBasis) {
  const auto rho = DensityMatrix::maximally_mixed(2);
  EXPECT_THROW(sample_measurements(rho, QubitSubset({0}), "ZZ", 10, 1), InvalidArgument);
  EXPECT_THROW(sample_measurements(rho, QubitSubset({0}), "Q", 10, 1), InvalidArgument);
}

TEST(MeasurementRecord, ValidateChecksCounts) {
  MeasurementRecord r{.basis = "Z", .counts = {3, 4}, .shots = 8};
  EXPECT_THROW(r.validate(), InvalidArgument);
  r.shots = 7;
  EXPECT_NO_THROW(r.validate());
  EXPECT_EQ(outcome_label(2, 2), "-+");
  EXPECT_EQ(parse_outcome_label("-+"), 2U);
}

TEST(Reconstruct, ExactProbabilitiesRecoverTheMarginal) {
  std::mt19937_64 gen(31);
  for (int k = 1; k <= 3; ++k) {
    const auto rho = test::random_state(k, gen);
    const auto est = reconstruct_exact(rho, QubitSubset::first(k));
    EXPECT_LT(max_abs(est.raw - rho.matrix()), 1e-10);
    EXPECT_LT(max_abs(est.projected.matrix() - rho.matrix()), 1e-10);
  }
}

TEST(Reconstruct, ProjectedIsAlwaysAValidState) {
  std::mt19937_64 gen(32);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = test::random_state(2, gen, 1);
    const auto records = measure_all_bases(rho, QubitSubset({0, 1}), 90, 100 + trial);
    const auto est = reconstruct(records, QubitSubset({0, 1}));
    EXPECT_TRUE(validate_density(est.projected.matrix()).valid);
    EXPECT_EQ(est.shots_used, 90U);
  }
}

TEST(Reconstruct, PlusStateAtHundredThousandShots) {
  ComplexVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const auto rho = DensityMatrix::from_pure(plus);
  const auto est = reconstruct(measure_all_bases(rho, QubitSubset({0}), 100000, 2024), QubitSubset({0}));
  EXPECT_LT(trace_distance(est.projected, rho), 0.02);
}

TEST(Reconstruct, MissingSettingIsAnError) {
  auto records = measure_all_bases(DensityMatrix::maximally_mixed(2), QubitSubset({0, 1}), 900, 1);
  records.pop_back();
  EXPECT_THROW(reconstruct(records, QubitSubset({0, 1})), InvalidArgument);
}

TEST(MeasurementBases, LexicographicOrder) {
  const auto b = measurement_bases(2);
  ASSERT_EQ(b.size(), 9U);
  EXPECT_EQ(b.front(), "XX");
  EXPECT_EQ(b[1], "XY");
  EXPECT_EQ(b.back(), "ZZ");
}

TEST(ShotConstant, CalibrationReproducesRepositoryConstant) {
  const auto r = calibrate_shot_constant(2, 0.1, 0.05, 200, 2024, 10);
  EXPECT_DOUBLE_EQ(r.constant, config::kShotConstant);
  EXPECT_GE(r.success_rate, 0.95);
}

}  // namespace
}  // namespace qmpsig
