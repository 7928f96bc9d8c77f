#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "dcd/errors.hpp"
#include "dcd/lattice.hpp"
#include "dcd/model.hpp"
#include "test_support.hpp"

namespace {

using dcd::Interval;
using dcd::PiecewisePoly;
using dcd::Polynomial;
using dcd::ScalarModel;

PiecewisePoly zero() { return PiecewisePoly::constant(0.0); }

ScalarModel affine_model() {
  return ScalarModel(1, {PiecewisePoly::monomial({0.25, 1.5})}, {zero()}, {-1.0, 1.0}, "affine");
}

// phi = 0, a = indicator of |u| > 1/2.
ScalarModel chi_diffusion_model() {
  PiecewisePoly a({-1.0, -0.5, 0.5, 1.0},
                  {Polynomial::constant(1.0), Polynomial::constant(0.0), Polynomial::constant(1.0)});
  return ScalarModel(1, {zero()}, {a}, {-1.0, 1.0}, "chi");
}

TEST(ScalarModel, ValidatesItsInput) {
  PiecewisePoly jump({-1.0, 0.0, 1.0}, {Polynomial::constant(0.0), Polynomial::constant(1.0)});
  EXPECT_THROW(ScalarModel(1, {jump}, {zero()}, {-1.0, 1.0}), dcd::ConfigError);
  EXPECT_THROW(ScalarModel(1, {zero()}, {PiecewisePoly::constant(-0.1)}, {-1.0, 1.0}), dcd::ConfigError);
  EXPECT_THROW(ScalarModel(1, {zero()}, {zero()}, {1.0, -1.0}), dcd::ConfigError);
  EXPECT_THROW(ScalarModel(2, {zero(), zero()},
                           {PiecewisePoly::constant(1.0), PiecewisePoly::constant(0.5), zero(),
                            PiecewisePoly::constant(1.0)},
                           {-1.0, 1.0}),
               dcd::ConfigError);
  // Indefinite: eigenvalues 1 +- 2.
  EXPECT_THROW(ScalarModel(2, {zero(), zero()},
                           {PiecewisePoly::constant(1.0), PiecewisePoly::constant(2.0),
                            PiecewisePoly::constant(2.0), PiecewisePoly::constant(1.0)},
                           {-1.0, 1.0}),
               dcd::ConfigError);
  PiecewisePoly narrow = PiecewisePoly::from_polynomial(Polynomial({0.0, 1.0}), {-0.5, 0.5}, dcd::Extension::kStrict);
  EXPECT_THROW(ScalarModel(1, {narrow}, {zero()}, {-1.0, 1.0}), dcd::ConfigError);
}

TEST(ScalarModel, PrimitivesVanishAtZero) {
  ScalarModel m = chi_diffusion_model();
  EXPECT_DOUBLE_EQ(m.primitive(0, 0)(0.0), 0.0);
  EXPECT_DOUBLE_EQ(m.primitive(0, 0)(1.0), 0.5);
  EXPECT_DOUBLE_EQ(m.primitive(0, 0)(-1.0), -0.5);
}

TEST(ScalarModel, Bounds) {
  ScalarModel b = ScalarModel::burgers();
  EXPECT_DOUBLE_EQ(b.flux_slope_bound({0.0, 1.0}), 1.0);
  EXPECT_DOUBLE_EQ(b.flux_slope_bound({-0.5, 0.25}), 0.5);
  EXPECT_DOUBLE_EQ(b.diffusion_bound({-1.0, 1.0}), 0.0);
  EXPECT_TRUE(b.hyperbolic());
  EXPECT_DOUBLE_EQ(chi_diffusion_model().diffusion_bound({-0.4, 0.4}), 0.0);
  EXPECT_DOUBLE_EQ(chi_diffusion_model().diffusion_bound({-0.4, 0.6}), 1.0);
}

TEST(Kruzhkov, BurgersSignArithmetic) {
  auto kf = dcd::kruzhkov_fluxes(ScalarModel::burgers(), 0.0, -1.0);
  EXPECT_DOUBLE_EQ(kf.flux[0], -0.5);
  EXPECT_DOUBLE_EQ(kf.diffusion[0], 0.0);
  auto same = dcd::kruzhkov_fluxes(ScalarModel::burgers(), 0.3, 0.3);
  EXPECT_DOUBLE_EQ(same.flux[0], 0.0);
  EXPECT_THROW(dcd::kruzhkov_fluxes(ScalarModel::burgers(), 0.0, 1.5), dcd::DomainError);
}

TEST(Kruzhkov, TwoDimensionalDirectEvaluation) {
  PiecewisePoly a11({-1.0, 0.0, 1.0}, {Polynomial::constant(0.0), Polynomial({0.0, 2.0})});
  ScalarModel m(2, {PiecewisePoly::monomial({0.0, 1.0}), PiecewisePoly::monomial({0.0, 0.0, 1.0})},
                {a11, zero(), zero(), zero()}, {-1.0, 1.0});
  auto kf = dcd::kruzhkov_fluxes(m, 0.0, 1.0);
  EXPECT_DOUBLE_EQ(kf.flux[0], 1.0);
  EXPECT_DOUBLE_EQ(kf.flux[1], 1.0);
  EXPECT_DOUBLE_EQ(kf.diffusion[0], 1.0);
  EXPECT_DOUBLE_EQ(kf.diffusion[1], 0.0);
  EXPECT_DOUBLE_EQ(kf.diffusion[2], 0.0);
  EXPECT_DOUBLE_EQ(kf.diffusion[3], 0.0);
}

TEST(Kruzhkov, DiffusiveFluxIsPositiveSemidefinite) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    int dim = seed % 2 ? 1 : 2;
    ScalarModel m = dcd::testing::random_model(seed, dim);
    std::mt19937_64 rng(seed + 1000);
    for (int i = 0; i < 200; ++i) {
      double k = dcd::testing::uniform(rng, -1.0, 1.0);
      double u = dcd::testing::uniform(rng, -1.0, 1.0);
      auto kf = dcd::kruzhkov_fluxes(m, k, u);
      EXPECT_GE(dcd::min_eigenvalue(kf.diffusion, dim), -1e-10) << "seed " << seed;
    }
  }
}

TEST(Eigenvalues, ClosedForm) {
  dcd::Mat2 m{2.0, 1.0, 1.0, 2.0};
  EXPECT_NEAR(dcd::min_eigenvalue(m, 2), 1.0, 1e-15);
  EXPECT_NEAR(dcd::max_abs_eigenvalue(m, 2), 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(dcd::min_eigenvalue({-0.5, 0, 0, 0}, 1), -0.5);
}

TEST(CheckGn, BurgersHolds) {
  auto r = dcd::check_gn(ScalarModel::burgers());
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.witness.has_value());
  ASSERT_EQ(r.f_set.size(), 1u);
  EXPECT_EQ(r.f_set[0], (Interval{-1.0, 1.0}));
  EXPECT_TRUE(r.degenerate.empty());
}

TEST(CheckGn, AffineFluxFailsWithWitness) {
  auto r = dcd::check_gn(affine_model());
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(*r.witness, (Interval{0.0, 1.0}));
}

TEST(CheckGn, DiffusionIndicatorIsBreakpointExact) {
  auto r = dcd::check_gn(chi_diffusion_model());
  EXPECT_FALSE(r.holds);
  ASSERT_EQ(r.f_set.size(), 2u);
  EXPECT_EQ(r.f_set[0], (Interval{-1.0, -0.5}));
  EXPECT_EQ(r.f_set[1], (Interval{0.5, 1.0}));
  EXPECT_EQ(r.sup_f_minus, -0.5);
  EXPECT_EQ(r.inf_f_plus, 0.5);
}

TEST(CheckGn, DegenerateRunAwayFromZeroStillHolds) {
  // Affine on [0.5, 1] only: 0 is not inside a degenerate run.
  PiecewisePoly phi({-1.0, 0.5, 1.0}, {Polynomial({0.125, 0.5, 0.5}, 0.5), Polynomial({0.125, 0.5}, 0.5)});
  auto r = dcd::check_gn(ScalarModel(1, {phi}, {zero()}, {-1.0, 1.0}));
  EXPECT_TRUE(r.holds);
  ASSERT_EQ(r.degenerate.size(), 1u);
  ASSERT_EQ(r.f_set.size(), 1u);
  EXPECT_EQ(r.f_set[0], (Interval{-1.0, 0.5}));
}

TEST(CheckGn, InvariantUnderRefinement) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    ScalarModel m = dcd::testing::random_model(seed, 1);
    std::vector<double> extra{-0.3, 0.1, 0.45};
    ScalarModel refined(1, {m.flux(0).refined(extra)}, {m.diffusion(0, 0).refined(extra)}, m.urange());
    auto a = dcd::check_gn(m);
    auto b = dcd::check_gn(refined);
    EXPECT_EQ(a.holds, b.holds);
    EXPECT_EQ(a.witness, b.witness);
    EXPECT_EQ(a.f_set, b.f_set);
    EXPECT_EQ(a.degenerate, b.degenerate);
  }
}

TEST(NearestFValues, Examples) {
  auto dense = dcd::check_gn(ScalarModel::burgers());
  EXPECT_EQ(dcd::nearest_f_values(dense, -0.1, 0.1), (std::pair{-0.1, 0.1}));
  auto chi = dcd::check_gn(chi_diffusion_model());
  EXPECT_EQ(dcd::nearest_f_values(chi, -0.2, 0.3), (std::pair{-0.5, 0.5}));
  // F = {0}: affine on both sides with different slopes, a = 0.
  PiecewisePoly kink({-1.0, 0.0, 1.0}, {Polynomial({0.0, -1.0}), Polynomial({0.0, 1.0})});
  auto point = dcd::check_gn(ScalarModel(1, {kink}, {zero()}, {-1.0, 1.0}));
  ASSERT_EQ(point.f_set.size(), 1u);
  EXPECT_EQ(point.f_set[0], (Interval{0.0, 0.0}));
  EXPECT_EQ(dcd::nearest_f_values(point, 0.0, 0.0), (std::pair{0.0, 0.0}));
}

TEST(NearestFValues, MissingSideIsAnAnalysisError) {
  PiecewisePoly phi({-1.0, 0.0, 1.0}, {Polynomial({0.0, 0.0, 1.0}), Polynomial({0.0, 1.0})});
  auto r = dcd::check_gn(ScalarModel(1, {phi}, {zero()}, {-1.0, 1.0}));
  try {
    dcd::nearest_f_values(r, -0.1, 0.2);
    FAIL() << "expected AnalysisError";
  } catch (const dcd::AnalysisError& e) {
    EXPECT_NE(std::string(e.what()).find("+"), std::string::npos) << e.what();
  }
}

TEST(Hypothesis, BurgersVerified) {
  auto r = dcd::thm_hypothesis_periodic(ScalarModel::burgers(), dcd::LatticeSpec::integer(1), 0.0, 50);
  EXPECT_TRUE(r.verified);
  EXPECT_EQ(r.xi_bound, 50);
  EXPECT_EQ(r.vectors_checked, 50u);
  EXPECT_NE(r.note.find("50"), std::string::npos);
}

TEST(Hypothesis, LinearFluxWitnessIsOne) {
  auto r = dcd::thm_hypothesis_periodic(ScalarModel::linear_advection(1.0), dcd::LatticeSpec::integer(1), 0.0, 10);
  EXPECT_FALSE(r.verified);
  ASSERT_FALSE(r.witnesses.empty());
  EXPECT_EQ(r.witnesses[0].coords[0], 1);
  EXPECT_DOUBLE_EQ(r.witnesses[0].xi[0], 1.0);
}

TEST(Hypothesis, TwoDimensionalWitnessAlongTheFlatAxis) {
  ScalarModel m(2, {PiecewisePoly::monomial({0.0, 0.0, 0.5}), zero()}, {zero(), zero(), zero(), zero()},
                {-1.0, 1.0});
  auto r = dcd::thm_hypothesis_periodic(m, dcd::LatticeSpec::integer(2), 0.0, 5);
  EXPECT_FALSE(r.verified);
  ASSERT_FALSE(r.witnesses.empty());
  EXPECT_EQ(r.witnesses[0].coords, (std::array<std::int64_t, 2>{0, 1}));
}

TEST(Hypothesis, SingularLatticeRejected) {
  EXPECT_THROW(dcd::LatticeSpec(2, {1.0, 2.0, 0.5, 1.0}), dcd::ConfigError);
}

}  // namespace
