#include <doctest.h>

#include <cmath>

#include "roughflow/flow/flow.hpp"
#include "roughflow/lift/brownian_field.hpp"

using namespace roughflow;

namespace {

const DriverParams kParams(2.2, 0.9);

GridDriverPtr trig_mode_driver(int n_sim, uint64_t seed, double lam = 0.25,
                               DriverParams params = kParams) {
  ModeBasis basis = make_trig_basis(Box::unit(2), 2, {lam, lam});
  return mode_driver(simulate_brownian_field(basis, 1.0, n_sim, seed), params);
}

// one-mode linear driver in d = 1: V_ts(x) = lambda (t - s) x
DriverPtr linear_clock_driver(double lam) {
  Mat id(1);
  id(0, 0) = 1.0;
  ModeBasis basis({std::make_shared<LinearMapField>(id)}, {1.0});
  return std::make_shared<GridCoeffDriver>(basis, std::vector<double>{0.0, 1.0},
                                           std::vector<double>{0.0, lam}, kParams,
                                           true);
}

}  // namespace

TEST_CASE("mu map closed forms") {
  ODEConfig cfg;
  SUBCASE("zero driver leaves points in place") {
    ZeroDriver drv(2, 1.0, kParams);
    Vec x{0.3, -0.7};
    CHECK((mu_map(drv, 0.2, 0.8, x, cfg) - x).norm_inf() == 0.0);
  }
  SUBCASE("constant field translates exactly") {
    Vec c{0.4, -0.3};
    ConstantDriver drv(c, 1.0, kParams);
    Vec x{0.1, 0.2};
    Vec y = mu_map(drv, 0.25, 0.75, x, cfg);
    CHECK((y - (x + 0.5 * c)).norm_inf() <= 1e-15);
  }
  SUBCASE("linear field reproduces the exponential up to RK4 truncation") {
    // classical 4th-order truncation: error ~ (z/n)^5 / 120 per step, so
    // |lambda h| = 0.125 with 8 substeps sits below 1e-10 while 0.5 is ~6e-8
    ODEConfig cfg8;
    cfg8.n_sub = 8;
    Vec x{0.8};
    {
      DriverPtr drv = linear_clock_driver(0.125);
      double exact = 0.8 * std::exp(0.125);
      CHECK(std::abs(mu_map(*drv, 0.0, 1.0, x, cfg8)[0] - exact) <= 1e-10);
    }
    {
      DriverPtr drv = linear_clock_driver(0.5);
      double exact = 0.8 * std::exp(0.5);
      double err = std::abs(mu_map(*drv, 0.0, 1.0, x, cfg8)[0] - exact);
      CHECK(err <= 1e-7);
      // more substeps push the map to 1e-10 even at |lambda h| = 0.5
      ODEConfig cfg64;
      cfg64.n_sub = 64;
      CHECK(std::abs(mu_map(*drv, 0.0, 1.0, x, cfg64)[0] - exact) <= 1e-10);
    }
  }
  SUBCASE("drift enters scaled by (t - s)") {
    ODEConfig with_drift;
    with_drift.drift = std::make_shared<ConstantField>(Vec{1.0, 0.0});
    ZeroDriver drv(2, 1.0, kParams);
    Vec x{0.0, 0.0};
    Vec y = mu_map(drv, 0.25, 0.75, x, with_drift);
    CHECK(y[0] == doctest::Approx(0.5).epsilon(1e-14));
  }
  SUBCASE("blow-up guard") {
    ODEConfig tight;
    tight.guard_radius = 1.5;
    ConstantDriver drv(Vec{10.0, 0.0}, 1.0, kParams);
    CHECK_THROWS_AS(mu_map(drv, 0.0, 1.0, Vec{0.0, 0.0}, tight), BlowUpError);
  }
}

TEST_CASE("euler defect") {
  ODEConfig cfg;
  SpaceSample sample = SpaceSample::halton(Box::unit(2), 32, 32);
  CallbackScalarField f(
      2, [](const Vec& x) { return std::sin(x[0]) * std::cos(x[1]); },
      [](const Vec& x) {
        return Vec{std::cos(x[0]) * std::cos(x[1]), -std::sin(x[0]) * std::sin(x[1])};
      },
      [](const Vec& x) {
        Mat m(2);
        m(0, 0) = -std::sin(x[0]) * std::cos(x[1]);
        m(0, 1) = -std::cos(x[0]) * std::sin(x[1]);
        m(1, 0) = m(0, 1);
        m(1, 1) = -std::sin(x[0]) * std::cos(x[1]);
        return m;
      });

  SUBCASE("zero driver has no defect") {
    ZeroDriver drv(2, 1.0, kParams);
    CHECK(euler_defect(drv, 0.0, 1.0, f, sample, cfg) == 0.0);
  }
  SUBCASE("linear function under a constant field is expanded exactly") {
    ConstantDriver drv(Vec{0.3, -0.2}, 1.0, kParams);
    CallbackScalarField lin(
        2, [](const Vec& x) { return x[0] + 2.0 * x[1]; },
        [](const Vec&) {
          return Vec{1.0, 2.0};
        },
        [](const Vec& x) { return Mat(x.n); });
    CHECK(euler_defect(drv, 0.0, 1.0, lin, sample, cfg) <= 1e-14);
  }
  SUBCASE("defect shrinks like a power of the step on mode drivers") {
    auto drv = trig_mode_driver(512, 23);
    double d3 = euler_defect(*drv, 0.0, 1.0 / 8.0, f, sample, cfg);
    double d6 = euler_defect(*drv, 0.0, 1.0 / 64.0, f, sample, cfg);
    CHECK(d6 < d3);
    double slope = std::log2(d3 / d6) / 3.0;
    CHECK(slope > 1.0);
  }
}

TEST_CASE("solve_flow closed forms") {
  ODEConfig cfg;
  SpaceSample probe = SpaceSample::halton(Box::unit(2), 32, 32);
  TimeInterval whole(0.0, 1.0, 1.0);

  SUBCASE("zero driver: identity flow, all deltas vanish") {
    auto drv = std::make_shared<ZeroDriver>(2, 1.0, kParams);
    Flow flow = solve_flow(drv, whole, cfg, 1e-6, 6, probe);
    CHECK(flow.report().converged);
    for (double d : flow.report().deltas) CHECK(d == 0.0);
    Vec x{0.4, 0.4};
    CHECK((flow.eval(0.2, 0.9, x) - x).norm_inf() == 0.0);
    CHECK((flow.eval(0.5, 0.5, x) - x).norm_inf() == 0.0);  // phi_tt = Id
  }
  SUBCASE("constant driver: translation flow, exact at every level") {
    Vec c{0.3, -0.1};
    auto drv = std::make_shared<ConstantDriver>(c, 1.0, kParams);
    Flow flow = solve_flow(drv, whole, cfg, 1e-12, 6, probe);
    CHECK(flow.report().converged);
    Vec x{0.2, 0.2};
    CHECK((flow.eval(0.0, 1.0, x) - (x + c)).norm_inf() <= 1e-14);
    CHECK((flow.eval(0.25, 0.75, x) - (x + 0.5 * c)).norm_inf() <= 1e-14);
  }
  SUBCASE("linear driver reproduces the exponential to 1e-8 at level 10") {
    SpaceSample probe1 = SpaceSample::regular_1d(-1.0, 1.0, 17);
    auto drv = linear_clock_driver(0.5);
    Flow flow = solve_flow(drv, whole, cfg, 1e-14, 10, probe1);
    double x0 = 0.8;
    double exact = x0 * std::exp(0.5);
    CHECK(std::abs(flow.eval(0.0, 1.0, Vec{x0})[0] - exact) <= 1e-8);
  }
  SUBCASE("ill-posed parameters need the explicit override") {
    auto drv = std::make_shared<ZeroDriver>(2, 1.0, DriverParams(2.9, 0.95));
    CHECK_THROWS_AS(solve_flow(drv, whole, cfg, 1e-6, 4, probe), ConfigError);
    ODEConfig relaxed = cfg;
    relaxed.allow_ill_posed = true;
    CHECK_NOTHROW(solve_flow(drv, whole, relaxed, 1e-6, 4, probe));
  }
}

TEST_CASE("flow property and inversion") {
  ODEConfig cfg;
  TimeInterval whole(0.0, 1.0, 1.0);

  SUBCASE("translation flows compose additively and invert exactly") {
    SpaceSample probe = SpaceSample::halton(Box::unit(2), 16, 16);
    Vec c{0.25, 0.5};
    auto drv = std::make_shared<ConstantDriver>(c, 1.0, kParams);
    Flow fwd = solve_flow(drv, whole, cfg, 1e-12, 5, probe);
    CHECK(flow_property_defect(fwd, 0.0, 0.3, 1.0, probe) <= 1e-14);
    Flow rev = inverse_flow(drv, whole, cfg, 1e-12, 5, probe);
    CHECK(inversion_defect(fwd, rev, 0.0, 1.0, probe) <= 1e-14);
  }
  SUBCASE("stochastic flows invert within the error budget") {
    SpaceSample probe = SpaceSample::halton(Box::unit(2), 24, 24);
    auto drv = trig_mode_driver(1024, 31);
    const double tol = 1e-6;
    Flow fwd = solve_flow(drv, whole, cfg, tol, 8, probe);
    Flow rev = inverse_flow(drv, whole, cfg, tol, 8, probe);
    CHECK(inversion_defect(fwd, rev, 0.0, 1.0, probe) <= 5.0 * tol);
    CHECK(inversion_defect(fwd, rev, 0.25, 0.75, probe) <= 5.0 * tol);
  }
  SUBCASE("flow property at a non-dyadic grid time") {
    SpaceSample probe = SpaceSample::halton(Box::unit(2), 16, 16);
    // 1536 = 3 * 512: dyadic cells stay grid-aligned and T/3 is a grid point
    ModeBasis basis = make_trig_basis(Box::unit(2), 2, {0.25, 0.25});
    auto drv = mode_driver(simulate_brownian_field(basis, 1.0, 1536, 41), kParams);
    Flow flow = solve_flow(drv, whole, cfg, 1e-6, 8, probe);
    CHECK(flow_property_defect(flow, 0.0, 1.0 / 3.0, 1.0, probe) <= 3.0 * 1e-6);
  }
}

TEST_CASE("solver refinements decay geometrically on mode drivers") {
  ODEConfig cfg;
  SpaceSample probe = SpaceSample::halton(Box::unit(2), 24, 24);
  TimeInterval whole(0.0, 1.0, 1.0);
  auto drv = trig_mode_driver(1024, 7, 0.5, DriverParams(2.2, 0.9));
  Flow flow = solve_flow(drv, whole, cfg, 1e-12, 8, probe);
  const auto& deltas = flow.report().deltas;
  REQUIRE(deltas.size() >= 5);
  // ratio bound 2^{-(3 rho / p - 1)} * 1.5 past a burn-in
  double bound = std::exp2(-flow.report().theoretical_rate) * 1.5;
  int violations = 0;
  for (size_t k = 2; k + 1 < deltas.size(); ++k)
    if (deltas[k + 1] > bound * deltas[k]) ++violations;
  CHECK(violations <= 1);
  CHECK(flow.report().fitted_rate > 0.0);
  CHECK(flow.report().mu_distance_threshold > 0.0);
}

TEST_CASE("continuity of the Ito map in the driver") {
  ODEConfig cfg;
  TimeInterval whole(0.0, 1.0, 1.0);
  SpaceSample probe = SpaceSample::halton(Box::unit(2), 16, 16);

  SUBCASE("constant + constant perturbation moves linearly in eps") {
    ModeBasis base_basis = make_constant_basis({Vec{0.3, 0.0}}, {1.0});
    GridCoeffDriver base(base_basis, {0.0, 1.0}, {0.0, 1.0}, kParams, true);
    ModeBasis pert_basis = make_constant_basis({Vec{0.0, 0.4}}, {1.0});
    GridCoeffDriver pert(pert_basis, {0.0, 1.0}, {0.0, 1.0}, kParams, true);
    auto rows = flow_continuity_probe(base, pert, {0.0, 0.1, 0.5}, whole, cfg, 1e-12, 5,
                                      probe);
    CHECK(rows[0].flow_distance == 0.0);
    CHECK(rows[1].flow_distance == doctest::Approx(0.1 * 0.4).epsilon(1e-12));
    CHECK(rows[2].flow_distance == doctest::Approx(0.5 * 0.4).epsilon(1e-12));
  }
  SUBCASE("smooth perturbations of a mode driver shrink with eps") {
    ModeBasis basis = make_trig_basis(Box::unit(2), 2, {0.25, 0.25});
    BrownianModeField f = simulate_brownian_field(basis, 1.0, 256, 3);
    VelocityFieldSamples samples = VelocityFieldSamples::from_brownian(f);
    auto base = piecewise_linear_lift(samples, Partition(samples.times), kParams);

    ModeBasis pert_basis = make_trig_basis(Box::unit(2), 2, {1.0, 1.0});
    std::vector<double> knots, coeffs;
    for (int i = 0; i <= 8; ++i) {
      double u = i / 8.0;
      knots.push_back(u);
      coeffs.push_back(u);
      coeffs.push_back(std::sin(u));
    }
    GridCoeffDriver pert(pert_basis, knots, coeffs, kParams, true);
    auto rows =
        flow_continuity_probe(*base, pert, {0.02, 0.1, 0.5}, whole, cfg, 1e-9, 6, probe);
    CHECK(rows[0].flow_distance < rows[1].flow_distance);
    CHECK(rows[1].flow_distance < rows[2].flow_distance);
    // near-linear decay on the smooth family
    double slope = std::log(rows[2].flow_distance / rows[0].flow_distance) /
                   std::log(0.5 / 0.02);
    CHECK(slope >= 0.9);
  }
}

TEST_CASE("flow Hoelder norm does not shrink when the driver is dilated up") {
  ODEConfig cfg;
  TimeInterval whole(0.0, 1.0, 1.0);
  SpaceSample probe = SpaceSample::halton(Box::unit(2), 24, 48);
  auto drv = trig_mode_driver(512, 13);
  Flow base = solve_flow(drv, whole, cfg, 1e-9, 7, probe);
  Flow doubled = solve_flow(drv->dilated(2.0), whole, cfg, 1e-9, 7, probe);
  double n1 = flow_holder_norm(base, 0.0, 1.0, probe, kParams.rho);
  double n2 = flow_holder_norm(doubled, 0.0, 1.0, probe, kParams.rho);
  CHECK(n2 >= n1 - 1e-9);
}
