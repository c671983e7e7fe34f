#include <doctest.h>

#include <cmath>

#include "roughflow/driver/ops.hpp"
#include "roughflow/lift/brownian_field.hpp"
#include "roughflow/lift/rough_path.hpp"

using namespace roughflow;

namespace {

const DriverParams kParams(2.2, 0.9);

std::vector<FieldPtr> shear_fields() {
  Mat m(2);
  m(1, 0) = 1.0;
  return {std::make_shared<ConstantField>(Vec{1.0, 0.0}),
          std::make_shared<LinearMapField>(m)};
}

// brute-force Riemann-Stieltjes midpoint summation of
// (1/2) int_s^t (M_us . M_du - M_du . M_us) at a point, straight off the
// simulated field values; independent of the coefficient-area route
Vec brute_force_w(const BrownianModeField& f, double s, double t, const Vec& x) {
  const auto& fields = *f.basis.fields;
  const size_t e = f.modes();
  const int is = f.grid.index_of(s), it = f.grid.index_of(t);
  std::vector<Vec> vals(e);
  std::vector<Mat> jacs(e);
  for (size_t k = 0; k < e; ++k) {
    vals[k] = fields[k]->value(x);
    jacs[k] = fields[k]->jacobian(x);
  }
  Vec acc(x.n);
  for (int i = is; i < it; ++i) {
    for (size_t j = 0; j < e; ++j)
      for (size_t k = 0; k < e; ++k) {
        double mid_j = 0.5 * (f.b(i, j) + f.b(i + 1, j)) - f.b(is, j);
        double mid_k = 0.5 * (f.b(i, k) + f.b(i + 1, k)) - f.b(is, k);
        double db_j = f.b(i + 1, j) - f.b(i, j);
        double db_k = f.b(i + 1, k) - f.b(i, k);
        // (M_us . M_du) - (M_du . M_us)
        //   = sum_{jk} (B^j_us dB^k - dB^j B^k_us) (De_k)(e_j)
        Vec pairing = jacs[k].apply(vals[j]);
        for (int d = 0; d < x.n; ++d)
          acc[d] += 0.5 * (mid_j * db_k - db_j * mid_k) * pairing[d];
      }
  }
  return acc;
}

}  // namespace

TEST_CASE("brownian field simulation") {
  ModeBasis basis = make_trig_basis(Box::unit(2), 2, {1.0, 1.0});

  SUBCASE("zero weights give the zero field") {
    ModeBasis flat = make_trig_basis(Box::unit(2), 2, {0.0, 0.0});
    BrownianModeField f = simulate_brownian_field(flat, 1.0, 64, 3);
    for (double v : f.coeff) CHECK(v == 0.0);
    for (double v : f.cum_area) CHECK(v == 0.0);
  }
  SUBCASE("a single mode has no area") {
    ModeBasis one = make_trig_basis(Box::unit(2), 1, {1.0});
    BrownianModeField f = simulate_brownian_field(one, 1.0, 64, 3);
    for (double v : f.cum_area) CHECK(v == 0.0);
  }
  SUBCASE("deterministic given the seed") {
    BrownianModeField a = simulate_brownian_field(basis, 1.0, 128, 17);
    BrownianModeField b = simulate_brownian_field(basis, 1.0, 128, 17);
    CHECK(a.coeff == b.coeff);
    CHECK(a.cum_area == b.cum_area);
    BrownianModeField c = simulate_brownian_field(basis, 1.0, 128, 18);
    CHECK(a.coeff != c.coeff);
  }
  SUBCASE("area antisymmetry and area-Chen hold to float accumulation") {
    BrownianModeField f = simulate_brownian_field(basis, 1.0, 256, 5);
    double scale = 0.0;
    for (double v : f.coeff) scale = std::max(scale, std::abs(v));
    for (int i = 0; i <= 256; i += 16)
      for (size_t j = 0; j < 2; ++j)
        for (size_t k = 0; k < 2; ++k) {
          double ajk = f.cum_area[(static_cast<size_t>(i) * 2 + j) * 2 + k];
          double akj = f.cum_area[(static_cast<size_t>(i) * 2 + k) * 2 + j];
          if (j == k) CHECK(ajk == 0.0);
          CHECK(std::abs(ajk + akj) <= 1e-12 * (1.0 + scale * scale));
        }
    // area-Chen: A_ts = A_tu + A_us + (1/2)(B_us /\ B_tu)
    auto A = [&](double s, double t) { return f.area(s, t, 0, 1); };
    double s = 0.25, u = 0.5, t = 0.875;
    double cross = 0.5 * ((f.b(f.grid.index_of(u), 0) - f.b(f.grid.index_of(s), 0)) *
                              (f.b(f.grid.index_of(t), 1) - f.b(f.grid.index_of(u), 1)) -
                          (f.b(f.grid.index_of(u), 1) - f.b(f.grid.index_of(s), 1)) *
                              (f.b(f.grid.index_of(t), 0) - f.b(f.grid.index_of(u), 0)));
    CHECK(std::abs(A(s, t) - A(u, t) - A(s, u) - cross) <=
          1e-12 * (1.0 + std::abs(A(s, t))));
  }
  SUBCASE("rejects bad arguments") {
    CHECK_THROWS_AS(simulate_brownian_field(basis, 1.0, 1, 3), ConfigError);
    CHECK_THROWS_AS(simulate_brownian_field(basis, -1.0, 64, 3), ConfigError);
  }
}

TEST_CASE("area variance is consistent across simulation resolutions") {
  // self-consistency oracle: the empirical variance of 2 A^{12}_{T0} at
  // N_sim and at 2 N_sim must agree within 3 standard errors
  ModeBasis basis = make_trig_basis(Box::unit(2), 2, {1.0, 1.0});
  const int n_seeds = 10000;
  auto variance = [&](int n_sim, uint64_t salt, double* se_out) {
    RngStreams rng(salt);
    std::vector<double> vals(n_seeds);
    for (int i = 0; i < n_seeds; ++i) {
      BrownianModeField f = simulate_brownian_field(basis, 1.0, n_sim, rng.derive(i));
      vals[static_cast<size_t>(i)] = 2.0 * f.cum_area[0 * 2 + 1 +
                                                      static_cast<size_t>(n_sim) * 4];
    }
    double m2 = 0.0, m4 = 0.0;
    for (double v : vals) {
      m2 += v * v;
      m4 += v * v * v * v;
    }
    m2 /= n_seeds;
    m4 /= n_seeds;
    *se_out = std::sqrt((m4 - m2 * m2) / n_seeds);
    return m2;
  };
  double se1 = 0.0, se2 = 0.0;
  double v1 = variance(64, 1001, &se1);
  double v2 = variance(128, 1002, &se2);
  CHECK(std::abs(v1 - v2) <= 3.0 * std::sqrt(se1 * se1 + se2 * se2));
}

TEST_CASE("mode driver") {
  SUBCASE("one mode means zero second level") {
    ModeBasis one = make_trig_basis(Box::unit(2), 1, {1.0});
    BrownianModeField f = simulate_brownian_field(one, 1.0, 64, 7);
    auto drv = mode_driver(f, kParams);
    Vec x{0.3, -0.2};
    CHECK(drv->w_at(0.25, 0.75, x).norm_inf() == 0.0);
    // V_ts = B_ts e_1
    double b = f.b(48, 0) - f.b(16, 0);
    Vec e = (*one.fields)[0]->value(x);
    CHECK((drv->v_at(0.25, 0.75, x) - b * e).norm_inf() <= 1e-15);
  }
  SUBCASE("commuting constant basis gives W = 0") {
    ModeBasis basis = make_constant_basis({Vec{1.0, 0.0}, Vec{0.0, 1.0}}, {1.0, 1.0});
    BrownianModeField f = simulate_brownian_field(basis, 1.0, 64, 7);
    auto drv = mode_driver(f, kParams);
    CHECK(drv->w_at(0.25, 0.75, Vec{0.4, 0.1}).norm_inf() == 0.0);
  }
  SUBCASE("W matches the brute-force Riemann-Stieltjes oracle") {
    ModeBasis basis(shear_fields(), {1.0, 1.0});
    BrownianModeField f = simulate_brownian_field(basis, 1.0, 256, 11);
    auto drv = mode_driver(f, kParams);
    double scale = 0.0;
    for (double v : f.coeff) scale = std::max(scale, std::abs(v));
    for (auto [s, t] : {std::pair{0.0, 1.0}, {0.25, 0.75}, {0.5, 0.625}}) {
      for (const Vec& x : {Vec{0.3, -0.2}, Vec{-0.7, 0.5}}) {
        Vec direct = brute_force_w(f, s, t, x);
        Vec lifted = drv->w_at(s, t, x);
        CHECK((direct - lifted).norm_inf() <= 1e-12 * (1.0 + scale * scale));
      }
    }
  }
  SUBCASE("off-grid times are rejected") {
    ModeBasis basis(shear_fields(), {1.0, 1.0});
    auto drv = mode_driver(simulate_brownian_field(basis, 1.0, 64, 3), kParams);
    CHECK_THROWS_AS(drv->v_field(0.1, 0.71234), ConfigError);
  }
}

TEST_CASE("piecewise-linear lift") {
  ModeBasis basis(shear_fields(), {1.0, 1.0});

  SUBCASE("a single cell has no area anywhere inside") {
    BrownianModeField f = simulate_brownian_field(basis, 1.0, 64, 13);
    VelocityFieldSamples samples = VelocityFieldSamples::from_brownian(f);
    auto pl = piecewise_linear_lift(samples, Partition({0.0, 1.0}), kParams);
    CHECK(pl->w_at(0.1, 0.9, Vec{0.3, 0.4}).norm_inf() <= 1e-15);
    CHECK(pl->w_at(0.0, 1.0, Vec{0.3, 0.4}).norm_inf() <= 1e-15);
  }
  SUBCASE("deterministic smooth samples reproduce the closed-form area") {
    // coefficients (t, t^2): area over [0,1] converges to T^3/6 = 1/6
    const int n = 512;
    VelocityFieldSamples samples;
    samples.basis = basis;
    for (int i = 0; i <= n; ++i) {
      double u = static_cast<double>(i) / n;
      samples.times.push_back(u);
      samples.coeff.push_back(u);
      samples.coeff.push_back(u * u);
    }
    auto pl = piecewise_linear_lift(samples, Partition(samples.times), kParams);
    auto area = pl->area_between(0.0, 1.0);
    CHECK(area[0 * 2 + 1] == doctest::Approx(1.0 / 6.0).epsilon(1e-4));
    CHECK(area[1 * 2 + 0] == doctest::Approx(-1.0 / 6.0).epsilon(1e-4));
  }
  SUBCASE("full-grid lift reproduces the mode driver") {
    BrownianModeField f = simulate_brownian_field(basis, 1.0, 128, 19);
    auto natural = mode_driver(f, kParams);
    VelocityFieldSamples samples = VelocityFieldSamples::from_brownian(f);
    auto pl = piecewise_linear_lift(samples, Partition(samples.times), kParams);
    double scale = 0.0;
    for (double v : f.coeff) scale = std::max(scale, std::abs(v));
    Vec x{0.4, -0.3};
    for (auto [s, t] : {std::pair{0.0, 1.0}, {0.25, 0.625}}) {
      CHECK((natural->v_at(s, t, x) - pl->v_at(s, t, x)).norm_inf() == 0.0);
      double disc = (natural->w_at(s, t, x) - pl->w_at(s, t, x)).norm_inf();
      CHECK(disc <= 1e-12 * (1.0 + scale * scale));
    }
    // grid doubling: the discrepancy stays at the float floor (halves or better
    // up to that floor)
    BrownianModeField f2 = simulate_brownian_field(basis, 1.0, 256, 19);
    auto natural2 = mode_driver(f2, kParams);
    VelocityFieldSamples samples2 = VelocityFieldSamples::from_brownian(f2);
    auto pl2 = piecewise_linear_lift(samples2, Partition(samples2.times), kParams);
    double disc1 = (natural->w_at(0.0, 1.0, x) - pl->w_at(0.0, 1.0, x)).norm_inf();
    double disc2 = (natural2->w_at(0.0, 1.0, x) - pl2->w_at(0.0, 1.0, x)).norm_inf();
    CHECK(disc2 <= std::max(0.5 * disc1, 1e-13));
  }
  SUBCASE("every emitted driver passes additivity and Chen off the knots") {
    BrownianModeField f = simulate_brownian_field(basis, 1.0, 64, 23);
    VelocityFieldSamples samples = VelocityFieldSamples::from_brownian(f);
    std::vector<double> coarse;
    for (int i = 0; i <= 8; ++i) coarse.push_back(f.grid.time(i * 8));
    auto pl = piecewise_linear_lift(samples, Partition(coarse), kParams);
    SpaceSample sample = SpaceSample::halton(Box::unit(2), 16, 16);
    NormalSampler rng(5);
    for (int i = 0; i < 40; ++i) {
      double a = rng.uniform01(), b = rng.uniform01(), c = rng.uniform01();
      double s = std::min({a, b, c}), t = std::max({a, b, c});
      double u = a + b + c - s - t;
      if (!(s < u && u < t)) continue;
      CHECK(additivity_defect(*pl, s, u, t, sample) <= kTolAlgGrid);
      CHECK(chen_defect(*pl, s, u, t, sample) <= kTolAlgGrid);
    }
  }
  SUBCASE("partitions outside the sample grid are rejected") {
    BrownianModeField f = simulate_brownian_field(basis, 1.0, 64, 29);
    VelocityFieldSamples samples = VelocityFieldSamples::from_brownian(f);
    CHECK_THROWS_AS(piecewise_linear_lift(samples, Partition({0.0, 0.333, 1.0}), kParams),
                    ConfigError);
  }
}

TEST_CASE("rough path lifts") {
  SUBCASE("smooth path (t, t^2): antisymmetric second level is T^3/6") {
    RoughPath rp = RoughPath::from_path(
        [](double t) {
          return std::vector<double>{t, t * t};
        },
        2, 1.0, 2048, 2.2);
    CHECK(rp.sym_defect() <= 1e-10);
    CHECK(rp.chen_defect() <= 1e-12);
    auto lvl2 = rp.second_level(0.0, 1.0);
    double anti = 0.5 * (lvl2[1] - lvl2[2]);
    CHECK(anti == doctest::Approx(1.0 / 6.0).epsilon(1e-6));
  }
  SUBCASE("one-dimensional paths lift with W = 0") {
    RoughPath rp = RoughPath::from_path(
        [](double t) {
          return std::vector<double>{std::sin(3.0 * t)};
        },
        1, 1.0, 512, 2.2);
    Mat m(2);
    m(1, 0) = 1.0;
    auto drv = lift_rough_path({std::make_shared<LinearMapField>(m)}, rp, kParams);
    CHECK(drv->w_at(0.25, 0.75, Vec{0.3, 0.1}).norm_inf() == 0.0);
  }
  SUBCASE("commuting fields lift with W = 0 regardless of the area") {
    RoughPath rp = RoughPath::from_path(
        [](double t) {
          return std::vector<double>{t, std::sin(t)};
        },
        2, 1.0, 512, 2.2);
    auto drv = lift_rough_path({std::make_shared<ConstantField>(Vec{1.0, 0.0}),
                                std::make_shared<ConstantField>(Vec{0.0, 1.0})},
                               rp, kParams);
    CHECK(drv->w_at(0.0, 1.0, Vec{0.3, 0.1}).norm_inf() == 0.0);
  }
  SUBCASE("non-geometric paths are rejected") {
    RoughPath rp = RoughPath::from_path(
        [](double t) {
          return std::vector<double>{t, t * t};
        },
        2, 1.0, 64, 2.2);
    // break Sym in the increments, not by a constant shift of the cumulatives
    for (size_t i = rp.xx.size() / 2; i < rp.xx.size(); i += 4) rp.xx[i] += 0.05;
    CHECK_THROWS_AS(lift_rough_path({std::make_shared<ConstantField>(Vec{1.0, 0.0}),
                                     std::make_shared<ConstantField>(Vec{0.0, 1.0})},
                                    rp, kParams),
                    ConfigError);
  }
  SUBCASE("lifted drivers satisfy Chen") {
    RoughPath rp = RoughPath::from_path(
        [](double t) {
          return std::vector<double>{std::cos(t), t * t * t};
        },
        2, 1.0, 512, 2.2);
    auto drv = lift_rough_path(shear_fields(), rp, kParams);
    SpaceSample sample = SpaceSample::halton(Box::unit(2), 16, 16);
    CHECK(chen_defect(*drv, 0.25, 0.5, 0.875, sample) <= kTolAlgGrid);
  }
  SUBCASE("deterministic C^1 coefficients: rough-path and PL lifts agree") {
    const int n = 512;
    RoughPath rp = RoughPath::from_path(
        [](double t) {
          return std::vector<double>{t, t * t};
        },
        2, 1.0, n, 2.2);
    auto from_rp = lift_rough_path(shear_fields(), rp, kParams);

    VelocityFieldSamples samples;
    samples.basis = ModeBasis(shear_fields(), {1.0, 1.0});
    for (int i = 0; i <= n; ++i) {
      double u = static_cast<double>(i) / n;
      samples.times.push_back(u);
      samples.coeff.push_back(u);
      samples.coeff.push_back(u * u);
    }
    auto from_pl = piecewise_linear_lift(samples, Partition(samples.times), kParams);
    Vec x{0.3, -0.5};
    CHECK((from_rp->v_at(0.25, 0.75, x) - from_pl->v_at(0.25, 0.75, x)).norm_inf() <=
          1e-12);
    CHECK((from_rp->w_at(0.25, 0.75, x) - from_pl->w_at(0.25, 0.75, x)).norm_inf() <=
          1e-5);  // midpoint-quadrature vs chord areas, O(mesh^2)
  }
}

TEST_CASE("local characteristic") {
  SUBCASE("zero weights give the zero kernel") {
    ModeBasis basis = make_trig_basis(Box::unit(2), 2, {0.0, 0.0});
    Mat a = local_characteristic(basis, Vec{0.1, 0.2}, Vec{-0.3, 0.4});
    CHECK(a.norm_inf() == 0.0);
  }
  SUBCASE("single constant mode gives c (x) c everywhere") {
    ModeBasis basis = make_constant_basis({Vec{2.0, -1.0}}, {1.0});
    Mat a = local_characteristic(basis, Vec{0.1, 0.2}, Vec{-0.3, 0.4});
    CHECK(a(0, 0) == doctest::Approx(4.0));
    CHECK(a(0, 1) == doctest::Approx(-2.0));
    CHECK(a(1, 0) == doctest::Approx(-2.0));
    CHECK(a(1, 1) == doctest::Approx(1.0));
  }
  SUBCASE("diagonal is nonnegative definite") {
    ModeBasis basis = make_bump_basis(Box::unit(2), 3, {1.0, 0.5, 0.2}, 2.0);
    Vec x{0.2, -0.6};
    Mat a = local_characteristic(basis, x, x);
    // 2x2 symmetric: nonneg diagonal and determinant
    CHECK(a(0, 0) >= 0.0);
    CHECK(a(1, 1) >= 0.0);
    CHECK(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) >= -1e-12);
  }
  SUBCASE("Monte Carlo covariance of M_t matches the kernel") {
    ModeBasis basis = make_trig_basis(Box::unit(2), 2, {1.0, 0.5});
    Vec x{0.3, -0.2}, y{-0.5, 0.7};
    const int n_seeds = 10000;
    RngStreams rng(77);
    double t = 1.0;
    Mat mean(2);
    std::vector<double> sq(4, 0.0);
    for (int i = 0; i < n_seeds; ++i) {
      BrownianModeField f = simulate_brownian_field(basis, t, 2, rng.derive(i));
      auto drv = mode_driver(f, kParams);
      Vec mx = drv->v_at(0.0, t, x), my = drv->v_at(0.0, t, y);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          double v = mx[a] * my[b] / t;
          mean(a, b) += v;
          sq[static_cast<size_t>(a * 2 + b)] += v * v;
        }
    }
    Mat kernel = local_characteristic(basis, x, y);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        double m = mean(a, b) / n_seeds;
        double var = sq[static_cast<size_t>(a * 2 + b)] / n_seeds - m * m;
        double se = std::sqrt(var / n_seeds);
        CHECK(std::abs(m - kernel(a, b)) <= 3.0 * se + 1e-12);
      }
  }
}

TEST_CASE("driver sums carry exact cross areas") {
  ModeBasis basis(shear_fields(), {1.0, 1.0});
  BrownianModeField f = simulate_brownian_field(basis, 1.0, 64, 31);
  VelocityFieldSamples samples = VelocityFieldSamples::from_brownian(f);
  auto stochastic = piecewise_linear_lift(samples, Partition(samples.times), kParams);

  // deterministic smooth summand on a coarser grid
  ModeBasis smooth_basis = make_trig_basis(Box::unit(2), 2, {1.0, 1.0});
  std::vector<double> knots;
  std::vector<double> coeffs;
  for (int i = 0; i <= 8; ++i) {
    double u = i / 8.0;
    knots.push_back(u);
    coeffs.push_back(std::sin(u));
    coeffs.push_back(u * u);
  }
  GridCoeffDriver smooth(smooth_basis, knots, coeffs, kParams, true);

  auto sum = sum_grid_drivers(*stochastic, smooth);
  CHECK(sum->modes() == 4);

  Vec x{0.2, 0.6};
  CHECK((sum->v_at(0.25, 0.75, x) -
         (stochastic->v_at(0.25, 0.75, x) + smooth.v_at(0.25, 0.75, x)))
            .norm_inf() <= 1e-12);

  SpaceSample sample = SpaceSample::halton(Box::unit(2), 16, 16);
  NormalSampler rng(3);
  for (int i = 0; i < 30; ++i) {
    double a = rng.uniform01(), b = rng.uniform01(), c = rng.uniform01();
    double s = std::min({a, b, c}), t = std::max({a, b, c});
    double u = a + b + c - s - t;
    if (!(s < u && u < t)) continue;
    CHECK(chen_defect(*sum, s, u, t, sample) <= kTolAlgGrid);
  }
}

TEST_CASE("materialized grid reversal equals the wrapper") {
  ModeBasis basis(shear_fields(), {1.0, 1.0});
  auto drv = mode_driver(simulate_brownian_field(basis, 1.0, 64, 37), kParams);
  auto materialized = drv->reversed_from(1.0);
  DriverPtr wrapped = time_reverse(drv, 1.0);
  Vec x{0.4, -0.1};
  for (auto [s, t] : {std::pair{0.0, 1.0}, {0.25, 0.5}}) {
    CHECK((materialized->v_at(s, t, x) - wrapped->v_at(s, t, x)).norm_inf() <= 1e-13);
    CHECK((materialized->w_at(s, t, x) - wrapped->w_at(s, t, x)).norm_inf() <= 1e-13);
  }
}
