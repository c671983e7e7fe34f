#include <doctest.h>

#include <cmath>

#include "roughflow/core/norms.hpp"
#include "roughflow/core/params.hpp"
#include "roughflow/core/time.hpp"

using namespace roughflow;

namespace {

FieldPtr sin_field_1d() {
  // f(x) = sin(x) with analytic derivatives
  return std::make_shared<CallbackField>(
      1, [](const Vec& x) { return Vec{std::sin(x[0])}; },
      [](const Vec& x) {
        Mat m(1);
        m(0, 0) = std::cos(x[0]);
        return m;
      },
      [](const Vec& x) {
        Ten3 t(1);
        t(0, 0, 0) = -std::sin(x[0]);
        return t;
      },
      [](const Vec& x) {
        Ten4 t(1);
        t(0, 0, 0, 0) = -std::cos(x[0]);
        return t;
      });
}

}  // namespace

TEST_CASE("dyadic partitions") {
  Partition p0 = dyadic_partition(TimeInterval(0.0, 1.0), 0);
  CHECK(p0.points == std::vector<double>{0.0, 1.0});
  CHECK(p0.mesh() == doctest::Approx(1.0));

  Partition p3 = dyadic_partition(TimeInterval(0.0, 1.0), 3);
  CHECK(p3.points.size() == 9);
  CHECK(p3.mesh() == doctest::Approx(0.125));

  Partition shifted = dyadic_partition(TimeInterval(0.5, 1.5, 2.0), 1);
  REQUIRE(shifted.points.size() == 3);
  CHECK(shifted.points[0] == doctest::Approx(0.5));
  CHECK(shifted.points[1] == doctest::Approx(1.0));
  CHECK(shifted.points[2] == doctest::Approx(1.5));

  CHECK_THROWS_AS(dyadic_partition(TimeInterval(0.0, 1.0), 25), ConfigError);

  // level k+1 refines level k point-setwise
  Partition fine = dyadic_partition(TimeInterval(0.0, 1.0), 4);
  for (double u : p3.points) {
    bool found = false;
    for (double v : fine.points)
      if (v == u) found = true;
    CHECK(found);
  }
}

TEST_CASE("space samples stay in the box with pair distances in (0,1]") {
  Box box = Box::unit(2);
  SpaceSample s = SpaceSample::halton(box, 64, 128);
  CHECK(s.points.size() == 64);
  CHECK(s.pairs.size() == 128);
  for (const auto& x : s.points) CHECK(box.contains(x, 1e-12));
  for (const auto& [x, y] : s.pairs) {
    double r = dist2(x, y);
    CHECK(r > 0.0);
    CHECK(r <= 1.0 + 1e-12);
    CHECK(box.contains(x, 1e-12));
    CHECK(box.contains(y, 1e-12));
  }
}

TEST_CASE("hoelder quotient closed forms") {
  Box box = Box::unit(1);
  SpaceSample s = SpaceSample::halton(box, 32, 64);

  SUBCASE("constant map is flat") {
    CHECK(hoelder_quotient([](const Vec&) { return 3.5; }, s, 0.7) == 0.0);
  }
  SUBCASE("identity is 1-Lipschitz with constant exactly 1") {
    CHECK(hoelder_quotient([](const Vec& x) { return x[0]; }, s, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("square root against its own modulus") {
    std::vector<std::pair<Vec, Vec>> pairs;
    for (double delta : {1.0, 0.25, 0.0625}) pairs.emplace_back(Vec{0.0}, Vec{delta});
    SpaceSample custom({Vec{0.0}}, pairs);
    double q = hoelder_quotient(
        [](const Vec& x) { return std::sqrt(std::abs(x[0])); }, custom, 0.5);
    CHECK(q == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("empty pair list is an error") {
    SpaceSample empty({Vec{0.0}}, {});
    CHECK_THROWS_AS(
        hoelder_quotient([](const Vec& x) { return x[0]; }, empty, 1.0), ConfigError);
  }
}

TEST_CASE("cr_norm closed forms") {
  SUBCASE("zero field") {
    SpaceSample s = SpaceSample::halton(Box::unit(2), 16, 32);
    ZeroField z(2);
    CHECK(cr_norm(z, s, 1, 1.0) == 0.0);
  }
  SUBCASE("constant vector, order 1") {
    SpaceSample s = SpaceSample::halton(Box::unit(2), 16, 32);
    ConstantField c(Vec{2.0, -1.0});
    CHECK(cr_norm(c, s, 1, 1.0) == doctest::Approx(2.0));
  }
  SUBCASE("sin on a dense interval, order 2") {
    SpaceSample s = SpaceSample::regular_1d(-3.14159265358979323846,
                                            3.14159265358979323846, 2001);
    double n = cr_norm(*sin_field_1d(), s, 2, 1.0);
    // sup|sin| + sup|cos| + Lip(-sin) = 3 analytically
    CHECK(n == doctest::Approx(3.0).epsilon(1e-3));
    CHECK(n <= 3.0 + 1e-12);
  }
  SUBCASE("order above the declared order is an error") {
    SpaceSample s = SpaceSample::halton(Box::unit(1), 8, 16);
    auto f = std::make_shared<CallbackField>(1, [](const Vec& x) { return x; });
    CHECK_THROWS_AS(cr_norm(*f, s, 1, 1.0), ConfigError);
  }
}

TEST_CASE("sample norms are monotone under enlargement and stable under relabeling") {
  Box box = Box::unit(1);
  SpaceSample small = SpaceSample::halton(box, 16, 32);
  SpaceSample big = small.merged(SpaceSample::halton(box, 64, 64));
  FieldPtr f = sin_field_1d();
  CHECK(cr_norm(*f, small, 2, 0.5) <= cr_norm(*f, big, 2, 0.5) + 1e-15);
  CHECK(holder_field_norm(*f, small, 2, 0.5) <=
        holder_field_norm(*f, big, 2, 0.5) + 1e-15);

  // relabeling: reversed point order gives the same value
  SpaceSample relabeled = small;
  std::reverse(relabeled.points.begin(), relabeled.points.end());
  std::reverse(relabeled.pairs.begin(), relabeled.pairs.end());
  CHECK(cr_norm(*f, small, 2, 0.5) == cr_norm(*f, relabeled, 2, 0.5));
}

TEST_CASE("finite differences converge at second order") {
  FieldPtr base = std::make_shared<CallbackField>(2, [](const Vec& x) {
    return Vec{std::sin(x[0]) * std::cos(x[1]), x[0] * x[0] * x[1]};
  });
  FieldPtr exact = std::make_shared<CallbackField>(
      2,
      [](const Vec& x) {
        return Vec{std::sin(x[0]) * std::cos(x[1]), x[0] * x[0] * x[1]};
      },
      [](const Vec& x) {
        Mat m(2);
        m(0, 0) = std::cos(x[0]) * std::cos(x[1]);
        m(0, 1) = -std::sin(x[0]) * std::sin(x[1]);
        m(1, 0) = 2.0 * x[0] * x[1];
        m(1, 1) = x[0] * x[0];
        return m;
      });
  Vec x{0.3, -0.4};
  auto err = [&](double h) {
    FiniteDiffField fd(base, h, 1);
    Mat a = fd.jacobian(x), b = exact->jacobian(x);
    double m = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
  };
  double e1 = err(1e-3), e2 = err(5e-4);
  double ratio = e1 / e2;
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);
  CHECK(FiniteDiffField(base, 1e-4, 1).analytic() == false);
}

TEST_CASE("driver params validate and flag well-posedness") {
  CHECK_THROWS_AS(DriverParams(3.5, 0.9), ConfigError);
  CHECK_THROWS_AS(DriverParams(2.5, 0.4), ConfigError);  // rho <= p - 2
  DriverParams good(2.2, 0.9);
  CHECK(good.well_posed());
  DriverParams bad(2.9, 0.95);
  CHECK(!bad.well_posed());
  CHECK(good.theoretical_rate() == doctest::Approx(3.0 * 0.9 / 2.2 - 1.0));
}
