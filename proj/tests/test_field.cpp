#include <cmath>
#include <vector>

#include "doctest.h"
#include "error.hpp"
#include "field.hpp"
#include "rng.hpp"

using namespace ssimlab;

namespace {

ScalarField2D random_field(Rng& rng, const GridSpec& grid, double lo = 0.0,
                           double hi = 1.0) {
  std::vector<double> v(grid.size());
  for (double& x : v) x = rng.uniform(lo, hi);
  return ScalarField2D(grid, std::move(v));
}

// naive accumulation oracle, written deliberately unlike the library's
// pairwise reductions
double naive_mean(const ScalarField2D& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s / static_cast<double>(f.size());
}

}  // namespace

TEST_CASE("vertex grids hit both endpoints exactly") {
  const GridSpec g(Domain2D::unit(), 0.1, 0.1);
  CHECK(g.nx() == 11);
  CHECK(g.ny() == 11);
  CHECK(g.x(0) == 0.0);
  CHECK(g.x(10) == 1.0);
  CHECK(g.y(10) == 1.0);
  CHECK(g.x(5) == doctest::Approx(0.5).epsilon(1e-15));

  const GridSpec r = GridSpec::rect({0.0, 2.0, -1.0, 1.0}, 4, 8);
  CHECK(r.nx() == 5);
  CHECK(r.ny() == 9);
  CHECK(r.x(4) == 2.0);
  CHECK(r.y(0) == -1.0);
  CHECK(r.y(8) == 1.0);
}

TEST_CASE("interior grids exclude the boundary") {
  const GridSpec g = GridSpec::square(Domain2D::unit(), 4, NodeLayout::interior);
  CHECK(g.nx() == 3);
  CHECK(g.x(0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(g.x(2) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("steps must divide the side length") {
  CHECK_THROWS_AS(GridSpec(Domain2D::unit(), 0.3, 0.1), Error);
  try {
    GridSpec(Domain2D::unit(), 0.3, 0.1);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config);
  }
}

TEST_CASE("field storage is row-major with x fastest") {
  const GridSpec g = GridSpec::square(Domain2D::unit(), 2);
  std::vector<double> v = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  const ScalarField2D f(g, v);
  CHECK(f.at(1, 0) == 1.0);
  CHECK(f.at(0, 1) == 3.0);
  CHECK(f.at(2, 2) == 8.0);
  CHECK(f.min_value() == 0.0);
  CHECK(f.max_value() == 8.0);
  CHECK(f.sup_abs() == 8.0);
}

TEST_CASE("value count must match the grid") {
  const GridSpec g = GridSpec::square(Domain2D::unit(), 2);
  CHECK_THROWS_AS(ScalarField2D(g, std::vector<double>(8)), Error);
}

TEST_CASE("non-negativity can be demanded at construction") {
  const GridSpec g = GridSpec::square(Domain2D::unit(), 1);
  CHECK_THROWS_AS(ScalarField2D(g, {0.5, -0.1, 0.2, 0.3}, true), Error);
  const ScalarField2D ok(g, {0.5, 0.1, 0.2, 0.3}, true);
  CHECK(ok.nonneg_checked());
}

TEST_CASE("moments agree with naive accumulation") {
  Rng rng(11);
  const GridSpec g = GridSpec::rect(Domain2D::unit(), 6, 4);
  const ScalarField2D f = random_field(rng, g);
  const ScalarField2D h = random_field(rng, g);

  const double mf = naive_mean(f);
  CHECK(mean(f) == doctest::Approx(mf).epsilon(1e-14));

  double var = 0.0, cov = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    var += (f.values()[i] - mf) * (f.values()[i] - mf);
    cov += (f.values()[i] - mf) * (h.values()[i] - naive_mean(h));
  }
  var /= static_cast<double>(f.size());
  cov /= static_cast<double>(f.size());
  CHECK(variance(f) == doctest::Approx(var).epsilon(1e-12));
  CHECK(covariance(f, h) == doctest::Approx(cov).epsilon(1e-12));
}

TEST_CASE("distances match their definitions") {
  Rng rng(12);
  const GridSpec g = GridSpec::square(Domain2D::unit(), 5);
  const ScalarField2D f = random_field(rng, g);
  const ScalarField2D h = random_field(rng, g);

  double sq = 0.0, ab = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = f.values()[i] - h.values()[i];
    sq += d * d;
    ab += std::fabs(d);
  }
  sq /= static_cast<double>(f.size());
  ab /= static_cast<double>(f.size());
  CHECK(l2_distance_sq(f, h) == doctest::Approx(sq).epsilon(1e-13));
  CHECK(l2_distance(f, h) == doctest::Approx(std::sqrt(sq)).epsilon(1e-13));
  CHECK(l1_distance(f, h) == doctest::Approx(ab).epsilon(1e-13));
  CHECK(l2_distance(f, h) * l2_distance(f, h) ==
        doctest::Approx(l2_distance_sq(f, h)).epsilon(1e-14));
}

TEST_CASE("grid mismatch is rejected") {
  Rng rng(13);
  const ScalarField2D a = random_field(rng, GridSpec::square(Domain2D::unit(), 4));
  const ScalarField2D b = random_field(rng, GridSpec::square(Domain2D::unit(), 5));
  CHECK_THROWS_AS(require_same_grid(a, b), Error);
  CHECK_THROWS_AS(l2_distance(a, b), Error);
}
