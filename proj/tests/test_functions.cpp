#include <cmath>

#include "doctest.h"
#include "error.hpp"
#include "functions.hpp"

using namespace ssimlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

double central_x(const Evaluable& f, double x, double y, double h = 1e-6) {
  return (f(x + h, y) - f(x - h, y)) / (2.0 * h);
}

double central_y(const Evaluable& f, double x, double y, double h = 1e-6) {
  return (f(x, y + h) - f(x, y - h)) / (2.0 * h);
}

}  // namespace

TEST_CASE("sinc conventions agree at zero and differ elsewhere") {
  CHECK(sinc(0.0, SincConvention::normalized) == 1.0);
  CHECK(sinc(0.0, SincConvention::unnormalized) == 1.0);
  CHECK(sinc(1.0, SincConvention::normalized) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(sinc(1.0, SincConvention::unnormalized) ==
        doctest::Approx(std::sin(1.0)).epsilon(1e-15));
  CHECK(sinc(0.5, SincConvention::normalized) ==
        doctest::Approx(std::sin(kPi * 0.5) / (kPi * 0.5)).epsilon(1e-15));
}

TEST_CASE("sinc derivative matches finite differences, including at zero") {
  for (const auto conv :
       {SincConvention::normalized, SincConvention::unnormalized}) {
    for (const double x : {-0.7, 0.3, 1.2}) {
      const double fd =
          (sinc(x + 1e-6, conv) - sinc(x - 1e-6, conv)) / 2e-6;
      CHECK(dsinc(x, conv) == doctest::Approx(fd).epsilon(1e-7));
    }
    CHECK(dsinc(0.0, conv) == 0.0);
  }
}

TEST_CASE("f1 matches its closed form and derivatives") {
  const TestFunction f = make_f1();
  const double x = 0.3, y = 0.7;
  const double want =
      2.0 * (x * y) * (x * y) - sinc(x) * sinc(y) + 1.0;
  CHECK(f.eval(x, y) == doctest::Approx(want).epsilon(1e-15));
  CHECK(f.d_x(x, y) == doctest::Approx(central_x(f.eval, x, y)).epsilon(1e-8));
  CHECK(f.d_y(x, y) == doctest::Approx(central_y(f.eval, x, y)).epsilon(1e-8));
  CHECK(f.d_xy(x, y) ==
        doctest::Approx(central_y(f.d_x, x, y)).epsilon(1e-8));
}

TEST_CASE("f1 honors the sinc convention") {
  const TestFunction fn = make_f1(SincConvention::normalized);
  const TestFunction fu = make_f1(SincConvention::unnormalized);
  CHECK(fn.eval(0.5, 0.5) != fu.eval(0.5, 0.5));
  CHECK(fn.eval(0.0, 0.0) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("f2 matches its closed form and derivatives") {
  const TestFunction f = make_f2();
  const double x = 0.4, y = 0.9;
  const double e = std::exp(-(x + y));
  CHECK(f.eval(x, y) ==
        doctest::Approx(e - 3.0 * x + y + 5.0).epsilon(1e-15));
  CHECK(f.d_x(x, y) == doctest::Approx(-e - 3.0).epsilon(1e-15));
  CHECK(f.d_y(x, y) == doctest::Approx(-e + 1.0).epsilon(1e-15));
  CHECK(f.d_xy(x, y) == doctest::Approx(e).epsilon(1e-15));
}

TEST_CASE("named lookup knows f1 and f2 only") {
  CHECK(make_named("f1", SincConvention::normalized).id == "f1");
  CHECK(make_named("f2", SincConvention::normalized).id == "f2");
  CHECK_THROWS_AS(make_named("f3", SincConvention::normalized), Error);
}

TEST_CASE("sampling lays values out row-major, x fastest") {
  const GridSpec g = GridSpec::rect(Domain2D::unit(), 3, 2);
  const ScalarField2D f =
      sample([](double x, double y) { return 10.0 * y + x; }, g);
  for (std::size_t j = 0; j < g.ny(); ++j) {
    for (std::size_t i = 0; i < g.nx(); ++i) {
      CHECK(f.at(i, j) ==
            doctest::Approx(10.0 * g.y(j) + g.x(i)).epsilon(1e-15));
    }
  }
}
