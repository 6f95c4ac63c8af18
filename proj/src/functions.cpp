#include "functions.hpp"

#include <cmath>
#include <numbers>

#include "error.hpp"
#include "parallel.hpp"

namespace ssimlab {

namespace {

// sin(t)/t with a series fallback so the removable singularity stays smooth.
double sinc_core(double t) {
  if (std::fabs(t) < 1e-4) {
    const double t2 = t * t;
    return 1.0 - t2 / 6.0 * (1.0 - t2 / 20.0);
  }
  return std::sin(t) / t;
}

// d/dt [sin(t)/t] = (t cos t - sin t)/t^2, odd with slope -1/3 at 0.
double dsinc_core(double t) {
  if (std::fabs(t) < 1e-4) {
    const double t2 = t * t;
    return -t / 3.0 * (1.0 - t2 / 10.0);
  }
  return (t * std::cos(t) - std::sin(t)) / (t * t);
}

}  // namespace

double sinc(double x, SincConvention conv) {
  return conv == SincConvention::normalized
             ? sinc_core(std::numbers::pi * x)
             : sinc_core(x);
}

double dsinc(double x, SincConvention conv) {
  // chain rule for the scaled argument
  return conv == SincConvention::normalized
             ? std::numbers::pi * dsinc_core(std::numbers::pi * x)
             : dsinc_core(x);
}

TestFunction make_f1(SincConvention conv) {
  TestFunction f;
  f.id = "f1";
  f.sinc_convention = conv;
  f.eval = [conv](double x, double y) {
    const double xy = x * y;
    return 2.0 * xy * xy - sinc(x, conv) * sinc(y, conv) + 1.0;
  };
  f.d_x = [conv](double x, double y) {
    return 4.0 * x * y * y - dsinc(x, conv) * sinc(y, conv);
  };
  f.d_y = [conv](double x, double y) {
    return 4.0 * x * x * y - sinc(x, conv) * dsinc(y, conv);
  };
  f.d_xy = [conv](double x, double y) {
    return 8.0 * x * y - dsinc(x, conv) * dsinc(y, conv);
  };
  return f;
}

TestFunction make_f2() {
  TestFunction f;
  f.id = "f2";
  f.eval = [](double x, double y) {
    return std::exp(-(x + y)) - 3.0 * x + y + 5.0;
  };
  f.d_x = [](double x, double y) { return -std::exp(-(x + y)) - 3.0; };
  f.d_y = [](double x, double y) { return -std::exp(-(x + y)) + 1.0; };
  f.d_xy = [](double x, double y) { return std::exp(-(x + y)); };
  return f;
}

TestFunction make_custom(std::string id, Evaluable eval, Evaluable d_x,
                         Evaluable d_y, Evaluable d_xy) {
  if (!eval) fail_config("custom test function needs an eval closure");
  TestFunction f;
  f.id = std::move(id);
  f.eval = std::move(eval);
  f.d_x = std::move(d_x);
  f.d_y = std::move(d_y);
  f.d_xy = std::move(d_xy);
  return f;
}

TestFunction make_named(const std::string& id, SincConvention conv) {
  if (id == "f1") return make_f1(conv);
  if (id == "f2") return make_f2();
  fail_config("unknown test function '" + id + "' (expected f1 or f2)");
}

ScalarField2D sample(const Evaluable& f, const GridSpec& grid) {
  if (!f) fail_config("cannot sample an empty function");
  std::vector<double> values(grid.size());
  const std::size_t nx = grid.nx();
  parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      values[idx] = f(grid.x(idx % nx), grid.y(idx / nx));
    }
  });
  return ScalarField2D(grid, std::move(values));
}

ScalarField2D sample(const TestFunction& f, const GridSpec& grid) {
  return sample(f.eval, grid);
}

}  // namespace ssimlab
