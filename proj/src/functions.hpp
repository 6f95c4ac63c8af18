#pragma once

#include <functional>
#include <string>

#include "field.hpp"

namespace ssimlab {

// normalized: sin(pi x)/(pi x); unnormalized: sin(x)/x. Both 1 at x = 0.
enum class SincConvention { normalized, unnormalized };

double sinc(double x, SincConvention conv = SincConvention::normalized);
double dsinc(double x, SincConvention conv = SincConvention::normalized);

using Evaluable = std::function<double(double, double)>;

// Smooth target with exact first and mixed partials, used by the experiment
// harness and by the exact-derivative bicubic fit.
struct TestFunction {
  std::string id;
  SincConvention sinc_convention = SincConvention::normalized;
  Evaluable eval;
  Evaluable d_x, d_y, d_xy;
};

// 2(x y)^2 - sinc(x) sinc(y) + 1
TestFunction make_f1(SincConvention conv = SincConvention::normalized);
// exp(-(x+y)) - 3x + y + 5
TestFunction make_f2();
TestFunction make_custom(std::string id, Evaluable eval, Evaluable d_x,
                         Evaluable d_y, Evaluable d_xy);
// Lookup by name ("f1"/"f2"); throws on anything else.
TestFunction make_named(const std::string& id, SincConvention conv);

ScalarField2D sample(const Evaluable& f, const GridSpec& grid);
ScalarField2D sample(const TestFunction& f, const GridSpec& grid);

}  // namespace ssimlab
