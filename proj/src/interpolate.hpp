#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "field.hpp"
#include "functions.hpp"

namespace ssimlab {

// Scattered evaluation sites; tensor() builds the row-major grid ordering the
// rest of the library uses (x fastest).
struct NodeSet {
  std::vector<double> xs;
  std::vector<double> ys;
  std::size_t size() const { return xs.size(); }
  static NodeSet tensor(const std::vector<double>& axis_x,
                        const std::vector<double>& axis_y);
  static NodeSet from_grid(const GridSpec& grid);
};

// Exact-duplicate detection; duplicates make the kernel matrix singular.
void require_distinct(const NodeSet& nodes);

// Largest distance from any probe-grid node to its nearest node in the set.
// For an equispaced grid of spacing s this lands on sqrt(2)*s/2 up to probe
// resolution.
double fill_distance(const NodeSet& nodes, const GridSpec& probe_grid);

double wendland21_radial(double r);    // (1-r)_+^4 (4r+1), supported on [0,1)
double cubic_matern_radial(double r);  // e^-r (15 + 15r + 6r^2 + r^3)

enum class KernelId { wendland21, cubic_matern, custom };

struct KernelSpec {
  KernelId id = KernelId::custom;
  std::function<double(double)> radial;  // of the already-scaled argument
  double shape = 1.0;                    // kernel evaluates radial(shape * r)
  double tau = 0.0;                      // smoothness order, reporting only
  double eval(double r) const { return radial(shape * r); }
  static KernelSpec wendland21(double shape = 1.0);
  static KernelSpec cubic_matern(double shape = 1.0);
  static KernelSpec custom(std::function<double(double)> radial, double tau,
                           double shape = 1.0);
};

enum class InterpMethod { bilinear, hermite_bicubic, kernel };

// A fitted reconstruction. eval is pure and safe to call from many threads;
// it throws on points outside the node hull (modulo a rounding-sized margin).
struct Interpolant {
  InterpMethod method = InterpMethod::bilinear;
  NodeSet nodes;
  Evaluable eval;
  // fit settings recorded for run metadata
  std::string kernel_id;
  double shape = 0.0;
  double lambda = 0.0;
  double tau = 0.0;
  std::string deriv_source;  // "exact" or "fd_4x4" for bicubic fits
};

// Grid engines take strictly increasing per-axis node arrays; values are
// row-major with x fastest. The ScalarField2D overloads read both from the
// field's own grid.
Interpolant bilinear_fit(std::vector<double> xs, std::vector<double> ys,
                         std::vector<double> values);
Interpolant bilinear_fit(const ScalarField2D& samples);

// exact-derivative flavor: corner derivatives from the function's partials
Interpolant bicubic_fit(std::vector<double> xs, std::vector<double> ys,
                        std::vector<double> values, const TestFunction& exact);
Interpolant bicubic_fit(const ScalarField2D& samples, const TestFunction& exact);
// finite-difference flavor: centered interior stencils, one-sided at borders,
// cross derivative by differentiating the x-derivative along y; needs uniform
// spacing and at least 4 nodes per axis
Interpolant bicubic_fit(std::vector<double> xs, std::vector<double> ys,
                        std::vector<double> values);
Interpolant bicubic_fit(const ScalarField2D& samples);

// Solves (K + lambda I) alpha = values with a symmetric positive definite
// factorization; K_ij = radial(shape * |x_i - x_j|). Dense direct solve; fine
// at desk scale, the compact support of the Wendland kernel is not exploited.
Interpolant kernel_fit(const NodeSet& nodes, const std::vector<double>& values,
                       const KernelSpec& k, double lambda = 0.0);

// Row-major n*n kernel matrix without regularization, for inspection.
std::vector<double> kernel_matrix(const NodeSet& nodes, const KernelSpec& k);

// 1e-12 * trace(K)/n = 1e-12 * radial(0): the retry regularization when the
// plain factorization fails.
double suggested_lambda(const KernelSpec& k);

}  // namespace ssimlab
