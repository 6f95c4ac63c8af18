#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ssimlab {

// Closed rectangle [a,b] x [c,d].
struct Domain2D {
  double a = 0.0, b = 1.0, c = 0.0, d = 1.0;

  double width() const { return b - a; }
  double height() const { return d - c; }
  bool contains(double x, double y, double tol = 0.0) const {
    return x >= a - tol && x <= b + tol && y >= c - tol && y <= d + tol;
  }
  static Domain2D unit() { return {0.0, 1.0, 0.0, 1.0}; }
};

bool operator==(const Domain2D& lhs, const Domain2D& rhs);

// vertex: nodes include both endpoints of each axis (m subdivisions, m+1
// nodes). interior: endpoints excluded (m subdivisions, m-1 nodes).
enum class NodeLayout { vertex, interior };

// Uniform tensor grid over a domain. The step must divide the side length
// (up to rounding); node counts are at least 2 per axis.
class GridSpec {
 public:
  GridSpec(const Domain2D& domain, double step_x, double step_y,
           NodeLayout layout = NodeLayout::vertex);

  // Step derived from a subdivision count; sidesteps divisibility rounding.
  static GridSpec square(const Domain2D& domain, std::size_t subdivisions,
                         NodeLayout layout = NodeLayout::vertex);
  static GridSpec rect(const Domain2D& domain, std::size_t subdivisions_x,
                       std::size_t subdivisions_y,
                       NodeLayout layout = NodeLayout::vertex);

  const Domain2D& domain() const { return domain_; }
  double step_x() const { return step_x_; }
  double step_y() const { return step_y_; }
  NodeLayout layout() const { return layout_; }
  std::size_t subdivisions_x() const { return mx_; }
  std::size_t subdivisions_y() const { return my_; }

  std::size_t nx() const;  // node count per axis
  std::size_t ny() const;
  std::size_t size() const { return nx() * ny(); }

  double x(std::size_t i) const;  // i in [0, nx)
  double y(std::size_t j) const;

 private:
  GridSpec(const Domain2D& domain, std::size_t mx, std::size_t my,
           NodeLayout layout);
  Domain2D domain_;
  double step_x_ = 0.0, step_y_ = 0.0;
  NodeLayout layout_ = NodeLayout::vertex;
  std::size_t mx_ = 0, my_ = 0;  // subdivisions per axis
};

bool operator==(const GridSpec& lhs, const GridSpec& rhs);

// Scalar samples on a grid, row-major with the x index fastest:
// values[j * nx + i] = f(x_i, y_j).
class ScalarField2D {
 public:
  ScalarField2D(GridSpec grid, std::vector<double> values,
                bool require_nonneg = false);
  static ScalarField2D zeros(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  std::size_t size() const { return values_.size(); }
  std::size_t nx() const { return grid_.nx(); }
  std::size_t ny() const { return grid_.ny(); }

  double at(std::size_t i, std::size_t j) const { return values_[j * nx() + i]; }
  double& at(std::size_t i, std::size_t j) { return values_[j * grid_.nx() + i]; }

  bool nonneg_checked() const { return nonneg_checked_; }
  double min_value() const;
  double max_value() const;
  double sup_abs() const;

 private:
  GridSpec grid_;
  std::vector<double> values_;
  bool nonneg_checked_ = false;
};

// Throws when the two fields do not live on the same grid.
void require_same_grid(const ScalarField2D& f, const ScalarField2D& g);

// Node-average quadrature against the normalized counting measure.
double mean(const ScalarField2D& f);
double covariance(const ScalarField2D& f, const ScalarField2D& g);
double variance(const ScalarField2D& f);

// sqrt(mean((f-g)^2)) and mean(|f-g|).
// mean of squared differences: the normalized squared L2 distance the bound
// machinery multiplies its constants against
double l2_distance_sq(const ScalarField2D& f, const ScalarField2D& g);
double l2_distance(const ScalarField2D& f, const ScalarField2D& g);
double l1_distance(const ScalarField2D& f, const ScalarField2D& g);

}  // namespace ssimlab
