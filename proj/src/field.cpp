#include "field.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "error.hpp"
#include "summation.hpp"

namespace ssimlab {

bool operator==(const Domain2D& lhs, const Domain2D& rhs) {
  return lhs.a == rhs.a && lhs.b == rhs.b && lhs.c == rhs.c && lhs.d == rhs.d;
}

namespace {

void check_domain(const Domain2D& dom) {
  if (!(dom.a < dom.b) || !(dom.c < dom.d)) {
    std::ostringstream os;
    os << "invalid domain [" << dom.a << "," << dom.b << "]x[" << dom.c << ","
       << dom.d << "]: sides must have positive length";
    fail_config(os.str());
  }
}

// Subdivision count for a step, requiring the step to tile the side.
std::size_t subdivisions_for(double side, double step, const char* axis) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    fail_config(std::string("grid step on ") + axis + " must be positive");
  }
  const double ratio = side / step;
  const auto m = static_cast<long long>(std::llround(ratio));
  // tolerance scaled like a few ulps of the ratio
  const double tol = 64.0 * std::numeric_limits<double>::epsilon() *
                     std::max(1.0, std::fabs(ratio));
  if (m < 1 || std::fabs(ratio - static_cast<double>(m)) > tol) {
    std::ostringstream os;
    os << "step " << step << " does not divide the " << axis
       << " side of length " << side;
    fail_config(os.str());
  }
  return static_cast<std::size_t>(m);
}

}  // namespace

GridSpec::GridSpec(const Domain2D& domain, std::size_t mx, std::size_t my,
                   NodeLayout layout)
    : domain_(domain), layout_(layout), mx_(mx), my_(my) {
  check_domain(domain);
  step_x_ = domain.width() / static_cast<double>(mx);
  step_y_ = domain.height() / static_cast<double>(my);
  if (nx() < 2 || ny() < 2) {
    fail_config("grid must have at least 2 nodes per axis");
  }
}

GridSpec::GridSpec(const Domain2D& domain, double step_x, double step_y,
                   NodeLayout layout)
    : GridSpec([&] {
        check_domain(domain);
        GridSpec g(domain, subdivisions_for(domain.width(), step_x, "x"),
                   subdivisions_for(domain.height(), step_y, "y"), layout);
        // keep the caller's step values exactly
        g.step_x_ = step_x;
        g.step_y_ = step_y;
        return g;
      }()) {}

GridSpec GridSpec::square(const Domain2D& domain, std::size_t subdivisions,
                          NodeLayout layout) {
  return rect(domain, subdivisions, subdivisions, layout);
}

GridSpec GridSpec::rect(const Domain2D& domain, std::size_t mx, std::size_t my,
                        NodeLayout layout) {
  if (mx == 0 || my == 0) fail_config("grid needs at least one subdivision");
  return GridSpec(domain, mx, my, layout);
}

std::size_t GridSpec::nx() const {
  return layout_ == NodeLayout::vertex ? mx_ + 1 : (mx_ >= 1 ? mx_ - 1 : 0);
}

std::size_t GridSpec::ny() const {
  return layout_ == NodeLayout::vertex ? my_ + 1 : (my_ >= 1 ? my_ - 1 : 0);
}

double GridSpec::x(std::size_t i) const {
  const std::size_t k = layout_ == NodeLayout::vertex ? i : i + 1;
  if (k == 0) return domain_.a;
  if (k == mx_) return domain_.b;
  return domain_.a +
         domain_.width() * (static_cast<double>(k) / static_cast<double>(mx_));
}

double GridSpec::y(std::size_t j) const {
  const std::size_t k = layout_ == NodeLayout::vertex ? j : j + 1;
  if (k == 0) return domain_.c;
  if (k == my_) return domain_.d;
  return domain_.c +
         domain_.height() * (static_cast<double>(k) / static_cast<double>(my_));
}

bool operator==(const GridSpec& lhs, const GridSpec& rhs) {
  return lhs.domain() == rhs.domain() && lhs.layout() == rhs.layout() &&
         lhs.subdivisions_x() == rhs.subdivisions_x() &&
         lhs.subdivisions_y() == rhs.subdivisions_y();
}

ScalarField2D::ScalarField2D(GridSpec grid, std::vector<double> values,
                             bool require_nonneg)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    std::ostringstream os;
    os << "value buffer length " << values_.size() << " does not match grid "
       << grid_.nx() << "x" << grid_.ny();
    fail_config(os.str());
  }
  if (require_nonneg) {
    for (std::size_t idx = 0; idx < values_.size(); ++idx) {
      if (!(values_[idx] >= 0.0)) {
        std::ostringstream os;
        os << "negative or non-finite value " << values_[idx]
           << " at flat index " << idx << " where non-negative data is required";
        fail_config(os.str());
      }
    }
    nonneg_checked_ = true;
  }
}

ScalarField2D ScalarField2D::zeros(const GridSpec& grid) {
  return ScalarField2D(grid, std::vector<double>(grid.size(), 0.0), true);
}

double ScalarField2D::min_value() const {
  double m = values_[0];
  for (double v : values_) m = std::min(m, v);
  return m;
}

double ScalarField2D::max_value() const {
  double m = values_[0];
  for (double v : values_) m = std::max(m, v);
  return m;
}

double ScalarField2D::sup_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::fabs(v));
  return m;
}

void require_same_grid(const ScalarField2D& f, const ScalarField2D& g) {
  if (!(f.grid() == g.grid())) {
    fail_config("fields live on different grids");
  }
}

double mean(const ScalarField2D& f) { return pairwise_mean(f.values()); }

double covariance(const ScalarField2D& f, const ScalarField2D& g) {
  require_same_grid(f, g);
  const double mu_f = mean(f);
  const double mu_g = mean(g);
  const auto fv = f.values();
  const auto gv = g.values();
  return pairwise_mean(fv.size(), [&](std::size_t i) {
    return (fv[i] - mu_f) * (gv[i] - mu_g);
  });
}

double variance(const ScalarField2D& f) {
  const double mu = mean(f);
  const auto v = f.values();
  return pairwise_mean(v.size(), [&](std::size_t i) {
    const double d = v[i] - mu;
    return d * d;
  });
}

double l2_distance_sq(const ScalarField2D& f, const ScalarField2D& g) {
  require_same_grid(f, g);
  const auto fv = f.values();
  const auto gv = g.values();
  return pairwise_mean(fv.size(), [&](std::size_t i) {
    const double d = fv[i] - gv[i];
    return d * d;
  });
}

double l2_distance(const ScalarField2D& f, const ScalarField2D& g) {
  return std::sqrt(l2_distance_sq(f, g));
}

double l1_distance(const ScalarField2D& f, const ScalarField2D& g) {
  require_same_grid(f, g);
  const auto fv = f.values();
  const auto gv = g.values();
  return pairwise_mean(fv.size(),
                       [&](std::size_t i) { return std::fabs(fv[i] - gv[i]); });
}

}  // namespace ssimlab
