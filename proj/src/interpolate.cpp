#include "interpolate.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>
#include <sstream>

#include "error.hpp"

namespace ssimlab {

NodeSet NodeSet::tensor(const std::vector<double>& axis_x,
                        const std::vector<double>& axis_y) {
  NodeSet n;
  n.xs.reserve(axis_x.size() * axis_y.size());
  n.ys.reserve(axis_x.size() * axis_y.size());
  for (double y : axis_y) {
    for (double x : axis_x) {
      n.xs.push_back(x);
      n.ys.push_back(y);
    }
  }
  return n;
}

NodeSet NodeSet::from_grid(const GridSpec& grid) {
  std::vector<double> ax(grid.nx()), ay(grid.ny());
  for (std::size_t i = 0; i < ax.size(); ++i) ax[i] = grid.x(i);
  for (std::size_t j = 0; j < ay.size(); ++j) ay[j] = grid.y(j);
  return tensor(ax, ay);
}

void require_distinct(const NodeSet& nodes) {
  const std::size_t n = nodes.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (nodes.xs[a] != nodes.xs[b]) return nodes.xs[a] < nodes.xs[b];
    return nodes.ys[a] < nodes.ys[b];
  });
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t a = order[i - 1], b = order[i];
    if (nodes.xs[a] == nodes.xs[b] && nodes.ys[a] == nodes.ys[b]) {
      std::ostringstream os;
      os << "duplicate node (" << nodes.xs[a] << ", " << nodes.ys[a] << ")";
      fail_config(os.str());
    }
  }
}

double fill_distance(const NodeSet& nodes, const GridSpec& probe_grid) {
  if (nodes.size() == 0) fail_config("empty node set");
  double worst = 0.0;
  for (std::size_t j = 0; j < probe_grid.ny(); ++j) {
    const double py = probe_grid.y(j);
    for (std::size_t i = 0; i < probe_grid.nx(); ++i) {
      const double px = probe_grid.x(i);
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        const double dx = px - nodes.xs[k];
        const double dy = py - nodes.ys[k];
        best = std::min(best, dx * dx + dy * dy);
      }
      worst = std::max(worst, best);
    }
  }
  return std::sqrt(worst);
}

double wendland21_radial(double r) {
  if (r >= 1.0) return 0.0;
  const double t = 1.0 - r;
  const double t2 = t * t;
  return t2 * t2 * (4.0 * r + 1.0);
}

double cubic_matern_radial(double r) {
  return std::exp(-r) * (15.0 + r * (15.0 + r * (6.0 + r)));
}

KernelSpec KernelSpec::wendland21(double shape) {
  KernelSpec k = custom(&wendland21_radial, 2.5, shape);
  k.id = KernelId::wendland21;
  return k;
}

KernelSpec KernelSpec::cubic_matern(double shape) {
  KernelSpec k = custom(&cubic_matern_radial, 4.5, shape);
  k.id = KernelId::cubic_matern;
  return k;
}

KernelSpec KernelSpec::custom(std::function<double(double)> radial, double tau,
                              double shape) {
  if (!radial) fail_config("kernel needs a radial function");
  if (!(shape > 0.0)) fail_config("kernel shape parameter must be positive");
  KernelSpec k;
  k.id = KernelId::custom;
  k.radial = std::move(radial);
  k.shape = shape;
  k.tau = tau;
  if (!(k.radial(0.0) > 0.0)) fail_config("kernel radial(0) must be positive");
  return k;
}

namespace {

void check_axis(const std::vector<double>& xs, const char* name,
                std::size_t min_nodes) {
  if (xs.size() < min_nodes) {
    std::ostringstream os;
    os << "axis " << name << " needs at least " << min_nodes << " nodes, got "
       << xs.size();
    fail_config(os.str());
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i])) fail_config("node coordinates must be finite");
    if (i > 0 && !(xs[i] > xs[i - 1])) {
      std::ostringstream os;
      os << "axis " << name << " nodes must be strictly increasing";
      fail_config(os.str());
    }
  }
}

// Half-open cells, far edge folded into the last cell; a rounding-sized
// margin keeps boundary evaluation points from tripping the domain check.
std::size_t cell_of(const std::vector<double>& xs, double x) {
  const double lo = xs.front(), hi = xs.back();
  const double tol = 1e-12 * std::max({1.0, std::fabs(lo), std::fabs(hi)});
  if (!(x >= lo - tol) || !(x <= hi + tol)) {
    std::ostringstream os;
    os << "evaluation point " << x << " outside [" << lo << ", " << hi << "]";
    fail_config(os.str());
  }
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::ptrdiff_t raw = (it - xs.begin()) - 1;
  const std::ptrdiff_t last = static_cast<std::ptrdiff_t>(xs.size()) - 2;
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(raw, 0, last));
}

void check_value_count(const std::vector<double>& values, std::size_t nx,
                       std::size_t ny) {
  if (values.size() != nx * ny) {
    std::ostringstream os;
    os << "value buffer length " << values.size() << " does not match " << nx
       << "x" << ny << " nodes";
    fail_config(os.str());
  }
}

struct GridData {
  std::vector<double> xs, ys, v;
  std::size_t nx() const { return xs.size(); }
  double at(std::size_t i, std::size_t j) const { return v[j * nx() + i]; }
};

// cubic Hermite basis on [0,1]
double h00(double t) { return ((2.0 * t - 3.0) * t) * t + 1.0; }
double h10(double t) { return ((t - 2.0) * t + 1.0) * t; }
double h01(double t) { return (3.0 - 2.0 * t) * t * t; }
double h11(double t) { return (t - 1.0) * t * t; }

struct BicubicData : GridData {
  std::vector<double> fx, fy, fxy;
};

double bicubic_eval_at(const BicubicData& d, double x, double y) {
  const std::size_t i = cell_of(d.xs, x);
  const std::size_t j = cell_of(d.ys, y);
  const double dx = d.xs[i + 1] - d.xs[i];
  const double dy = d.ys[j + 1] - d.ys[j];
  const double u = (x - d.xs[i]) / dx;
  const double v = (y - d.ys[j]) / dy;
  const double bu[4] = {h00(u), h01(u), h10(u) * dx, h11(u) * dx};
  const double bv[4] = {h00(v), h01(v), h10(v) * dy, h11(v) * dy};
  const std::size_t nx = d.nx();
  double out = 0.0;
  for (int cy = 0; cy < 2; ++cy) {
    for (int cx = 0; cx < 2; ++cx) {
      const std::size_t p = (j + cy) * nx + (i + cx);
      out += bu[cx] * bv[cy] * d.v[p];
      out += bu[cx + 2] * bv[cy] * d.fx[p];
      out += bu[cx] * bv[cy + 2] * d.fy[p];
      out += bu[cx + 2] * bv[cy + 2] * d.fxy[p];
    }
  }
  return out;
}

double uniform_spacing(const std::vector<double>& xs, const char* name) {
  const double s = xs[1] - xs[0];
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    if (std::fabs((xs[i + 1] - xs[i]) - s) > 1e-9 * s) {
      std::ostringstream os;
      os << "finite-difference derivatives need uniform spacing on axis "
         << name;
      fail_config(os.str());
    }
  }
  return s;
}

// centered interior, 3-point one-sided at the ends; second order throughout
void fd_along_x(const std::vector<double>& v, std::size_t nx, std::size_t ny,
                double h, std::vector<double>& out) {
  out.resize(v.size());
  for (std::size_t j = 0; j < ny; ++j) {
    const double* row = v.data() + j * nx;
    double* orow = out.data() + j * nx;
    orow[0] = (-3.0 * row[0] + 4.0 * row[1] - row[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < nx; ++i) {
      orow[i] = (row[i + 1] - row[i - 1]) / (2.0 * h);
    }
    orow[nx - 1] =
        (3.0 * row[nx - 1] - 4.0 * row[nx - 2] + row[nx - 3]) / (2.0 * h);
  }
}

void fd_along_y(const std::vector<double>& v, std::size_t nx, std::size_t ny,
                double h, std::vector<double>& out) {
  out.resize(v.size());
  for (std::size_t i = 0; i < nx; ++i) {
    out[i] = (-3.0 * v[i] + 4.0 * v[nx + i] - v[2 * nx + i]) / (2.0 * h);
    for (std::size_t j = 1; j + 1 < ny; ++j) {
      out[j * nx + i] = (v[(j + 1) * nx + i] - v[(j - 1) * nx + i]) / (2.0 * h);
    }
    out[(ny - 1) * nx + i] = (3.0 * v[(ny - 1) * nx + i] -
                              4.0 * v[(ny - 2) * nx + i] +
                              v[(ny - 3) * nx + i]) /
                             (2.0 * h);
  }
}

std::vector<double> axis_of(const GridSpec& g, bool x_axis) {
  std::vector<double> out(x_axis ? g.nx() : g.ny());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = x_axis ? g.x(i) : g.y(i);
  }
  return out;
}

Interpolant finish_bicubic(std::shared_ptr<BicubicData> d, std::string source) {
  Interpolant out;
  out.method = InterpMethod::hermite_bicubic;
  out.nodes = NodeSet::tensor(d->xs, d->ys);
  out.deriv_source = std::move(source);
  out.eval = [d = std::move(d)](double x, double y) {
    return bicubic_eval_at(*d, x, y);
  };
  return out;
}

Eigen::MatrixXd build_kernel_matrix(const NodeSet& nodes, const KernelSpec& k) {
  const std::size_t n = nodes.size();
  Eigen::MatrixXd K(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    K(i, i) = k.eval(0.0);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = nodes.xs[i] - nodes.xs[j];
      const double dy = nodes.ys[i] - nodes.ys[j];
      const double val = k.eval(std::sqrt(dx * dx + dy * dy));
      K(i, j) = val;
      K(j, i) = val;
    }
  }
  return K;
}

}  // namespace

Interpolant bilinear_fit(std::vector<double> xs, std::vector<double> ys,
                         std::vector<double> values) {
  check_axis(xs, "x", 2);
  check_axis(ys, "y", 2);
  check_value_count(values, xs.size(), ys.size());
  auto d = std::make_shared<GridData>();
  d->xs = std::move(xs);
  d->ys = std::move(ys);
  d->v = std::move(values);
  Interpolant out;
  out.method = InterpMethod::bilinear;
  out.nodes = NodeSet::tensor(d->xs, d->ys);
  out.eval = [d = std::move(d)](double x, double y) {
    const std::size_t i = cell_of(d->xs, x);
    const std::size_t j = cell_of(d->ys, y);
    const double u = (x - d->xs[i]) / (d->xs[i + 1] - d->xs[i]);
    const double v = (y - d->ys[j]) / (d->ys[j + 1] - d->ys[j]);
    return d->at(i, j) * (1.0 - u) * (1.0 - v) +
           d->at(i + 1, j) * u * (1.0 - v) +
           d->at(i, j + 1) * (1.0 - u) * v + d->at(i + 1, j + 1) * u * v;
  };
  return out;
}

Interpolant bilinear_fit(const ScalarField2D& samples) {
  return bilinear_fit(axis_of(samples.grid(), true),
                      axis_of(samples.grid(), false),
                      {samples.values().begin(), samples.values().end()});
}

Interpolant bicubic_fit(std::vector<double> xs, std::vector<double> ys,
                        std::vector<double> values, const TestFunction& exact) {
  check_axis(xs, "x", 2);
  check_axis(ys, "y", 2);
  check_value_count(values, xs.size(), ys.size());
  if (!exact.d_x || !exact.d_y || !exact.d_xy) {
    fail_config("exact-derivative bicubic needs d_x, d_y and d_xy");
  }
  auto d = std::make_shared<BicubicData>();
  d->xs = std::move(xs);
  d->ys = std::move(ys);
  d->v = std::move(values);
  const std::size_t nx = d->xs.size(), ny = d->ys.size();
  d->fx.resize(nx * ny);
  d->fy.resize(nx * ny);
  d->fxy.resize(nx * ny);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const double x = d->xs[i], y = d->ys[j];
      d->fx[j * nx + i] = exact.d_x(x, y);
      d->fy[j * nx + i] = exact.d_y(x, y);
      d->fxy[j * nx + i] = exact.d_xy(x, y);
    }
  }
  return finish_bicubic(std::move(d), "exact");
}

Interpolant bicubic_fit(const ScalarField2D& samples,
                        const TestFunction& exact) {
  return bicubic_fit(axis_of(samples.grid(), true),
                     axis_of(samples.grid(), false),
                     {samples.values().begin(), samples.values().end()}, exact);
}

Interpolant bicubic_fit(std::vector<double> xs, std::vector<double> ys,
                        std::vector<double> values) {
  check_axis(xs, "x", 4);
  check_axis(ys, "y", 4);
  check_value_count(values, xs.size(), ys.size());
  const double hx = uniform_spacing(xs, "x");
  const double hy = uniform_spacing(ys, "y");
  auto d = std::make_shared<BicubicData>();
  d->xs = std::move(xs);
  d->ys = std::move(ys);
  d->v = std::move(values);
  const std::size_t nx = d->xs.size(), ny = d->ys.size();
  fd_along_x(d->v, nx, ny, hx, d->fx);
  fd_along_y(d->v, nx, ny, hy, d->fy);
  fd_along_y(d->fx, nx, ny, hy, d->fxy);
  return finish_bicubic(std::move(d), "fd_4x4");
}

Interpolant bicubic_fit(const ScalarField2D& samples) {
  return bicubic_fit(axis_of(samples.grid(), true),
                     axis_of(samples.grid(), false),
                     {samples.values().begin(), samples.values().end()});
}

Interpolant kernel_fit(const NodeSet& nodes, const std::vector<double>& values,
                       const KernelSpec& k, double lambda) {
  const std::size_t n = nodes.size();
  if (n == 0) fail_config("empty node set");
  if (nodes.ys.size() != n) fail_config("node coordinate arrays differ in length");
  if (values.size() != n) {
    std::ostringstream os;
    os << "value count " << values.size() << " does not match " << n
       << " nodes";
    fail_config(os.str());
  }
  if (!(lambda >= 0.0)) fail_config("regularization must be non-negative");
  if (!k.radial) fail_config("kernel needs a radial function");
  require_distinct(nodes);

  Eigen::MatrixXd K = build_kernel_matrix(nodes, k);
  K.diagonal().array() += lambda;
  Eigen::LLT<Eigen::MatrixXd> llt(K);
  if (llt.info() != Eigen::Success) {
    std::ostringstream os;
    os << "kernel matrix factorization failed for " << n << " nodes";
    if (n <= 2048) {
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
          K, Eigen::EigenvaluesOnly);
      const double lo = es.eigenvalues().minCoeff();
      const double hi = es.eigenvalues().maxCoeff();
      os << " (eigenvalue range [" << lo << ", " << hi << "], condition ~ "
         << std::fabs(hi) / std::max(std::fabs(lo), 1e-300) << ")";
    }
    os << "; retry with regularization >= " << suggested_lambda(k);
    fail_numeric(os.str());
  }
  Eigen::VectorXd rhs(n);
  for (std::size_t i = 0; i < n; ++i) rhs[i] = values[i];
  const Eigen::VectorXd alpha = llt.solve(rhs);

  struct KernelData {
    NodeSet nodes;
    std::vector<double> alpha;
    KernelSpec k;
  };
  auto d = std::make_shared<KernelData>();
  d->nodes = nodes;
  d->alpha.assign(alpha.data(), alpha.data() + n);
  d->k = k;

  Interpolant out;
  out.method = InterpMethod::kernel;
  out.nodes = nodes;
  out.kernel_id = k.id == KernelId::wendland21    ? "wendland21"
                  : k.id == KernelId::cubic_matern ? "cubic_matern"
                                                   : "custom";
  out.shape = k.shape;
  out.lambda = lambda;
  out.tau = k.tau;
  out.eval = [d = std::move(d)](double x, double y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < d->nodes.size(); ++i) {
      const double dx = x - d->nodes.xs[i];
      const double dy = y - d->nodes.ys[i];
      acc += d->alpha[i] * d->k.eval(std::sqrt(dx * dx + dy * dy));
    }
    return acc;
  };
  return out;
}

std::vector<double> kernel_matrix(const NodeSet& nodes, const KernelSpec& k) {
  if (nodes.size() == 0) fail_config("empty node set");
  if (!k.radial) fail_config("kernel needs a radial function");
  const Eigen::MatrixXd K = build_kernel_matrix(nodes, k);
  std::vector<double> out(nodes.size() * nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      out[i * nodes.size() + j] = K(i, j);
    }
  }
  return out;
}

double suggested_lambda(const KernelSpec& k) {
  if (!k.radial) fail_config("kernel needs a radial function");
  return 1e-12 * k.radial(0.0);
}

}  // namespace ssimlab
