#include "window.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "error.hpp"
#include "parallel.hpp"
#include "summation.hpp"

namespace ssimlab {

void validate(const StabilityConstants& c) {
  if (!(c.c1 > 0.0) || !(c.c2 > 0.0) || !std::isfinite(c.c1) ||
      !std::isfinite(c.c2)) {
    fail_config("stability constants c1 and c2 must be positive");
  }
}

WeightWindow::WeightWindow(std::size_t k, std::vector<double> weights,
                           WindowAnchor anchor, BoundaryPolicy boundary)
    : k_(k), weights_(std::move(weights)), anchor_(anchor), boundary_(boundary) {
  if (k_ == 0) fail_config("window size must be positive");
  if (weights_.size() != k_ * k_) {
    std::ostringstream os;
    os << "weight buffer length " << weights_.size() << " does not match "
       << k_ << "x" << k_ << " window";
    fail_config(os.str());
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) fail_config("window weights must be non-negative");
    sum += w;
    w_max_ = std::max(w_max_, w);
  }
  if (std::fabs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "window weights must sum to 1 (got " << sum << ")";
    fail_config(os.str());
  }
}

WeightWindow WeightWindow::uniform(std::size_t k, WindowAnchor anchor,
                                   BoundaryPolicy boundary) {
  if (k == 0) fail_config("window size must be positive");
  // exact unit sum: n * (1/n) accumulates error, so assemble from 1/(k*k)
  // and rely on the constructor's 1e-12 tolerance
  const double w = 1.0 / static_cast<double>(k * k);
  return WeightWindow(k, std::vector<double>(k * k, w), anchor, boundary);
}

WeightWindow WeightWindow::whole_domain() {
  WeightWindow w;
  w.whole_domain_ = true;
  return w;
}

long WeightWindow::offset() const {
  return anchor_ == WindowAnchor::corner
             ? 0
             : -static_cast<long>(k_ / 2);
}

namespace {

LocalStats whole_domain_stats(const ScalarField2D& f, const ScalarField2D& g) {
  const GlobalStats gs = global_stats(f, g);
  LocalStats ls;
  ls.nx = f.nx();
  ls.ny = f.ny();
  const std::size_t n = f.size();
  ls.mu_f.assign(n, gs.mu_f);
  ls.mu_g.assign(n, gs.mu_g);
  ls.sigma_ff.assign(n, gs.var_f);
  ls.sigma_gg.assign(n, gs.var_g);
  ls.sigma_fg.assign(n, gs.cov_fg);
  ls.var_diff.assign(n, gs.var_diff);
  ls.valid.assign(n, 1);
  ls.valid_count = n;
  ls.w_max_effective = 1.0 / static_cast<double>(n);
  return ls;
}

}  // namespace

LocalStats local_stats(const ScalarField2D& f, const ScalarField2D& g,
                       const WeightWindow& w) {
  require_same_grid(f, g);
  if (w.is_whole_domain()) return whole_domain_stats(f, g);

  const std::size_t nx = f.nx();
  const std::size_t ny = f.ny();
  const std::size_t k = w.k();
  if (k > nx || k > ny) {
    std::ostringstream os;
    os << "window size " << k << " exceeds image dimensions " << nx << "x" << ny;
    fail_config(os.str());
  }

  LocalStats ls;
  ls.nx = nx;
  ls.ny = ny;
  const std::size_t n = nx * ny;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  ls.mu_f.assign(n, nan);
  ls.mu_g.assign(n, nan);
  ls.sigma_ff.assign(n, nan);
  ls.sigma_gg.assign(n, nan);
  ls.sigma_fg.assign(n, nan);
  ls.var_diff.assign(n, nan);
  ls.valid.assign(n, 0);

  const long off = w.offset();
  const bool renorm = w.boundary() == BoundaryPolicy::renormalize;
  const auto fv = f.values();
  const auto gv = g.values();
  std::vector<double> anchor_wmax(n, 0.0);

  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const long ax = static_cast<long>(idx % nx);
      const long ay = static_cast<long>(idx / nx);
      // in-image part of the shifted window
      const long px0 = std::max<long>(0, ax + off);
      const long py0 = std::max<long>(0, ay + off);
      const long px1 = std::min<long>(static_cast<long>(nx) - 1,
                                      ax + off + static_cast<long>(k) - 1);
      const long py1 = std::min<long>(static_cast<long>(ny) - 1,
                                      ay + off + static_cast<long>(k) - 1);
      const bool fits = (px1 - px0 + 1 == static_cast<long>(k)) &&
                        (py1 - py0 + 1 == static_cast<long>(k));
      if (!renorm && !fits) continue;  // clip_constant: skip partial anchors

      double wsum = 0.0, sf = 0.0, sg = 0.0, wmax = 0.0;
      for (long py = py0; py <= py1; ++py) {
        const std::size_t oy = static_cast<std::size_t>(py - ay - off);
        for (long px = px0; px <= px1; ++px) {
          const std::size_t ox = static_cast<std::size_t>(px - ax - off);
          const double wt = w.weight(ox, oy);
          const std::size_t p = static_cast<std::size_t>(py) * nx +
                                static_cast<std::size_t>(px);
          wsum += wt;
          sf += wt * fv[p];
          sg += wt * gv[p];
          wmax = std::max(wmax, wt);
        }
      }
      if (!(wsum > 0.0)) continue;  // window mass entirely outside the image
      const double mu_f = sf / wsum;
      const double mu_g = sg / wsum;
      const double mu_h = mu_f - mu_g;

      double sff = 0.0, sgg = 0.0, sfg = 0.0, shh = 0.0;
      for (long py = py0; py <= py1; ++py) {
        const std::size_t oy = static_cast<std::size_t>(py - ay - off);
        for (long px = px0; px <= px1; ++px) {
          const std::size_t ox = static_cast<std::size_t>(px - ax - off);
          const double wt = w.weight(ox, oy);
          const std::size_t p = static_cast<std::size_t>(py) * nx +
                                static_cast<std::size_t>(px);
          const double df = fv[p] - mu_f;
          const double dg = gv[p] - mu_g;
          const double dh = (fv[p] - gv[p]) - mu_h;
          sff += wt * df * df;
          sgg += wt * dg * dg;
          sfg += wt * df * dg;
          shh += wt * dh * dh;
        }
      }
      // weighted squares are non-negative by construction; the floor guards
      // against any residual rounding below zero
      ls.mu_f[idx] = mu_f;
      ls.mu_g[idx] = mu_g;
      ls.sigma_ff[idx] = std::max(0.0, sff / wsum);
      ls.sigma_gg[idx] = std::max(0.0, sgg / wsum);
      ls.sigma_fg[idx] = sfg / wsum;
      ls.var_diff[idx] = std::max(0.0, shh / wsum);
      ls.valid[idx] = 1;
      anchor_wmax[idx] = wmax / wsum;
    }
  });

  for (std::size_t idx = 0; idx < n; ++idx) {
    if (ls.valid[idx]) {
      ++ls.valid_count;
      ls.w_max_effective = std::max(ls.w_max_effective, anchor_wmax[idx]);
    }
  }
  if (ls.valid_count == 0) {
    fail_config("window never fits inside the image under clip_constant");
  }
  return ls;
}

GlobalStats global_stats(const ScalarField2D& f, const ScalarField2D& g) {
  require_same_grid(f, g);
  const auto fv = f.values();
  const auto gv = g.values();
  const std::size_t n = fv.size();
  GlobalStats gs;
  gs.mu_f = pairwise_mean(fv);
  gs.mu_g = pairwise_mean(gv);
  gs.var_f = pairwise_mean(n, [&](std::size_t i) {
    const double d = fv[i] - gs.mu_f;
    return d * d;
  });
  gs.var_g = pairwise_mean(n, [&](std::size_t i) {
    const double d = gv[i] - gs.mu_g;
    return d * d;
  });
  gs.cov_fg = pairwise_mean(n, [&](std::size_t i) {
    return (fv[i] - gs.mu_f) * (gv[i] - gs.mu_g);
  });
  gs.mu_diff = pairwise_mean(n, [&](std::size_t i) { return fv[i] - gv[i]; });
  gs.var_diff = pairwise_mean(n, [&](std::size_t i) {
    const double d = (fv[i] - gv[i]) - gs.mu_diff;
    return d * d;
  });
  gs.var_f = std::max(0.0, gs.var_f);
  gs.var_g = std::max(0.0, gs.var_g);
  gs.var_diff = std::max(0.0, gs.var_diff);
  return gs;
}

}  // namespace ssimlab
