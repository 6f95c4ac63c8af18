#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "field.hpp"

namespace ssimlab {

// Stabilizers of the two similarity factors; the defaults follow the usual
// (K L)^2 recipe with K1 = 0.01, K2 = 0.03 on a unit dynamic range.
struct StabilityConstants {
  double c1 = 1e-4;
  double c2 = 9e-4;
};

void validate(const StabilityConstants& c);

// corner: the window extends down-right from the anchor pixel.
// center: offsets [-floor(k/2), k-1-floor(k/2)] per axis.
enum class WindowAnchor { corner, center };

// renormalize: clip the window at image borders and rescale to unit sum.
// clip_constant: keep only anchors where the window fits entirely.
enum class BoundaryPolicy { renormalize, clip_constant };

// k x k non-negative weights with unit sum, plus the special whole-domain
// window (every pixel weighted 1/N regardless of anchor).
class WeightWindow {
 public:
  WeightWindow(std::size_t k, std::vector<double> weights,
               WindowAnchor anchor = WindowAnchor::center,
               BoundaryPolicy boundary = BoundaryPolicy::renormalize);

  static WeightWindow uniform(std::size_t k,
                              WindowAnchor anchor = WindowAnchor::center,
                              BoundaryPolicy boundary = BoundaryPolicy::renormalize);
  static WeightWindow whole_domain();

  bool is_whole_domain() const { return whole_domain_; }
  std::size_t k() const { return k_; }
  std::span<const double> weights() const { return weights_; }
  double weight(std::size_t ox, std::size_t oy) const {
    return weights_[oy * k_ + ox];
  }
  WindowAnchor anchor() const { return anchor_; }
  BoundaryPolicy boundary() const { return boundary_; }

  // largest single weight of the base window
  double w_max() const { return w_max_; }
  // anchor offset of the window's first cell (0 for corner, -floor(k/2) center)
  long offset() const;

 private:
  WeightWindow() = default;
  bool whole_domain_ = false;
  std::size_t k_ = 0;
  std::vector<double> weights_;
  WindowAnchor anchor_ = WindowAnchor::center;
  BoundaryPolicy boundary_ = BoundaryPolicy::renormalize;
  double w_max_ = 0.0;
};

// Per-anchor weighted statistics. Maps are row-major on the image grid; under
// clip_constant, anchors where the window does not fit carry NaN and
// valid[idx] == 0. var_diff is the weighted variance of f-g around its own
// weighted mean, carried separately because forming it from the sigmas
// cancels catastrophically when f and g are close.
struct LocalStats {
  std::size_t nx = 0, ny = 0;
  std::vector<double> mu_f, mu_g;
  std::vector<double> sigma_ff, sigma_gg, sigma_fg;
  std::vector<double> var_diff;
  std::vector<std::uint8_t> valid;
  std::size_t valid_count = 0;
  // largest per-anchor weight after boundary handling
  double w_max_effective = 0.0;
};

LocalStats local_stats(const ScalarField2D& f, const ScalarField2D& g,
                       const WeightWindow& w);

// Global two-pass statistics shared by the similarity and bound routines.
struct GlobalStats {
  double mu_f = 0.0, mu_g = 0.0;
  double var_f = 0.0, var_g = 0.0;
  double cov_fg = 0.0;
  double mu_diff = 0.0;   // mean of f-g
  double var_diff = 0.0;  // variance of f-g
};

GlobalStats global_stats(const ScalarField2D& f, const ScalarField2D& g);

}  // namespace ssimlab
