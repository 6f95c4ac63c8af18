#pragma once

#include <cstddef>
#include <vector>

#include "bounds.hpp"
#include "field.hpp"
#include "functions.hpp"
#include "window.hpp"

namespace ssimlab {

// Literal two-factor decomposition ssim = M * S evaluated straight from the
// covariance statistics. Only for diagnostics: when f and g agree to many
// digits the S numerator and denominator cancel and the result is noise.
struct MsTerms {
  double m = 0.0;
  double s = 0.0;
};

MsTerms ms_terms(const GlobalStats& gs, const StabilityConstants& c);

// Cancellation-free dissimilarity components:
//   a = (mu_f - mu_g)^2 / (mu_f^2 + mu_g^2 + c1)   -- equals 1 - M
//   b = var(f - g)      / (var_f + var_g + c2)     -- equals 1 - S
// dissim = a + b - a*b = 1 - (1-a)(1-b), non-negative for non-negative inputs,
// and accurate down to machine-epsilon-sized differences because var(f - g)
// is accumulated from the difference field around its own mean.
struct DissimParts {
  double a = 0.0;
  double b = 0.0;
  double dissim() const { return a + b - a * b; }
};

DissimParts dissim_parts(const GlobalStats& gs, const StabilityConstants& c);

double ssim_global(const ScalarField2D& f, const ScalarField2D& g,
                   const StabilityConstants& c = {});
double dissim_global(const ScalarField2D& f, const ScalarField2D& g,
                     const StabilityConstants& c = {});

// Per-anchor dissimilarity from precomputed local statistics, same a/b route
// as the global path; NaN on anchors the boundary policy skipped.
std::vector<double> local_dissim_map(const LocalStats& ls,
                                     const StabilityConstants& c);

struct SimilarityReport {
  double ssim = 0.0;
  double wssim = 0.0;
  double l1 = 0.0;  // mean absolute difference
  double l2 = 0.0;  // root mean squared difference
  double dissim_global = 0.0;    // 1 - ssim without the cancellation
  double dissim_weighted = 0.0;  // 1 - wssim, same route anchor by anchor
  std::vector<double> q_map;     // per-anchor local ssim, NaN where skipped
  std::size_t map_nx = 0;
  std::size_t map_ny = 0;
  std::size_t valid_count = 0;
  BoundConstants constants;
  StabilityConstants stability;
};

// Full comparison: global and windowed indices, distances, bound constants.
// A whole-domain window short-circuits to the global statistics, so there
// wssim == ssim exactly rather than to rounding.
SimilarityReport compare(const ScalarField2D& f, const ScalarField2D& g,
                         const WeightWindow& w,
                         const StabilityConstants& c = {});

// Quadrature approximation of the continuous index: sample both on eval_grid
// (node average as the measure) and take the global ssim. Bias is O(step) for
// bounded continuous inputs.
double cssim_approx(const Evaluable& f, const Evaluable& g,
                    const GridSpec& eval_grid, const StabilityConstants& c = {});
double cssim_approx(const TestFunction& f, const Evaluable& g,
                    const GridSpec& eval_grid, const StabilityConstants& c = {});

}  // namespace ssimlab
