#pragma once

#include <cstddef>
#include <cstdint>

#include "field.hpp"
#include "window.hpp"

namespace ssimlab {

// Multipliers that relate the dissimilarity index 1 - ssim to the squared
// L2 distance, plus the companion constants for the reverse inequality.
// Chain: c_fg <= c_f <= c and C_fg <= C_f <= c. Every member of the chain
// is computed from the same expression template (4/(var + c2) + 1/(musq + c1))
// so the ordering survives rounding term by term.
struct BoundConstants {
  double c_fg = 0.0;  // pair constant from global stats
  double c_f = 0.0;   // drops the g-terms from the denominators
  double c = 0.0;     // input-free ceiling 4/c2 + 1/c1
  double C_fg = 0.0;  // max over window anchors of the local pair constant
  double C_f = 0.0;   // same with the g-terms dropped
  double R = 0.0;     // sup-norm bound used by the reverse inequality
  double c_prime = 0.0;   // reverse-inequality constant, 0 when not applicable
  double w_max = 0.0;     // max effective window weight after boundary policy
};

// One inequality evaluation. holds allows relative slack 1e-12 so a bound
// that is tight in exact arithmetic does not flap on rounding.
struct BoundCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool holds = false;
};

BoundCheck make_check(double lhs, double rhs);

// 4/(var_sum + c2) + 1/(mu_sq_sum + c1): the shared shape of every chain member.
double pair_constant(double mu_sq_sum, double var_sum,
                     const StabilityConstants& c);

// The input-free ceiling of the chain.
double chain_constant(const StabilityConstants& c);

// Core assembly from precomputed statistics. ls may be null, in which case the
// local maxima collapse to the global values (the whole-domain-window reading)
// and w_max_effective is 1/N. R <= 0 requests the default sup(|f|,|g|) and must
// then be passed explicitly by the field-level wrappers.
BoundConstants constants_from_stats(const GlobalStats& gs, const LocalStats* ls,
                                    const StabilityConstants& c, double R,
                                    double w_max_effective);

BoundConstants global_constants(const ScalarField2D& f, const ScalarField2D& g,
                                const StabilityConstants& c = {});

BoundConstants local_constants(const ScalarField2D& f, const ScalarField2D& g,
                               const WeightWindow& w,
                               const StabilityConstants& c = {});

// dissim <= constant * l2^2, globally or per window.
BoundCheck check_upper_bound(const ScalarField2D& f, const ScalarField2D& g,
                             const StabilityConstants& c = {});
BoundCheck check_upper_bound(const ScalarField2D& f, const ScalarField2D& g,
                             const WeightWindow& w,
                             const StabilityConstants& c = {});

// Diagnostic record for the two-factor decomposition ssim = M * S.
// M and S here come from the literal covariance formulas, so the identity
// check compares two genuinely different computations; do not feed it pairs
// that agree to near machine precision, the literal route cancels there.
struct DecompositionReport {
  double m = 0.0;
  double s = 0.0;
  double one_minus_m = 0.0;
  double one_minus_m_bound = 0.0;     // l1^2 / (mu_f^2 + mu_g^2 + c1)
  double one_minus_s = 0.0;           // literal route
  double one_minus_s_identity = 0.0;  // var(f-g) / (var_f + var_g + c2)
  double identity_residual_rel = 0.0;
  bool m_in_range = false;       // 0 <= M <= 1
  bool s_in_range = false;       // |S| <= 1
  bool inequality_holds = false; // 1 - M <= one_minus_m_bound
};

DecompositionReport decomposition_identities(const ScalarField2D& f, const ScalarField2D& g,
                             const StabilityConstants& c = {});

// Max over valid anchors of the relative residual between the literal
// 1 - S(x) and its difference-field identity. Same caveat as DecompositionReport.
double max_local_identity_residual(const ScalarField2D& f,
                                   const ScalarField2D& g,
                                   const WeightWindow& w,
                                   const StabilityConstants& c = {});

// Reverse inequality: (l2^2 - mean of (mu_f(x)-mu_g(x))^2) / (4R^2 + c2)
// must not exceed the weighted dissimilarity. Requires the per-anchor second
// moments of f and g to stay below R^2; the report records whether that
// precondition actually held instead of clamping.
struct LowerBoundReport {
  BoundCheck bound;
  double r_used = 0.0;
  double r_required = 0.0;  // sqrt of the largest per-anchor second moment
  bool r_verified = false;
  double l2sq = 0.0;
  double mean_sq_mu_diff = 0.0;
  double w_max = 0.0;    // effective, after boundary policy
  double c_prime = 0.0;  // (1 - w_max^2) / (4R^2 + c2) when w_max < 1
  bool c_prime_applicable = false;
  BoundCheck certificate;  // c_prime * l2^2 <= dissim, when applicable
};

// R <= 0 selects the default max(sup|f|, sup|g|).
LowerBoundReport check_lower_bound(const ScalarField2D& f,
                                   const ScalarField2D& g,
                                   const WeightWindow& w,
                                   const StabilityConstants& c = {},
                                   double R = 0.0);

// Randomized self-check of everything above on small non-negative fields at
// mixed magnitudes. all_passed() gates the upper bounds, the decomposition
// identities, the whole-domain reverse inequality and the sandwich
// c' * l2^2 <= dissim <= c_fg * l2^2. The windowed reverse inequality is
// tallied but never gated: a renormalized boundary window can concentrate
// less smoothing mass than the whole-domain argument needs, so an occasional
// violation there is expected behavior, not a defect.
struct BoundSweepReport {
  std::size_t trials = 0;
  std::size_t upper_global_failures = 0;
  std::size_t upper_windowed_failures = 0;
  std::size_t decomposition_failures = 0;
  double identity_max_residual = 0.0;
  std::size_t lower_failures = 0;
  std::size_t sandwich_failures = 0;
  std::size_t windowed_lower_violations = 0;  // informational

  bool all_passed() const {
    return upper_global_failures == 0 && upper_windowed_failures == 0 &&
           decomposition_failures == 0 && identity_max_residual < 1e-10 &&
           lower_failures == 0 && sandwich_failures == 0;
  }
};

BoundSweepReport verify_bounds_sweep(std::size_t trials, std::uint64_t seed,
                                     const StabilityConstants& c = {});

}  // namespace ssimlab
