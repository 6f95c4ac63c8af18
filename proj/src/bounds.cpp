#include "bounds.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "rng.hpp"
#include "similarity.hpp"
#include "summation.hpp"

namespace ssimlab {

BoundCheck make_check(double lhs, double rhs) {
  BoundCheck b;
  b.lhs = lhs;
  b.rhs = rhs;
  b.slack = rhs - lhs;
  b.holds = b.slack >= -1e-12 * std::max(1.0, std::fabs(rhs));
  return b;
}

double pair_constant(double mu_sq_sum, double var_sum,
                     const StabilityConstants& c) {
  return 4.0 / (var_sum + c.c2) + 1.0 / (mu_sq_sum + c.c1);
}

double chain_constant(const StabilityConstants& c) {
  // same expression shape as pair_constant(0, 0, .), which keeps the chain
  // ordering exact in floating point; the algebraic form (4c1+c2)/(c1c2)
  // rounds differently
  return 4.0 / c.c2 + 1.0 / c.c1;
}

BoundConstants constants_from_stats(const GlobalStats& gs, const LocalStats* ls,
                                    const StabilityConstants& c, double R,
                                    double w_max_effective) {
  validate(c);
  BoundConstants bc;
  bc.c = chain_constant(c);
  bc.c_fg =
      pair_constant(gs.mu_f * gs.mu_f + gs.mu_g * gs.mu_g, gs.var_f + gs.var_g, c);
  bc.c_f = pair_constant(gs.mu_f * gs.mu_f, gs.var_f, c);
  if (ls) {
    double max_fg = 0.0, max_f = 0.0;
    for (std::size_t i = 0; i < ls->mu_f.size(); ++i) {
      if (!ls->valid[i]) continue;
      const double mu_f = ls->mu_f[i];
      const double mu_g = ls->mu_g[i];
      max_fg = std::max(max_fg, pair_constant(mu_f * mu_f + mu_g * mu_g,
                                              ls->sigma_ff[i] + ls->sigma_gg[i],
                                              c));
      max_f = std::max(max_f, pair_constant(mu_f * mu_f, ls->sigma_ff[i], c));
    }
    bc.C_fg = max_fg;
    bc.C_f = max_f;
  } else {
    bc.C_fg = bc.c_fg;
    bc.C_f = bc.c_f;
  }
  bc.R = R;
  bc.w_max = w_max_effective;
  if (w_max_effective > 0.0 && w_max_effective < 1.0) {
    bc.c_prime =
        (1.0 - w_max_effective * w_max_effective) / (4.0 * R * R + c.c2);
  }
  return bc;
}

BoundConstants global_constants(const ScalarField2D& f, const ScalarField2D& g,
                                const StabilityConstants& c) {
  require_same_grid(f, g);
  const double R = std::max(f.sup_abs(), g.sup_abs());
  return constants_from_stats(global_stats(f, g), nullptr, c, R,
                              1.0 / static_cast<double>(f.size()));
}

BoundConstants local_constants(const ScalarField2D& f, const ScalarField2D& g,
                               const WeightWindow& w,
                               const StabilityConstants& c) {
  require_same_grid(f, g);
  if (w.is_whole_domain()) return global_constants(f, g, c);
  const double R = std::max(f.sup_abs(), g.sup_abs());
  const LocalStats ls = local_stats(f, g, w);
  return constants_from_stats(global_stats(f, g), &ls, c, R,
                              ls.w_max_effective);
}

BoundCheck check_upper_bound(const ScalarField2D& f, const ScalarField2D& g,
                             const StabilityConstants& c) {
  const GlobalStats gs = global_stats(f, g);
  const double dissim = dissim_parts(gs, c).dissim();
  const double c_fg =
      pair_constant(gs.mu_f * gs.mu_f + gs.mu_g * gs.mu_g, gs.var_f + gs.var_g, c);
  return make_check(dissim, c_fg * l2_distance_sq(f, g));
}

BoundCheck check_upper_bound(const ScalarField2D& f, const ScalarField2D& g,
                             const WeightWindow& w,
                             const StabilityConstants& c) {
  const SimilarityReport rep = compare(f, g, w, c);
  return make_check(rep.dissim_weighted,
                    rep.constants.C_fg * l2_distance_sq(f, g));
}

DecompositionReport decomposition_identities(const ScalarField2D& f, const ScalarField2D& g,
                             const StabilityConstants& c) {
  const GlobalStats gs = global_stats(f, g);
  const MsTerms t = ms_terms(gs, c);
  const DissimParts p = dissim_parts(gs, c);
  DecompositionReport r;
  r.m = t.m;
  r.s = t.s;
  r.one_minus_m = 1.0 - t.m;
  const double l1 = l1_distance(f, g);
  r.one_minus_m_bound =
      l1 * l1 / (gs.mu_f * gs.mu_f + gs.mu_g * gs.mu_g + c.c1);
  r.one_minus_s = 1.0 - t.s;
  r.one_minus_s_identity = p.b;
  const double scale = std::max({std::fabs(r.one_minus_s),
                                 std::fabs(r.one_minus_s_identity), 1e-30});
  r.identity_residual_rel =
      std::fabs(r.one_minus_s - r.one_minus_s_identity) / scale;
  r.m_in_range = t.m >= -1e-12 && t.m <= 1.0 + 1e-12;
  r.s_in_range = std::fabs(t.s) <= 1.0 + 1e-12;
  r.inequality_holds = r.one_minus_m <= r.one_minus_m_bound + 1e-12;
  return r;
}

double max_local_identity_residual(const ScalarField2D& f,
                                   const ScalarField2D& g,
                                   const WeightWindow& w,
                                   const StabilityConstants& c) {
  validate(c);
  const LocalStats ls = local_stats(f, g, w);
  double worst = 0.0;
  for (std::size_t i = 0; i < ls.mu_f.size(); ++i) {
    if (!ls.valid[i]) continue;
    const double denom = ls.sigma_ff[i] + ls.sigma_gg[i] + c.c2;
    const double literal = 1.0 - (2.0 * ls.sigma_fg[i] + c.c2) / denom;
    const double identity = ls.var_diff[i] / denom;
    const double scale =
        std::max({std::fabs(literal), std::fabs(identity), 1e-30});
    worst = std::max(worst, std::fabs(literal - identity) / scale);
  }
  return worst;
}

LowerBoundReport check_lower_bound(const ScalarField2D& f,
                                   const ScalarField2D& g,
                                   const WeightWindow& w,
                                   const StabilityConstants& c, double R) {
  validate(c);
  require_same_grid(f, g);

  LowerBoundReport rep;
  rep.l2sq = l2_distance_sq(f, g);
  rep.r_used = R > 0.0 ? R : std::max(f.sup_abs(), g.sup_abs());

  double dissim_w = 0.0;
  double max_second_moment = 0.0;
  if (w.is_whole_domain()) {
    const GlobalStats gs = global_stats(f, g);
    dissim_w = dissim_parts(gs, c).dissim();
    rep.mean_sq_mu_diff = gs.mu_diff * gs.mu_diff;
    max_second_moment = std::max(gs.var_f + gs.mu_f * gs.mu_f,
                                 gs.var_g + gs.mu_g * gs.mu_g);
    rep.w_max = 1.0 / static_cast<double>(f.size());
  } else {
    const LocalStats ls = local_stats(f, g, w);
    const std::vector<double> d = local_dissim_map(ls, c);
    std::vector<double> valid_d, valid_mu_sq;
    valid_d.reserve(ls.valid_count);
    valid_mu_sq.reserve(ls.valid_count);
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (!ls.valid[i]) continue;
      valid_d.push_back(d[i]);
      const double dm = ls.mu_f[i] - ls.mu_g[i];
      valid_mu_sq.push_back(dm * dm);
      max_second_moment = std::max(
          {max_second_moment, ls.sigma_ff[i] + ls.mu_f[i] * ls.mu_f[i],
           ls.sigma_gg[i] + ls.mu_g[i] * ls.mu_g[i]});
    }
    dissim_w = pairwise_mean(valid_d);
    rep.mean_sq_mu_diff = pairwise_mean(valid_mu_sq);
    rep.w_max = ls.w_max_effective;
  }

  rep.r_required = std::sqrt(max_second_moment);
  rep.r_verified = rep.r_required <= rep.r_used * (1.0 + 1e-12);

  const double denom = 4.0 * rep.r_used * rep.r_used + c.c2;
  rep.bound = make_check((rep.l2sq - rep.mean_sq_mu_diff) / denom, dissim_w);

  if (rep.w_max > 0.0 && rep.w_max < 1.0) {
    rep.c_prime_applicable = true;
    rep.c_prime = (1.0 - rep.w_max * rep.w_max) / denom;
    rep.certificate = make_check(rep.c_prime * rep.l2sq, dissim_w);
  } else {
    rep.certificate = make_check(0.0, dissim_w);
  }
  return rep;
}

namespace {

ScalarField2D random_field(Rng& rng, const GridSpec& grid, double scale) {
  std::vector<double> v(grid.size());
  for (double& x : v) x = scale * rng.u01();
  return ScalarField2D(grid, std::move(v));
}

}  // namespace

BoundSweepReport verify_bounds_sweep(std::size_t trials, std::uint64_t seed,
                                     const StabilityConstants& c) {
  validate(c);
  BoundSweepReport rep;
  rep.trials = trials;
  Rng rng(seed);
  const GridSpec grid = GridSpec::square(Domain2D::unit(), 15,
                                         NodeLayout::vertex);  // 16x16
  const WeightWindow w3 =
      WeightWindow::uniform(3, WindowAnchor::center, BoundaryPolicy::renormalize);
  const WeightWindow whole = WeightWindow::whole_domain();

  for (std::size_t t = 0; t < trials; ++t) {
    const double scale = std::pow(10.0, rng.uniform(-2.0, 2.0));
    const ScalarField2D f = random_field(rng, grid, scale);
    ScalarField2D g = random_field(rng, grid, scale);
    if (t % 2 == 1) {
      // correlated pair: a 30% perturbation keeps the literal-route identity
      // checks away from catastrophic cancellation while still exercising the
      // near-agreement regime
      std::vector<double> v(f.values().begin(), f.values().end());
      for (double& x : v) {
        x = std::max(0.0, x + 0.3 * scale * (rng.u01() - 0.5));
      }
      g = ScalarField2D(grid, std::move(v));
    }

    if (!check_upper_bound(f, g, c).holds) ++rep.upper_global_failures;
    if (!check_upper_bound(f, g, w3, c).holds) ++rep.upper_windowed_failures;

    const DecompositionReport lem = decomposition_identities(f, g, c);
    if (!lem.m_in_range || !lem.s_in_range || !lem.inequality_holds) {
      ++rep.decomposition_failures;
    }
    rep.identity_max_residual =
        std::max(rep.identity_max_residual, lem.identity_residual_rel);
    rep.identity_max_residual = std::max(
        rep.identity_max_residual, max_local_identity_residual(f, g, w3, c));

    const LowerBoundReport low = check_lower_bound(f, g, whole, c);
    if (!low.bound.holds || !low.r_verified) ++rep.lower_failures;
    if (!check_lower_bound(f, g, w3, c).bound.holds) {
      ++rep.windowed_lower_violations;
    }

    // sandwich pair: g2 = f plus a mean-free perturbation, so the window
    // means match and both inequalities bite on the same l2 distance
    std::vector<double> p(grid.size());
    for (double& x : p) x = rng.u01() - 0.5;
    const double pm = pairwise_mean(p);
    std::vector<double> v2(f.values().begin(), f.values().end());
    for (std::size_t i = 0; i < v2.size(); ++i) {
      v2[i] += 0.2 * scale * (p[i] - pm);
    }
    const ScalarField2D g2(grid, std::move(v2));
    const LowerBoundReport sand = check_lower_bound(f, g2, whole, c);
    const BoundCheck upper = check_upper_bound(f, g2, c);
    if (!sand.c_prime_applicable || !sand.certificate.holds || !upper.holds) {
      ++rep.sandwich_failures;
    }
  }
  return rep;
}

}  // namespace ssimlab
