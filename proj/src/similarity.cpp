#include "similarity.hpp"

#include <cmath>
#include <limits>

#include "error.hpp"
#include "summation.hpp"

namespace ssimlab {

MsTerms ms_terms(const GlobalStats& gs, const StabilityConstants& c) {
  validate(c);
  MsTerms t;
  t.m = (2.0 * gs.mu_f * gs.mu_g + c.c1) /
        (gs.mu_f * gs.mu_f + gs.mu_g * gs.mu_g + c.c1);
  t.s = (2.0 * gs.cov_fg + c.c2) / (gs.var_f + gs.var_g + c.c2);
  return t;
}

DissimParts dissim_parts(const GlobalStats& gs, const StabilityConstants& c) {
  validate(c);
  DissimParts p;
  p.a = (gs.mu_diff * gs.mu_diff) /
        (gs.mu_f * gs.mu_f + gs.mu_g * gs.mu_g + c.c1);
  p.b = gs.var_diff / (gs.var_f + gs.var_g + c.c2);
  return p;
}

double dissim_global(const ScalarField2D& f, const ScalarField2D& g,
                     const StabilityConstants& c) {
  return dissim_parts(global_stats(f, g), c).dissim();
}

double ssim_global(const ScalarField2D& f, const ScalarField2D& g,
                   const StabilityConstants& c) {
  const DissimParts p = dissim_parts(global_stats(f, g), c);
  return (1.0 - p.a) * (1.0 - p.b);
}

std::vector<double> local_dissim_map(const LocalStats& ls,
                                     const StabilityConstants& c) {
  validate(c);
  const std::size_t n = ls.mu_f.size();
  std::vector<double> d(n, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < n; ++i) {
    if (!ls.valid[i]) continue;
    const double mu_f = ls.mu_f[i];
    const double mu_g = ls.mu_g[i];
    const double dm = mu_f - mu_g;
    const double a = dm * dm / (mu_f * mu_f + mu_g * mu_g + c.c1);
    const double b = ls.var_diff[i] / (ls.sigma_ff[i] + ls.sigma_gg[i] + c.c2);
    d[i] = a + b - a * b;
  }
  return d;
}

SimilarityReport compare(const ScalarField2D& f, const ScalarField2D& g,
                         const WeightWindow& w, const StabilityConstants& c) {
  validate(c);
  require_same_grid(f, g);

  SimilarityReport rep;
  rep.stability = c;
  rep.map_nx = f.nx();
  rep.map_ny = f.ny();
  rep.l1 = l1_distance(f, g);
  rep.l2 = l2_distance(f, g);

  const GlobalStats gs = global_stats(f, g);
  const DissimParts gp = dissim_parts(gs, c);
  rep.dissim_global = gp.dissim();
  rep.ssim = (1.0 - gp.a) * (1.0 - gp.b);

  const double R = std::max(f.sup_abs(), g.sup_abs());

  if (w.is_whole_domain()) {
    rep.wssim = rep.ssim;
    rep.dissim_weighted = rep.dissim_global;
    rep.q_map.assign(f.size(), rep.ssim);
    rep.valid_count = f.size();
    rep.constants = constants_from_stats(gs, nullptr, c, R,
                                         1.0 / static_cast<double>(f.size()));
    return rep;
  }

  const LocalStats ls = local_stats(f, g, w);
  const std::vector<double> d = local_dissim_map(ls, c);

  std::vector<double> valid_d;
  valid_d.reserve(ls.valid_count);
  rep.q_map.assign(d.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!ls.valid[i]) continue;
    valid_d.push_back(d[i]);
    rep.q_map[i] = 1.0 - d[i];
  }
  rep.valid_count = valid_d.size();
  rep.dissim_weighted = pairwise_mean(valid_d);
  rep.wssim = 1.0 - rep.dissim_weighted;
  rep.constants = constants_from_stats(gs, &ls, c, R, ls.w_max_effective);
  return rep;
}

double cssim_approx(const Evaluable& f, const Evaluable& g,
                    const GridSpec& eval_grid, const StabilityConstants& c) {
  return ssim_global(sample(f, eval_grid), sample(g, eval_grid), c);
}

double cssim_approx(const TestFunction& f, const Evaluable& g,
                    const GridSpec& eval_grid, const StabilityConstants& c) {
  return cssim_approx(f.eval, g, eval_grid, c);
}

}  // namespace ssimlab
