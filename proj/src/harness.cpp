#include "harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "error.hpp"
#include "interpolate.hpp"
#include "pgm.hpp"
#include "similarity.hpp"
#include "summation.hpp"

namespace ssimlab {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

template <typename F>
auto with_context(const std::string& ctx, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    fail(e.kind(), ctx + ": " + e.what());
  }
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::string trimmed(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& value) {
  const std::string v = trimmed(value);
  char* end = nullptr;
  const double out = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(out)) {
    fail_config("config key '" + key + "': cannot parse number '" + value + "'");
  }
  return out;
}

unsigned long long parse_uint(const std::string& key, const std::string& value) {
  const std::string v = trimmed(value);
  char* end = nullptr;
  const unsigned long long out = std::strtoull(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size() || v[0] == '-') {
    fail_config("config key '" + key + "': cannot parse integer '" + value + "'");
  }
  return out;
}

std::string method_list(const std::vector<Method>& ms) {
  std::string out;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (i) out += ",";
    out += method_name(ms[i]);
  }
  return out;
}

std::string step_list(const std::vector<double>& steps) {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (i) out += ";";
    out += fmt17(steps[i]);
  }
  return out;
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::bilinear: return "bilinear";
    case Method::bicubic: return "bicubic";
    case Method::wendland: return "wendland";
    case Method::matern: return "matern";
  }
  return "unknown";
}

Method method_from_name(const std::string& name) {
  if (name == "bilinear") return Method::bilinear;
  if (name == "bicubic") return Method::bicubic;
  if (name == "wendland") return Method::wendland;
  if (name == "matern") return Method::matern;
  fail_config("unknown method '" + name +
              "' (expected bilinear, bicubic, wendland or matern)");
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.methods.empty()) fail_config("no methods selected");
  if (cfg.steps.empty()) fail_config("no refinement steps configured");
  for (std::size_t i = 0; i < cfg.steps.size(); ++i) {
    if (!(cfg.steps[i] > 0.0)) fail_config("steps must be positive");
    if (i > 0 && !(cfg.steps[i] < cfg.steps[i - 1])) {
      fail_config("steps must be strictly decreasing");
    }
  }
  if (!(cfg.eval_step > 0.0)) fail_config("eval_step must be positive");
  if (!(cfg.eval_step < cfg.steps.back())) {
    fail_config("eval_step must be finer than the finest refinement step");
  }
  validate(cfg.constants);
  if (!(cfg.kernel_shape > 0.0)) fail_config("kernel_shape must be positive");
  if (!(cfg.lambda >= 0.0)) fail_config("lambda must be non-negative");
  if (cfg.image_sizes.empty()) fail_config("no image sizes configured");
  for (std::size_t i = 0; i < cfg.image_sizes.size(); ++i) {
    if (cfg.image_sizes[i] < 2) fail_config("image sizes must be at least 2");
    if (i > 0 && cfg.image_sizes[i] <= cfg.image_sizes[i - 1]) {
      fail_config("image sizes must be strictly increasing");
    }
  }
  if (cfg.kernel_node_cap < 1) fail_config("kernel_node_cap must be positive");
}

void apply_config_kv(ExperimentConfig& cfg, const std::string& key,
                     const std::string& value) {
  const std::string k = trimmed(key);
  if (k == "function") {
    cfg.function_id = trimmed(value);
  } else if (k == "image") {
    cfg.image_path = trimmed(value);
  } else if (k == "sinc") {
    const std::string v = trimmed(value);
    if (v == "normalized") {
      cfg.sinc = SincConvention::normalized;
    } else if (v == "unnormalized") {
      cfg.sinc = SincConvention::unnormalized;
    } else {
      fail_config("config key 'sinc': expected normalized or unnormalized");
    }
  } else if (k == "methods") {
    std::vector<Method> ms;
    for (const std::string& part : split_commas(value)) {
      ms.push_back(method_from_name(trimmed(part)));
    }
    cfg.methods = std::move(ms);
  } else if (k == "steps") {
    std::vector<double> steps;
    for (const std::string& part : split_commas(value)) {
      steps.push_back(parse_double(k, part));
    }
    cfg.steps = std::move(steps);
  } else if (k == "eval_step") {
    cfg.eval_step = parse_double(k, value);
  } else if (k == "window_size") {
    cfg.window_size = static_cast<std::size_t>(parse_uint(k, value));
  } else if (k == "window_anchor") {
    const std::string v = trimmed(value);
    if (v == "corner") {
      cfg.anchor = WindowAnchor::corner;
    } else if (v == "center") {
      cfg.anchor = WindowAnchor::center;
    } else {
      fail_config("config key 'window_anchor': expected corner or center");
    }
  } else if (k == "boundary") {
    const std::string v = trimmed(value);
    if (v == "renormalize") {
      cfg.boundary = BoundaryPolicy::renormalize;
    } else if (v == "clip" || v == "clip_constant") {
      cfg.boundary = BoundaryPolicy::clip_constant;
    } else {
      fail_config("config key 'boundary': expected renormalize or clip");
    }
  } else if (k == "c1") {
    cfg.constants.c1 = parse_double(k, value);
  } else if (k == "c2") {
    cfg.constants.c2 = parse_double(k, value);
  } else if (k == "kernel_shape") {
    cfg.kernel_shape = parse_double(k, value);
  } else if (k == "lambda") {
    cfg.lambda = parse_double(k, value);
  } else if (k == "image_sizes") {
    std::vector<std::size_t> sizes;
    for (const std::string& part : split_commas(value)) {
      sizes.push_back(static_cast<std::size_t>(parse_uint(k, part)));
    }
    cfg.image_sizes = std::move(sizes);
  } else if (k == "seed") {
    cfg.seed = parse_uint(k, value);
  } else if (k == "kernel_node_cap") {
    cfg.kernel_node_cap = static_cast<std::size_t>(parse_uint(k, value));
  } else {
    fail_config("unknown config key '" + k + "'");
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail_config("cannot open config file '" + path + "'");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string t = trimmed(line);
    if (t.empty()) continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << "config file '" << path << "' line " << lineno
         << ": expected key=value";
      fail_config(os.str());
    }
    apply_config_kv(cfg, t.substr(0, eq), t.substr(eq + 1));
  }
}

std::vector<double> node_axis(double a, double b, double s) {
  if (!(s > 0.0) || !(b > a)) fail_config("invalid node axis parameters");
  const std::size_t m =
      static_cast<std::size_t>(std::floor((b - a) / s + 1e-9));
  std::vector<double> xs(m + 1);
  for (std::size_t i = 0; i <= m; ++i) xs[i] = a + s * static_cast<double>(i);
  if (b - xs.back() > 1e-9 * (b - a)) xs.push_back(b);
  return xs;
}

double fit_rate(const std::vector<double>& hs, const std::vector<double>& errs) {
  if (hs.size() != errs.size()) {
    fail_config("rate fit needs matched h and error lists");
  }
  if (hs.size() < 2) fail_numeric("need >= 2 refinement levels for a rate fit");
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (!(hs[i] > 0.0) || !(errs[i] > 0.0)) {
      fail_numeric("rate fit needs strictly positive h and error values");
    }
  }
  const std::size_t n = hs.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    lx[i] = std::log(hs[i]);
    ly[i] = std::log(errs[i]);
  }
  const double mx = pairwise_mean(lx);
  const double my = pairwise_mean(ly);
  const double sxy = pairwise_sum(
      n, [&](std::size_t i) { return (lx[i] - mx) * (ly[i] - my); });
  const double sxx = pairwise_sum(n, [&](std::size_t i) {
    const double d = lx[i] - mx;
    return d * d;
  });
  if (!(sxx > 0.0)) fail_numeric("rate fit needs at least two distinct h values");
  return sxy / sxx;
}

double fit_optimal_constant(const std::vector<double>& dissims,
                            const std::vector<double>& l2sqs) {
  if (dissims.size() != l2sqs.size()) {
    fail_config("constant fit needs matched lists");
  }
  double best = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < dissims.size(); ++i) {
    if (!(l2sqs[i] > 0.0)) {
      if (dissims[i] > 0.0) {
        fail_numeric("zero L2 distance with nonzero dissimilarity");
      }
      continue;  // 0/0: the bound is vacuous at this step
    }
    best = std::max(best, dissims[i] / l2sqs[i]);
    ++used;
  }
  if (used == 0) fail_numeric("no usable steps for the optimal constant");
  return best;
}

namespace {

constexpr double kDissimFloor = 1e-15;  // below this, log-log points are noise

WeightWindow window_for(const ExperimentConfig& cfg, std::size_t nx,
                        std::size_t ny, bool image_mode,
                        std::vector<std::pair<std::string, std::string>>& meta) {
  if (cfg.window_size == 0) return WeightWindow::whole_domain();
  std::size_t k = cfg.window_size;
  const std::size_t min_dim = std::min(nx, ny);
  if (image_mode && min_dim < k) {
    // shrink proportionally to the 256-pixel reference layout
    const std::size_t scaled = static_cast<std::size_t>(std::llround(
        static_cast<double>(cfg.window_size) * static_cast<double>(min_dim) /
        256.0));
    k = std::max<std::size_t>(2, std::min(scaled, min_dim));
    meta.emplace_back("window_size_effective", std::to_string(k));
  }
  return WeightWindow::uniform(k, cfg.anchor, cfg.boundary);
}

struct MethodAccum {
  std::vector<double> hs, dg, dw, l2, cfgs, Cfgs;
  std::vector<double> excluded_g, excluded_w, skipped;
};

RunRow make_row(Method method, double step, double h, const ScalarField2D& F,
                const ScalarField2D& G, const WeightWindow& w,
                const StabilityConstants& c) {
  const SimilarityReport rep = compare(F, G, w, c);
  RunRow row;
  row.method = method;
  row.step = step;
  row.h = h;
  row.l2sq = l2_distance_sq(F, G);
  row.dissim_global = std::max(0.0, rep.dissim_global);
  row.dissim_weighted = std::max(0.0, rep.dissim_weighted);
  row.c_fg = rep.constants.c_fg;
  row.C_fg = rep.constants.C_fg;
  return row;
}

MethodSummary summarize(Method method, const MethodAccum& acc) {
  const std::string name = method_name(method);
  MethodSummary s;
  s.method = method;
  s.excluded_global = acc.excluded_g;
  s.excluded_weighted = acc.excluded_w;
  s.skipped_steps = acc.skipped;

  std::vector<double> hs_g, dg, hs_w, dw;
  for (std::size_t i = 0; i < acc.hs.size(); ++i) {
    if (acc.dg[i] > kDissimFloor) {
      hs_g.push_back(acc.hs[i]);
      dg.push_back(acc.dg[i]);
    }
    if (acc.dw[i] > kDissimFloor) {
      hs_w.push_back(acc.hs[i]);
      dw.push_back(acc.dw[i]);
    }
  }
  const auto refuse = [&](const char* which, std::size_t usable) {
    std::ostringstream os;
    os << "rate fit for " << name << " (" << which << "): " << usable << " of "
       << acc.hs.size()
       << " recorded levels usable after excluding dissimilarity <= 1e-15; "
          "need >= 2 refinement levels";
    fail_numeric(os.str());
  };
  if (hs_g.size() < 2) refuse("global", hs_g.size());
  if (hs_w.size() < 2) refuse("weighted", hs_w.size());
  s.r_bar = fit_rate(hs_g, dg);
  s.R_bar = fit_rate(hs_w, dw);
  s.c_bar = fit_optimal_constant(acc.dg, acc.l2);
  s.C_bar = fit_optimal_constant(acc.dw, acc.l2);
  s.mean_c_fg = pairwise_mean(acc.cfgs);
  s.mean_C_fg = pairwise_mean(acc.Cfgs);
  return s;
}

void push_common_metadata(const ExperimentConfig& cfg, ConvergenceRun& run) {
  auto& m = run.metadata;
  m.emplace_back("window_size", std::to_string(cfg.window_size));
  m.emplace_back("window_weights", "uniform");
  m.emplace_back("window_anchor",
                 cfg.anchor == WindowAnchor::corner ? "corner" : "center");
  m.emplace_back("boundary",
                 cfg.boundary == BoundaryPolicy::renormalize ? "renormalize"
                                                             : "clip");
  m.emplace_back("c1", fmt17(cfg.constants.c1));
  m.emplace_back("c2", fmt17(cfg.constants.c2));
  m.emplace_back("kernel_shape", fmt17(cfg.kernel_shape));
  m.emplace_back("lambda", fmt17(cfg.lambda));
  m.emplace_back("seed", std::to_string(cfg.seed));
  m.emplace_back("methods", method_list(cfg.methods));
}

void push_summary_metadata(ConvergenceRun& run) {
  for (const MethodSummary& s : run.summaries) {
    const std::string name = method_name(s.method);
    if (!s.excluded_global.empty()) {
      run.metadata.emplace_back("excluded_global_" + name,
                                step_list(s.excluded_global));
    }
    if (!s.excluded_weighted.empty()) {
      run.metadata.emplace_back("excluded_weighted_" + name,
                                step_list(s.excluded_weighted));
    }
    if (!s.skipped_steps.empty()) {
      run.metadata.emplace_back("skipped_" + name, step_list(s.skipped_steps));
    }
  }
}

}  // namespace

ConvergenceRun run_function_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const TestFunction tf = make_named(cfg.function_id, cfg.sinc);
  const GridSpec eval_grid(Domain2D::unit(), cfg.eval_step, cfg.eval_step,
                           NodeLayout::vertex);
  const ScalarField2D F = sample(tf, eval_grid);

  ConvergenceRun run;
  run.metadata.emplace_back("kind", "function");
  run.metadata.emplace_back("function", cfg.function_id);
  run.metadata.emplace_back("sinc", cfg.sinc == SincConvention::normalized
                                        ? "normalized"
                                        : "unnormalized");
  run.metadata.emplace_back("steps", step_list(cfg.steps));
  run.metadata.emplace_back("eval_step", fmt17(cfg.eval_step));
  const WeightWindow w =
      window_for(cfg, eval_grid.nx(), eval_grid.ny(), false, run.metadata);
  push_common_metadata(cfg, run);

  for (Method method : cfg.methods) {
    MethodAccum acc;
    for (double s : cfg.steps) {
      const std::string ctx =
          std::string(method_name(method)) + " at step " + fmt6(s);
      const std::vector<double> xs = node_axis(0.0, 1.0, s);
      const std::size_t n_nodes = xs.size() * xs.size();
      const bool kernel_method =
          method == Method::wendland || method == Method::matern;
      if (kernel_method && n_nodes > cfg.kernel_node_cap) {
        acc.skipped.push_back(s);
        run.metadata.emplace_back(
            "skip_note_" + std::string(method_name(method)) + "_" + fmt6(s),
            std::to_string(n_nodes) + " nodes exceed kernel_node_cap " +
                std::to_string(cfg.kernel_node_cap));
        continue;
      }
      std::vector<double> values(n_nodes);
      for (std::size_t j = 0; j < xs.size(); ++j) {
        for (std::size_t i = 0; i < xs.size(); ++i) {
          values[j * xs.size() + i] = tf.eval(xs[i], xs[j]);
        }
      }
      const Interpolant interp = with_context(ctx, [&] {
        switch (method) {
          case Method::bilinear:
            return bilinear_fit(xs, xs, values);
          case Method::bicubic:
            return bicubic_fit(xs, xs, values, tf);
          default: {
            const KernelSpec spec = method == Method::wendland
                                        ? KernelSpec::wendland21(cfg.kernel_shape)
                                        : KernelSpec::cubic_matern(cfg.kernel_shape);
            const NodeSet nodes = NodeSet::tensor(xs, xs);
            try {
              return kernel_fit(nodes, values, spec, cfg.lambda);
            } catch (const Error& e) {
              const double fallback = suggested_lambda(spec);
              if (e.kind() != ErrorKind::numeric || cfg.lambda >= fallback) {
                throw;
              }
              run.metadata.emplace_back(
                  "lambda_retry_" + std::string(method_name(method)) + "_" +
                      fmt6(s),
                  fmt17(fallback));
              return kernel_fit(nodes, values, spec, fallback);
            }
          }
        }
        fail_config("unreachable method");
      });
      const ScalarField2D G =
          with_context(ctx, [&] { return sample(interp.eval, eval_grid); });
      const RunRow row = make_row(method, s, std::sqrt(2.0) * s / 2.0, F, G, w,
                                  cfg.constants);
      run.rows.push_back(row);
      acc.hs.push_back(row.h);
      acc.dg.push_back(row.dissim_global);
      acc.dw.push_back(row.dissim_weighted);
      acc.l2.push_back(row.l2sq);
      acc.cfgs.push_back(row.c_fg);
      acc.Cfgs.push_back(row.C_fg);
      if (row.dissim_global <= kDissimFloor) acc.excluded_g.push_back(s);
      if (row.dissim_weighted <= kDissimFloor) acc.excluded_w.push_back(s);
    }
    if (acc.hs.empty() && !acc.skipped.empty()) {
      MethodSummary s;
      s.method = method;
      s.skipped_steps = acc.skipped;
      run.summaries.push_back(std::move(s));
      continue;
    }
    run.summaries.push_back(summarize(method, acc));
  }
  push_summary_metadata(run);
  return run;
}

ConvergenceRun run_image_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.image_path.empty()) fail_config("image experiment needs an image path");

  ConvergenceRun run;
  run.metadata.emplace_back("kind", "image");
  run.metadata.emplace_back("image", cfg.image_path);
  run.metadata.emplace_back("downsampling", "subsample");

  ScalarField2D F = load_image(cfg.image_path);
  if (F.nx() != 256 || F.ny() != 256) {
    std::ostringstream os;
    os << "input is " << F.nx() << "x" << F.ny()
       << ", resampled bilinearly to 256x256";
    run.metadata.emplace_back("warning", os.str());
    const Interpolant lift = bilinear_fit(F);
    const GridSpec target =
        GridSpec::square(Domain2D::unit(), 255, NodeLayout::vertex);
    F = sample(lift.eval, target);
  }
  const std::size_t N = F.nx();

  std::vector<Method> methods;
  std::vector<Method> dropped;
  for (Method m : cfg.methods) {
    if (m == Method::bilinear || m == Method::bicubic) {
      methods.push_back(m);
    } else {
      dropped.push_back(m);
    }
  }
  if (!dropped.empty()) {
    run.metadata.emplace_back("methods_dropped", method_list(dropped));
  }
  if (methods.empty()) {
    fail_config("image experiment supports only bilinear and bicubic");
  }

  run.metadata.emplace_back("image_sizes", [&] {
    std::string out;
    for (std::size_t i = 0; i < cfg.image_sizes.size(); ++i) {
      if (i) out += ";";
      out += std::to_string(cfg.image_sizes[i]);
    }
    return out;
  }());
  const WeightWindow w = window_for(cfg, N, N, true, run.metadata);
  push_common_metadata(cfg, run);

  for (Method method : methods) {
    MethodAccum acc;
    for (std::size_t m : cfg.image_sizes) {
      const std::string ctx =
          std::string(method_name(method)) + " at size " + std::to_string(m);
      const GridSpec coarse =
          GridSpec::square(Domain2D::unit(), m - 1, NodeLayout::vertex);
      std::vector<double> sub(m * m);
      for (std::size_t j = 0; j < m; ++j) {
        const std::size_t idy = static_cast<std::size_t>(std::llround(
            static_cast<double>(j) * static_cast<double>(N - 1) /
            static_cast<double>(m - 1)));
        for (std::size_t i = 0; i < m; ++i) {
          const std::size_t idx = static_cast<std::size_t>(std::llround(
              static_cast<double>(i) * static_cast<double>(N - 1) /
              static_cast<double>(m - 1)));
          sub[j * m + i] = F.at(idx, idy);
        }
      }
      const ScalarField2D coarse_field(coarse, std::move(sub));
      const Interpolant interp = with_context(ctx, [&] {
        return method == Method::bilinear ? bilinear_fit(coarse_field)
                                          : bicubic_fit(coarse_field);
      });
      const ScalarField2D G =
          with_context(ctx, [&] { return sample(interp.eval, F.grid()); });
      const double md = static_cast<double>(m);
      const RunRow row = make_row(method, 1.0 / md,
                                  std::sqrt(2.0) / (2.0 * md), F, G, w,
                                  cfg.constants);
      run.rows.push_back(row);
      acc.hs.push_back(row.h);
      acc.dg.push_back(row.dissim_global);
      acc.dw.push_back(row.dissim_weighted);
      acc.l2.push_back(row.l2sq);
      acc.cfgs.push_back(row.c_fg);
      acc.Cfgs.push_back(row.C_fg);
      if (row.dissim_global <= kDissimFloor) acc.excluded_g.push_back(1.0 / md);
      if (row.dissim_weighted <= kDissimFloor) {
        acc.excluded_w.push_back(1.0 / md);
      }
    }
    run.summaries.push_back(summarize(method, acc));
  }
  push_summary_metadata(run);
  return run;
}

void write_csv(const ConvergenceRun& run, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::io, "cannot write '" + path + "'");
  out << "method,step,h,l2sq,dissim_global,dissim_weighted,c_fg,C_fg\n";
  for (const RunRow& r : run.rows) {
    out << method_name(r.method) << ',' << fmt17(r.step) << ',' << fmt17(r.h)
        << ',' << fmt17(r.l2sq) << ',' << fmt17(r.dissim_global) << ','
        << fmt17(r.dissim_weighted) << ',' << fmt17(r.c_fg) << ','
        << fmt17(r.C_fg) << '\n';
  }
  if (!out.flush()) fail(ErrorKind::io, "write failed for '" + path + "'");
}

void write_metadata(const ConvergenceRun& run, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::io, "cannot write '" + path + "'");
  for (const auto& [key, value] : run.metadata) {
    out << key << '=' << value << '\n';
  }
  if (!out.flush()) fail(ErrorKind::io, "write failed for '" + path + "'");
}

std::string run_summary(const ConvergenceRun& run) {
  std::ostringstream os;
  for (const auto& [key, value] : run.metadata) {
    if (key == "warning") os << "warning: " << value << '\n';
  }
  os << "method     r_bar     R_bar     c_bar     C_bar     mean_c_fg  mean_C_fg\n";
  for (const MethodSummary& s : run.summaries) {
    if (!s.skipped_steps.empty() && s.r_bar == 0.0 && s.R_bar == 0.0 &&
        s.c_bar == 0.0) {
      os << method_name(s.method) << ": all steps skipped (kernel_node_cap)\n";
      continue;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-10s %-9s %-9s %-9s %-9s %-10s %-9s\n",
                  method_name(s.method), fmt6(s.r_bar).c_str(),
                  fmt6(s.R_bar).c_str(), fmt6(s.c_bar).c_str(),
                  fmt6(s.C_bar).c_str(), fmt6(s.mean_c_fg).c_str(),
                  fmt6(s.mean_C_fg).c_str());
    os << buf;
    if (!s.excluded_global.empty() || !s.excluded_weighted.empty()) {
      os << "  (" << method_name(s.method) << ": "
         << s.excluded_global.size() + s.excluded_weighted.size()
         << " underflowed points excluded from the rate fits)\n";
    }
  }
  return os.str();
}

}  // namespace ssimlab
