#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"
#include "functions.hpp"
#include "window.hpp"

namespace ssimlab {

enum class Method { bilinear, bicubic, wendland, matern };

const char* method_name(Method m);
Method method_from_name(const std::string& name);

struct ExperimentConfig {
  std::string function_id = "f1";  // function runs
  std::string image_path;          // image runs
  SincConvention sinc = SincConvention::normalized;
  std::vector<Method> methods = {Method::bilinear, Method::bicubic,
                                 Method::wendland, Method::matern};
  std::vector<double> steps = {0.4, 0.2, 0.1, 0.05};
  double eval_step = 1e-2;
  std::size_t window_size = 22;  // 0 selects the whole-domain window
  WindowAnchor anchor = WindowAnchor::center;
  BoundaryPolicy boundary = BoundaryPolicy::renormalize;
  StabilityConstants constants;
  double kernel_shape = 1.0;
  double lambda = 0.0;
  std::vector<std::size_t> image_sizes = {40, 80, 160, 320};
  std::uint64_t seed = 1;
  // kernel systems are dense; refinement ladders extended to very fine steps
  // would otherwise try to factor huge matrices
  std::size_t kernel_node_cap = 4000;
};

void validate(const ExperimentConfig& cfg);

// One key=value assignment, shared by config files, CLI overrides and the C
// API. Unknown keys and unparsable values are config errors.
void apply_config_kv(ExperimentConfig& cfg, const std::string& key,
                     const std::string& value);

// Flat key=value text, one per line, '#' comments.
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

struct RunRow {
  Method method = Method::bilinear;
  double step = 0.0;
  double h = 0.0;
  double l2sq = 0.0;
  double dissim_global = 0.0;
  double dissim_weighted = 0.0;
  double c_fg = 0.0;
  double C_fg = 0.0;
};

struct MethodSummary {
  Method method = Method::bilinear;
  double r_bar = 0.0;  // log-log slope of dissim_global vs h
  double R_bar = 0.0;  // same for dissim_weighted
  double c_bar = 0.0;  // max dissim_global / l2sq
  double C_bar = 0.0;  // max dissim_weighted / l2sq
  double mean_c_fg = 0.0;
  double mean_C_fg = 0.0;
  // steps excluded from each regression because the index underflowed
  std::vector<double> excluded_global;
  std::vector<double> excluded_weighted;
  std::vector<double> skipped_steps;  // node count above kernel_node_cap
};

struct ConvergenceRun {
  std::vector<RunRow> rows;  // decreasing h within each method
  std::vector<MethodSummary> summaries;
  std::vector<std::pair<std::string, std::string>> metadata;
};

// Slope of the least-squares line of log(err) against log(h).
double fit_rate(const std::vector<double>& hs, const std::vector<double>& errs);

// Smallest multiplier k with dissim <= k * l2sq at every recorded step.
double fit_optimal_constant(const std::vector<double>& dissims,
                            const std::vector<double>& l2sqs);

// Node lattice for one axis: a + i*s while it fits, with b appended when the
// last step falls short. Guarantees the endpoints are nodes.
std::vector<double> node_axis(double a, double b, double s);

ConvergenceRun run_function_experiment(const ExperimentConfig& cfg);
ConvergenceRun run_image_experiment(const ExperimentConfig& cfg);

// CSV schema: method,step,h,l2sq,dissim_global,dissim_weighted,c_fg,C_fg with
// full double precision; metadata goes to a sibling key=value file.
void write_csv(const ConvergenceRun& run, const std::string& path);
void write_metadata(const ConvergenceRun& run, const std::string& path);

// Human summary at 6 significant digits: one line per method with rates and
// constants.
std::string run_summary(const ConvergenceRun& run);

}  // namespace ssimlab
