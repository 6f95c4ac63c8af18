// Command-line front end. Talks to the library exclusively through the C API
// so the shared-library surface gets exercised by every invocation.

#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "ssimlab.h"

namespace {

struct ConfigDeleter {
  void operator()(ssimlab_config* c) const { ssimlab_config_destroy(c); }
};
using ConfigPtr = std::unique_ptr<ssimlab_config, ConfigDeleter>;

struct FieldDeleter {
  void operator()(ssimlab_field* f) const { ssimlab_field_destroy(f); }
};
using FieldPtr = std::unique_ptr<ssimlab_field, FieldDeleter>;

int exit_code(ssimlab_status s) {
  switch (s) {
    case SSIMLAB_OK: return 0;
    case SSIMLAB_ERR_CONFIG: return 2;
    default: return 1;
  }
}

int report_failure(ssimlab_status s) {
  std::fprintf(stderr, "error: %s\n", ssimlab_last_error());
  return exit_code(s);
}

// Shared tuning flags; values go through the config key parser unchanged so
// the CLI and config files reject bad input identically.
struct CommonOpts {
  std::string config_file;
  std::vector<std::string> methods;
  std::string steps, eval_step, window_size, window_anchor, boundary;
  std::string c1, c2, kernel_shape, lambda, sinc, seed;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_file,
                  "key=value config file applied before the flags");
  cmd->add_option("--method", o.methods,
                  "method to run (repeatable): bilinear, bicubic, wendland, "
                  "matern");
  cmd->add_option("--steps", o.steps, "comma list of refinement steps");
  cmd->add_option("--eval-step", o.eval_step, "evaluation grid step");
  cmd->add_option("--window-size", o.window_size,
                  "window side length, 0 for the whole domain");
  cmd->add_option("--window-anchor", o.window_anchor, "corner or center");
  cmd->add_option("--boundary", o.boundary, "renormalize or clip");
  cmd->add_option("--c1", o.c1, "mean-term stability constant");
  cmd->add_option("--c2", o.c2, "variance-term stability constant");
  cmd->add_option("--kernel-shape", o.kernel_shape,
                  "shape parameter for the kernel methods");
  cmd->add_option("--lambda", o.lambda, "kernel regularization");
  cmd->add_option("--sinc", o.sinc, "normalized or unnormalized");
  cmd->add_option("--seed", o.seed, "seed for randomized checks");
}

// nullptr on failure, with the status already reported.
ConfigPtr build_config(const CommonOpts& o, ssimlab_status& status,
                       const std::vector<std::pair<std::string, std::string>>&
                           presets = {}) {
  ssimlab_config* raw = nullptr;
  status = ssimlab_config_create(&raw);
  if (status != SSIMLAB_OK) return nullptr;
  ConfigPtr cfg(raw);
  const auto set = [&](const std::string& key,
                       const std::string& value) -> bool {
    status = ssimlab_config_set(cfg.get(), key.c_str(), value.c_str());
    return status == SSIMLAB_OK;
  };
  for (const auto& [key, value] : presets) {
    if (!set(key, value)) return nullptr;
  }
  if (!o.config_file.empty()) {
    status = ssimlab_config_load(cfg.get(), o.config_file.c_str());
    if (status != SSIMLAB_OK) return nullptr;
  }
  if (!o.methods.empty()) {
    std::string joined;
    for (std::size_t i = 0; i < o.methods.size(); ++i) {
      if (i) joined += ",";
      joined += o.methods[i];
    }
    if (!set("methods", joined)) return nullptr;
  }
  const std::pair<const char*, const std::string&> flags[] = {
      {"steps", o.steps},           {"eval_step", o.eval_step},
      {"window_size", o.window_size}, {"window_anchor", o.window_anchor},
      {"boundary", o.boundary},     {"c1", o.c1},
      {"c2", o.c2},                 {"kernel_shape", o.kernel_shape},
      {"lambda", o.lambda},         {"sinc", o.sinc},
      {"seed", o.seed}};
  for (const auto& [key, value] : flags) {
    if (!value.empty() && !set(key, value)) return nullptr;
  }
  return cfg;
}

int run_func_convergence(const CommonOpts& common,
                         const std::vector<std::string>& functions,
                         const std::string& out_dir) {
  // each (function, method) pair lands in its own CSV, so the method list
  // comes from the --method flags (default: all four) rather than the config
  std::vector<std::string> methods = common.methods;
  if (methods.empty()) {
    methods = {"bilinear", "bicubic", "wendland", "matern"};
  }
  for (const std::string& fn : functions) {
    ssimlab_status status = SSIMLAB_OK;
    for (const std::string& m : methods) {
      ConfigPtr cfg = build_config(
          common, status, {{"function", fn}});
      if (!cfg) return report_failure(status);
      if ((status = ssimlab_config_set(cfg.get(), "methods", m.c_str())) !=
          SSIMLAB_OK) {
        return report_failure(status);
      }
      char* summary = nullptr;
      status = ssimlab_run_function_experiment(cfg.get(), out_dir.c_str(),
                                               &summary);
      if (status != SSIMLAB_OK) return report_failure(status);
      std::printf("== %s / %s ==\n%s\n", fn.c_str(), m.c_str(), summary);
      ssimlab_free(summary);
    }
  }
  std::printf("results written to %s\n", out_dir.c_str());
  return 0;
}

int run_image_convergence(const CommonOpts& common, const std::string& image,
                          const std::string& sizes,
                          const std::string& out_dir) {
  ssimlab_status status = SSIMLAB_OK;
  std::vector<std::pair<std::string, std::string>> presets = {
      {"image", image}, {"methods", "bilinear,bicubic"}};
  if (!sizes.empty()) presets.emplace_back("image_sizes", sizes);
  ConfigPtr cfg = build_config(common, status, presets);
  if (!cfg) return report_failure(status);
  char* summary = nullptr;
  status = ssimlab_run_image_experiment(cfg.get(), out_dir.c_str(), &summary);
  if (status != SSIMLAB_OK) return report_failure(status);
  std::printf("%s\nresults written to %s\n", summary, out_dir.c_str());
  ssimlab_free(summary);
  return 0;
}

int run_compare(const CommonOpts& common, const std::string& path_a,
                const std::string& path_b) {
  ssimlab_status status = SSIMLAB_OK;
  ConfigPtr cfg = build_config(common, status);
  if (!cfg) return report_failure(status);

  ssimlab_field* raw = nullptr;
  if ((status = ssimlab_field_load_pgm(path_a.c_str(), &raw)) != SSIMLAB_OK) {
    return report_failure(status);
  }
  FieldPtr fa(raw);
  if ((status = ssimlab_field_load_pgm(path_b.c_str(), &raw)) != SSIMLAB_OK) {
    return report_failure(status);
  }
  FieldPtr fb(raw);

  ssimlab_compare_result r;
  if ((status = ssimlab_compare(fa.get(), fb.get(), cfg.get(), &r)) !=
      SSIMLAB_OK) {
    return report_failure(status);
  }
  std::printf("ssim            %.6g\n", r.ssim);
  std::printf("wssim           %.6g\n", r.wssim);
  std::printf("l1              %.6g\n", r.l1);
  std::printf("l2              %.6g\n", r.l2);
  std::printf("dissim_global   %.6g\n", r.dissim_global);
  std::printf("dissim_weighted %.6g\n", r.dissim_weighted);
  std::printf("c_fg            %.6g\n", r.c_fg);
  std::printf("C_fg            %.6g\n", r.C_fg);
  std::printf("upper bound     %.6g <= %.6g\n", r.dissim_global,
              r.c_fg * r.l2 * r.l2);

  ssimlab_lower_bound_result lb;
  if ((status = ssimlab_check_lower_bound(fa.get(), fb.get(), cfg.get(),
                                          &lb)) != SSIMLAB_OK) {
    return report_failure(status);
  }
  std::printf("lower bound     %.6g <= %.6g (%s, R %.6g required %.6g%s)\n",
              lb.lhs, lb.dissim, lb.holds ? "holds" : "violated", lb.r_used,
              lb.r_required, lb.r_verified ? "" : ", unverified");
  if (lb.c_prime_applicable) {
    std::printf("certificate     %.6g * l2^2 = %.6g <= %.6g (%s)\n",
                lb.c_prime, lb.certificate_lhs, lb.dissim,
                lb.certificate_holds ? "holds" : "violated");
  }
  return 0;
}

int run_verify_bounds(const CommonOpts& common, std::size_t trials) {
  ssimlab_status status = SSIMLAB_OK;
  ConfigPtr cfg = build_config(common, status);
  if (!cfg) return report_failure(status);
  char* report = nullptr;
  status = ssimlab_verify_bounds(cfg.get(), trials, &report);
  if (report != nullptr) {
    std::printf("%s", report);
    ssimlab_free(report);
  }
  if (status != SSIMLAB_OK) {
    std::fprintf(stderr, "error: %s\n", ssimlab_last_error());
  }
  return exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"similarity indices, interpolation engines and convergence "
               "experiments"};
  app.require_subcommand(1);

  CommonOpts func_opts;
  std::vector<std::string> functions = {"f1", "f2"};
  std::string func_out = "results";
  CLI::App* func = app.add_subcommand(
      "func-convergence", "refinement ladders against analytic test surfaces");
  add_common(func, func_opts);
  func->add_option("--function", functions,
                   "test surface id (repeatable): f1 or f2");
  func->add_option("--out", func_out, "output directory");

  CommonOpts image_opts;
  std::string image_path, image_sizes, image_out = "results";
  CLI::App* image = app.add_subcommand(
      "image-convergence", "subsampled reconstruction ladder on a PGM image");
  add_common(image, image_opts);
  image->add_option("--image", image_path, "P5 PGM input")->required();
  image->add_option("--sizes", image_sizes, "comma list of coarse grid sizes");
  image->add_option("--out", image_out, "output directory");

  CommonOpts cmp_opts;
  std::string cmp_a, cmp_b;
  CLI::App* cmp =
      app.add_subcommand("compare", "similarity report for two PGM images");
  add_common(cmp, cmp_opts);
  cmp->add_option("a", cmp_a, "first image")->required();
  cmp->add_option("b", cmp_b, "second image")->required();

  CommonOpts verify_opts;
  std::size_t trials = 200;
  CLI::App* verify = app.add_subcommand(
      "verify-bounds", "randomized sweep over every inequality the library "
                       "promises");
  add_common(verify, verify_opts);
  verify->add_option("--trials", trials, "number of random field pairs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message; usage mistakes are config errors
    return 2;
  }

  if (func->parsed()) return run_func_convergence(func_opts, functions, func_out);
  if (image->parsed()) {
    return run_image_convergence(image_opts, image_path, image_sizes, image_out);
  }
  if (cmp->parsed()) return run_compare(cmp_opts, cmp_a, cmp_b);
  if (verify->parsed()) return run_verify_bounds(verify_opts, trials);
  return 2;
}
