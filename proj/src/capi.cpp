#include "ssimlab.h"

#include <cctype>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bounds.hpp"
#include "error.hpp"
#include "field.hpp"
#include "harness.hpp"
#include "pgm.hpp"
#include "similarity.hpp"
#include "window.hpp"

struct ssimlab_field {
  ssimlab::ScalarField2D field;
};

struct ssimlab_config {
  ssimlab::ExperimentConfig cfg;
};

namespace {

thread_local std::string g_last_error;

ssimlab_status map_kind(ssimlab::ErrorKind kind) {
  switch (kind) {
    case ssimlab::ErrorKind::config: return SSIMLAB_ERR_CONFIG;
    case ssimlab::ErrorKind::io: return SSIMLAB_ERR_IO;
    case ssimlab::ErrorKind::numeric: return SSIMLAB_ERR_NUMERIC;
  }
  return SSIMLAB_ERR_NUMERIC;
}

template <typename F>
ssimlab_status guarded(F&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SSIMLAB_OK;
  } catch (const ssimlab::Error& e) {
    g_last_error = e.what();
    return map_kind(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SSIMLAB_ERR_NUMERIC;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SSIMLAB_ERR_NUMERIC;
  }
}

ssimlab_status config_error(const std::string& msg) {
  g_last_error = msg;
  return SSIMLAB_ERR_CONFIG;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ssimlab::WeightWindow window_from(const ssimlab::ExperimentConfig& cfg) {
  if (cfg.window_size == 0) return ssimlab::WeightWindow::whole_domain();
  return ssimlab::WeightWindow::uniform(cfg.window_size, cfg.anchor,
                                        cfg.boundary);
}

const ssimlab::ExperimentConfig& config_or_default(const ssimlab_config* cfg) {
  static const ssimlab::ExperimentConfig defaults;
  return cfg != nullptr ? cfg->cfg : defaults;
}

std::string sanitized_stem(const std::string& path) {
  std::string stem = std::filesystem::path(path).stem().string();
  if (stem.empty()) stem = "input";
  for (char& ch : stem) {
    if (!std::isalnum(static_cast<unsigned char>(ch))) ch = '_';
  }
  return stem;
}

std::string run_basename(const ssimlab::ExperimentConfig& cfg, bool image) {
  std::string name = image ? "image_" + sanitized_stem(cfg.image_path)
                           : "func_" + cfg.function_id;
  if (cfg.methods.size() == 1) {
    name += std::string("_") + ssimlab::method_name(cfg.methods[0]);
  }
  return name;
}

void write_outputs(const ssimlab::ConvergenceRun& run,
                   const ssimlab::ExperimentConfig& cfg, bool image,
                   const char* out_dir, char** summary) {
  if (out_dir != nullptr) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
      ssimlab::fail(ssimlab::ErrorKind::io,
                    "cannot create output directory '" + std::string(out_dir) +
                        "': " + ec.message());
    }
    const std::string base =
        (std::filesystem::path(out_dir) / run_basename(cfg, image)).string();
    ssimlab::write_csv(run, base + ".csv");
    ssimlab::write_metadata(run, base + ".meta.txt");
  }
  if (summary != nullptr) *summary = dup_string(ssimlab::run_summary(run));
}

}  // namespace

extern "C" {

const char* ssimlab_version(void) { return "0.1.0"; }

const char* ssimlab_last_error(void) { return g_last_error.c_str(); }

ssimlab_status ssimlab_field_create(size_t nx, size_t ny, const double* values,
                                    ssimlab_field** out) {
  if (out == nullptr) return config_error("null output handle");
  *out = nullptr;
  if (values == nullptr) return config_error("null values pointer");
  return guarded([&] {
    if (nx < 2 || ny < 2) {
      ssimlab::fail_config("fields need at least 2 nodes per axis");
    }
    const ssimlab::GridSpec grid = ssimlab::GridSpec::rect(
        ssimlab::Domain2D::unit(), nx - 1, ny - 1, ssimlab::NodeLayout::vertex);
    std::vector<double> v(values, values + nx * ny);
    *out = new ssimlab_field{ssimlab::ScalarField2D(grid, std::move(v))};
  });
}

ssimlab_status ssimlab_field_load_pgm(const char* path, ssimlab_field** out) {
  if (out == nullptr) return config_error("null output handle");
  *out = nullptr;
  if (path == nullptr) return config_error("null path");
  return guarded([&] { *out = new ssimlab_field{ssimlab::load_image(path)}; });
}

ssimlab_status ssimlab_field_save_pgm(const ssimlab_field* f, const char* path,
                                      unsigned maxval) {
  if (f == nullptr) return config_error("null field handle");
  if (path == nullptr) return config_error("null path");
  return guarded([&] { ssimlab::save_image(path, f->field, maxval); });
}

void ssimlab_field_destroy(ssimlab_field* f) { delete f; }

size_t ssimlab_field_nx(const ssimlab_field* f) {
  return f != nullptr ? f->field.nx() : 0;
}

size_t ssimlab_field_ny(const ssimlab_field* f) {
  return f != nullptr ? f->field.ny() : 0;
}

const double* ssimlab_field_values(const ssimlab_field* f) {
  return f != nullptr ? f->field.values().data() : nullptr;
}

ssimlab_status ssimlab_config_create(ssimlab_config** out) {
  if (out == nullptr) return config_error("null output handle");
  *out = nullptr;
  return guarded([&] { *out = new ssimlab_config{}; });
}

ssimlab_status ssimlab_config_set(ssimlab_config* cfg, const char* key,
                                  const char* value) {
  if (cfg == nullptr) return config_error("null config handle");
  if (key == nullptr || value == nullptr) {
    return config_error("null key or value");
  }
  return guarded([&] { ssimlab::apply_config_kv(cfg->cfg, key, value); });
}

ssimlab_status ssimlab_config_load(ssimlab_config* cfg, const char* path) {
  if (cfg == nullptr) return config_error("null config handle");
  if (path == nullptr) return config_error("null path");
  return guarded([&] { ssimlab::apply_config_file(cfg->cfg, path); });
}

void ssimlab_config_destroy(ssimlab_config* cfg) { delete cfg; }

ssimlab_status ssimlab_compare(const ssimlab_field* f, const ssimlab_field* g,
                               const ssimlab_config* cfg,
                               ssimlab_compare_result* out) {
  if (f == nullptr || g == nullptr) return config_error("null field handle");
  if (out == nullptr) return config_error("null result pointer");
  return guarded([&] {
    const ssimlab::ExperimentConfig& c = config_or_default(cfg);
    const ssimlab::SimilarityReport rep =
        ssimlab::compare(f->field, g->field, window_from(c), c.constants);
    out->ssim = rep.ssim;
    out->wssim = rep.wssim;
    out->l1 = rep.l1;
    out->l2 = rep.l2;
    out->dissim_global = rep.dissim_global;
    out->dissim_weighted = rep.dissim_weighted;
    out->c_fg = rep.constants.c_fg;
    out->c_f = rep.constants.c_f;
    out->c = rep.constants.c;
    out->C_fg = rep.constants.C_fg;
    out->C_f = rep.constants.C_f;
    out->R = rep.constants.R;
    out->c_prime = rep.constants.c_prime;
    out->w_max = rep.constants.w_max;
  });
}

ssimlab_status ssimlab_check_lower_bound(const ssimlab_field* f,
                                         const ssimlab_field* g,
                                         const ssimlab_config* cfg,
                                         ssimlab_lower_bound_result* out) {
  if (f == nullptr || g == nullptr) return config_error("null field handle");
  if (out == nullptr) return config_error("null result pointer");
  return guarded([&] {
    const ssimlab::ExperimentConfig& c = config_or_default(cfg);
    const ssimlab::LowerBoundReport rep = ssimlab::check_lower_bound(
        f->field, g->field, window_from(c), c.constants);
    out->lhs = rep.bound.lhs;
    out->dissim = rep.bound.rhs;
    out->slack = rep.bound.slack;
    out->holds = rep.bound.holds ? 1 : 0;
    out->r_used = rep.r_used;
    out->r_required = rep.r_required;
    out->r_verified = rep.r_verified ? 1 : 0;
    out->l2sq = rep.l2sq;
    out->mean_sq_mu_diff = rep.mean_sq_mu_diff;
    out->w_max = rep.w_max;
    out->c_prime = rep.c_prime;
    out->c_prime_applicable = rep.c_prime_applicable ? 1 : 0;
    out->certificate_lhs = rep.certificate.lhs;
    out->certificate_holds = rep.certificate.holds ? 1 : 0;
  });
}

ssimlab_status ssimlab_run_function_experiment(const ssimlab_config* cfg,
                                               const char* out_dir,
                                               char** summary) {
  if (summary != nullptr) *summary = nullptr;
  return guarded([&] {
    const ssimlab::ExperimentConfig& c = config_or_default(cfg);
    const ssimlab::ConvergenceRun run = ssimlab::run_function_experiment(c);
    write_outputs(run, c, false, out_dir, summary);
  });
}

ssimlab_status ssimlab_run_image_experiment(const ssimlab_config* cfg,
                                            const char* out_dir,
                                            char** summary) {
  if (summary != nullptr) *summary = nullptr;
  return guarded([&] {
    const ssimlab::ExperimentConfig& c = config_or_default(cfg);
    const ssimlab::ConvergenceRun run = ssimlab::run_image_experiment(c);
    write_outputs(run, c, true, out_dir, summary);
  });
}

ssimlab_status ssimlab_verify_bounds(const ssimlab_config* cfg, size_t trials,
                                     char** report) {
  if (report != nullptr) *report = nullptr;
  bool passed = false;
  const ssimlab_status status = guarded([&] {
    const ssimlab::ExperimentConfig& c = config_or_default(cfg);
    const ssimlab::BoundSweepReport rep = ssimlab::verify_bounds_sweep(
        trials == 0 ? 200 : trials, c.seed, c.constants);
    passed = rep.all_passed();
    if (report != nullptr) {
      std::ostringstream os;
      os << "trials=" << rep.trials << '\n'
         << "upper_global_failures=" << rep.upper_global_failures << '\n'
         << "upper_windowed_failures=" << rep.upper_windowed_failures << '\n'
         << "decomposition_failures=" << rep.decomposition_failures << '\n'
         << "identity_max_residual=" << rep.identity_max_residual << '\n'
         << "lower_failures=" << rep.lower_failures << '\n'
         << "sandwich_failures=" << rep.sandwich_failures << '\n'
         << "windowed_lower_violations=" << rep.windowed_lower_violations
         << " (informational, not gated)\n"
         << "result=" << (passed ? "PASS" : "FAIL") << '\n';
      *report = dup_string(os.str());
    }
    if (!passed) {
      ssimlab::fail_numeric("bound verification sweep failed");
    }
  });
  return status;
}

void ssimlab_free(char* p) { std::free(p); }

}  // extern "C"
