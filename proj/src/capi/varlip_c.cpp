#include "varlip/varlip.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "json.hpp"
#include "varlip/commutators.hpp"
#include "varlip/error.hpp"
#include "varlip/exponents.hpp"
#include "varlip/grid.hpp"
#include "varlip/harness/checks.hpp"
#include "varlip/harness/suite.hpp"
#include "varlip/lipschitz.hpp"
#include "varlip/norms.hpp"
#include "varlip/operators.hpp"

struct vl_grid {
  varlip::Grid grid;
};
struct vl_function {
  varlip::GridFunction f;
};
struct vl_exponent {
  varlip::VariableExponent p;
};

namespace {

thread_local std::string last_error;

vl_status to_status(varlip::ErrorCode code) {
  switch (code) {
    case varlip::ErrorCode::argument: return VL_ERR_ARGUMENT;
    case varlip::ErrorCode::domain: return VL_ERR_DOMAIN;
    case varlip::ErrorCode::exponent_range: return VL_ERR_EXPONENT_RANGE;
    case varlip::ErrorCode::hypothesis: return VL_ERR_HYPOTHESIS;
    case varlip::ErrorCode::schema: return VL_ERR_SCHEMA;
    case varlip::ErrorCode::insufficient_data: return VL_ERR_INSUFFICIENT_DATA;
    case varlip::ErrorCode::io: return VL_ERR_IO;
  }
  return VL_ERR_INTERNAL;
}

template <class Fn>
vl_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return VL_OK;
  } catch (const varlip::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return VL_ERR_INTERNAL;
}

void need(const void* p, const char* what) {
  if (p == nullptr) varlip::fail(varlip::ErrorCode::argument, std::string(what) + " is null");
}

vl_function* wrap(varlip::GridFunction f) { return new vl_function{std::move(f)}; }

}  // namespace

extern "C" {

const char* vl_last_error(void) { return last_error.c_str(); }

const char* vl_version(void) { return "1.0.0"; }

vl_status vl_grid_create(int dim, const double* lower, double side, int cells, vl_grid** out) {
  return guarded([&] {
    need(lower, "lower");
    need(out, "out");
    varlip::Point lo{lower[0], dim == 2 ? lower[1] : 0.0};
    *out = new vl_grid{varlip::Grid(dim, lo, side, cells)};
  });
}

void vl_grid_destroy(vl_grid* grid) { delete grid; }

size_t vl_grid_size(const vl_grid* grid) { return grid ? grid->grid.size() : 0; }

vl_status vl_function_create(const vl_grid* grid, const double* values, size_t count,
                             vl_function** out) {
  return guarded([&] {
    need(grid, "grid");
    need(values, "values");
    need(out, "out");
    if (count != grid->grid.size()) {
      varlip::fail(varlip::ErrorCode::argument, "value count " + std::to_string(count) +
                                                    " does not match grid size " +
                                                    std::to_string(grid->grid.size()));
    }
    *out = wrap(varlip::GridFunction(grid->grid, std::vector<double>(values, values + count)));
  });
}

void vl_function_destroy(vl_function* f) { delete f; }

size_t vl_function_size(const vl_function* f) { return f ? f->f.size() : 0; }

vl_status vl_function_values(const vl_function* f, double* out, size_t count) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    if (count < f->f.size()) varlip::fail(varlip::ErrorCode::argument, "output buffer too small");
    std::memcpy(out, f->f.values().data(), f->f.size() * sizeof(double));
  });
}

vl_status vl_exponent_builtin(const vl_grid* grid, const char* family, const char* params_json,
                              vl_exponent** out) {
  return guarded([&] {
    need(grid, "grid");
    need(family, "family");
    need(out, "out");
    varlip::ParamMap params;
    if (params_json != nullptr) {
      const auto j = nlohmann::json::parse(params_json, nullptr, false);
      if (j.is_discarded() || !j.is_object()) {
        varlip::fail(varlip::ErrorCode::schema, "exponent parameters must be a JSON object of numbers");
      }
      for (const auto& [k, v] : j.items()) {
        if (!v.is_number()) varlip::fail(varlip::ErrorCode::schema, "parameter '" + k + "' is not a number");
        params[k] = v.get<double>();
      }
    }
    *out = new vl_exponent{varlip::builtin_exponent(grid->grid, family, params)};
  });
}

vl_status vl_exponent_create(const vl_grid* grid, const double* values, size_t count, double p_infty,
                             vl_exponent** out) {
  return guarded([&] {
    need(grid, "grid");
    need(values, "values");
    need(out, "out");
    if (count != grid->grid.size()) varlip::fail(varlip::ErrorCode::argument, "value count does not match grid size");
    std::optional<double> inf;
    if (p_infty > 0.0) inf = p_infty;
    *out = new vl_exponent{varlip::VariableExponent(
        varlip::GridFunction(grid->grid, std::vector<double>(values, values + count)), inf)};
  });
}

void vl_exponent_destroy(vl_exponent* p) { delete p; }

vl_status vl_luxemburg_norm(const vl_function* f, const vl_exponent* p, double* out) {
  return guarded([&] {
    need(f, "function");
    need(p, "exponent");
    need(out, "out");
    *out = varlip::luxemburg_norm(f->f, p->p).value;
  });
}

vl_status vl_fractional_maximal(const vl_function* f, double alpha, vl_function** out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = wrap(varlip::fractional_maximal(f->f, alpha));
  });
}

vl_status vl_variable_fractional_maximal(const vl_function* f, const vl_function* delta,
                                         vl_function** out) {
  return guarded([&] {
    need(f, "function");
    need(delta, "delta");
    need(out, "out");
    *out = wrap(varlip::variable_fractional_maximal(f->f, delta->f));
  });
}

vl_status vl_sharp_maximal(const vl_function* f, vl_function** out) {
  return guarded([&] {
    need(f, "function");
    need(out, "out");
    *out = wrap(varlip::sharp_maximal(f->f));
  });
}

vl_status vl_potential(const vl_function* f, const vl_function* delta, vl_function** out) {
  return guarded([&] {
    need(f, "function");
    need(delta, "delta");
    need(out, "out");
    *out = wrap(varlip::potential(f->f, delta->f));
  });
}

vl_status vl_maximal_commutator(const vl_function* b, const vl_function* f, double alpha,
                                vl_function** out) {
  return guarded([&] {
    need(b, "symbol");
    need(f, "function");
    need(out, "out");
    *out = wrap(varlip::maximal_commutator(b->f, f->f, alpha));
  });
}

vl_status vl_nonlinear_fractional_commutator(const vl_function* b, const vl_function* f, double alpha,
                                             vl_function** out) {
  return guarded([&] {
    need(b, "symbol");
    need(f, "function");
    need(out, "out");
    *out = wrap(varlip::nonlinear_fractional_commutator(b->f, f->f, alpha));
  });
}

vl_status vl_nonlinear_sharp_commutator(const vl_function* b, const vl_function* f, vl_function** out) {
  return guarded([&] {
    need(b, "symbol");
    need(f, "function");
    need(out, "out");
    *out = wrap(varlip::nonlinear_sharp_commutator(b->f, f->f));
  });
}

vl_status vl_pointwise_lipschitz_norm(const vl_function* b, const vl_function* delta, double* out) {
  return guarded([&] {
    need(b, "symbol");
    need(delta, "delta");
    need(out, "out");
    *out = varlip::pointwise_lipschitz_norm(b->f, delta->f).norm;
  });
}

vl_status vl_integral_lipschitz_norm(const vl_function* b, double beta, const vl_exponent* p,
                                     double* out) {
  return guarded([&] {
    need(b, "symbol");
    need(p, "exponent");
    need(out, "out");
    *out = varlip::integral_lipschitz_norm(b->f, beta, p->p).norm;
  });
}

vl_status vl_suite_list_checks(char* buf, size_t capacity, size_t* needed) {
  return guarded([&] {
    std::string text;
    for (const auto& id : varlip::harness::check_ids()) text += id + "\n";
    if (needed != nullptr) *needed = text.size() + 1;
    if (buf == nullptr) return;
    if (capacity < text.size() + 1) varlip::fail(varlip::ErrorCode::argument, "buffer too small");
    std::memcpy(buf, text.c_str(), text.size() + 1);
  });
}

vl_status vl_suite_run(const char* config_json, const char* out_dir, const char* const* checks,
                       size_t n_checks, const uint64_t* seed_override, int* exit_code) {
  int code = 1;
  const vl_status s = guarded([&] {
    need(config_json, "config");
    need(out_dir, "out_dir");
    if (n_checks > 0) need(checks, "checks");
    varlip::harness::SuiteOptions opts;
    for (size_t k = 0; k < n_checks; ++k) {
      need(checks[k], "check id");
      opts.checks.emplace_back(checks[k]);
    }
    if (seed_override != nullptr) opts.seed = *seed_override;
    const auto cfg = varlip::harness::parse_config(config_json);
    const auto result = varlip::harness::run_suite(cfg, opts);
    varlip::harness::write_outputs(result, out_dir);
    code = result.exit_code;
  });
  if (exit_code != nullptr) *exit_code = s == VL_OK ? code : 1;
  return s;
}

}  // extern "C"
