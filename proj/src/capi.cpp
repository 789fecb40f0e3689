#include "galcoh/galcoh.h"

#include <exception>
#include <new>
#include <string>

#include "galcoh/errors.hpp"
#include "galcoh/jobs.hpp"
#include "galcoh/linalg.hpp"

struct galcoh_context {
  long precision = 0;
  std::uint64_t seed = 0;
  std::string last_error;
};

struct galcoh_report {
  std::string text;
  int exit_code = 0;
};

namespace {

// Runs f, converting exceptions to status codes and recording the message.
template <class F>
galcoh_status guarded(galcoh_context* ctx, F&& f) {
  if (ctx) ctx->last_error.clear();
  try {
    f();
    return GALCOH_OK;
  } catch (const galcoh::Error& e) {
    if (ctx) ctx->last_error = e.what();
    return static_cast<galcoh_status>(e.code());
  } catch (const std::bad_alloc&) {
    if (ctx) ctx->last_error = "out of memory";
    return GALCOH_INTERNAL;
  } catch (const std::exception& e) {
    if (ctx) ctx->last_error = e.what();
    return GALCOH_INTERNAL;
  }
}

galcoh_status bad_argument(galcoh_context* ctx, const char* what) {
  if (ctx) ctx->last_error = what;
  return GALCOH_BAD_ARGUMENT;
}

}  // namespace

extern "C" {

const char* galcoh_version(void) { return "0.1.0"; }

const char* galcoh_status_string(galcoh_status status) {
  switch (status) {
    case GALCOH_OK: return "ok";
    case GALCOH_BAD_ARGUMENT: return "bad argument";
    case GALCOH_INVALID_INPUT: return "invalid input";
    case GALCOH_PRECISION: return "precision failure";
    case GALCOH_SCHEMA: return "schema error";
    case GALCOH_INTERNAL: return "internal error";
  }
  return "unknown status";
}

galcoh_status galcoh_context_create(galcoh_context** out) {
  if (!out) return GALCOH_BAD_ARGUMENT;
  *out = new (std::nothrow) galcoh_context();
  return *out ? GALCOH_OK : GALCOH_INTERNAL;
}

void galcoh_context_destroy(galcoh_context* ctx) { delete ctx; }

const char* galcoh_last_error(const galcoh_context* ctx) { return ctx ? ctx->last_error.c_str() : ""; }

galcoh_status galcoh_context_set_precision(galcoh_context* ctx, long digits) {
  if (!ctx) return GALCOH_BAD_ARGUMENT;
  if (digits < 0 || digits > 4096) return bad_argument(ctx, "precision must be in [0, 4096]");
  ctx->precision = digits;
  return GALCOH_OK;
}

galcoh_status galcoh_context_set_seed(galcoh_context* ctx, uint64_t seed) {
  if (!ctx) return GALCOH_BAD_ARGUMENT;
  ctx->seed = seed;
  return GALCOH_OK;
}

galcoh_status galcoh_run_jobs(galcoh_context* ctx, const char* document, galcoh_format format, int trace,
                              galcoh_report** out) {
  if (!ctx || !document || !out) return bad_argument(ctx, "null argument");
  if (format != GALCOH_FORMAT_JSON && format != GALCOH_FORMAT_TEXT) return bad_argument(ctx, "unknown format");
  *out = nullptr;
  return guarded(ctx, [&] {
    galcoh::RunOptions opt;
    opt.format = format == GALCOH_FORMAT_TEXT ? galcoh::RunOptions::Format::Text : galcoh::RunOptions::Format::Json;
    opt.precision = ctx->precision;
    opt.seed = ctx->seed;
    opt.trace = trace != 0;
    galcoh::RunResult r = galcoh::run_jobs(document, opt);
    *out = new galcoh_report{std::move(r.output), r.exit_code};
  });
}

const char* galcoh_report_text(const galcoh_report* report) { return report ? report->text.c_str() : ""; }

int galcoh_report_exit_code(const galcoh_report* report) { return report ? report->exit_code : GALCOH_BAD_ARGUMENT; }

void galcoh_report_destroy(galcoh_report* report) { delete report; }

galcoh_status galcoh_smith_invariants(galcoh_context* ctx, size_t rows, size_t cols, const long* entries,
                                      long* factors, size_t* rank) {
  if (!ctx || !rank || (rows * cols > 0 && (!entries || !factors))) return bad_argument(ctx, "null argument");
  return guarded(ctx, [&] {
    galcoh::IntMatrix a(rows, cols);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) a(i, j) = entries[i * cols + j];
    const galcoh::SmithDecomposition s = galcoh::smith_normal_form(a);
    const galcoh::IntVector d = s.diagonal();
    for (size_t i = 0; i < s.rank; ++i)
      if (!d[i].fits_slong_p()) throw galcoh::InvalidInput("invariant factor does not fit in a long");
    for (size_t i = 0; i < s.rank; ++i) factors[i] = d[i].get_si();
    *rank = s.rank;
  });
}

galcoh_status galcoh_is_square(galcoh_context* ctx, const char* field_json, const char* element, int* is_square) {
  if (!ctx || !field_json || !element || !is_square) return bad_argument(ctx, "null argument");
  return guarded(ctx, [&] {
    const galcoh::LocalField k = galcoh::local_field_from_json(field_json, ctx->precision);
    *is_square = k.is_square(k.parse(element)) ? 1 : 0;
  });
}

}  // extern "C"
