#include "drgsplit/drgsplit.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <span>
#include <string>

#include "drgsplit/errors.hpp"
#include "drgsplit/graph.hpp"
#include "drgsplit/pipeline.hpp"

using drgsplit::Error;
using drgsplit::ErrorCode;

struct drgs_graph {
  drgsplit::Graph graph;
};

struct drgs_config {
  drgsplit::RunConfig config;
};

struct drgs_report {
  drgsplit::RunResult result;
};

namespace {

thread_local std::string g_last_error;

drgs_status to_status(ErrorCode code) { return static_cast<drgs_status>(static_cast<int>(code)); }

drgs_status fail(drgs_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
drgs_status guarded(F&& body) {
  g_last_error.clear();
  try {
    return body();
  } catch (const Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(DRGS_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(DRGS_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

drgsplit::OutputFormat to_format(drgs_format f) {
  switch (f) {
    case DRGS_FORMAT_JSON: return drgsplit::OutputFormat::Json;
    case DRGS_FORMAT_CSV: return drgsplit::OutputFormat::Csv;
    case DRGS_FORMAT_MARKDOWN: return drgsplit::OutputFormat::Markdown;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown format");
}

template <class Run>
drgs_status run_pipeline(const drgs_graph* g, const drgs_config* cfg, drgs_report** out, Run&& run) {
  return guarded([&] {
    if (!g || !cfg || !out) return fail(DRGS_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    auto report = std::make_unique<drgs_report>(drgs_report{run(g->graph, cfg->config)});
    const drgs_status status = to_status(report->result.status);
    if (status != DRGS_OK) g_last_error = report->result.message;
    *out = report.release();
    return status;
  });
}

}  // namespace

extern "C" {

const char* drgs_version(void) { return "1.0.0"; }

const char* drgs_status_name(drgs_status status) {
  return drgsplit::error_name(static_cast<ErrorCode>(status));
}

const char* drgs_last_error(void) { return g_last_error.c_str(); }

drgs_status drgs_graph_build(const char* family, const long* params, size_t nparams, drgs_graph** out) {
  return guarded([&] {
    if (!family || !out || (nparams && !params)) return fail(DRGS_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    auto g = drgsplit::build_family(drgsplit::parse_family(family), std::span<const long>(params, nparams));
    *out = new drgs_graph{std::move(g)};
    return DRGS_OK;
  });
}

drgs_status drgs_graph_load(const char* path, drgs_graph** out) {
  return guarded([&] {
    if (!path || !out) return fail(DRGS_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    *out = new drgs_graph{drgsplit::load_graph_file(path)};
    return DRGS_OK;
  });
}

drgs_status drgs_graph_parse(const char* text, drgs_graph** out) {
  return guarded([&] {
    if (!text || !out) return fail(DRGS_INVALID_ARGUMENT, "null argument");
    *out = nullptr;
    *out = new drgs_graph{drgsplit::read_graph(text)};
    return DRGS_OK;
  });
}

drgs_status drgs_graph_save(const drgs_graph* g, const char* path) {
  return guarded([&] {
    if (!g || !path) return fail(DRGS_INVALID_ARGUMENT, "null argument");
    drgsplit::save_graph_file(g->graph, path);
    return DRGS_OK;
  });
}

drgs_status drgs_graph_text(const drgs_graph* g, char** out) {
  return guarded([&] {
    if (!g || !out) return fail(DRGS_INVALID_ARGUMENT, "null argument");
    *out = dup_string(drgsplit::write_graph(g->graph));
    return DRGS_OK;
  });
}

int drgs_graph_vertex_count(const drgs_graph* g) { return g ? g->graph.size() : 0; }

size_t drgs_graph_edge_count(const drgs_graph* g) { return g ? g->graph.edge_count() : 0; }

const char* drgs_graph_name(const drgs_graph* g) { return g ? g->graph.name().c_str() : ""; }

void drgs_graph_free(drgs_graph* g) { delete g; }

drgs_config* drgs_config_new(void) {
  try {
    auto* cfg = new drgs_config{};
    cfg->config.cache_dir = drgsplit::default_cache_dir();
    return cfg;
  } catch (...) {
    return nullptr;
  }
}

void drgs_config_free(drgs_config* cfg) { delete cfg; }

drgs_status drgs_config_set_source_family(drgs_config* cfg, const char* family, const long* params,
                                          size_t nparams) {
  return guarded([&] {
    if (!cfg || !family || (nparams && !params)) return fail(DRGS_INVALID_ARGUMENT, "null argument");
    auto& src = cfg->config.source;
    src.kind = drgsplit::GraphSource::Kind::Family;
    src.family = family;
    src.params.assign(params, params + nparams);
    src.path.clear();
    return DRGS_OK;
  });
}

drgs_status drgs_config_set_source_file(drgs_config* cfg, const char* path) {
  return guarded([&] {
    if (!cfg || !path) return fail(DRGS_INVALID_ARGUMENT, "null argument");
    auto& src = cfg->config.source;
    src.kind = drgsplit::GraphSource::Kind::File;
    src.family.clear();
    src.params.clear();
    src.path = path;
    return DRGS_OK;
  });
}

drgs_status drgs_config_set_base(drgs_config* cfg, int base) {
  if (!cfg) return fail(DRGS_INVALID_ARGUMENT, "null argument");
  if (base < 0) return fail(DRGS_VERTEX_OUT_OF_RANGE, "base vertex must be nonnegative");
  cfg->config.base = base;
  return DRGS_OK;
}

drgs_status drgs_config_set_ordering(drgs_config* cfg, int ordering) {
  if (!cfg) return fail(DRGS_INVALID_ARGUMENT, "null argument");
  if (ordering < 0) return fail(DRGS_INVALID_ARGUMENT, "ordering index must be nonnegative");
  cfg->config.ordering = ordering;
  return DRGS_OK;
}

drgs_status drgs_config_set_seed(drgs_config* cfg, uint64_t seed) {
  if (!cfg) return fail(DRGS_INVALID_ARGUMENT, "null argument");
  cfg->config.seed = seed;
  return DRGS_OK;
}

drgs_status drgs_config_set_tolerance(drgs_config* cfg, drgs_tolerance which, double value) {
  if (!cfg) return fail(DRGS_INVALID_ARGUMENT, "null argument");
  if (!(value > 0)) return fail(DRGS_INVALID_ARGUMENT, "tolerance must be positive");
  auto& tol = cfg->config.tol;
  switch (which) {
    case DRGS_TOL_RANK: tol.eps_rank = value; break;
    case DRGS_TOL_EIG: tol.eps_eig = value; break;
    case DRGS_TOL_ORTH: tol.eps_orth = value; break;
    case DRGS_TOL_KREIN: tol.eps_krein = value; break;
    case DRGS_TOL_ZERO: tol.eps_zero = value; break;
    default: return fail(DRGS_INVALID_ARGUMENT, "unknown tolerance");
  }
  return DRGS_OK;
}

drgs_status drgs_config_set_format(drgs_config* cfg, drgs_format format) {
  return guarded([&] {
    if (!cfg) return fail(DRGS_INVALID_ARGUMENT, "null argument");
    cfg->config.format = to_format(format);
    return DRGS_OK;
  });
}

drgs_status drgs_config_set_cache_dir(drgs_config* cfg, const char* dir) {
  if (!cfg) return fail(DRGS_INVALID_ARGUMENT, "null argument");
  cfg->config.cache_dir = dir ? dir : "";
  return DRGS_OK;
}

drgs_status drgs_verify(const drgs_graph* g, const drgs_config* cfg, drgs_report** out) {
  return run_pipeline(g, cfg, out, drgsplit::run_verify);
}

drgs_status drgs_dims(const drgs_graph* g, const drgs_config* cfg, drgs_report** out) {
  return run_pipeline(g, cfg, out, drgsplit::run_dims);
}

drgs_status drgs_report_status(const drgs_report* r) {
  return r ? to_status(r->result.status) : DRGS_INVALID_ARGUMENT;
}

const char* drgs_report_cache_status(const drgs_report* r) {
  return r ? r->result.cache_status.c_str() : "";
}

drgs_status drgs_report_render(const drgs_report* r, drgs_format format, char** out) {
  return guarded([&] {
    if (!r || !out) return fail(DRGS_INVALID_ARGUMENT, "null argument");
    *out = dup_string(drgsplit::render_report(r->result.report, to_format(format)));
    return DRGS_OK;
  });
}

void drgs_report_free(drgs_report* r) { delete r; }

void drgs_string_free(char* s) { std::free(s); }

}  // extern "C"
