/*
 * drgsplit C API.
 *
 * Opaque handles own their data; release them with the matching *_free.
 * Every function returning drgs_status leaves a human-readable message for the
 * calling thread in drgs_last_error() when it fails. Status values are the
 * CLI exit codes.
 */
#ifndef DRGSPLIT_H
#define DRGSPLIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DRGS_API __declspec(dllexport)
#else
#define DRGS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum drgs_status {
  DRGS_OK = 0,
  DRGS_INVALID_ARGUMENT = 1,
  DRGS_INVALID_FAMILY_PARAMS = 2,
  DRGS_DIAMETER_TOO_SMALL = 3,
  DRGS_DISCONNECTED = 4,
  DRGS_NOT_DISTANCE_REGULAR = 5,
  DRGS_NOT_Q_POLYNOMIAL = 6,
  DRGS_DIRECT_SUM_VIOLATION = 7,
  DRGS_DUALITY_VIOLATION = 8,
  DRGS_DECOMPOSITION_FAILED = 9,
  DRGS_INVARIANT_VIOLATION = 10,
  DRGS_IO = 11,
  DRGS_PARSE = 12,
  DRGS_EIGENVALUE_COLLISION = 13,
  DRGS_CONDITIONING_FAILURE = 14,
  DRGS_VERTEX_OUT_OF_RANGE = 15,
  DRGS_NON_CONSTANT_ON_SUBCONSTITUENT = 16,
  DRGS_AMBIENT_MISMATCH = 17,
  DRGS_NOT_CONTAINED = 18,
  DRGS_NON_CONTIGUOUS_SUPPORT = 19,
  DRGS_INDEX_OUT_OF_RANGE = 20,
  DRGS_PAIR_MISMATCH = 21,
  DRGS_INTERNAL = 99
} drgs_status;

typedef enum drgs_format { DRGS_FORMAT_JSON = 0, DRGS_FORMAT_CSV = 1, DRGS_FORMAT_MARKDOWN = 2 } drgs_format;

typedef enum drgs_tolerance {
  DRGS_TOL_RANK = 0,
  DRGS_TOL_EIG = 1,
  DRGS_TOL_ORTH = 2,
  DRGS_TOL_KREIN = 3,
  DRGS_TOL_ZERO = 4
} drgs_tolerance;

typedef struct drgs_graph drgs_graph;
typedef struct drgs_config drgs_config;
typedef struct drgs_report drgs_report;

DRGS_API const char* drgs_version(void);
DRGS_API const char* drgs_status_name(drgs_status status);
/* Message of the last failure on this thread; empty string if none. */
DRGS_API const char* drgs_last_error(void);

/* Graphs. family is one of "hypercube", "hamming", "johnson", "cycle". */
DRGS_API drgs_status drgs_graph_build(const char* family, const long* params, size_t nparams,
                                      drgs_graph** out);
DRGS_API drgs_status drgs_graph_load(const char* path, drgs_graph** out);
DRGS_API drgs_status drgs_graph_parse(const char* text, drgs_graph** out);
DRGS_API drgs_status drgs_graph_save(const drgs_graph* g, const char* path);
/* Canonical graph file text; free with drgs_string_free. */
DRGS_API drgs_status drgs_graph_text(const drgs_graph* g, char** out);
DRGS_API int drgs_graph_vertex_count(const drgs_graph* g);
DRGS_API size_t drgs_graph_edge_count(const drgs_graph* g);
DRGS_API const char* drgs_graph_name(const drgs_graph* g);
DRGS_API void drgs_graph_free(drgs_graph* g);

/* Run configuration; defaults: base 0, ordering 0, seed 1, default tolerances,
 * markdown format, cache directory from DRGSPLIT_CACHE_DIR. */
DRGS_API drgs_config* drgs_config_new(void);
DRGS_API void drgs_config_free(drgs_config* cfg);
DRGS_API drgs_status drgs_config_set_source_family(drgs_config* cfg, const char* family,
                                                   const long* params, size_t nparams);
DRGS_API drgs_status drgs_config_set_source_file(drgs_config* cfg, const char* path);
DRGS_API drgs_status drgs_config_set_base(drgs_config* cfg, int base);
DRGS_API drgs_status drgs_config_set_ordering(drgs_config* cfg, int ordering);
DRGS_API drgs_status drgs_config_set_seed(drgs_config* cfg, uint64_t seed);
DRGS_API drgs_status drgs_config_set_tolerance(drgs_config* cfg, drgs_tolerance which, double value);
DRGS_API drgs_status drgs_config_set_format(drgs_config* cfg, drgs_format format);
/* NULL or "" disables caching. */
DRGS_API drgs_status drgs_config_set_cache_dir(drgs_config* cfg, const char* dir);

/* Pipelines. On return *out holds a report whenever the run got far enough to
 * produce one (including failed runs); the return value is the run status. */
DRGS_API drgs_status drgs_verify(const drgs_graph* g, const drgs_config* cfg, drgs_report** out);
DRGS_API drgs_status drgs_dims(const drgs_graph* g, const drgs_config* cfg, drgs_report** out);

DRGS_API drgs_status drgs_report_status(const drgs_report* r);
/* "off", "hit" or "miss". */
DRGS_API const char* drgs_report_cache_status(const drgs_report* r);
DRGS_API drgs_status drgs_report_render(const drgs_report* r, drgs_format format, char** out);
DRGS_API void drgs_report_free(drgs_report* r);

DRGS_API void drgs_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* DRGSPLIT_H */
