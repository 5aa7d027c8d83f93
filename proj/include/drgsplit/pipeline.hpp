#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "drgsplit/errors.hpp"
#include "drgsplit/graph.hpp"
#include "drgsplit/scheme.hpp"
#include "drgsplit/tolerance.hpp"

namespace drgsplit {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "drgsplit.report/1";
inline constexpr const char* kCacheSchema = "drgsplit.scheme-cache/1";
inline constexpr double kReconstructionTolerance = 1e-7;

struct GraphSource {
  enum class Kind { Family, File, Inline };
  Kind kind = Kind::Inline;
  std::string family;
  std::vector<long> params;
  std::string path;
};

enum class OutputFormat { Json, Csv, Markdown };
OutputFormat parse_format(const std::string& s);
const char* format_name(OutputFormat f) noexcept;

struct RunConfig {
  GraphSource source;
  int base = 0;
  int ordering = 0;
  std::uint64_t seed = 1;
  ToleranceProfile tol;
  OutputFormat format = OutputFormat::Markdown;
  std::string cache_dir;
};

Json config_to_json(const RunConfig& cfg);

struct RunResult {
  Json report;
  ErrorCode status = ErrorCode::Ok;
  std::string message;
  std::string cache_status = "off";  // off | hit | miss; kept out of the report
};

/// Full chain: certify, scheme, Q-polynomial ordering, dual, split grids,
/// duality, module decomposition, reconstruction. Never throws for pipeline
/// failures; the status carries the outcome:
///   - a construction error (NotDistanceRegular, NotQPolynomial,
///     DirectSumViolation, DecompositionFailed, ...) stops the run with its code;
///   - otherwise DualityViolation if either duality sweep or the dimension
///     corollary fails;
///   - otherwise InvariantViolation if any other reported check fails.
RunResult run_verify(const Graph& g, const RunConfig& cfg);

/// Grids only (no module decomposition).
RunResult run_dims(const Graph& g, const RunConfig& cfg);

/// JSON with fixed field order, two-space indent, doubles at 17 significant
/// digits, trailing newline.
std::string render_json(const Json& j);
std::string render_report(const Json& report, OutputFormat format);

// Scheme cache, keyed by graph hash and tolerance profile. Access is guarded
// by an advisory lock on <dir>/.lock.
std::string cache_key(const std::string& graph_hash, const ToleranceProfile& tol);
std::optional<AssociationScheme> cache_load(const std::string& dir, const Graph& g,
                                            const DistanceData& d, const ToleranceProfile& tol);
void cache_store(const std::string& dir, const Graph& g, const AssociationScheme& s,
                 const ToleranceProfile& tol);

/// Cache directory from DRGSPLIT_CACHE_DIR, or empty.
std::string default_cache_dir();

}  // namespace drgsplit
