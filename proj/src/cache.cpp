#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "drgsplit/errors.hpp"
#include "drgsplit/pipeline.hpp"

namespace drgsplit {

namespace {

namespace fs = std::filesystem;

class DirLock {
 public:
  DirLock(const std::string& dir, bool exclusive) {
    fd_ = ::open((fs::path(dir) / ".lock").c_str(), O_RDWR | O_CREAT, 0644);
    if (fd_ >= 0 && ::flock(fd_, exclusive ? LOCK_EX : LOCK_SH) != 0) {
      ::close(fd_);
      fd_ = -1;
    }
  }
  ~DirLock() {
    if (fd_ >= 0) {
      ::flock(fd_, LOCK_UN);
      ::close(fd_);
    }
  }
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;
  bool ok() const noexcept { return fd_ >= 0; }

 private:
  int fd_ = -1;
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Json tolerance_json(const ToleranceProfile& tol) {
  return Json{{"eps_rank", tol.eps_rank}, {"eps_eig", tol.eps_eig}, {"eps_orth", tol.eps_orth},
              {"eps_krein", tol.eps_krein}, {"eps_zero", tol.eps_zero}};
}

fs::path cache_file(const std::string& dir, const Graph& g, const ToleranceProfile& tol) {
  return fs::path(dir) / ("scheme-" + cache_key(graph_hash(g), tol) + ".json");
}

}  // namespace

std::string cache_key(const std::string& graph_hash, const ToleranceProfile& tol) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(render_json(tolerance_json(tol)))));
  return graph_hash + "-" + buf;
}

std::string default_cache_dir() {
  const char* env = std::getenv("DRGSPLIT_CACHE_DIR");
  return env ? std::string(env) : std::string();
}

std::optional<AssociationScheme> cache_load(const std::string& dir, const Graph& g,
                                            const DistanceData& d, const ToleranceProfile& tol) {
  if (dir.empty() || !fs::is_directory(dir)) return std::nullopt;
  const fs::path file = cache_file(dir, g, tol);
  std::string text;
  {
    DirLock lock(dir, false);
    std::ifstream in(file, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    const Json doc = Json::parse(text);
    if (doc.at("schema") != kCacheSchema || doc.at("graph_hash") != graph_hash(g)) return std::nullopt;
    std::vector<double> theta = doc.at("theta").get<std::vector<double>>();
    KreinTable krein;
    krein.diameter = doc.at("krein").at("diameter").get<int>();
    krein.table = doc.at("krein").at("table").get<std::vector<double>>();
    QPolyOrderings qpoly;
    const auto& q = doc.at("qpoly");
    qpoly.orderings = q.at("orderings").get<std::vector<Permutation>>();
    qpoly.zero_threshold = q.at("zero_threshold").get<double>();
    qpoly.largest_zero = q.at("largest_zero").get<double>();
    qpoly.smallest_nonzero = q.at("smallest_nonzero").is_null()
                                 ? INFINITY
                                 : q.at("smallest_nonzero").get<double>();
    AssociationScheme s = build_scheme_from_cache(g, d, std::move(theta), std::move(krein),
                                                  std::move(qpoly), tol);
    if (s.mult != doc.at("mult").get<std::vector<int>>()) return std::nullopt;
    return s;
  } catch (const Json::exception&) {
    return std::nullopt;
  } catch (const Error&) {
    return std::nullopt;
  }
}

void cache_store(const std::string& dir, const Graph& g, const AssociationScheme& s,
                 const ToleranceProfile& tol) {
  if (dir.empty()) return;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create cache directory '" + dir + "': " + ec.message());
  Json doc;
  doc["schema"] = kCacheSchema;
  doc["graph_hash"] = graph_hash(g);
  doc["tolerances"] = tolerance_json(tol);
  doc["theta"] = s.theta;
  doc["mult"] = s.mult;
  doc["krein"] = {{"diameter", s.krein.diameter}, {"table", s.krein.table}};
  doc["qpoly"] = {{"orderings", s.qpoly.orderings},
                  {"zero_threshold", s.qpoly.zero_threshold},
                  {"largest_zero", s.qpoly.largest_zero},
                  {"smallest_nonzero", s.qpoly.smallest_nonzero}};
  const fs::path file = cache_file(dir, g, tol);
  fs::path tmp = file;
  tmp += ".tmp." + std::to_string(::getpid());
  DirLock lock(dir, true);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write cache file '" + tmp.string() + "'");
    out << render_json(doc);
  }
  fs::rename(tmp, file, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot install cache file: " + ec.message());
}

}  // namespace drgsplit
