#include <cmath>
#include <cstdio>
#include <sstream>

#include "drgsplit/errors.hpp"
#include "drgsplit/pipeline.hpp"

namespace drgsplit {

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

void write_value(std::ostringstream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::null: out << "null"; break;
    case Json::value_t::boolean: out << (j.get<bool>() ? "true" : "false"); break;
    case Json::value_t::number_integer: out << j.get<std::int64_t>(); break;
    case Json::value_t::number_unsigned: out << j.get<std::uint64_t>(); break;
    case Json::value_t::number_float: out << format_double(j.get<double>()); break;
    case Json::value_t::string: out << Json(j.get<std::string>()).dump(); break;
    case Json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        break;
      }
      bool flat = true;
      for (const auto& e : j) flat = flat && is_scalar(e);
      if (flat) {
        out << '[';
        for (std::size_t t = 0; t < j.size(); ++t) {
          if (t) out << ", ";
          write_value(out, j[t], indent + 1);
        }
        out << ']';
        break;
      }
      out << "[\n";
      for (std::size_t t = 0; t < j.size(); ++t) {
        out << inner;
        write_value(out, j[t], indent + 1);
        out << (t + 1 < j.size() ? ",\n" : "\n");
      }
      out << pad << ']';
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        break;
      }
      out << "{\n";
      std::size_t t = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++t) {
        out << inner << Json(it.key()).dump() << ": ";
        write_value(out, it.value(), indent + 1);
        out << (t + 1 < j.size() ? ",\n" : "\n");
      }
      out << pad << '}';
      break;
    }
    default: out << "null"; break;
  }
}

std::string scalar_text(const Json& j) {
  if (j.is_number_float()) return format_double(j.get<double>());
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_null()) return "";
  return j.dump();
}

std::string render_csv(const Json& r) {
  std::ostringstream out;
  out << "split,i,j,dim\n";
  if (r.contains("splits"))
    for (auto it = r["splits"].begin(); it != r["splits"].end(); ++it) {
      const auto& dims = it.value()["dims"];
      for (std::size_t i = 0; i < dims.size(); ++i)
        for (std::size_t j = 0; j < dims[i].size(); ++j)
          out << it.key() << ',' << i << ',' << j << ',' << dims[i][j].get<int>() << '\n';
    }
  if (r.contains("checks") && !r["checks"].empty()) {
    out << "\ncheck,passed\n";
    for (auto it = r["checks"].begin(); it != r["checks"].end(); ++it)
      out << it.key() << ',' << (it.value().get<bool>() ? "true" : "false") << '\n';
  }
  out << "\nstatus,code\n" << r["status"]["name"].get<std::string>() << ','
      << r["status"]["code"].get<int>() << '\n';
  return out.str();
}

std::string render_markdown(const Json& r) {
  std::ostringstream out;
  out << "# " << r["command"].get<std::string>() << ": "
      << (r.contains("graph") ? r["graph"]["name"].get<std::string>() : std::string("?")) << "\n\n";
  if (r.contains("graph")) {
    const auto& g = r["graph"];
    out << "- vertices: " << g["n"] << ", diameter: " << scalar_text(g.value("diameter", Json()))
        << ", hash: `" << g["hash"].get<std::string>() << "`\n";
  }
  if (r.contains("scheme")) {
    const auto& s = r["scheme"];
    out << "- eigenvalues: " << s["theta"].dump() << "\n";
    out << "- multiplicities: " << s["mult"].dump() << "\n";
    out << "- Q-polynomial orderings: " << s["qpoly_orderings"].dump();
    if (s.contains("selected_ordering")) out << " (selected " << s["selected_ordering"].dump() << ")";
    out << '\n';
  }
  if (r.contains("dual")) out << "- base vertex: " << r["dual"]["base"] << "\n";
  out << '\n';
  if (r.contains("splits"))
    for (auto it = r["splits"].begin(); it != r["splits"].end(); ++it) {
      const auto& dims = it.value()["dims"];
      out << "## dims " << it.key() << "\n\n| i \\ j |";
      for (std::size_t j = 0; j < dims.size(); ++j) out << ' ' << j << " |";
      out << "\n|---|";
      for (std::size_t j = 0; j < dims.size(); ++j) out << "---|";
      out << '\n';
      for (std::size_t i = 0; i < dims.size(); ++i) {
        out << "| " << i << " |";
        for (std::size_t j = 0; j < dims[i].size(); ++j) out << ' ' << dims[i][j].get<int>() << " |";
        out << '\n';
      }
      out << '\n';
    }
  if (r.contains("duality")) {
    out << "## duality\n\n| pair | worst off-diagonal | witness (i,j,r,s) | exempt max | corollary |\n"
           "|---|---|---|---|---|\n";
    for (const auto& d : r["duality"])
      out << "| " << d["pair"].get<std::string>() << " | " << scalar_text(d["worst_offdiagonal"])
          << " | " << d["witness"].dump() << " | " << scalar_text(d["exempt_max"]) << " | "
          << (d["dim_corollary_ok"].get<bool>() ? "ok" : "FAIL") << " |\n";
    out << '\n';
  }
  if (r.contains("modules")) {
    const auto& m = r["modules"];
    out << "## modules (seed " << m["seed"] << ", attempts " << m["attempts"] << ")\n\n"
        << "| dim | rho | tau | d | max TD violation | max split orthogonality |\n"
           "|---|---|---|---|---|---|\n";
    for (const auto& w : m["list"])
      out << "| " << w["dim"] << " | " << w["rho"] << " | " << w["tau"] << " | " << w["d"] << " | "
          << scalar_text(w["max_td_violation"]) << " | "
          << scalar_text(w["max_split_orthogonality_violation"]) << " |\n";
    out << '\n';
  }
  if (r.contains("reconstruction")) {
    out << "## reconstruction\n\n| split | worst distance | cell |\n|---|---|---|\n";
    for (const auto& c : r["reconstruction"])
      out << "| " << c["split"].get<std::string>() << " | " << scalar_text(c["worst_distance"])
          << " | " << c["worst_cell"].dump() << " |\n";
    out << '\n';
  }
  if (r.contains("checks") && !r["checks"].empty()) {
    out << "## checks\n\n";
    for (auto it = r["checks"].begin(); it != r["checks"].end(); ++it)
      out << "- " << it.key() << ": " << (it.value().get<bool>() ? "pass" : "FAIL") << '\n';
    out << '\n';
  }
  const auto& st = r["status"];
  out << "status: " << st["name"].get<std::string>() << " (" << st["code"] << ")";
  if (!st["message"].get<std::string>().empty()) out << ": " << st["message"].get<std::string>();
  out << '\n';
  return out.str();
}

}  // namespace

OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  if (s == "markdown" || s == "md") return OutputFormat::Markdown;
  throw Error(ErrorCode::InvalidArgument, "unknown format '" + s + "'");
}

const char* format_name(OutputFormat f) noexcept {
  switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Markdown: return "markdown";
  }
  return "?";
}

Json config_to_json(const RunConfig& cfg) {
  Json source;
  switch (cfg.source.kind) {
    case GraphSource::Kind::Family:
      source["kind"] = "family";
      source["family"] = cfg.source.family;
      source["params"] = cfg.source.params;
      break;
    case GraphSource::Kind::File:
      source["kind"] = "file";
      source["path"] = cfg.source.path;
      break;
    case GraphSource::Kind::Inline:
      source["kind"] = "inline";
      break;
  }
  Json j;
  j["source"] = source;
  j["base"] = cfg.base;
  j["ordering"] = cfg.ordering;
  j["seed"] = cfg.seed;
  j["tolerances"] = {{"eps_rank", cfg.tol.eps_rank}, {"eps_eig", cfg.tol.eps_eig},
                     {"eps_orth", cfg.tol.eps_orth}, {"eps_krein", cfg.tol.eps_krein},
                     {"eps_zero", cfg.tol.eps_zero}};
  j["format"] = format_name(cfg.format);
  j["cache_dir"] = cfg.cache_dir;
  return j;
}

std::string render_json(const Json& j) {
  std::ostringstream out;
  write_value(out, j, 0);
  out << '\n';
  return out.str();
}

std::string render_report(const Json& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: return render_json(report);
    case OutputFormat::Csv: return render_csv(report);
    case OutputFormat::Markdown: return render_markdown(report);
  }
  return {};
}

}  // namespace drgsplit
