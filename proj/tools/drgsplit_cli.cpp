// drgsplit command-line front end. Talks to the library only through the C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "drgsplit/drgsplit.h"

namespace {

struct Options {
  std::string family;
  std::vector<long> params;
  std::string graph_path;
  std::string positional;
  int base = 0;
  int ordering = 0;
  std::uint64_t seed = 1;
  std::map<drgs_tolerance, double> tol;
  std::string format = "markdown";
  std::string cache_dir;
  bool cache_dir_set = false;
  std::string out;
};

int report_failure(drgs_status status) {
  std::cerr << "error: " << drgs_status_name(status);
  const std::string msg = drgs_last_error();
  if (!msg.empty()) std::cerr << ": " << msg;
  std::cerr << '\n';
  return static_cast<int>(status);
}

drgs_format parse_format(const std::string& s) {
  if (s == "json") return DRGS_FORMAT_JSON;
  if (s == "csv") return DRGS_FORMAT_CSV;
  return DRGS_FORMAT_MARKDOWN;
}

void add_graph_options(CLI::App* cmd, Options& o) {
  cmd->add_option("graph_file", o.positional, "Graph file");
  cmd->add_option("--graph", o.graph_path, "Graph file");
  cmd->add_option("--family", o.family, "Graph family")
      ->check(CLI::IsMember({"hypercube", "hamming", "johnson", "cycle"}));
  cmd->add_option("--param", o.params, "Family parameter (repeatable)")->take_all();
}

void add_run_options(CLI::App* cmd, Options& o) {
  add_graph_options(cmd, o);
  cmd->add_option("--base", o.base, "Base vertex")->check(CLI::NonNegativeNumber);
  cmd->add_option("--ordering", o.ordering, "Index into the Q-polynomial orderings found")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", o.seed, "Seed for the module decomposition");
  const std::pair<const char*, drgs_tolerance> tols[] = {{"--tol-rank", DRGS_TOL_RANK},
                                                         {"--tol-eig", DRGS_TOL_EIG},
                                                         {"--tol-orth", DRGS_TOL_ORTH},
                                                         {"--tol-krein", DRGS_TOL_KREIN},
                                                         {"--tol-zero", DRGS_TOL_ZERO}};
  for (auto [flag, which] : tols)
    cmd->add_option_function<double>(flag, [&o, which](double v) { o.tol[which] = v; },
                                      "Tolerance override")
        ->check(CLI::PositiveNumber);
  cmd->add_option("--format", o.format, "Standard output format")
      ->check(CLI::IsMember({"json", "csv", "markdown"}));
  cmd->add_option_function<std::string>(
      "--cache-dir",
      [&o](const std::string& v) {
        o.cache_dir = v;
        o.cache_dir_set = true;
      },
      "Scheme cache directory (default: $DRGSPLIT_CACHE_DIR)");
  cmd->add_option("--out", o.out, "Write the JSON report here");
}

// Loads or builds the graph and records its source in the config.
drgs_status load_graph(const Options& o, drgs_config* cfg, drgs_graph** g) {
  const std::string path = !o.graph_path.empty() ? o.graph_path : o.positional;
  if (!path.empty() && !o.family.empty()) {
    std::cerr << "error: give either a graph file or --family, not both\n";
    return DRGS_INVALID_ARGUMENT;
  }
  if (!path.empty()) {
    if (cfg) drgs_config_set_source_file(cfg, path.c_str());
    return drgs_graph_load(path.c_str(), g);
  }
  if (o.family.empty()) {
    std::cerr << "error: no graph given (file argument, --graph, or --family)\n";
    return DRGS_INVALID_ARGUMENT;
  }
  if (cfg) drgs_config_set_source_family(cfg, o.family.c_str(), o.params.data(), o.params.size());
  return drgs_graph_build(o.family.c_str(), o.params.data(), o.params.size(), g);
}

int cmd_build(const Options& o) {
  drgs_graph* g = nullptr;
  if (o.family.empty()) {
    std::cerr << "error: build needs --family\n";
    return DRGS_INVALID_ARGUMENT;
  }
  drgs_status st = drgs_graph_build(o.family.c_str(), o.params.data(), o.params.size(), &g);
  if (st != DRGS_OK) return report_failure(st);
  if (!o.out.empty()) {
    st = drgs_graph_save(g, o.out.c_str());
    if (st == DRGS_OK)
      std::cerr << drgs_graph_name(g) << ": n=" << drgs_graph_vertex_count(g)
                << ", edges=" << drgs_graph_edge_count(g) << " -> " << o.out << '\n';
  } else {
    char* text = nullptr;
    st = drgs_graph_text(g, &text);
    if (st == DRGS_OK) std::cout << text;
    drgs_string_free(text);
  }
  drgs_graph_free(g);
  return st == DRGS_OK ? 0 : report_failure(st);
}

int cmd_run(const Options& o, bool verify) {
  drgs_config* cfg = drgs_config_new();
  if (!cfg) return DRGS_INTERNAL;
  drgs_graph* g = nullptr;
  drgs_status st = load_graph(o, cfg, &g);
  if (st != DRGS_OK) {
    drgs_config_free(cfg);
    return report_failure(st);
  }
  drgs_config_set_base(cfg, o.base);
  drgs_config_set_ordering(cfg, o.ordering);
  drgs_config_set_seed(cfg, o.seed);
  for (auto [which, value] : o.tol) drgs_config_set_tolerance(cfg, which, value);
  drgs_config_set_format(cfg, parse_format(o.format));
  if (o.cache_dir_set) drgs_config_set_cache_dir(cfg, o.cache_dir.c_str());

  drgs_report* report = nullptr;
  st = verify ? drgs_verify(g, cfg, &report) : drgs_dims(g, cfg, &report);
  const std::string message = drgs_last_error();
  int exit_code = static_cast<int>(st);
  if (report) {
    char* text = nullptr;
    if (drgs_report_render(report, parse_format(o.format), &text) == DRGS_OK) std::cout << text;
    drgs_string_free(text);
    if (!o.out.empty()) {
      char* json = nullptr;
      if (drgs_report_render(report, DRGS_FORMAT_JSON, &json) == DRGS_OK) {
        std::ofstream out(o.out, std::ios::binary | std::ios::trunc);
        out << json;
        if (!out) {
          std::cerr << "error: cannot write report to " << o.out << '\n';
          if (exit_code == 0) exit_code = DRGS_IO;
        }
      }
      drgs_string_free(json);
    }
    const std::string cache = drgs_report_cache_status(report);
    if (cache != "off") std::cerr << "scheme cache: " << cache << '\n';
    drgs_report_free(report);
  }
  if (st != DRGS_OK) {
    std::cerr << "error: " << drgs_status_name(st);
    if (!message.empty()) std::cerr << ": " << message;
    std::cerr << '\n';
  }
  drgs_graph_free(g);
  drgs_config_free(cfg);
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Split decompositions of Q-polynomial distance-regular graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(drgs_version()));

  Options build_opts, verify_opts, dims_opts;
  auto* build = app.add_subcommand("build", "Build a family graph and write the graph file");
  add_graph_options(build, build_opts);
  build->add_option("--out", build_opts.out, "Output graph file (default: stdout)");
  auto* verify = app.add_subcommand("verify", "Run the full verification pipeline");
  add_run_options(verify, verify_opts);
  auto* dims = app.add_subcommand("dims", "Print the split dimension tables");
  add_run_options(dims, dims_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : DRGS_INVALID_ARGUMENT;
  }
  if (*build) return cmd_build(build_opts);
  if (*verify) return cmd_run(verify_opts, true);
  return cmd_run(dims_opts, false);
}
