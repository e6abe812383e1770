#include "cli.hpp"

#include <cvlab/config_file.hpp>
#include <cvlab/errors.hpp>
#include <cvlab/report.hpp>
#include <cvlab/sweep.hpp>
#include <cvlab/zoo.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

namespace cvlab::cli {

namespace {

struct RunConfig {
  std::string surface;
  std::string config;
  std::optional<double> h_min;
  std::optional<double> h_max;
  int steps = 12;
  double abs_tol = 1e-9;
  double rel_tol = 1e-8;
  std::string format = "human";
  std::string out_path;
  bool strict = false;
};

struct Resolved {
  SurfaceModel model;
  double h_min = 1.0;
  double h_max = 1024.0;
  int steps = 12;
};

Resolved resolve(const RunConfig& c) {
  if (c.surface.empty() == c.config.empty())
    throw InvalidParameter("give exactly one of --surface or --config");
  Resolved r;
  r.steps = c.steps;
  if (!c.surface.empty() && is_zoo_name(c.surface)) {
    ZooEntry e = make_zoo_entry(c.surface);
    r.model = std::move(e.model);
    r.h_min = e.h_min;
    r.h_max = e.h_max;
  } else {
    const std::string path = c.config.empty() ? c.surface : c.config;
    if (!c.config.empty() || std::filesystem::is_regular_file(path))
      r.model = load_surface_config(path);
    else
      throw InvalidParameter("unknown surface '" + c.surface + "'");
  }
  if (c.h_min) r.h_min = *c.h_min;
  if (c.h_max) r.h_max = *c.h_max;
  if (!(r.h_min < r.h_max)) throw InvalidParameter("h_min must be < h_max");
  if (c.steps < 3) throw InvalidParameter("steps must be >= 3");
  return r;
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) throw InvalidParameter("cannot write '" + c.out_path + "'");
  f << text;
}

int list_zoo(const std::string& format, std::ostream& out) {
  const auto zoo = make_zoo();
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : zoo) {
      arr.push_back({{"name", e.model.name},
                     {"chi", e.oracle.chi},
                     {"hypothesis_holds", e.oracle.hypothesis_holds},
                     {"L", e.oracle.L},
                     {"c_total", e.oracle.c_total}});
    }
    out << arr.dump(2) << '\n';
    return kExitOk;
  }
  for (const auto& e : zoo) {
    out << e.model.name << " chi=" << e.oracle.chi
        << " hypothesis=" << (e.oracle.hypothesis_holds ? "yes" : "no")
        << " c_total=" << format_human(e.oracle.c_total) << '\n';
  }
  return kExitOk;
}

int sweep(const RunConfig& c, bool verify, std::ostream& out) {
  const ReportFormat format = report_format_from_string(c.format);
  Tolerance tol;
  tol.abs_tol = c.abs_tol;
  tol.rel_tol = c.rel_tol;
  tol.validate();
  const Resolved r = resolve(c);
  const SweepReport report =
      run_sweep(r.model, spaced_schedule(r.h_min, r.h_max, r.steps), tol);
  if (verify && format == ReportFormat::Human) {
    emit(c,
         "surface " + report.surface + "  chi = " + std::to_string(report.chi) +
             "\n" + verdict_table(report),
         out);
  } else {
    emit(c, render(report, format), out);
  }
  return c.strict && report.any_failure() ? kExitVerdict : kExitOk;
}

void add_run_options(CLI::App& cmd, RunConfig& c) {
  cmd.add_option("--surface", c.surface, "zoo name or config file");
  cmd.add_option("--config", c.config, "surface config file");
  cmd.add_option("--h-min", c.h_min, "lowest truncation height");
  cmd.add_option("--h-max", c.h_max, "highest truncation height");
  cmd.add_option("--steps", c.steps, "number of heights (>= 3)");
  cmd.add_option("--abs-tol", c.abs_tol, "absolute quadrature tolerance");
  cmd.add_option("--rel-tol", c.rel_tol, "relative quadrature tolerance");
  cmd.add_option("--format", c.format, "json, csv or human")
      ->check(CLI::IsMember({"json", "csv", "human"}));
  cmd.add_option("--out", c.out_path, "write the report here");
  cmd.add_flag("--strict", c.strict, "exit 2 on any failed verdict");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Truncation sweeps of complete surfaces with cylindrical ends",
               "cvlab"};
  app.require_subcommand(1);

  std::string list_format = "human";
  auto* list = app.add_subcommand("list", "list built-in surfaces");
  list->add_option("--format", list_format, "human or json")
      ->check(CLI::IsMember({"json", "human"}));

  RunConfig sweep_cfg;
  auto* sweep_cmd = app.add_subcommand("sweep", "run a truncation sweep");
  add_run_options(*sweep_cmd, sweep_cfg);

  RunConfig verify_cfg;
  auto* verify_cmd =
      app.add_subcommand("verify", "run a sweep and print the verdict table");
  add_run_options(*verify_cmd, verify_cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (list->parsed()) return list_zoo(list_format, out);
    if (sweep_cmd->parsed()) return sweep(sweep_cfg, false, out);
    return sweep(verify_cfg, true, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << " (offset " << e.offset() << ")\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInput;
}

}  // namespace cvlab::cli
