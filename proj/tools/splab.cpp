#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "splab/config.hpp"
#include "splab/errors.hpp"
#include "splab/registry.hpp"
#include "splab/report.hpp"
#include "splab/symbol.hpp"
#include "splab/trace.hpp"

namespace fs = std::filesystem;
using namespace splab;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 2;
constexpr int kConfig = 3;

// `--key value` and `--key=value` pairs left over by CLI11.
Config params_from(const std::vector<std::string>& extras) {
  Config c;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& tok = extras[i];
    if (tok.rfind("--", 0) != 0 || tok.size() == 2) throw ConfigError("unexpected argument '" + tok + "'");
    const std::string body = tok.substr(2);
    const auto eq = body.find('=');
    if (eq != std::string::npos) {
      c.set(body.substr(0, eq), body.substr(eq + 1));
    } else if (i + 1 < extras.size()) {
      c.set(body, extras[++i]);
    } else {
      throw ConfigError("option '" + tok + "' needs a value");
    }
  }
  return c;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + p.string());
  return os;
}

void write_artifacts(const SweepOutcome& o, const std::string& dir, const std::string& stem) {
  if (dir.empty()) return;
  fs::create_directories(dir);
  auto csv = open_out(fs::path(dir) / (stem + ".csv"));
  write_csv(csv, o.rows);
  auto json = open_out(fs::path(dir) / (stem + ".json"));
  json << summary_json(o) << '\n';
}

int report(const SweepOutcome& o, const std::string& dir, const std::string& stem, bool json) {
  write_artifacts(o, dir, stem);
  if (json) {
    std::cout << summary_json(o) << '\n';
  } else {
    print_summary(std::cout, o);
  }
  return o.pass() ? kPass : kFail;
}

int list_estimates(bool verbose) {
  for (const EstimateInfo& e : estimates()) {
    std::printf("%-20s %-9s %s\n", e.id.c_str(), to_string(e.cls).c_str(), e.statement.c_str());
    if (!verbose) continue;
    for (const ParamSpec& p : e.params) {
      std::printf("    --%-16s %-28s %s%s\n", p.key.c_str(), p.fallback.c_str(), p.help.c_str(),
                  p.physical ? " [physical]" : "");
    }
  }
  return kPass;
}

int selftest(const std::string& dir, bool json) {
  int failed = 0;
  int total = 0;
  for (const EstimateInfo& e : estimates()) {
    if (e.cls == EstimateClass::ratio) continue;
    ++total;
    const SweepOutcome o = run_estimate(e.id, Config{});
    write_artifacts(o, dir, e.id);
    if (json) {
      std::cout << summary_json(o) << '\n';
    } else {
      std::printf("%-4s %s\n", o.pass() ? "PASS" : "FAIL", e.id.c_str());
    }
    if (!o.pass()) ++failed;
  }
  if (!json) std::printf("%d/%d identity checks passed\n", total - failed, total);
  return failed ? kFail : kPass;
}

int export_quad(const Config& c, const std::string& path) {
  const std::string kind = c.has("symbol") ? c.str("symbol") : "euclid";
  const int n = c.has("n") ? c.integer("n") : 2;
  const double tau = c.has("tau") ? c.num("tau") : 1.0;
  const int res = c.has("resolution") ? c.integer("resolution") : 64;
  // the rule depends only on the level set {a = tau}; the order is irrelevant
  SymbolSpec spec = SymbolSpec::euclid(n, 2.0);
  if (kind == "lp4") {
    spec = SymbolSpec::lp4(n, 2.0);
  } else if (kind == "bump") {
    spec = SymbolSpec::bump(n, 2.0, c.has("epsilon") ? c.num("epsilon") : 0.3);
  } else if (kind != "euclid") {
    throw ConfigError("unknown symbol '" + kind + "' (valid: euclid, lp4, bump)");
  }
  const LevelSetQuad q = build_quad(spec, tau, res);
  if (path.empty()) {
    write_quad_csv(std::cout, q);
  } else {
    auto os = open_out(path);
    write_quad_csv(os, q);
  }
  return kPass;
}

int export_family(const Config& c, const std::string& dir) {
  fs::create_directories(dir);
  const auto members = family_members(c);
  auto index = open_out(fs::path(dir) / "members.txt");
  for (std::size_t i = 0; i < members.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "member_%03zu.bin", i);
    auto os = open_out(fs::path(dir) / name);
    write_field(os, members[i].field);
    index << name << ' ' << members[i].id << '\n';
  }
  std::printf("wrote %zu members to %s\n", members.size(), dir.c_str());
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical probes of weighted smoothing, resolvent and trace estimates"};
  app.require_subcommand(1);

  std::string out_dir;
  bool json = false;
  bool verbose = false;

  auto* list = app.add_subcommand("list-estimates", "List registry ids with their statements");
  list->add_flag("-v,--verbose", verbose, "also list parameters and defaults");

  std::string id;
  auto* verify = app.add_subcommand("verify", "Run one estimate with registry defaults; --key value overrides");
  verify->add_option("id", id, "estimate id")->required();
  verify->add_option("--out", out_dir, "directory for <id>.csv and <id>.json");
  verify->add_flag("--json", json, "print the JSON summary");
  verify->allow_extras();

  std::string config_path;
  auto* sweep = app.add_subcommand("sweep", "Run the estimate named by a config file (key=value or JSON)");
  sweep->add_option("config", config_path, "config file")->required();
  sweep->add_option("--out", out_dir, "directory for <id>.csv and <id>.json");
  sweep->add_flag("--json", json, "print the JSON summary");

  auto* self = app.add_subcommand("selftest", "Run every identity and gating check");
  self->add_option("--out", out_dir, "directory for per-check CSV and JSON");
  self->add_flag("--json", json, "print JSON summaries");

  std::string quad_out;
  auto* quad = app.add_subcommand("export-quad", "Write a level-set quadrature rule as CSV "
                                                 "(--symbol, --n, --tau, --resolution, --epsilon)");
  quad->add_option("--out", quad_out, "output file (default stdout)");
  quad->allow_extras();

  auto* family = app.add_subcommand("export-family", "Write family members as binary Field files");
  family->add_option("config", config_path, "family config file")->required();
  family->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*list) return list_estimates(verbose);
    if (*verify) return report(run_estimate(id, params_from(verify->remaining())), out_dir, id, json);
    if (*sweep) {
      Config c = Config::load(config_path);
      if (!c.has("estimate")) throw ConfigError(config_path + ": missing 'estimate' key");
      const std::string eid = c.str("estimate");
      c.erase("estimate");
      return report(run_estimate(eid, c, true), out_dir, eid, json);
    }
    if (*self) return selftest(out_dir, json);
    if (*quad) return export_quad(params_from(quad->remaining()), quad_out);
    if (*family) return export_family(Config::load(config_path), out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kConfig;
}
