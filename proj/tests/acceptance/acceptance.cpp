// Acceptance suite: one line per criterion, exit 1 if any criterion fails.
#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "splab/config.hpp"
#include "splab/errors.hpp"
#include "splab/registry.hpp"
#include "splab/report.hpp"

using namespace splab;

namespace {

struct Run {
  std::string id;
  std::string params;  // key = value lines
  std::string label;
};

struct Criterion {
  int number;
  std::string title;
  std::vector<Run> runs;
};

std::vector<Criterion> criteria() {
  return {
      {1, "Plancherel and FT round trip, 100 random fields",
       {{"plancherel", "n = 1\nL = 8\nN = 256", "n=1"}, {"plancherel", "n = 2", "n=2"}}},
      {2, "Gaussian self-duality and translation-modulation law",
       {{"gaussian-duality", "n = 1\nshift = 1.5\nmodulation = 2", "n=1"}, {"gaussian-duality", "n = 2", "n=2"}}},
      {3, "propagator unitarity, group law, Schroedinger Gaussian",
       {{"propagator-group", "n = 1", "n=1"}, {"propagator-group", "n = 2", "n=2"}}},
      {4, "Duhamel residual decays at order >= 3.5", {{"duhamel-order", "", ""}}},
      {5, "space-time norm through limiting absorption, n=1 m=2", {{"kato-chain", "", ""}}},
      {6, "co-area identity, euclid and lp4", {{"coarea", "", ""}}},
      {7, "Gaussian level-set trace closed form", {{"trace-closed-form", "", ""}}},
      {8, "uniform trace bound, 25-member family, theta=0.1", {{"L13-uniform", "", ""}}},
      {9, "Hoelder continuity of the trace, 20 level pairs", {{"L13-hoelder", "", ""}}},
      {10, "low-frequency trace slope and ratios", {{"L13-lowfreq", "", ""}}},
      {11, "smoothing ratios, TYPE-I and TYPE-II (euclid, lp4)",
       {{"T11-I-homog", "n = 2\nm = 2\ndelta = 0.6", "I-homog"},
        {"T11-I-duhamel", "n = 2\nm = 2\ndelta = 0.6", "I-duhamel"},
        {"T11-II-homog", "n = 2\nm = 1.5", "II-homog"},
        {"T11-II-duhamel", "n = 2\nm = 1.5", "II-duhamel"},
        {"T11-II-homog", "n = 2\nm = 1.5\nsymbol = lp4", "II-homog lp4"},
        {"T11-II-duhamel", "n = 2\nm = 1.5\nsymbol = lp4", "II-duhamel lp4"}}},
      {12, "resolvent ratios and resolvent identities",
       {{"T12-I", "n = 2\nm = 2\ndelta = 0.6", "I"},
        {"T12-II", "n = 2\nm = 1.5", "II"},
        {"T12-II", "n = 2\nm = 1.5\nsymbol = lp4", "II lp4"},
        {"L51", "n = 2\nm = 1.5", "low-frequency"},
        {"resolvent-identity", "", "first identity"},
        {"polarization", "", "polarization"},
        {"pv-vanish", "", "pv"}}},
      {13, "Stein-Weiss, commutator lemmas, kappa=1 identity",
       {{"SW21", "", "SW21"},
        {"SW22", "", "SW22"},
        {"L22", "", "L22"},
        {"L23", "", "L23"},
        {"case3-identity", "", "kappa=1 identity"}}},
      {14, "hypothesis gating", {{"hypothesis-gating", "", ""}}},
  };
}

std::string describe(const Check& c) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s %.3g %s %.3g", c.name.c_str(), c.value, c.at_most ? ">" : "<", c.threshold);
  return buf;
}

}  // namespace

int main() {
  int failed = 0;
  for (const Criterion& c : criteria()) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::string> problems;
    for (const Run& r : c.runs) {
      const std::string tag = r.label.empty() ? r.id : r.id + " [" + r.label + "]";
      try {
        const SweepOutcome o = run_estimate(r.id, Config::parse(r.params));
        for (const Check& k : o.checks) {
          if (k.gating && !k.pass()) problems.push_back(tag + ": " + describe(k));
        }
      } catch (const std::exception& e) {
        problems.push_back(tag + ": " + e.what());
      }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2d  %-55s %7.1fs", problems.empty() ? "PASS" : "FAIL", c.number, c.title.c_str(), secs);
    for (std::size_t i = 0; i < problems.size(); ++i) std::printf("%s%s", i ? "; " : "  -- ", problems[i].c_str());
    std::printf("\n");
    std::fflush(stdout);
    if (!problems.empty()) ++failed;
  }
  std::printf("%d of 14 criteria passed\n", 14 - failed);
  return failed == 0 ? 0 : 1;
}
