#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polyrad/analysis.hpp"
#include "polyrad/report.hpp"

namespace fs = std::filesystem;
using namespace polyrad;

namespace {

// Exit contract: 0 ok, 2 validation/input failure, 3 verification ran but
// did not confirm.
constexpr int kOk = 0;
constexpr int kInvalid = 2;
constexpr int kUnverified = 3;

Rat parse_rat_flag(const std::string& text, const std::string& flag) {
  try {
    Rat q(text, 10);
    if (q.get_den() == 0) {
      throw std::invalid_argument(flag + ": zero denominator");
    }
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument(flag + ": expected a rational like 3/4, got '" +
                                text + "'");
  }
}

Rat parse_exponent_flag(const std::string& text, const std::string& flag) {
  Rat lp = parse_rat_flag(text, flag);
  if (lp <= 1) {
    throw std::invalid_argument(flag + ": Lebesgue exponent must exceed 1");
  }
  return 1 / lp;
}

fs::path resolve_out_dir(const std::string& flagValue) {
  if (!flagValue.empty()) return fs::path(flagValue);
  if (const char* env = std::getenv("POLYRAD_OUT")) {
    if (*env) return fs::path(env);
  }
  return fs::path(".");
}

void write_artifact(const fs::path& dir, const std::string& name,
                    const std::string& body) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create output directory '" +
                             dir.string() + "'");
  }
  const fs::path path = dir / name;
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  file << body;
  file.flush();
  if (!file.good()) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
}

void check_sublevel(const SublevelConfig& c, const Rat& r0) {
  if (!(c.r > 0)) throw std::invalid_argument("sublevel.r must be positive");
  if (c.r > rat_to_double(r0) + 1e-15) {
    throw std::invalid_argument(
        "sublevel.r exceeds the trusted box radius r0");
  }
  if (!(c.epsMin > 0) || !(c.epsMin < c.epsMax) || !(c.epsMax < 0.5)) {
    throw std::invalid_argument("need 0 < eps_min < eps_max < 1/2");
  }
  if (c.epsCount < 6) {
    throw std::invalid_argument("need at least 6 sample levels");
  }
  if (c.budget < 10000) {
    throw std::invalid_argument("need a budget of at least 10000");
  }
}

// Zero order and the closed-form growth exponent, without the Monte Carlo
// fallback analyze_problem would run.
std::optional<Rat> closed_form_a0(const ProblemSpec& spec,
                                  const NewtonPolyhedron& poly) {
  int order = 0;
  if (spec.oOverride) {
    order = *spec.oOverride;
  } else {
    order = max_zero_order(spec.phase, enumerate_compact_faces(poly)).order;
  }
  return predicted_a0(poly, spec.blocks, order);
}

struct CommonFlags {
  std::string specPath;
  std::string outDir;
  std::uint64_t seed = 0;
  bool seedSet = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("spec", flags.specPath, "problem description file")
      ->required();
  cmd->add_option("--out", flags.outDir,
                  "output directory (default: $POLYRAD_OUT or .)");
  cmd->add_option("--seed", flags.seed, "seed for every stochastic stage")
      ->each([&flags](const std::string&) { flags.seedSet = true; });
}

ProblemSpec load_with_flags(const CommonFlags& flags) {
  ProblemSpec spec = load_spec(flags.specPath);
  if (flags.seedSet) {
    spec.sublevel.seed = flags.seed;
    spec.sharpness.seed = flags.seed;
  }
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Newton-polyhedron analysis of weighted hypersurface averages: derived "
      "indices, mapping regions, and numerical verification"};
  app.require_subcommand(1);

  CommonFlags analyzeFlags, regionFlags, sliceFlags, subFlags, sharpFlags,
      exportFlags;

  auto* analyzeCmd = app.add_subcommand(
      "analyze", "derive d, o, a0, g, k and write analysis.json");
  add_common(analyzeCmd, analyzeFlags);
  int oOverride = 0;
  bool oOverrideSet = false;
  analyzeCmd
      ->add_option("--o-override", oOverride,
                   "take this off-axis vanishing order as given")
      ->each([&oOverrideSet](const std::string&) { oOverrideSet = true; });

  auto* regionCmd = app.add_subcommand(
      "region", "emit the (1/p, 1/q, s) region geometry as region.json");
  add_common(regionCmd, regionFlags);

  auto* sliceCmd = app.add_subcommand(
      "slice", "emit the s = 0 cross-section polygon as slice.json");
  add_common(sliceCmd, sliceFlags);

  auto* subCmd = app.add_subcommand(
      "verify-sublevel",
      "measure the sublevel growth law and fit (a0, d0); exit 3 when the fit "
      "does not confirm");
  add_common(subCmd, subFlags);
  double rFlag = 0.0;
  double epsMinFlag = 0.0, epsMaxFlag = 0.0;
  int epsCountFlag = 0;
  long long budgetFlag = 0;
  auto* rOpt = subCmd->add_option("--r", rFlag, "box radius");
  auto* epsMinOpt = subCmd->add_option("--eps-min", epsMinFlag, "smallest eps");
  auto* epsMaxOpt = subCmd->add_option("--eps-max", epsMaxFlag, "largest eps");
  auto* epsCountOpt =
      subCmd->add_option("--eps-count", epsCountFlag, "schedule length");
  auto* budgetOpt =
      subCmd->add_option("--budget", budgetFlag, "samples per eps");

  auto* sharpCmd = app.add_subcommand(
      "verify-sharpness",
      "drive the scaled box family through the operator and test the "
      "predicted norm-ratio exponent; exit 3 on Inconclusive");
  add_common(sharpCmd, sharpFlags);
  std::string pFlag, qFlag, sFlag;
  std::vector<double> rListFlag;
  std::vector<int> gridFlag;
  int cutoffFlag = 0;
  auto* pOpt = sharpCmd->add_option("--p", pFlag, "Lebesgue exponent p");
  auto* qOpt = sharpCmd->add_option("--q", qFlag, "Lebesgue exponent q");
  auto* sOpt = sharpCmd->add_option("--s", sFlag, "smoothing order (rational)");
  auto* rListOpt =
      sharpCmd->add_option("--r-list", rListFlag, "box scales, comma separated")
          ->delimiter(',');
  auto* gridOpt =
      sharpCmd->add_option("--grid", gridFlag, "cells per axis, comma separated")
          ->delimiter(',');
  auto* nOpt =
      sharpCmd->add_option("--N", cutoffFlag, "initial cutoff sharpening");

  auto* exportCmd = app.add_subcommand(
      "export", "draw the s = 0 slice and region shadows as an SVG");
  add_common(exportCmd, exportFlags);
  std::string svgName = "region.svg";
  exportCmd->add_option("--svg", svgName, "artifact file name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*analyzeCmd) {
      ProblemSpec spec = load_with_flags(analyzeFlags);
      if (oOverrideSet) {
        if (oOverride < 0) {
          throw std::invalid_argument("--o-override must be nonnegative");
        }
        spec.oOverride = oOverride;
      }
      AnalysisResult res = analyze_problem(spec);
      const std::string body = analysis_json(spec, res);
      write_artifact(resolve_out_dir(analyzeFlags.outDir), "analysis.json",
                     body);
      std::cout << body;
      return kOk;
    }

    if (*regionCmd) {
      ProblemSpec spec = load_with_flags(regionFlags);
      AnalysisResult res = analyze_problem(spec);
      const std::string body = region_json(res);
      write_artifact(resolve_out_dir(regionFlags.outDir), "region.json", body);
      std::cout << body;
      return kOk;
    }

    if (*sliceCmd) {
      ProblemSpec spec = load_with_flags(sliceFlags);
      AnalysisResult res = analyze_problem(spec);
      const std::string body = slice_json(res);
      write_artifact(resolve_out_dir(sliceFlags.outDir), "slice.json", body);
      std::cout << body;
      return kOk;
    }

    if (*subCmd) {
      ProblemSpec spec = load_with_flags(subFlags);
      SublevelConfig& cfg = spec.sublevel;
      if (rOpt->count()) cfg.r = rFlag;
      if (epsMinOpt->count()) cfg.epsMin = epsMinFlag;
      if (epsMaxOpt->count()) cfg.epsMax = epsMaxFlag;
      if (epsCountOpt->count()) cfg.epsCount = epsCountFlag;
      if (budgetOpt->count()) cfg.budget = budgetFlag;
      check_sublevel(cfg, spec.r0);

      NewtonPolyhedron poly = build_polyhedron(spec.phase);
      std::optional<Rat> predicted = closed_form_a0(spec, poly);
      std::vector<GrowthPoint> points = run_sublevel(spec, cfg);
      GrowthFit fit = fit_growth(points, spec.dimension, cfg.r);

      const fs::path dir = resolve_out_dir(subFlags.outDir);
      write_artifact(dir, "sublevel.csv", sublevel_csv(points));
      const std::string body = growth_fit_json(fit, predicted);
      write_artifact(dir, "sublevel_fit.json", body);
      std::cout << body;

      if (!fit.stable) return kUnverified;
      if (predicted && !fit_agrees(fit, *predicted)) return kUnverified;
      return kOk;
    }

    if (*sharpCmd) {
      ProblemSpec spec = load_with_flags(sharpFlags);
      SharpnessJob& job = spec.sharpness;
      if (pOpt->count()) job.pInv = parse_exponent_flag(pFlag, "--p");
      if (qOpt->count()) job.qInv = parse_exponent_flag(qFlag, "--q");
      if (sOpt->count()) job.s = parse_rat_flag(sFlag, "--s");
      if (rListOpt->count()) job.rList = rListFlag;
      if (gridOpt->count()) job.gridCells = gridFlag;
      if (nOpt->count()) job.cutoff = cutoffFlag;
      if (sharpFlags.seedSet) job.seed = sharpFlags.seed;

      AnalysisResult shell;
      shell.poly = build_polyhedron(spec.phase);
      SharpnessReport report = run_sharpness_job(spec, shell, job);

      const fs::path dir = resolve_out_dir(sharpFlags.outDir);
      write_artifact(dir, "sharpness.csv", sharpness_csv(report));
      const std::string body = sharpness_json(report);
      write_artifact(dir, "sharpness_report.json", body);
      std::cout << body;

      return report.verdict == SharpnessVerdict::Inconclusive ? kUnverified
                                                              : kOk;
    }

    if (*exportCmd) {
      ProblemSpec spec = load_with_flags(exportFlags);
      AnalysisResult res = analyze_problem(spec);
      const fs::path dir = resolve_out_dir(exportFlags.outDir);
      write_artifact(dir, svgName, region_svg(res));
      std::cout << "wrote " << (dir / svgName).string() << "\n";
      return kOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }

  return kInvalid;
}
