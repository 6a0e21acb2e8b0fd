#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace cli = cheesemap::cli;

int main(int argc, char** argv) {
  CLI::App app{"cheesemap: voxel-grid point indexing for LiDAR clouds"};
  app.require_subcommand(1);

  cli::BenchConfig bench;
  CLI::App* cmd_bench =
      app.add_subcommand("bench", "run timed query sweeps and emit CSV/JSON");
  cmd_bench->add_option("--input", bench.input, "point cloud file (.las/.xyz)");
  cmd_bench->add_option("--synthetic", bench.synthetic,
                        "synthetic spec, e.g. uniform:n=100000,extent=100x100x50,seed=1");
  cmd_bench->add_option("--structures", bench.structures,
                        "structures to benchmark")
      ->delimiter(',');
  cmd_bench->add_option("--cell-sizes", bench.cell_sizes, "cell sizes in m")
      ->delimiter(',');
  cmd_bench->add_option("--query", bench.query,
                        "query type: sphere|cube|cylinder|knn");
  cmd_bench->add_option("--radii", bench.radii, "kernel radii in m")
      ->delimiter(',');
  cmd_bench->add_option("--k", bench.k_values, "neighbor counts for knn")
      ->delimiter(',');
  cmd_bench->add_option("--seconds", bench.seconds,
                        "time budget per combination");
  cmd_bench->add_option("--warmup", bench.warmup, "warmup queries");
  cmd_bench->add_option("--counter-sample", bench.counter_sample,
                        "queries used for the deterministic counters");
  cmd_bench->add_option("--seed", bench.seed, "RNG seed");
  cmd_bench->add_flag("--reorder", bench.reorder,
                      "benchmark the reordered map variants");
  cmd_bench->add_option("--tau", bench.tau, "mixed densification threshold");
  cmd_bench->add_option("--output", bench.output, "output path (default stdout)");
  cmd_bench->add_option("--format", bench.format, "csv|json");
  cmd_bench->add_option("--geomean", bench.geomean_input,
                        "post-process an existing CSV into geometric-mean "
                        "normalized times instead of benchmarking");
  cmd_bench->add_option("--geomean-baseline", bench.geomean_baseline,
                        "baseline structure for --geomean");

  cli::VerifyConfig verify;
  CLI::App* cmd_verify = app.add_subcommand(
      "verify", "check all flavors/modes/kernels against the brute-force oracle");
  cmd_verify->add_option("--input", verify.input, "point cloud file");
  cmd_verify->add_option("--synthetic", verify.synthetic, "synthetic spec");
  cmd_verify->add_option("--cell-sizes", verify.cell_sizes, "cell sizes in m")
      ->delimiter(',');
  cmd_verify->add_option("--seed", verify.seed, "RNG seed");
  cmd_verify->add_option("--queries", verify.queries,
                         "query centers per structure");
  cmd_verify->add_option("--cap", verify.cap, "maximum verifiable cloud size");
  cmd_verify->add_option("--tau", verify.tau, "mixed densification threshold");
  cmd_verify
      ->add_flag("--inject-fault", verify.inject_fault,
                 "corrupt the store after build (test hook)")
      ->group("");  // hidden

  cli::ReportConfig report;
  CLI::App* cmd_report = app.add_subcommand(
      "report", "dataset metrics plus per-structure occupancy and memory");
  cmd_report->add_option("--input", report.input, "point cloud file");
  cmd_report->add_option("--synthetic", report.synthetic, "synthetic spec");
  cmd_report->add_option("--structures", report.structures, "map structures")
      ->delimiter(',');
  cmd_report->add_option("--cell-sizes", report.cell_sizes, "cell sizes in m")
      ->delimiter(',');
  cmd_report->add_option("--tau", report.tau, "mixed densification threshold");
  cmd_report->add_flag("--reorder", report.reorder, "use reordered variants");
  std::uint64_t density_sample = 0;
  cmd_report->add_option("--density-sample", density_sample,
                         "subsample size for the weighted density (0 = full)");
  cmd_report->add_option("--seed", report.seed, "RNG seed for subsampling");
  cmd_report->add_option("--output", report.output,
                         "output path (default stdout)");

  cli::GenerateConfig generate;
  CLI::App* cmd_generate =
      app.add_subcommand("generate", "write a synthetic cloud to a file");
  cmd_generate->add_option("--synthetic", generate.synthetic, "synthetic spec")
      ->required();
  cmd_generate->add_option("--output", generate.output, "output path")
      ->required();
  cmd_generate->add_option("--format", generate.format,
                           "xyz|las (default: by extension)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitUsage;
  }

  try {
    if (*cmd_bench) {
      return cli::cmd_bench(bench);
    }
    if (*cmd_verify) {
      return cli::cmd_verify(verify);
    }
    if (*cmd_report) {
      if (density_sample > 0) {
        report.density_sample = density_sample;
      }
      return cli::cmd_report(report);
    }
    if (*cmd_generate) {
      return cli::cmd_generate(generate);
    }
  } catch (const cheesemap::CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitCapacity;
  } catch (const cheesemap::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitIo;
  } catch (const cheesemap::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitIo;
  } catch (const cheesemap::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitUsage;
  }
  return cli::kExitUsage;
}
