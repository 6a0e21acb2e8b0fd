#pragma once

#include "common.hpp"

namespace cheesemap::cli {

struct BenchConfig {
  std::string input;
  std::string synthetic;
  std::vector<std::string> structures = {"dense2", "dense3", "sparse2",
                                         "sparse3", "mixed2", "mixed3"};
  std::vector<double> cell_sizes = {1.0, 2.5, 5.0, 7.5, 10.0};
  std::string query = "sphere";
  std::vector<double> radii = {0.5, 1.0, 2.0, 3.0, 5.0, 7.5, 10.0};
  std::vector<std::uint64_t> k_values = {5, 10, 20, 30, 40, 50};
  double seconds = 1.0;
  std::uint64_t warmup = 10;
  std::uint64_t counter_sample = 100;
  std::uint64_t seed = 1;
  bool reorder = false;
  double tau = 0.80;
  std::string output;          // empty = stdout
  std::string format = "csv";  // csv | json
  // post-processing: geometric-mean speedups over an existing CSV
  std::string geomean_input;
  std::string geomean_baseline = "kdtree";
};

struct VerifyConfig {
  std::string input;
  std::string synthetic;
  std::vector<double> cell_sizes = {1.0, 2.5};
  std::uint64_t seed = 1;
  std::uint64_t queries = 25;
  std::uint64_t cap = 200000;
  double tau = 0.80;
  bool inject_fault = false;
};

struct ReportConfig {
  std::string input;
  std::string synthetic;
  std::vector<std::string> structures = {"dense2", "dense3", "sparse2",
                                         "sparse3", "mixed2", "mixed3"};
  std::vector<double> cell_sizes = {1.0};
  double tau = 0.80;
  bool reorder = false;
  std::optional<std::uint64_t> density_sample;
  std::uint64_t seed = 1;
  std::string output;  // empty = stdout
};

struct GenerateConfig {
  std::string synthetic;
  std::string output;
  std::string format;  // empty = by extension
};

int cmd_bench(const BenchConfig& cfg);
int cmd_verify(const VerifyConfig& cfg);
int cmd_report(const ReportConfig& cfg);
int cmd_generate(const GenerateConfig& cfg);

}  // namespace cheesemap::cli
