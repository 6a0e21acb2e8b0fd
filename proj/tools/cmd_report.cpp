#include <fstream>
#include <iostream>

#include <json.hpp>

#include "commands.hpp"

#include "cheesemap/analysis.hpp"

namespace cheesemap::cli {

int cmd_report(const ReportConfig& cfg) {
  std::string dataset;
  const PointCloud cloud = load_cloud(cfg.input, cfg.synthetic, &dataset);
  if (cloud.empty()) {
    throw EmptyCloudError();
  }

  nlohmann::json doc;
  doc["dataset"] = dataset;
  doc["points"] = cloud.size();
  doc["density"] = global_density(cloud);
  const WeightedDensity wd =
      weighted_density(cloud, cfg.density_sample, cfg.seed);
  doc["weighted_density"] = wd.value;
  doc["histogram"] = wd.histogram.bins;

  doc["structures"] = nlohmann::json::array();
  for (const StructureId& structure :
       parse_structures(cfg.structures, cfg.reorder)) {
    if (structure.kind != StructureId::Kind::Map) {
      continue;  // occupancy/memory accounting applies to map variants only
    }
    for (const double cell : cfg.cell_sizes) {
      nlohmann::json entry;
      entry["structure"] = structure.name();
      entry["cell_size"] = cell;
      BuildOptions opts;
      opts.flavor = structure.flavor;
      opts.mode = structure.mode;
      opts.cell = CellSize::uniform(cell);
      opts.reorder = structure.reordered;
      opts.densify_threshold = cfg.tau;
      try {
        const Cheesemap map = Cheesemap::build(cloud, opts);
        const OccupancyStats occ = map.occupancy_stats();
        entry["total_voxels"] = occ.total_voxels;
        entry["non_empty"] = occ.non_empty;
        entry["empty_fraction"] = occ.empty_fraction;
        if (!occ.slices.empty()) {
          entry["slices"] = nlohmann::json::array();
          for (const SliceOccupancy& s : occ.slices) {
            entry["slices"].push_back({{"dense", s.dense},
                                       {"cells", s.cells},
                                       {"non_empty", s.non_empty}});
          }
        }
        const MemoryReport mem = map.memory_report();
        entry["handle_bytes"] = mem.handle_bytes;
        entry["structure_bytes"] = mem.structure_bytes;
        entry["total_bytes"] = mem.total_bytes;
      } catch (const CapacityError& e) {
        entry["skipped"] = e.what();
      }
      doc["structures"].push_back(entry);
    }
  }

  if (cfg.output.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    std::ofstream f(cfg.output, std::ios::trunc);
    if (!f || !(f << doc.dump(2) << '\n')) {
      throw IoError("cannot write " + cfg.output);
    }
  }
  return kExitOk;
}

int cmd_generate(const GenerateConfig& cfg) {
  if (cfg.output.empty()) {
    throw InvalidArgumentError("--output is required");
  }
  const PointCloud cloud = generate(parse_synthetic_spec(cfg.synthetic));
  std::string format = cfg.format;
  if (format.empty()) {
    const std::string ext = std::filesystem::path(cfg.output).extension();
    format = ext == ".las" ? "las" : "xyz";
  }
  if (format == "las") {
    write_las(cloud, cfg.output);
  } else if (format == "xyz") {
    write_xyz(cloud, cfg.output);
  } else {
    throw InvalidArgumentError("unknown output format '" + format + "'");
  }
  std::cout << "wrote " << cloud.size() << " points to " << cfg.output
            << '\n';
  return kExitOk;
}

}  // namespace cheesemap::cli
