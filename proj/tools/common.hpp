#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cheesemap/baseline.hpp"
#include "cheesemap/io.hpp"
#include "cheesemap/map.hpp"
#include "cheesemap/search.hpp"

namespace cheesemap::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitCapacity = 4;

/// A benchmarkable structure: one of the map variants, the kd-tree
/// baseline, or the brute-force scan.
struct StructureId {
  enum class Kind { Map, KdTree, Brute };
  Kind kind = Kind::Map;
  Flavor flavor = Flavor::Dense;
  GridMode mode = GridMode::ThreeD;
  bool reordered = false;

  std::string name() const;
  bool uses_cell_size() const { return kind == Kind::Map; }
};

/// Parse ids like "dense3", "sparse2", "mixed3-reordered", "kdtree", "brute".
StructureId parse_structure(const std::string& text);

std::vector<StructureId> parse_structures(
    const std::vector<std::string>& items, bool force_reorder);

/// Load a cloud from --input (by extension: .las or .xyz) or --synthetic.
PointCloud load_cloud(const std::string& input_path,
                      const std::string& synthetic_spec,
                      std::string* dataset_name);

enum class QueryType { Sphere, Cube, Cylinder, Knn };

QueryType parse_query_type(const std::string& text);
std::string query_type_name(QueryType q);

/// Deterministic query-center stream: indices into the cloud drawn from a
/// seed mixed with a per-combination tag.
class CenterStream {
public:
  CenterStream(std::uint64_t seed, std::uint64_t tag, std::uint64_t cloud_size);
  std::uint64_t next();

private:
  std::uint64_t state_;
  std::uint64_t cloud_size_;
};

}  // namespace cheesemap::cli
