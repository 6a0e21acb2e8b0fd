#include "common.hpp"

#include <algorithm>

namespace cheesemap::cli {

std::string StructureId::name() const {
  switch (kind) {
    case Kind::KdTree: return "kdtree";
    case Kind::Brute: return "brute";
    case Kind::Map: return structure_name(flavor, mode, reordered);
  }
  return {};
}

StructureId parse_structure(const std::string& text) {
  StructureId id;
  std::string base = text;
  const std::string suffix = "-reordered";
  if (base.size() > suffix.size() &&
      base.compare(base.size() - suffix.size(), suffix.size(), suffix) == 0) {
    id.reordered = true;
    base.resize(base.size() - suffix.size());
  }
  if (base == "kdtree") {
    id.kind = StructureId::Kind::KdTree;
  } else if (base == "brute") {
    id.kind = StructureId::Kind::Brute;
  } else if (base == "dense2" || base == "dense3" || base == "sparse2" ||
             base == "sparse3" || base == "mixed2" || base == "mixed3") {
    id.kind = StructureId::Kind::Map;
    id.flavor = base.starts_with("dense")    ? Flavor::Dense
                : base.starts_with("sparse") ? Flavor::Sparse
                                             : Flavor::Mixed;
    id.mode = base.back() == '2' ? GridMode::TwoD : GridMode::ThreeD;
  } else {
    throw InvalidArgumentError("unknown structure '" + text + "'");
  }
  if (id.reordered && id.kind != StructureId::Kind::Map) {
    throw InvalidArgumentError("'" + text + "' cannot be reordered");
  }
  return id;
}

std::vector<StructureId> parse_structures(
    const std::vector<std::string>& items, bool force_reorder) {
  std::vector<StructureId> out;
  for (const std::string& item : items) {
    StructureId id = parse_structure(item);
    if (force_reorder && id.kind == StructureId::Kind::Map) {
      id.reordered = true;
    }
    out.push_back(id);
  }
  return out;
}

PointCloud load_cloud(const std::string& input_path,
                      const std::string& synthetic_spec,
                      std::string* dataset_name) {
  if (!input_path.empty() && !synthetic_spec.empty()) {
    throw InvalidArgumentError("--input and --synthetic are exclusive");
  }
  if (!input_path.empty()) {
    const std::filesystem::path path(input_path);
    if (dataset_name) {
      *dataset_name = path.stem().string();
    }
    const std::string ext = path.extension().string();
    if (ext == ".las") {
      return read_las(path).cloud;
    }
    if (ext == ".xyz" || ext == ".txt") {
      return read_xyz(path);
    }
    throw InvalidArgumentError("unsupported input extension '" + ext +
                               "' (expected .las or .xyz)");
  }
  if (synthetic_spec.empty()) {
    throw InvalidArgumentError("one of --input or --synthetic is required");
  }
  if (dataset_name) {
    *dataset_name = "synthetic";
  }
  return generate(parse_synthetic_spec(synthetic_spec));
}

QueryType parse_query_type(const std::string& text) {
  if (text == "sphere") return QueryType::Sphere;
  if (text == "cube") return QueryType::Cube;
  if (text == "cylinder") return QueryType::Cylinder;
  if (text == "knn") return QueryType::Knn;
  throw InvalidArgumentError("unknown query type '" + text + "'");
}

std::string query_type_name(QueryType q) {
  switch (q) {
    case QueryType::Sphere: return "sphere";
    case QueryType::Cube: return "cube";
    case QueryType::Cylinder: return "cylinder";
    case QueryType::Knn: return "knn";
  }
  return {};
}

namespace {

// splitmix64
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

CenterStream::CenterStream(std::uint64_t seed, std::uint64_t tag,
                           std::uint64_t cloud_size)
    : state_(mix(seed ^ mix(tag))), cloud_size_(cloud_size) {}

std::uint64_t CenterStream::next() {
  state_ = mix(state_);
  return state_ % cloud_size_;
}

}  // namespace cheesemap::cli
