#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "cheesemap/geometry.hpp"

namespace cheesemap {

struct LasHeaderInfo {
  std::uint8_t version_major = 0;
  std::uint8_t version_minor = 0;
  std::uint8_t point_format = 0;
  std::uint64_t point_count = 0;
  double scale_x = 0.0, scale_y = 0.0, scale_z = 0.0;
  double offset_x = 0.0, offset_y = 0.0, offset_z = 0.0;
  Aabb bounds;
};

struct LasFile {
  PointCloud cloud;
  LasHeaderInfo header;
};

/// Read a little-endian LAS 1.2-1.4 file, point record formats 0-8.
/// Only X, Y, Z are consumed: coordinate = raw * scale + offset.
/// Throws ParseError (with byte offsets) on malformed input.
LasFile read_las(const std::filesystem::path& path);

/// Write a minimal LAS 1.2 format-0 file with the given coordinate scale.
void write_las(const PointCloud& cloud, const std::filesystem::path& path,
               double scale = 0.001);

/// Whitespace-separated "x y z" per line; blank lines and '#' comments are
/// skipped. Throws ParseError with the offending line number.
PointCloud read_xyz(const std::filesystem::path& path);

/// Full-precision decimal text; read_xyz round-trips it bit-identically.
void write_xyz(const PointCloud& cloud, const std::filesystem::path& path);

struct SyntheticSpec {
  enum class Kind { UniformBox, VoidEllipse, GaussianClusters };

  Kind kind = Kind::UniformBox;
  double extent_x = 100.0;
  double extent_y = 100.0;
  double extent_z = 50.0;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
  // void-ellipse parameters: xy ellipse that contains no points
  double ellipse_cx = 0.0, ellipse_cy = 0.0;
  double ellipse_ax = 0.0, ellipse_ay = 0.0;
  // gaussian-cluster parameters
  std::uint64_t cluster_count = 8;
  double cluster_sigma = 1.0;
};

/// Deterministic synthetic cloud in [0, extent] per axis. The generator is
/// a pure function of the spec: std::mt19937_64 driven through fixed bit
/// transforms (no library distributions), so output is identical across
/// platforms and standard libraries.
PointCloud generate(const SyntheticSpec& spec);

/// Parse a spec string such as
///   "uniform:n=100000,extent=100x100x50,seed=42"
///   "void-ellipse:n=20000,extent=100x100x50,seed=1,cx=50,cy=50,ax=20,ay=15"
///   "clusters:n=50000,extent=100x100x50,seed=7,clusters=8,sigma=2.5"
SyntheticSpec parse_synthetic_spec(const std::string& text);

}  // namespace cheesemap
