#include "cheesemap/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace cheesemap {

namespace {

template <class T>
T read_le(const std::vector<char>& buf, std::size_t offset) {
  T value;
  std::memcpy(&value, buf.data() + offset, sizeof(T));
  return value;  // little-endian host assumed
}

template <class T>
void write_le(std::string& out, T value) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  out.append(bytes, sizeof(T));
}

constexpr std::size_t kLasHeaderSize12 = 227;

}  // namespace

LasFile read_las(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::vector<char> buf((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());

  if (buf.size() < kLasHeaderSize12 ||
      std::memcmp(buf.data(), "LASF", 4) != 0) {
    throw ParseError("bad LAS magic at byte 0 in " + path.string());
  }

  LasFile file;
  LasHeaderInfo& h = file.header;
  h.version_major = static_cast<std::uint8_t>(buf[24]);
  h.version_minor = static_cast<std::uint8_t>(buf[25]);
  if (h.version_major != 1 || h.version_minor < 2 || h.version_minor > 4) {
    throw ParseError("unsupported LAS version " +
                     std::to_string(h.version_major) + "." +
                     std::to_string(h.version_minor));
  }
  const auto header_size = read_le<std::uint16_t>(buf, 94);
  const auto data_offset = read_le<std::uint32_t>(buf, 96);
  h.point_format = static_cast<std::uint8_t>(buf[104]);
  if (h.point_format > 8) {
    throw ParseError("unsupported LAS point record format " +
                     std::to_string(h.point_format));
  }
  const auto record_length = read_le<std::uint16_t>(buf, 105);
  if (record_length < 12) {
    throw ParseError("LAS point record length " +
                     std::to_string(record_length) + " is too short");
  }
  h.point_count = read_le<std::uint32_t>(buf, 107);
  if (h.point_count == 0 && h.version_minor == 4 && header_size >= 255) {
    h.point_count = read_le<std::uint64_t>(buf, 247);
  }
  h.scale_x = read_le<double>(buf, 131);
  h.scale_y = read_le<double>(buf, 139);
  h.scale_z = read_le<double>(buf, 147);
  if (!(h.scale_x > 0.0) || !(h.scale_y > 0.0) || !(h.scale_z > 0.0)) {
    throw ParseError("non-positive LAS scale factor at byte 131");
  }
  h.offset_x = read_le<double>(buf, 155);
  h.offset_y = read_le<double>(buf, 163);
  h.offset_z = read_le<double>(buf, 171);
  h.bounds.max.x = read_le<double>(buf, 179);
  h.bounds.min.x = read_le<double>(buf, 187);
  h.bounds.max.y = read_le<double>(buf, 195);
  h.bounds.min.y = read_le<double>(buf, 203);
  h.bounds.max.z = read_le<double>(buf, 211);
  h.bounds.min.z = read_le<double>(buf, 219);

  if (data_offset < header_size || data_offset > buf.size()) {
    throw ParseError("LAS point data offset " + std::to_string(data_offset) +
                     " is out of range");
  }

  file.cloud.reserve(h.point_count);
  std::size_t pos = data_offset;
  for (std::uint64_t i = 0; i < h.point_count; ++i, pos += record_length) {
    if (pos + record_length > buf.size()) {
      throw ParseError("truncated LAS point record " + std::to_string(i) +
                       " at byte " + std::to_string(pos));
    }
    const auto rx = read_le<std::int32_t>(buf, pos);
    const auto ry = read_le<std::int32_t>(buf, pos + 4);
    const auto rz = read_le<std::int32_t>(buf, pos + 8);
    file.cloud.push_back({rx * h.scale_x + h.offset_x,
                          ry * h.scale_y + h.offset_y,
                          rz * h.scale_z + h.offset_z});
  }
  return file;
}

void write_las(const PointCloud& cloud, const std::filesystem::path& path,
               double scale) {
  if (!(scale > 0.0)) {
    throw InvalidArgumentError("LAS scale must be positive");
  }
  Aabb box{};
  if (!cloud.empty()) {
    box = aabb_of_points(cloud);
  }
  const Point3 offset = box.min;

  std::string out;
  out.reserve(kLasHeaderSize12 + cloud.size() * 20);
  out.append("LASF");
  out.append(20, '\0');                    // source id .. GUID
  out.push_back(1);                        // version 1.2
  out.push_back(2);
  out.append(68, '\0');                    // system id, software, dates
  write_le<std::uint16_t>(out, kLasHeaderSize12);        // header size
  write_le<std::uint32_t>(out, kLasHeaderSize12);        // data offset
  write_le<std::uint32_t>(out, 0);                       // VLR count
  out.push_back(0);                                      // format 0
  write_le<std::uint16_t>(out, 20);                      // record length
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(cloud.size()));
  out.append(20, '\0');                    // points by return
  write_le<double>(out, scale);
  write_le<double>(out, scale);
  write_le<double>(out, scale);
  write_le<double>(out, offset.x);
  write_le<double>(out, offset.y);
  write_le<double>(out, offset.z);
  write_le<double>(out, box.max.x);
  write_le<double>(out, box.min.x);
  write_le<double>(out, box.max.y);
  write_le<double>(out, box.min.y);
  write_le<double>(out, box.max.z);
  write_le<double>(out, box.min.z);

  auto quantize = [&](double coord, double off) {
    const double q = std::round((coord - off) / scale);
    if (std::abs(q) > 2147483647.0) {
      throw InvalidArgumentError(
          "coordinate does not fit a 32-bit LAS record at this scale");
    }
    return static_cast<std::int32_t>(q);
  };
  for (const Point3& p : cloud) {
    write_le<std::int32_t>(out, quantize(p.x, offset.x));
    write_le<std::int32_t>(out, quantize(p.y, offset.y));
    write_le<std::int32_t>(out, quantize(p.z, offset.z));
    out.append(8, '\0');  // intensity, flags, classification, ...
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f || !f.write(out.data(), static_cast<std::streamsize>(out.size()))) {
    throw IoError("cannot write " + path.string());
  }
}

PointCloud read_xyz(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  PointCloud cloud;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') {
      continue;
    }
    std::istringstream ss(line);
    Point3 p;
    if (!(ss >> p.x >> p.y >> p.z)) {
      throw ParseError("malformed point at line " + std::to_string(line_no) +
                       " of " + path.string());
    }
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw ParseError("non-finite coordinate at line " +
                       std::to_string(line_no) + " of " + path.string());
    }
    cloud.push_back(p);
  }
  return cloud;
}

void write_xyz(const PointCloud& cloud, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw IoError("cannot write " + path.string());
  }
  char buf[96];
  for (const Point3& p : cloud) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", p.x, p.y, p.z);
    out << buf;
  }
  if (!out) {
    throw IoError("write failed for " + path.string());
  }
}

namespace {

/// Seeded generator with fixed bit transforms so output does not depend on
/// the standard library's distribution implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform01() {  // [0, 1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  std::uint64_t index(std::uint64_t n) { return eng_() % n; }

  double gaussian(double mean, double sigma) {
    if (spare_) {
      const double v = *spare_;
      spare_.reset();
      return mean + sigma * v;
    }
    const double u1 =
        static_cast<double>((eng_() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform01();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * std::numbers::pi * u2);
    return mean + sigma * mag * std::cos(2.0 * std::numbers::pi * u2);
  }

private:
  std::mt19937_64 eng_;
  std::optional<double> spare_;
};

}  // namespace

PointCloud generate(const SyntheticSpec& spec) {
  if (spec.count == 0) {
    throw InvalidArgumentError("synthetic point count must be positive");
  }
  if (!(spec.extent_x > 0.0) || !(spec.extent_y > 0.0) ||
      !(spec.extent_z > 0.0)) {
    throw InvalidArgumentError("synthetic extents must be positive");
  }

  Rng rng(spec.seed);
  PointCloud cloud;
  cloud.reserve(spec.count);

  switch (spec.kind) {
    case SyntheticSpec::Kind::UniformBox: {
      for (std::uint64_t i = 0; i < spec.count; ++i) {
        cloud.push_back({rng.uniform(0.0, spec.extent_x),
                         rng.uniform(0.0, spec.extent_y),
                         rng.uniform(0.0, spec.extent_z)});
      }
      break;
    }
    case SyntheticSpec::Kind::VoidEllipse: {
      if (!(spec.ellipse_ax > 0.0) || !(spec.ellipse_ay > 0.0)) {
        throw InvalidArgumentError("ellipse axes must be positive");
      }
      if (spec.ellipse_cx - spec.ellipse_ax < 0.0 ||
          spec.ellipse_cx + spec.ellipse_ax > spec.extent_x ||
          spec.ellipse_cy - spec.ellipse_ay < 0.0 ||
          spec.ellipse_cy + spec.ellipse_ay > spec.extent_y) {
        throw InvalidArgumentError("void ellipse must lie inside the extents");
      }
      auto in_void = [&](double x, double y) {
        const double u = (x - spec.ellipse_cx) / spec.ellipse_ax;
        const double v = (y - spec.ellipse_cy) / spec.ellipse_ay;
        return u * u + v * v <= 1.0;
      };
      std::uint64_t attempts = 0;
      const std::uint64_t max_attempts = spec.count * 1000 + 1000;
      while (cloud.size() < spec.count) {
        if (++attempts > max_attempts) {
          throw InvalidArgumentError(
              "void region rejects nearly all samples; check the spec");
        }
        const double x = rng.uniform(0.0, spec.extent_x);
        const double y = rng.uniform(0.0, spec.extent_y);
        if (in_void(x, y)) {
          continue;
        }
        cloud.push_back({x, y, rng.uniform(0.0, spec.extent_z)});
      }
      break;
    }
    case SyntheticSpec::Kind::GaussianClusters: {
      if (spec.cluster_count == 0 || !(spec.cluster_sigma > 0.0)) {
        throw InvalidArgumentError("need at least one cluster and sigma > 0");
      }
      std::vector<Point3> centers(spec.cluster_count);
      for (Point3& c : centers) {
        c = {rng.uniform(0.0, spec.extent_x), rng.uniform(0.0, spec.extent_y),
             rng.uniform(0.0, spec.extent_z)};
      }
      std::uint64_t attempts = 0;
      const std::uint64_t max_attempts = spec.count * 1000 + 1000;
      while (cloud.size() < spec.count) {
        if (++attempts > max_attempts) {
          throw InvalidArgumentError(
              "cluster sampling rejects nearly all points; check sigma");
        }
        const Point3& c = centers[rng.index(spec.cluster_count)];
        const Point3 p{rng.gaussian(c.x, spec.cluster_sigma),
                       rng.gaussian(c.y, spec.cluster_sigma),
                       rng.gaussian(c.z, spec.cluster_sigma)};
        if (p.x < 0.0 || p.x > spec.extent_x || p.y < 0.0 ||
            p.y > spec.extent_y || p.z < 0.0 || p.z > spec.extent_z) {
          continue;
        }
        cloud.push_back(p);
      }
      break;
    }
  }
  return cloud;
}

SyntheticSpec parse_synthetic_spec(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ParseError("synthetic spec needs the form kind:key=value,...");
  }
  const std::string kind = text.substr(0, colon);

  SyntheticSpec spec;
  if (kind == "uniform") {
    spec.kind = SyntheticSpec::Kind::UniformBox;
  } else if (kind == "void-ellipse") {
    spec.kind = SyntheticSpec::Kind::VoidEllipse;
  } else if (kind == "clusters") {
    spec.kind = SyntheticSpec::Kind::GaussianClusters;
  } else {
    throw ParseError("unknown synthetic kind '" + kind + "'");
  }

  std::istringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ParseError("bad synthetic spec item '" + item + "'");
    }
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    try {
      if (key == "n") {
        spec.count = std::stoull(value);
      } else if (key == "seed") {
        spec.seed = std::stoull(value);
      } else if (key == "extent") {
        std::istringstream dims(value);
        char sep1 = 0, sep2 = 0;
        if (!(dims >> spec.extent_x >> sep1 >> spec.extent_y >> sep2 >>
              spec.extent_z) ||
            sep1 != 'x' || sep2 != 'x') {
          throw ParseError("extent must look like 100x100x50");
        }
      } else if (key == "cx") {
        spec.ellipse_cx = std::stod(value);
      } else if (key == "cy") {
        spec.ellipse_cy = std::stod(value);
      } else if (key == "ax") {
        spec.ellipse_ax = std::stod(value);
      } else if (key == "ay") {
        spec.ellipse_ay = std::stod(value);
      } else if (key == "clusters") {
        spec.cluster_count = std::stoull(value);
      } else if (key == "sigma") {
        spec.cluster_sigma = std::stod(value);
      } else {
        throw ParseError("unknown synthetic spec key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw ParseError("bad value for synthetic spec key '" + key + "'");
    } catch (const std::out_of_range&) {
      throw ParseError("value out of range for synthetic spec key '" + key +
                       "'");
    }
  }
  return spec;
}

}  // namespace cheesemap
