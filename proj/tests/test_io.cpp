#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>

#include "cheesemap/grid.hpp"
#include "cheesemap/io.hpp"
#include "test_util.hpp"

using namespace cheesemap;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("cheesemap_test_" + name);
}

template <class T>
void put(std::vector<unsigned char>& buf, std::size_t offset, T value) {
  std::memcpy(buf.data() + offset, &value, sizeof(T));
}

// Minimal hand-assembled LAS 1.2 format-0 file, independent of write_las.
std::vector<unsigned char> make_las(const std::vector<std::array<std::int32_t, 3>>& raw,
                                    double scale, double offset) {
  std::vector<unsigned char> buf(227 + raw.size() * 20, 0);
  std::memcpy(buf.data(), "LASF", 4);
  buf[24] = 1;  // version 1.2
  buf[25] = 2;
  put<std::uint16_t>(buf, 94, 227);   // header size
  put<std::uint32_t>(buf, 96, 227);   // offset to point data
  buf[104] = 0;                       // point format
  put<std::uint16_t>(buf, 105, 20);   // record length
  put<std::uint32_t>(buf, 107, static_cast<std::uint32_t>(raw.size()));
  for (int axis = 0; axis < 3; ++axis) {
    put<double>(buf, 131 + 8 * axis, scale);
    put<double>(buf, 155 + 8 * axis, offset);
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    put<std::int32_t>(buf, 227 + i * 20 + 0, raw[i][0]);
    put<std::int32_t>(buf, 227 + i * 20 + 4, raw[i][1]);
    put<std::int32_t>(buf, 227 + i * 20 + 8, raw[i][2]);
  }
  return buf;
}

void write_file(const fs::path& path, const std::vector<unsigned char>& buf) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f.write(reinterpret_cast<const char*>(buf.data()),
          static_cast<std::streamsize>(buf.size()));
}

}  // namespace

TEST_CASE("las coordinates are raw * scale + offset") {
  const auto path = temp_file("scale.las");
  write_file(path, make_las({{12345, -200, 0}, {0, 1, 2}}, 0.01, 100.0));
  const LasFile file = read_las(path);
  REQUIRE(file.cloud.size() == 2);
  CHECK(file.cloud[0].x == doctest::Approx(223.45).epsilon(1e-12));
  CHECK(file.cloud[0].y == doctest::Approx(98.0).epsilon(1e-12));
  CHECK(file.cloud[0].z == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(file.cloud[1].y == doctest::Approx(100.01).epsilon(1e-12));
  CHECK(file.header.version_minor == 2);
  CHECK(file.header.point_format == 0);
  CHECK(file.header.point_count == 2);
  CHECK(file.header.scale_x == 0.01);
  fs::remove(path);
}

TEST_CASE("malformed las files are rejected with a ParseError") {
  const auto path = temp_file("bad.las");

  auto buf = make_las({{0, 0, 0}}, 0.001, 0.0);
  buf[0] = 'X';  // bad magic
  write_file(path, buf);
  CHECK_THROWS_AS(read_las(path), ParseError);

  buf = make_las({{0, 0, 0}}, 0.001, 0.0);
  buf[24] = 9;  // unsupported version
  write_file(path, buf);
  CHECK_THROWS_AS(read_las(path), ParseError);

  buf = make_las({{0, 0, 0}, {1, 1, 1}}, 0.001, 0.0);
  buf.resize(buf.size() - 5);  // truncated final record
  write_file(path, buf);
  CHECK_THROWS_AS(read_las(path), ParseError);

  buf = make_las({{0, 0, 0}}, 0.0, 0.0);  // zero scale
  write_file(path, buf);
  CHECK_THROWS_AS(read_las(path), ParseError);

  CHECK_THROWS_AS(read_las(temp_file("does_not_exist.las")), IoError);
  fs::remove(path);
}

TEST_CASE("las write/read round trip within quantization") {
  const PointCloud cloud = testutil::uniform_cloud(2000, 100, 100, 50, 17);
  const auto path = temp_file("roundtrip.las");
  const double scale = 0.001;
  write_las(cloud, path, scale);
  const LasFile file = read_las(path);
  REQUIRE(file.cloud.size() == cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    CHECK(std::abs(file.cloud[i].x - cloud[i].x) <= scale / 2 + 1e-12);
    CHECK(std::abs(file.cloud[i].y - cloud[i].y) <= scale / 2 + 1e-12);
    CHECK(std::abs(file.cloud[i].z - cloud[i].z) <= scale / 2 + 1e-12);
  }
  const Aabb box = aabb_of_points(cloud);
  CHECK(file.header.bounds.min.x == doctest::Approx(box.min.x).epsilon(1e-9));
  CHECK(file.header.bounds.max.z == doctest::Approx(box.max.z).epsilon(1e-9));
  fs::remove(path);
}

TEST_CASE("xyz text parsing") {
  const auto path = temp_file("points.xyz");
  {
    std::ofstream f(path, std::ios::trunc);
    f << "# a comment line\n"
      << "1.5 2.5 3.5\n"
      << "\n"
      << "  -1e3\t4 0.125  \n";
  }
  const PointCloud cloud = read_xyz(path);
  REQUIRE(cloud.size() == 2);
  CHECK(cloud[0] == Point3{1.5, 2.5, 3.5});
  CHECK(cloud[1] == Point3{-1000.0, 4.0, 0.125});
  fs::remove(path);
}

TEST_CASE("xyz parse errors carry the line number") {
  const auto path = temp_file("bad.xyz");
  {
    std::ofstream f(path, std::ios::trunc);
    f << "1 2 3\n"
      << "4 five 6\n";
  }
  try {
    read_xyz(path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find('2') != std::string::npos);
  }
  fs::remove(path);
}

TEST_CASE("xyz round trip is bit identical") {
  const PointCloud cloud = testutil::uniform_cloud(3000, 100, 100, 50, 23);
  const auto path = temp_file("roundtrip.xyz");
  write_xyz(cloud, path);
  const PointCloud back = read_xyz(path);
  REQUIRE(back.size() == cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    CHECK(back[i] == cloud[i]);  // exact, not approximate
  }
  fs::remove(path);
}

TEST_CASE("synthetic generation is deterministic and in bounds") {
  SyntheticSpec spec;
  spec.count = 10000;
  spec.extent_x = 100;
  spec.extent_y = 80;
  spec.extent_z = 50;
  spec.seed = 42;
  const PointCloud a = generate(spec);
  const PointCloud b = generate(spec);
  REQUIRE(a.size() == 10000);
  CHECK(a == b);
  for (const Point3& p : a) {
    CHECK(p.x >= 0);
    CHECK(p.x <= 100);
    CHECK(p.y >= 0);
    CHECK(p.y <= 80);
    CHECK(p.z >= 0);
    CHECK(p.z <= 50);
  }
  spec.seed = 43;
  CHECK(generate(spec) != a);
}

TEST_CASE("uniform generation fills voxels like a Poisson process") {
  SyntheticSpec spec;
  spec.count = std::uint64_t{1} << 20;
  spec.extent_x = 100;
  spec.extent_y = 100;
  spec.extent_z = 50;
  spec.seed = 7;
  const PointCloud cloud = generate(spec);
  const GridParams g = grid_dims(aabb_of_points(cloud), CellSize::uniform(2.5),
                                 GridMode::ThreeD);
  std::vector<std::uint64_t> counts(g.total_voxels(), 0);
  for (const Point3& p : cloud) {
    ++counts[g.global_index(g.voxel_of(p))];
  }
  const double lambda = double(cloud.size()) / double(g.total_voxels());
  double mean = 0;
  for (const std::uint64_t c : counts) mean += double(c);
  mean /= double(counts.size());
  // sample mean of voxel counts within 5 sigma of the Poisson expectation
  const double sigma = std::sqrt(lambda / double(counts.size()));
  CHECK(std::abs(mean - lambda) <= 5 * sigma);
  // index of dispersion near 1 for Poisson
  double var = 0;
  for (const std::uint64_t c : counts) var += (double(c) - mean) * (double(c) - mean);
  var /= double(counts.size());
  CHECK(var / mean == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("void-ellipse generation leaves the ellipse empty") {
  SyntheticSpec spec;
  spec.kind = SyntheticSpec::Kind::VoidEllipse;
  spec.count = 20000;
  spec.extent_x = 100;
  spec.extent_y = 100;
  spec.extent_z = 50;
  spec.seed = 3;
  spec.ellipse_cx = 50;
  spec.ellipse_cy = 50;
  spec.ellipse_ax = 20;
  spec.ellipse_ay = 15;
  const PointCloud cloud = generate(spec);
  REQUIRE(cloud.size() == 20000);
  for (const Point3& p : cloud) {
    const double u = (p.x - 50) / 20;
    const double v = (p.y - 50) / 15;
    CHECK(u * u + v * v > 1.0);
  }
  CHECK(generate(spec) == cloud);

  // an ellipse that swallows the whole extent cannot be satisfied
  spec.ellipse_ax = 500;
  spec.ellipse_ay = 500;
  CHECK_THROWS_AS(generate(spec), InvalidArgumentError);
}

TEST_CASE("cluster generation stays in the box") {
  SyntheticSpec spec;
  spec.kind = SyntheticSpec::Kind::GaussianClusters;
  spec.count = 30000;
  spec.extent_x = 60;
  spec.extent_y = 60;
  spec.extent_z = 30;
  spec.seed = 11;
  spec.cluster_count = 5;
  spec.cluster_sigma = 2.0;
  const PointCloud cloud = generate(spec);
  REQUIRE(cloud.size() == 30000);
  for (const Point3& p : cloud) {
    CHECK(p.x >= 0);
    CHECK(p.x <= 60);
    CHECK(p.z >= 0);
    CHECK(p.z <= 30);
  }
  CHECK(generate(spec) == cloud);
}

TEST_CASE("synthetic spec strings") {
  const SyntheticSpec u =
      parse_synthetic_spec("uniform:n=100000,extent=100x100x50,seed=42");
  CHECK(u.kind == SyntheticSpec::Kind::UniformBox);
  CHECK(u.count == 100000);
  CHECK(u.extent_x == 100);
  CHECK(u.extent_z == 50);
  CHECK(u.seed == 42);

  const SyntheticSpec v = parse_synthetic_spec(
      "void-ellipse:n=20000,extent=100x100x50,seed=1,cx=50,cy=50,ax=20,ay=15");
  CHECK(v.kind == SyntheticSpec::Kind::VoidEllipse);
  CHECK(v.ellipse_ax == 20);

  const SyntheticSpec c = parse_synthetic_spec(
      "clusters:n=50000,extent=100x100x50,seed=7,clusters=8,sigma=2.5");
  CHECK(c.kind == SyntheticSpec::Kind::GaussianClusters);
  CHECK(c.cluster_count == 8);
  CHECK(c.cluster_sigma == 2.5);

  CHECK_THROWS_AS(parse_synthetic_spec("nope:n=1"), ParseError);
  CHECK_THROWS_AS(parse_synthetic_spec("uniform:n=abc"), ParseError);
  CHECK_THROWS_AS(parse_synthetic_spec("uniform:n=10,extent=100"), ParseError);
}
