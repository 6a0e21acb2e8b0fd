// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cheesemap/analysis.hpp"
#include "cheesemap/baseline.hpp"
#include "cheesemap/io.hpp"
#include "cheesemap/search.hpp"
#include "test_util.hpp"

using namespace cheesemap;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kPi = 3.14159265358979323846;

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::cout << "criterion " << criterion << ": " << (pass ? "PASS" : "FAIL");
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!pass) ++g_failures;
}

Cheesemap build_map(const PointCloud& cloud, Flavor flavor, GridMode mode,
                    double cell, bool reorder = false, double tau = 0.80) {
  BuildOptions opts;
  opts.flavor = flavor;
  opts.mode = mode;
  opts.cell = CellSize::uniform(cell);
  opts.reorder = reorder;
  opts.densify_threshold = tau;
  return Cheesemap::build(cloud, opts);
}

PointCloud make_cloud(int index) {
  SyntheticSpec spec;
  spec.extent_x = 50;
  spec.extent_y = 50;
  spec.extent_z = 25;
  spec.seed = 100 + std::uint64_t(index);
  const std::uint64_t sizes[] = {2000, 5000, 10000, 20000};
  spec.count = sizes[index % 4];
  switch (index % 3) {
    case 0:
      spec.kind = SyntheticSpec::Kind::UniformBox;
      break;
    case 1:
      spec.kind = SyntheticSpec::Kind::VoidEllipse;
      spec.ellipse_cx = 25;
      spec.ellipse_cy = 25;
      spec.ellipse_ax = 10;
      spec.ellipse_ay = 7;
      break;
    default:
      spec.kind = SyntheticSpec::Kind::GaussianClusters;
      spec.cluster_count = 6;
      spec.cluster_sigma = 3.0;
      break;
  }
  return generate(spec);
}

// ---------------------------------------------------------------------------
// 1. every flavor/mode/cell-size combination answers sphere, cube, cylinder
//    and knn queries identically to the linear-scan oracle on 20 clouds
void criterion_1() {
  const auto start = Clock::now();
  const double radii[] = {0.5, 1.0, 2.0, 3.0, 5.0, 7.5, 10.0};
  const std::size_t ks[] = {5, 10, 20, 30, 40, 50};
  const double cells[] = {0.5, 1.0, 2.5, 5.0};

  std::uint64_t cases = 0;
  std::uint64_t failures = 0;

  for (int ci = 0; ci < 20; ++ci) {
    const PointCloud cloud = make_cloud(ci);
    std::vector<Cheesemap> maps;
    for (const Flavor f : {Flavor::Dense, Flavor::Sparse, Flavor::Mixed}) {
      for (const GridMode m : {GridMode::TwoD, GridMode::ThreeD}) {
        for (const double cell : cells) {
          maps.push_back(build_map(cloud, f, m, cell));
        }
      }
    }
    testutil::TinyRng rng(1000 + std::uint64_t(ci));
    for (int q = 0; q < 2; ++q) {
      const Point3 c = cloud[rng.next() % cloud.size()];
      for (const double r : radii) {
        const SphereKernel sphere{c, r};
        const BoxKernel cube{
            {{c.x - r, c.y - r, c.z - r}, {c.x + r, c.y + r, c.z + r}}};
        CylinderKernel cyl;
        cyl.center_x = c.x;
        cyl.center_y = c.y;
        cyl.radius = r;
        const auto want_sphere = brute_radius(cloud, sphere);
        const auto want_cube = brute_radius(cloud, cube);
        const auto want_cyl = brute_radius(cloud, cyl);
        for (const Cheesemap& map : maps) {
          cases += 3;
          if (!testutil::same_handles(kernel_search(map, sphere), want_sphere))
            ++failures;
          if (!testutil::same_handles(kernel_search(map, cube), want_cube))
            ++failures;
          if (!testutil::same_handles(kernel_search(map, cyl), want_cyl))
            ++failures;
        }
      }
      for (const std::size_t k : ks) {
        const auto want = brute_knn(cloud, c, k);
        for (const Cheesemap& map : maps) {
          ++cases;
          if (!testutil::same_distances(knn_search(map, c, k), want, 1e-9))
            ++failures;
        }
      }
    }
  }
  const double elapsed =
      std::chrono::duration<double>(Clock::now() - start).count();
  std::ostringstream detail;
  detail << cases - failures << "/" << cases << " cases in " << elapsed << "s";
  report(1, failures == 0 && elapsed < 300.0, detail.str());
}

// ---------------------------------------------------------------------------
// 2. grid accounting: dimensions, voxel count, index round trip
void criterion_2() {
  bool ok = true;
  const Aabb tile{{0, 0, 0}, {500, 500, 168.4}};
  const GridParams g3 = grid_dims(tile, CellSize::uniform(1.0), GridMode::ThreeD);
  ok &= g3.nx == 501 && g3.ny == 501 && g3.nz == 169;
  ok &= g3.total_voxels() == 42'419'169;
  const GridParams g2 = grid_dims(tile, CellSize::uniform(1.0), GridMode::TwoD);
  ok &= g2.total_voxels() == 251'001;

  const GridParams g = grid_dims({{0, 0, 0}, {10, 10, 10}},
                                 CellSize::uniform(2.5), GridMode::ThreeD);
  ok &= g.total_voxels() == 125;
  ok &= g.voxel_of({10, 10, 10}) == VoxelCoord{4, 4, 4};
  ok &= g.global_index({1, 0, 3}) == 28;
  for (std::uint64_t i = 0; i < g.total_voxels(); ++i) {
    ok &= g.global_index(g.coord_of(i)) == i;
  }
  report(2, ok, ok ? "dimensions, voxel counts and index round trips" : "");
}

// ---------------------------------------------------------------------------
// 3. the dense 3D map beats the linear scan by >= 10x on a 2^20-point cloud
void criterion_3() {
  SyntheticSpec spec;
  spec.count = std::uint64_t{1} << 20;
  spec.extent_x = 100;
  spec.extent_y = 100;
  spec.extent_z = 50;
  spec.seed = 4;
  const PointCloud cloud = generate(spec);
  const Cheesemap map = build_map(cloud, Flavor::Dense, GridMode::ThreeD, 2.5);

  testutil::TinyRng rng(55);
  std::vector<Point3> centers;
  for (int i = 0; i < 220; ++i) {
    centers.push_back(cloud[rng.next() % cloud.size()]);
  }

  volatile std::size_t sink = 0;
  // warmup
  for (int i = 0; i < 20; ++i) {
    sink += kernel_search(map, SphereKernel{centers[i], 2.5}).size();
  }
  auto t0 = Clock::now();
  for (int i = 0; i < 200; ++i) {
    sink += kernel_search(map, SphereKernel{centers[i], 2.5}).size();
  }
  const double map_ns =
      std::chrono::duration<double, std::nano>(Clock::now() - t0).count() / 200;

  t0 = Clock::now();
  for (int i = 0; i < 15; ++i) {
    sink += brute_radius(cloud, SphereKernel{centers[i], 2.5}).size();
  }
  const double brute_ns =
      std::chrono::duration<double, std::nano>(Clock::now() - t0).count() / 15;

  const double speedup = brute_ns / map_ns;
  std::ostringstream detail;
  detail << "speedup " << speedup << "x (map " << map_ns / 1000 << "us, scan "
         << brute_ns / 1000 << "us)";
  report(3, speedup >= 10.0, detail.str());
}

// ---------------------------------------------------------------------------
// 4. density-guided radius growth visits no more voxels than fixed stepping
//    in at least 60% of 1000 knn queries, with identical results
void criterion_4() {
  SyntheticSpec spec;
  spec.count = 1'000'000;
  spec.extent_x = 50;
  spec.extent_y = 50;
  spec.extent_z = 20;
  spec.seed = 6;
  const PointCloud cloud = generate(spec);
  const Cheesemap map = build_map(cloud, Flavor::Dense, GridMode::ThreeD, 1.0);

  testutil::TinyRng rng(66);
  int wins = 0;
  int result_mismatches = 0;
  const int queries = 1000;
  for (int q = 0; q < queries; ++q) {
    const Point3 c = cloud[rng.next() % cloud.size()];
    QueryStats sd, sm;
    const auto rd = knn_search(map, c, 20, GrowthPolicy::Density, &sd);
    const auto rm = knn_search(map, c, 20, GrowthPolicy::Monotonic, &sm);
    if (sd.voxels_visited <= sm.voxels_visited) ++wins;
    if (!testutil::same_distances(rd, rm, 1e-9)) ++result_mismatches;
  }
  std::ostringstream detail;
  detail << wins << "/" << queries
         << " queries visited no more voxels under density growth";
  report(4, wins >= queries * 60 / 100 && result_mismatches == 0, detail.str());
}

// ---------------------------------------------------------------------------
// 5. a mixed slice with a 10x10 footprint densifies at 80 occupied cells
//    (threshold 0.80) and stays sparse at 79
void criterion_5() {
  auto slice_cloud = [](int occupied_cells) {
    PointCloud cloud;
    cloud.push_back({0.05, 0.05, 0.5});
    cloud.push_back({9.5, 9.5, 0.5});
    int placed = 2;
    for (int c = 0; c < 100 && placed < occupied_cells; ++c) {
      const int i = c / 10;
      const int j = c % 10;
      if ((i == 0 && j == 0) || (i == 9 && j == 9)) continue;
      cloud.push_back({i + 0.5, j + 0.5, 0.5});
      ++placed;
    }
    return cloud;
  };

  const Cheesemap below = build_map(slice_cloud(79), Flavor::Mixed,
                                    GridMode::ThreeD, 1.0);
  const Cheesemap at = build_map(slice_cloud(80), Flavor::Mixed,
                                 GridMode::ThreeD, 1.0);
  const auto so_below = below.occupancy_stats().slices;
  const auto so_at = at.occupancy_stats().slices;
  const bool ok = so_below.size() == 1 && !so_below[0].dense &&
                  so_below[0].non_empty == 79 && so_at.size() == 1 &&
                  so_at[0].dense && so_at[0].non_empty == 80;
  report(5, ok, "79/100 cells sparse, 80/100 cells dense");
}

// ---------------------------------------------------------------------------
// 6. memory accounting on a cloud with a large empty region: the sparse
//    structure is smaller than the dense one, mixed never exceeds the worse
//    of the two, and handle bytes are 8 per point everywhere
void criterion_6() {
  SyntheticSpec spec;
  spec.kind = SyntheticSpec::Kind::VoidEllipse;
  spec.count = 30000;
  spec.extent_x = 100;
  spec.extent_y = 100;
  spec.extent_z = 50;
  spec.seed = 8;
  spec.ellipse_cx = 50;
  spec.ellipse_cy = 50;
  spec.ellipse_ax = 30;
  spec.ellipse_ay = 25;
  const PointCloud cloud = generate(spec);

  const MemoryReport dense =
      build_map(cloud, Flavor::Dense, GridMode::ThreeD, 1.0).memory_report();
  const MemoryReport sparse =
      build_map(cloud, Flavor::Sparse, GridMode::ThreeD, 1.0).memory_report();
  const MemoryReport mixed =
      build_map(cloud, Flavor::Mixed, GridMode::ThreeD, 1.0).memory_report();

  bool ok = sparse.structure_bytes < dense.structure_bytes;
  ok &= mixed.structure_bytes <=
        std::max(dense.structure_bytes, sparse.structure_bytes);
  for (const MemoryReport& r : {dense, sparse, mixed}) {
    ok &= r.handle_bytes == 8 * cloud.size();
    ok &= r.total_bytes == r.handle_bytes + r.structure_bytes;
  }
  std::ostringstream detail;
  detail << "structure bytes: dense " << dense.structure_bytes << ", sparse "
         << sparse.structure_bytes << ", mixed " << mixed.structure_bytes;
  report(6, ok, detail.str());
}

// ---------------------------------------------------------------------------
// 7. reordering the stored points never changes any query result
void criterion_7() {
  SyntheticSpec spec;
  spec.count = 20000;
  spec.extent_x = 50;
  spec.extent_y = 50;
  spec.extent_z = 25;
  spec.seed = 10;
  const PointCloud cloud = generate(spec);

  bool ok = true;
  for (const Flavor f : {Flavor::Dense, Flavor::Sparse, Flavor::Mixed}) {
    const Cheesemap plain = build_map(cloud, f, GridMode::ThreeD, 1.0, false);
    const Cheesemap reord = build_map(cloud, f, GridMode::ThreeD, 1.0, true);
    testutil::TinyRng rng(77);
    for (int q = 0; q < 100; ++q) {
      const Point3 c = cloud[rng.next() % cloud.size()];
      const double r = rng.uniform(0.5, 5.0);
      const SphereKernel sphere{c, r};
      ok &= testutil::same_handles(kernel_search(plain, sphere),
                                   kernel_search(reord, sphere));
      const BoxKernel cube{
          {{c.x - r, c.y - r, c.z - r}, {c.x + r, c.y + r, c.z + r}}};
      ok &= testutil::same_handles(kernel_search(plain, cube),
                                   kernel_search(reord, cube));
      CylinderKernel cyl;
      cyl.center_x = c.x;
      cyl.center_y = c.y;
      cyl.radius = r;
      ok &= testutil::same_handles(kernel_search(plain, cyl),
                                   kernel_search(reord, cyl));
      ok &= testutil::same_distances(knn_search(plain, c, 10),
                                     knn_search(reord, c, 10), 1e-9);
    }
  }
  report(7, ok, "sphere, cube, cylinder and knn over 100 centers per flavor");
}

// ---------------------------------------------------------------------------
// 8. the CLI works end to end: bench output parses, verify returns 0 on a
//    clean build and 1 when the store is deliberately corrupted
void criterion_8() {
  namespace fs = std::filesystem;
  const std::string cli = CHEESEMAP_CLI_PATH;
  const fs::path csv = fs::temp_directory_path() / "cheesemap_accept.csv";
  const fs::path log = fs::temp_directory_path() / "cheesemap_accept.log";
  auto run = [&](const std::string& args, const fs::path& out) {
    const std::string cmd =
        cli + " " + args + " > " + out.string() + " 2> /dev/null";
    const int status = std::system(cmd.c_str());
    return status == -1 ? -1 : WEXITSTATUS(status);
  };

  bool ok = true;
  std::string detail;

  const int bench_code =
      run("bench --synthetic uniform:n=5000,extent=50x50x25,seed=2 "
          "--structures dense3,sparse3,mixed3 --cell-sizes 1,2.5 "
          "--query sphere --radii 1,2.5 --seconds 0.02 --warmup 2 "
          "--counter-sample 10 --seed 1",
          csv);
  ok &= bench_code == 0;
  std::ifstream f(csv);
  std::string line;
  std::uint64_t rows = 0;
  bool header_ok = false;
  while (std::getline(f, line)) {
    if (rows == 0) {
      header_ok = line.rfind("dataset,structure,flavor,", 0) == 0;
    } else {
      std::stringstream ss(line);
      std::string field;
      int fields = 0;
      while (std::getline(ss, field, ',')) ++fields;
      ok &= fields == 15;
    }
    ++rows;
  }
  ok &= header_ok && rows == 1 + 3 * 2 * 2;

  const int clean = run(
      "verify --synthetic uniform:n=2000,extent=20x20x10,seed=3 "
      "--cell-sizes 1 --queries 10",
      log);
  const int faulty = run(
      "verify --synthetic uniform:n=2000,extent=20x20x10,seed=3 "
      "--cell-sizes 1 --queries 10 --inject-fault",
      log);
  ok &= clean == 0;
  ok &= faulty == 1;

  std::ostringstream d;
  d << "bench exit " << bench_code << " with " << rows - 1
    << " rows, verify exit " << clean << " clean / " << faulty << " faulty";
  report(8, ok, d.str());
  fs::remove(csv);
  fs::remove(log);
}

// ---------------------------------------------------------------------------
// 9. weighted density matches the quadratic oracle exactly, including the
//    coincident-points fixture that lands 10 points in bin 3
void criterion_9() {
  bool ok = true;

  PointCloud stack;
  for (int i = 0; i < 10; ++i) {
    stack.push_back({5.0 + 0.001 * i, 5.0, double(i)});
  }
  stack.push_back({0, 0, 0});
  stack.push_back({20, 20, 0});
  const WeightedDensity fixture = weighted_density(stack);
  ok &= fixture.histogram.bins[3] == 10;
  ok &= std::abs(double(fixture.value) - (10.0 * 3.0) / 12.0) < 1e-12;

  SyntheticSpec spec;
  spec.count = 10000;
  spec.extent_x = 50;
  spec.extent_y = 50;
  spec.extent_z = 25;
  spec.seed = 12;
  const PointCloud cloud = generate(spec);
  const WeightedDensity fast = weighted_density(cloud);

  WeightedDensity slow;
  double weighted_sum = 0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    std::uint64_t neighbors = 0;
    for (std::size_t j = 0; j < cloud.size(); ++j) {
      if (squared_distance_xy(cloud[i].x, cloud[i].y, cloud[j].x,
                              cloud[j].y) <= 1.0) {
        ++neighbors;
      }
    }
    const auto bin = std::min<std::uint64_t>(
        255, std::uint64_t(std::floor(double(neighbors) / kPi)));
    ++slow.histogram.bins[bin];
    weighted_sum += double(bin);
  }
  slow.value = weighted_sum / double(cloud.size());

  ok &= fast.histogram.bins == slow.histogram.bins;
  ok &= std::abs(fast.value - slow.value) < 1e-12;

  std::ostringstream detail;
  detail << "oracle value " << slow.value << ", indexed value " << fast.value;
  report(9, ok, detail.str());
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (g_failures == 0) {
    std::cout << "all acceptance criteria passed" << std::endl;
  } else {
    std::cout << g_failures << " acceptance criteria failed" << std::endl;
  }
  return g_failures;
}
