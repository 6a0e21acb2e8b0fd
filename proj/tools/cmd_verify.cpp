#include <algorithm>
#include <cmath>
#include <iostream>

#include "commands.hpp"

namespace cheesemap::cli {

namespace {

bool same_set(std::vector<PointHandle> a, std::vector<PointHandle> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

bool same_distances(const std::vector<Neighbor>& a,
                    const std::vector<Neighbor>& b, double rel_tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max({1.0, a[i].distance, b[i].distance});
    if (std::abs(a[i].distance - b[i].distance) > rel_tol * scale) {
      return false;
    }
  }
  return true;
}

}  // namespace

int cmd_verify(const VerifyConfig& cfg) {
  std::string dataset;
  const PointCloud cloud = load_cloud(cfg.input, cfg.synthetic, &dataset);
  if (cloud.empty()) {
    throw EmptyCloudError();
  }
  if (cloud.size() > cfg.cap) {
    throw CapacityError(
        "cloud has " + std::to_string(cloud.size()) +
        " points, above the verification cap of " + std::to_string(cfg.cap) +
        "; subsample the input first");
  }

  const std::vector<double> radii = {0.5, 1.0, 2.5, 5.0};
  const std::vector<std::size_t> ks = {1, 5, 10, 20};

  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  auto report_mismatch = [&](const std::string& what) {
    ++failures;
    std::cerr << "MISMATCH: " << what << '\n';
  };

  for (const Flavor flavor : {Flavor::Dense, Flavor::Sparse, Flavor::Mixed}) {
    for (const GridMode mode : {GridMode::TwoD, GridMode::ThreeD}) {
      for (const double cell : cfg.cell_sizes) {
        BuildOptions opts;
        opts.flavor = flavor;
        opts.mode = mode;
        opts.cell = CellSize::uniform(cell);
        opts.densify_threshold = cfg.tau;
        Cheesemap map = Cheesemap::build(cloud, opts);
        if (cfg.inject_fault) {
          map.corrupt_for_testing();
        }
        const std::string name = structure_name(flavor, mode, false);

        CenterStream centers(cfg.seed, 0, cloud.size());
        for (std::uint64_t q = 0; q < cfg.queries; ++q) {
          const Point3& c = cloud[centers.next()];
          for (double r : radii) {
            ++cases;
            const SphereKernel sphere{c, r};
            if (!same_set(kernel_search(map, sphere),
                          brute_radius(cloud, sphere))) {
              report_mismatch(name + " s=" + std::to_string(cell) +
                              " sphere r=" + std::to_string(r));
            }
            ++cases;
            const BoxKernel box{{{c.x - r, c.y - r, c.z - r},
                                 {c.x + r, c.y + r, c.z + r}}};
            if (!same_set(kernel_search(map, box),
                          brute_radius(cloud, box))) {
              report_mismatch(name + " s=" + std::to_string(cell) +
                              " cube r=" + std::to_string(r));
            }
            ++cases;
            CylinderKernel cyl;
            cyl.center_x = c.x;
            cyl.center_y = c.y;
            cyl.radius = r;
            if (!same_set(kernel_search(map, cyl),
                          brute_radius(cloud, cyl))) {
              report_mismatch(name + " s=" + std::to_string(cell) +
                              " cylinder r=" + std::to_string(r));
            }
          }
          for (std::size_t k : ks) {
            ++cases;
            if (!same_distances(knn_search(map, c, k), brute_knn(cloud, c, k),
                                1e-9)) {
              report_mismatch(name + " s=" + std::to_string(cell) +
                              " knn k=" + std::to_string(k));
            }
          }
        }
      }
    }
  }

  std::cout << "verify: " << dataset << ": " << (cases - failures) << "/"
            << cases << " cases matched the oracle\n";
  return failures == 0 ? kExitOk : kExitMismatch;
}

}  // namespace cheesemap::cli
