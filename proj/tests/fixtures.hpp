#pragma once

// Shared test fixtures: a toy brain atlas, a matching textured volume, and
// random mask generators.

#include <unistd.h>

#include <climits>
#include <cmath>
#include <filesystem>
#include <map>
#include <random>
#include <string>

#include "voxrg/volume.hpp"

namespace voxrg::fixtures {

/// Sphere of structures in an n^3 grid: eight lobe octants plus a central
/// "thalamus" ball. Background outside the sphere.
inline AtlasLabelMap toy_atlas(int n = 32) {
  const Dims dims{n, n, n};
  std::vector<LabelId> labels(dims.size(), 0);
  const double c = (n - 1) / 2.0;
  const double brain_r = 0.45 * n;
  const double core_r = 0.14 * n;
  for (int z = 0; z < n; ++z) {
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        const double dx = x - c, dy = y - c, dz = z - c;
        const double r = std::sqrt(dx * dx + dy * dy + dz * dz);
        if (r > brain_r) continue;
        LabelId l = 9;
        if (r > core_r) {
          const int side = x < n / 2 ? 0 : 1;
          const int lobe = (y < n / 2 ? 0 : 1) + (z < n / 2 ? 2 : 0);
          l = static_cast<LabelId>(1 + 2 * lobe + side);
        }
        labels[dims.index(x, y, z)] = l;
      }
    }
  }
  std::map<LabelId, std::string> names{
      {1, "left frontal lobe"},   {2, "right frontal lobe"},   {3, "left parietal lobe"},
      {4, "right parietal lobe"}, {5, "left temporal lobe"},   {6, "right temporal lobe"},
      {7, "left occipital lobe"}, {8, "right occipital lobe"}, {9, "thalamus"},
  };
  return AtlasLabelMap(dims, std::move(labels), std::move(names), Spacing{1.0F, 1.0F, 1.0F});
}

/// Per-structure tissue intensity with uniform texture; background is 0.
inline Volume toy_volume(const AtlasLabelMap& atlas, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> noise(-8.0F, 8.0F);
  std::vector<float> data(atlas.dims().size(), 0.0F);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const LabelId l = atlas[i];
    if (l != 0) data[i] = 100.0F + 12.0F * static_cast<float>(l) + noise(rng);
  }
  return Volume(atlas.dims(), atlas.spacing(), std::move(data));
}

inline BinaryMask random_mask(const Dims& dims, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution on(density);
  std::vector<std::uint8_t> bits(dims.size());
  for (auto& b : bits) b = on(rng) ? 1 : 0;
  return BinaryMask(dims, std::move(bits));
}

/// Random atlas: Voronoi cells around k + 1 random seeds, cell 0 is background.
inline AtlasLabelMap random_atlas(const Dims& dims, int k, std::mt19937_64& rng) {
  std::vector<LabelId> labels(dims.size(), 0);
  std::uniform_int_distribution<int> lx(0, dims.nx - 1), ly(0, dims.ny - 1), lz(0, dims.nz - 1);
  std::vector<Voxel> seeds;
  for (int i = 0; i <= k; ++i) seeds.push_back({lx(rng), ly(rng), lz(rng)});
  for (int z = 0; z < dims.nz; ++z) {
    for (int y = 0; y < dims.ny; ++y) {
      for (int x = 0; x < dims.nx; ++x) {
        int best = 0;
        int best_d = INT32_MAX;
        for (int s = 0; s <= k; ++s) {
          const int dx = x - seeds[s].x, dy = y - seeds[s].y, dz = z - seeds[s].z;
          const int d = dx * dx + dy * dy + dz * dz;
          if (d < best_d) {
            best_d = d;
            best = s;
          }
        }
        labels[dims.index(x, y, z)] = static_cast<LabelId>(best);
      }
    }
  }
  std::map<LabelId, std::string> names;
  for (int l = 1; l <= k; ++l) names[static_cast<LabelId>(l)] = "structure " + std::to_string(l);
  return AtlasLabelMap(dims, std::move(labels), std::move(names));
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("voxrg_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace voxrg::fixtures
