#include <omp.h>

#include <cmath>
#include <limits>

#include "voxrg/kernels.hpp"

namespace voxrg::kernels {

void set_thread_count(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
}

int max_threads() { return omp_get_max_threads(); }

namespace omp {

namespace {

std::ptrdiff_t ssize(std::size_t n) { return static_cast<std::ptrdiff_t>(n); }

}  // namespace

std::size_t popcount(std::span<const std::uint8_t> bits) {
  std::size_t n = 0;
  const std::ptrdiff_t len = ssize(bits.size());
#pragma omp parallel for reduction(+ : n) schedule(static)
  for (std::ptrdiff_t i = 0; i < len; ++i) n += bits[i] != 0;
  return n;
}

void label_equals(std::span<const LabelId> labels, LabelId label, std::span<std::uint8_t> out) {
  const std::ptrdiff_t len = ssize(labels.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < len; ++i) out[i] = labels[i] == label ? 1 : 0;
}

void label_nonzero(std::span<const LabelId> labels, std::span<std::uint8_t> out) {
  const std::ptrdiff_t len = ssize(labels.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < len; ++i) out[i] = labels[i] != 0 ? 1 : 0;
}

void dilate(std::span<const std::uint8_t> in, const Dims& dims, std::span<const Voxel> offsets,
            std::span<std::uint8_t> out) {
#pragma omp parallel for collapse(2) schedule(static)
  for (int z = 0; z < dims.nz; ++z) {
    for (int y = 0; y < dims.ny; ++y) {
      std::size_t i = dims.index(0, y, z);
      for (int x = 0; x < dims.nx; ++x, ++i) {
        if (in[i]) {
          out[i] = 1;
          continue;
        }
        std::uint8_t hit = 0;
        for (const auto& o : offsets) {
          const int qx = x + o.x, qy = y + o.y, qz = z + o.z;
          if (dims.contains(qx, qy, qz) && in[dims.index(qx, qy, qz)]) {
            hit = 1;
            break;
          }
        }
        out[i] = hit;
      }
    }
  }
}

void erode(std::span<const std::uint8_t> in, const Dims& dims, std::span<const Voxel> offsets,
           std::span<std::uint8_t> out) {
#pragma omp parallel for collapse(2) schedule(static)
  for (int z = 0; z < dims.nz; ++z) {
    for (int y = 0; y < dims.ny; ++y) {
      std::size_t i = dims.index(0, y, z);
      for (int x = 0; x < dims.nx; ++x, ++i) {
        if (!in[i]) {
          out[i] = 0;
          continue;
        }
        std::uint8_t all = 1;
        for (const auto& o : offsets) {
          const int qx = x + o.x, qy = y + o.y, qz = z + o.z;
          if (!dims.contains(qx, qy, qz) || !in[dims.index(qx, qy, qz)]) {
            all = 0;
            break;
          }
        }
        out[i] = all;
      }
    }
  }
}

OverlapCounts overlap(std::span<const std::uint8_t> p, std::span<const std::uint8_t> g) {
  std::size_t np = 0, ng = 0, nb = 0;
  const std::ptrdiff_t len = ssize(p.size());
#pragma omp parallel for reduction(+ : np, ng, nb) schedule(static)
  for (std::ptrdiff_t i = 0; i < len; ++i) {
    const bool a = p[i] != 0;
    const bool b = g[i] != 0;
    np += a;
    ng += b;
    nb += a && b;
  }
  return {np, ng, nb};
}

double max_min_sq_distance(std::span<const Voxel> sources, std::span<const Voxel> targets,
                           const std::array<double, 3>& spacing) {
  if (sources.empty()) return 0.0;
  if (targets.empty()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  const std::ptrdiff_t len = ssize(sources.size());
#pragma omp parallel reduction(max : worst)
  {
#pragma omp for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < len; ++i) {
      const Voxel s = sources[i];
      double best = std::numeric_limits<double>::infinity();
      for (const auto& t : targets) {
        const double dx = static_cast<double>(s.x - t.x) * spacing[0];
        const double dy = static_cast<double>(s.y - t.y) * spacing[1];
        const double dz = static_cast<double>(s.z - t.z) * spacing[2];
        const double d2 = dx * dx + dy * dy + dz * dz;
        if (d2 < best) {
          best = d2;
          // This source can no longer raise the running maximum.
          if (best <= worst) break;
        }
      }
      if (best > worst) worst = best;
    }
  }
  return worst;
}

void convolve_axis(std::span<float> data, const Dims& dims, int axis, std::span<const float> kernel) {
  const int n[3] = {dims.nx, dims.ny, dims.nz};
  const std::size_t stride[3] = {1, static_cast<std::size_t>(dims.nx), static_cast<std::size_t>(dims.nx) * dims.ny};
  const int len = n[axis];
  const int radius = static_cast<int>(kernel.size() / 2);
  const int a = axis == 0 ? 1 : 0;
  const int b = axis == 2 ? 1 : 2;
#pragma omp parallel
  {
    std::vector<float> line(static_cast<std::size_t>(len));
#pragma omp for collapse(2) schedule(static)
    for (int j = 0; j < n[b]; ++j) {
      for (int i = 0; i < n[a]; ++i) {
        const std::size_t base = i * stride[a] + j * stride[b];
        for (int k = 0; k < len; ++k) line[k] = data[base + k * stride[axis]];
        for (int k = 0; k < len; ++k) {
          float acc = 0.0F;
          for (int t = -radius; t <= radius; ++t) {
            int q = k + t;
            q = q < 0 ? 0 : (q >= len ? len - 1 : q);
            acc += kernel[t + radius] * line[q];
          }
          data[base + k * stride[axis]] = acc;
        }
      }
    }
  }
}

LossSums loss_sums(std::span<const float> pred, std::span<const std::uint8_t> target, const Dims& dims,
                   double eps) {
  const std::size_t slice = static_cast<std::size_t>(dims.nx) * dims.ny;
  std::vector<LossSums> partial(static_cast<std::size_t>(dims.nz));
#pragma omp parallel for schedule(static)
  for (int z = 0; z < dims.nz; ++z) {
    LossSums s;
    for (std::size_t i = z * slice; i < (z + 1) * slice; ++i) {
      const double p = pred[i];
      const double t = target[i] ? 1.0 : 0.0;
      s.pred_target += p * t;
      s.pred += p;
      s.target += t;
      s.log_likelihood += t * std::log(p + eps) + (1.0 - t) * std::log(1.0 - p + eps);
    }
    partial[z] = s;
  }
  LossSums total;
  for (const auto& s : partial) {
    total.pred_target += s.pred_target;
    total.pred += s.pred;
    total.target += s.target;
    total.log_likelihood += s.log_likelihood;
  }
  return total;
}

}  // namespace omp
}  // namespace voxrg::kernels
