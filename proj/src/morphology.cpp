#include "voxrg/morphology.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "voxrg/kernels.hpp"

namespace voxrg::morphology {

StructuringElement StructuringElement::ball(int radius) {
  if (radius < 1) throw Error(ErrorCode::InvalidArgument, "ball radius must be >= 1");
  return StructuringElement(Kind::Ball, radius);
}

StructuringElement::StructuringElement(Kind kind, int radius) : kind_(kind), radius_(radius) {
  const int r = kind == Kind::Ball ? radius : 1;
  for (int dz = -r; dz <= r; ++dz) {
    for (int dy = -r; dy <= r; ++dy) {
      for (int dx = -r; dx <= r; ++dx) {
        const int d2 = dx * dx + dy * dy + dz * dz;
        const bool keep = kind == Kind::Full26 || d2 <= r * r;
        if (keep) offsets_.push_back({dx, dy, dz});
      }
    }
  }
}

BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se) {
  BinaryMask out(mask.dims(), false, mask.spacing());
  kernels::omp::dilate(mask.bits(), mask.dims(), se.offsets(), out.mutable_bits());
  return out;
}

BinaryMask erode(const BinaryMask& mask, const StructuringElement& se) {
  BinaryMask out(mask.dims(), false, mask.spacing());
  kernels::omp::erode(mask.bits(), mask.dims(), se.offsets(), out.mutable_bits());
  return out;
}

BinaryMask morphological_gradient(const BinaryMask& mask, const StructuringElement& se) {
  return dilate(mask, se) - erode(mask, se);
}

namespace {

std::vector<Voxel> neighbour_offsets(Connectivity connectivity) {
  std::vector<Voxel> out;
  for (int dz = -1; dz <= 1; ++dz) {
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        const int manhattan = std::abs(dx) + std::abs(dy) + std::abs(dz);
        if (manhattan == 0) continue;
        if (connectivity == Connectivity::Face6 && manhattan != 1) continue;
        out.push_back({dx, dy, dz});
      }
    }
  }
  return out;
}

}  // namespace

ComponentLabels label_components(const BinaryMask& mask, Connectivity connectivity) {
  const Dims& dims = mask.dims();
  const auto offsets = neighbour_offsets(connectivity);
  std::vector<std::uint32_t> raw(dims.size(), 0);
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> stack;

  // Raster-order discovery numbers components by their smallest member index.
  for (std::size_t seed = 0; seed < raw.size(); ++seed) {
    if (!mask[seed] || raw[seed] != 0) continue;
    const auto id = static_cast<std::uint32_t>(sizes.size() + 1);
    std::size_t count = 0;
    raw[seed] = id;
    stack.push_back(seed);
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      ++count;
      const Voxel v = dims.voxel(i);
      for (const auto& o : offsets) {
        const Voxel q{v.x + o.x, v.y + o.y, v.z + o.z};
        if (!dims.contains(q)) continue;
        const std::size_t j = dims.index(q);
        if (mask[j] && raw[j] == 0) {
          raw[j] = id;
          stack.push_back(j);
        }
      }
    }
    sizes.push_back(count);
  }

  std::vector<std::uint32_t> order(sizes.size());
  std::iota(order.begin(), order.end(), 0U);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return sizes[a] > sizes[b]; });
  std::vector<std::uint32_t> remap(sizes.size() + 1, 0);
  ComponentLabels out;
  out.sizes.resize(sizes.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    remap[order[rank] + 1] = static_cast<std::uint32_t>(rank + 1);
    out.sizes[rank] = sizes[order[rank]];
  }
  for (auto& l : raw) l = remap[l];
  out.labels = std::move(raw);
  return out;
}

std::vector<BinaryMask> connected_components(const BinaryMask& mask, Connectivity connectivity) {
  const auto labelled = label_components(mask, connectivity);
  std::vector<BinaryMask> out(labelled.sizes.size(), BinaryMask(mask.dims(), false, mask.spacing()));
  for (std::size_t i = 0; i < labelled.labels.size(); ++i) {
    if (labelled.labels[i] != 0) out[labelled.labels[i] - 1].set(i);
  }
  return out;
}

}  // namespace voxrg::morphology
