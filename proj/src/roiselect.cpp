#include "voxrg/roiselect.hpp"

namespace voxrg::roi {

BinaryMask union_of_structures(const AtlasLabelMap& atlas, const std::set<LabelId>& labels) {
  for (LabelId l : labels) {
    if (l == 0 || !atlas.has_label(l)) throw Error(ErrorCode::UnknownLabel, "label " + std::to_string(l));
  }
  BinaryMask out(atlas.dims(), false, atlas.spacing());
  auto bits = out.mutable_bits();
  const auto grid = atlas.labels();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] != 0 && labels.contains(grid[i])) bits[i] = 1;
  }
  return out;
}

std::vector<RegionalPrompt> regional_prompts(const BinaryMask& anomaly, const AtlasLabelMap& atlas,
                                             morphology::Connectivity connectivity) {
  require_same_dims(anomaly.dims(), atlas.dims(), "regional_prompts");
  const auto components = morphology::label_components(anomaly, connectivity);
  const std::size_t n = components.sizes.size();

  std::vector<std::set<LabelId>> touched(n);
  const auto grid = atlas.labels();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto c = components.labels[i];
    if (c != 0 && grid[i] != 0) touched[c - 1].insert(grid[i]);
  }

  std::vector<RegionalPrompt> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    RegionalPrompt p{k, std::move(touched[k]), BinaryMask(atlas.dims(), false, atlas.spacing()), false};
    if (p.structure_labels.empty()) {
      auto bits = p.mask.mutable_bits();
      for (std::size_t i = 0; i < grid.size(); ++i) bits[i] = components.labels[i] == k + 1 ? 1 : 0;
    } else {
      p.mask = union_of_structures(atlas, p.structure_labels);
    }
    out.push_back(std::move(p));
  }
  return out;
}

RegionalPrompt global_prompt(const Dims& dims) {
  return RegionalPrompt{std::nullopt, {}, BinaryMask(dims, true), true};
}

RegionalPrompt prompt_from_structures(const AtlasLabelMap& atlas, const std::set<LabelId>& labels) {
  if (labels.empty()) throw Error(ErrorCode::EmptyPrompt, "a structure prompt must name at least one structure");
  return RegionalPrompt{std::nullopt, labels, union_of_structures(atlas, labels), false};
}

BinaryMask downsample_any(const BinaryMask& mask, const Dims& target) {
  const Dims& src = mask.dims();
  if (src.nx % target.nx != 0 || src.ny % target.ny != 0 || src.nz % target.nz != 0) {
    throw Error(ErrorCode::NonIntegerDownsample,
                "mask " + to_string(src) + " is not an integer multiple of " + to_string(target));
  }
  const int kx = src.nx / target.nx, ky = src.ny / target.ny, kz = src.nz / target.nz;
  BinaryMask out(target);
  std::size_t i = 0;
  for (int z = 0; z < src.nz; ++z) {
    for (int y = 0; y < src.ny; ++y) {
      for (int x = 0; x < src.nx; ++x, ++i) {
        if (mask[i]) out.set({x / kx, y / ky, z / kz});
      }
    }
  }
  return out;
}

FeatureGrid mask_prompt_features(const FeatureGrid& features, const BinaryMask& prompt_mask) {
  const BinaryMask cells = downsample_any(prompt_mask, features.dims());
  const std::size_t voxels = features.dims().size();
  const auto in = features.data();
  std::vector<float> out(2 * in.size());
  std::copy(in.begin(), in.end(), out.begin());
  for (int c = 0; c < features.channels(); ++c) {
    const std::size_t base = static_cast<std::size_t>(c) * voxels;
    for (std::size_t v = 0; v < voxels; ++v) {
      out[in.size() + base + v] = cells[v] ? in[base + v] : 0.0F;
    }
  }
  return FeatureGrid(features.dims(), 2 * features.channels(), std::move(out));
}

}  // namespace voxrg::roi
