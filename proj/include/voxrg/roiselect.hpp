#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "voxrg/morphology.hpp"
#include "voxrg/volume.hpp"

namespace voxrg::roi {

/// Mask prompt handed to a reporter. A non-global prompt is the union of
/// the atlas structures it lists; a global prompt is the all-true mask.
struct RegionalPrompt {
  std::optional<std::size_t> component_index;  // set when derived from an anomaly component
  std::set<LabelId> structure_labels;
  BinaryMask mask;
  bool is_global = false;

  friend bool operator==(const RegionalPrompt&, const RegionalPrompt&) = default;
};

/// One prompt per connected anomaly component, in component order. The
/// prompt mask is the union of every structure the component touches; a
/// component lying only on background keeps its own voxels as the mask.
std::vector<RegionalPrompt> regional_prompts(const BinaryMask& anomaly, const AtlasLabelMap& atlas,
                                             morphology::Connectivity connectivity = morphology::Connectivity::Full26);

RegionalPrompt global_prompt(const Dims& dims);

/// Human prompt naming structures directly. Throws EmptyPrompt / UnknownLabel.
RegionalPrompt prompt_from_structures(const AtlasLabelMap& atlas, const std::set<LabelId>& labels);

/// Union of the given structures' masks.
BinaryMask union_of_structures(const AtlasLabelMap& atlas, const std::set<LabelId>& labels);

/// Downsamples the prompt to feature resolution (a cell is on when any of
/// its source voxels is) and returns [features ; features * mask].
FeatureGrid mask_prompt_features(const FeatureGrid& features, const BinaryMask& prompt_mask);

/// Any-true block downsample of a mask by integer per-axis factors.
BinaryMask downsample_any(const BinaryMask& mask, const Dims& target);

}  // namespace voxrg::roi
