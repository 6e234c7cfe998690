#pragma once

#include <vector>

#include "voxrg/volume.hpp"

namespace voxrg::morphology {

class StructuringElement {
 public:
  enum class Kind { Face6, Full26, Ball };

  static StructuringElement face6() { return StructuringElement(Kind::Face6, 1); }
  static StructuringElement full26() { return StructuringElement(Kind::Full26, 1); }
  /// Euclidean ball of integer radius >= 1. ball(1) is the same neighbourhood as face6.
  static StructuringElement ball(int radius);

  Kind kind() const noexcept { return kind_; }
  int radius() const noexcept { return radius_; }
  /// Neighbourhood offsets, origin included.
  const std::vector<Voxel>& offsets() const noexcept { return offsets_; }

 private:
  StructuringElement(Kind kind, int radius);

  Kind kind_;
  int radius_;
  std::vector<Voxel> offsets_;
};

enum class Connectivity { Face6 = 6, Full26 = 26 };

/// Voxels outside the grid count as false for both operations.
BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se);
BinaryMask erode(const BinaryMask& mask, const StructuringElement& se);

/// dilate AND NOT erode: the edge band straddling the region boundary.
BinaryMask morphological_gradient(const BinaryMask& mask,
                                  const StructuringElement& se = StructuringElement::face6());

/// Component label per voxel (0 = background, 1..count in output order).
struct ComponentLabels {
  std::vector<std::uint32_t> labels;
  std::vector<std::size_t> sizes;  // sizes[k] is the size of label k + 1
};

/// Labels ordered by descending size, ties by smallest member linear index.
ComponentLabels label_components(const BinaryMask& mask, Connectivity connectivity = Connectivity::Full26);

/// One mask per component, in label_components order.
std::vector<BinaryMask> connected_components(const BinaryMask& mask,
                                             Connectivity connectivity = Connectivity::Full26);

}  // namespace voxrg::morphology
