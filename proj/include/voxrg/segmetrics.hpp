#pragma once

#include <optional>
#include <span>
#include <vector>

#include "voxrg/volume.hpp"

namespace voxrg::seg {

enum class HausdorffMode { Directed, Symmetric };

/// Per-case scores. Absent fields are undefined for the inputs (empty prediction,
/// empty ground truth, or either mask empty for hd).
struct SegScore {
  double dsc = 0.0;
  bool both_empty = false;  // dsc defined as 1.0 by convention
  std::optional<double> pre;
  std::optional<double> se;
  std::optional<double> hd_mm;
};

/// Foreground probabilities in [0, 1].
class ProbGrid {
 public:
  ProbGrid(Dims dims, std::vector<float> values);

  const Dims& dims() const noexcept { return dims_; }
  std::span<const float> values() const noexcept { return values_; }

  /// Hard 0/1 grid from a mask.
  static ProbGrid from_mask(const BinaryMask& mask);

 private:
  Dims dims_;
  std::vector<float> values_;
};

inline constexpr double kLossSmoothing = 1e-6;

/// 2|P and G| / (|P| + |G|); 1.0 when both are empty.
double dsc(const BinaryMask& p, const BinaryMask& g);
/// |P and G| / |P|; absent when P is empty.
std::optional<double> precision(const BinaryMask& p, const BinaryMask& g);
/// |P and G| / |G|; absent when G is empty.
std::optional<double> sensitivity(const BinaryMask& p, const BinaryMask& g);

/// Hausdorff distance in mm with physical coordinates index * spacing.
/// Directed is max over P of the distance to the nearest G voxel. Throws EmptyMask.
double hausdorff(const BinaryMask& p, const BinaryMask& g, const Spacing& spacing,
                 HausdorffMode mode = HausdorffMode::Directed);

SegScore score(const BinaryMask& p, const BinaryMask& g, const Spacing& spacing,
               HausdorffMode mode = HausdorffMode::Directed);

/// lambda1 * soft-dice loss + lambda2 * mean binary cross-entropy, smoothed by kLossSmoothing.
double dice_ce_loss(const ProbGrid& pred, const BinaryMask& target, double lambda1, double lambda2);

/// Classes are the nonzero labels present in `target`, ascending; one
/// prediction per class. Mean of the per-class dice_ce_loss.
double structure_loss(std::span<const ProbGrid> pred_per_class, const AtlasLabelMap& target, double lambda1,
                      double lambda2);

/// Anomaly loss plus class-averaged structure loss.
double segmentation_tool_loss(const ProbGrid& anomaly_pred, const BinaryMask& anomaly_target,
                              std::span<const ProbGrid> structure_pred, const AtlasLabelMap& structure_target,
                              double lambda1, double lambda2);

}  // namespace voxrg::seg
