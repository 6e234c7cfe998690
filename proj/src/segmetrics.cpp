#include "voxrg/segmetrics.hpp"

#include <algorithm>
#include <cmath>

#include "voxrg/kernels.hpp"

namespace voxrg::seg {

ProbGrid::ProbGrid(Dims dims, std::vector<float> values) : dims_(dims), values_(std::move(values)) {
  validate_dims(dims_);
  if (values_.size() != dims_.size()) throw Error(ErrorCode::InvalidArgument, "probability grid length mismatch");
  if (!std::all_of(values_.begin(), values_.end(), [](float v) { return v >= 0.0F && v <= 1.0F; })) {
    throw Error(ErrorCode::InvalidArgument, "probabilities must lie in [0, 1]");
  }
}

ProbGrid ProbGrid::from_mask(const BinaryMask& mask) {
  std::vector<float> v(mask.bits().begin(), mask.bits().end());
  return ProbGrid(mask.dims(), std::move(v));
}

double dsc(const BinaryMask& p, const BinaryMask& g) {
  require_same_dims(p.dims(), g.dims(), "dsc");
  const auto c = kernels::omp::overlap(p.bits(), g.bits());
  if (c.p + c.g == 0) return 1.0;
  return 2.0 * static_cast<double>(c.both) / static_cast<double>(c.p + c.g);
}

std::optional<double> precision(const BinaryMask& p, const BinaryMask& g) {
  require_same_dims(p.dims(), g.dims(), "precision");
  const auto c = kernels::omp::overlap(p.bits(), g.bits());
  if (c.p == 0) return std::nullopt;
  return static_cast<double>(c.both) / static_cast<double>(c.p);
}

std::optional<double> sensitivity(const BinaryMask& p, const BinaryMask& g) {
  require_same_dims(p.dims(), g.dims(), "sensitivity");
  const auto c = kernels::omp::overlap(p.bits(), g.bits());
  if (c.g == 0) return std::nullopt;
  return static_cast<double>(c.both) / static_cast<double>(c.g);
}

namespace {

// Voxels of `from` that are not in `to`; the rest are at distance zero.
std::vector<Voxel> voxels_outside(const BinaryMask& from, const BinaryMask& to) {
  std::vector<Voxel> out;
  const Dims& d = from.dims();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (from[i] && !to[i]) out.push_back(d.voxel(i));
  }
  return out;
}

// Voxels of `mask` with a face neighbour outside the mask (or outside the
// grid). The nearest mask voxel to any outside point is always one of these.
std::vector<Voxel> face_boundary(const BinaryMask& mask) {
  std::vector<Voxel> out;
  const Dims& d = mask.dims();
  static constexpr Voxel kFaces[6] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!mask[i]) continue;
    const Voxel v = d.voxel(i);
    for (const auto& f : kFaces) {
      const Voxel q{v.x + f.x, v.y + f.y, v.z + f.z};
      if (!d.contains(q) || !mask.at(q)) {
        out.push_back(v);
        break;
      }
    }
  }
  return out;
}

double directed(const BinaryMask& p, const BinaryMask& g, const std::array<double, 3>& spacing) {
  const auto sources = voxels_outside(p, g);
  if (sources.empty()) return 0.0;
  const auto targets = face_boundary(g);
  return std::sqrt(kernels::omp::max_min_sq_distance(sources, targets, spacing));
}

}  // namespace

double hausdorff(const BinaryMask& p, const BinaryMask& g, const Spacing& spacing, HausdorffMode mode) {
  require_same_dims(p.dims(), g.dims(), "hausdorff");
  validate_spacing(spacing);
  if (p.empty() || g.empty()) throw Error(ErrorCode::EmptyMask, "hausdorff distance needs two nonempty masks");
  const std::array<double, 3> s{spacing.sx, spacing.sy, spacing.sz};
  const double forward = directed(p, g, s);
  if (mode == HausdorffMode::Directed) return forward;
  return std::max(forward, directed(g, p, s));
}

SegScore score(const BinaryMask& p, const BinaryMask& g, const Spacing& spacing, HausdorffMode mode) {
  SegScore s;
  s.dsc = dsc(p, g);
  s.both_empty = p.empty() && g.empty();
  s.pre = precision(p, g);
  s.se = sensitivity(p, g);
  if (!p.empty() && !g.empty()) s.hd_mm = hausdorff(p, g, spacing, mode);
  return s;
}

double dice_ce_loss(const ProbGrid& pred, const BinaryMask& target, double lambda1, double lambda2) {
  require_same_dims(pred.dims(), target.dims(), "dice_ce_loss");
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0)) throw Error(ErrorCode::InvalidArgument, "loss weights must be >= 0");
  const auto sums = kernels::omp::loss_sums(pred.values(), target.bits(), pred.dims(), kLossSmoothing);
  const double dice = 1.0 - (2.0 * sums.pred_target + kLossSmoothing) / (sums.pred + sums.target + kLossSmoothing);
  const double ce = -sums.log_likelihood / static_cast<double>(pred.dims().size());
  return lambda1 * dice + lambda2 * ce;
}

double structure_loss(std::span<const ProbGrid> pred_per_class, const AtlasLabelMap& target, double lambda1,
                      double lambda2) {
  const auto& classes = target.present_labels();
  if (classes.empty() || pred_per_class.size() != classes.size()) {
    throw Error(ErrorCode::ClassCountMismatch, std::to_string(pred_per_class.size()) + " predictions for " +
                                                   std::to_string(classes.size()) + " atlas classes");
  }
  double total = 0.0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    total += dice_ce_loss(pred_per_class[c], structure_mask(target, classes[c]), lambda1, lambda2);
  }
  return total / static_cast<double>(classes.size());
}

double segmentation_tool_loss(const ProbGrid& anomaly_pred, const BinaryMask& anomaly_target,
                              std::span<const ProbGrid> structure_pred, const AtlasLabelMap& structure_target,
                              double lambda1, double lambda2) {
  return dice_ce_loss(anomaly_pred, anomaly_target, lambda1, lambda2) +
         structure_loss(structure_pred, structure_target, lambda1, lambda2);
}

}  // namespace voxrg::seg
