#include "voxrg/volume.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "voxrg/kernels.hpp"

namespace voxrg {

void validate_dims(const Dims& dims) {
  if (dims.nx < 1 || dims.ny < 1 || dims.nz < 1) {
    throw Error(ErrorCode::InvalidArgument, "grid dims must be >= 1, got " + to_string(dims));
  }
}

void validate_spacing(const Spacing& s) {
  auto ok = [](float v) { return std::isfinite(v) && v > 0.0F; };
  if (!ok(s.sx) || !ok(s.sy) || !ok(s.sz)) {
    throw Error(ErrorCode::InvalidArgument, "voxel spacing must be finite and > 0");
  }
}

void require_same_dims(const Dims& a, const Dims& b, std::string_view what) {
  if (a != b) {
    throw Error(ErrorCode::DimsMismatch, std::string(what) + ": " + to_string(a) + " vs " + to_string(b));
  }
}

std::string to_string(const Dims& d) {
  return std::to_string(d.nx) + "x" + std::to_string(d.ny) + "x" + std::to_string(d.nz);
}

// ---------------------------------------------------------------------------
// Volume

Volume::Volume(Dims dims, Spacing spacing, std::vector<float> data)
    : dims_(dims), spacing_(spacing), data_(std::move(data)) {
  validate_dims(dims_);
  validate_spacing(spacing_);
  if (data_.size() != dims_.size()) {
    throw Error(ErrorCode::InvalidArgument, "volume data length does not match dims " + to_string(dims_));
  }
  if (!std::all_of(data_.begin(), data_.end(), [](float v) { return std::isfinite(v); })) {
    throw Error(ErrorCode::NonFiniteData, "volume contains NaN or Inf");
  }
}

Volume::Volume(Dims dims, Spacing spacing, float fill)
    : Volume(dims, spacing, std::vector<float>(dims.nx < 1 || dims.ny < 1 || dims.nz < 1 ? 0 : dims.size(), fill)) {}

// ---------------------------------------------------------------------------
// BinaryMask

BinaryMask::BinaryMask(Dims dims, bool fill, Spacing spacing) : dims_(dims), spacing_(spacing) {
  validate_dims(dims_);
  validate_spacing(spacing_);
  bits_.assign(dims_.size(), fill ? 1 : 0);
}

BinaryMask::BinaryMask(Dims dims, std::vector<std::uint8_t> bits, Spacing spacing)
    : dims_(dims), spacing_(spacing), bits_(std::move(bits)) {
  validate_dims(dims_);
  validate_spacing(spacing_);
  if (bits_.size() != dims_.size()) {
    throw Error(ErrorCode::InvalidArgument, "mask length does not match dims " + to_string(dims_));
  }
  for (auto& b : bits_) b = b != 0 ? 1 : 0;
}

void BinaryMask::set_spacing(const Spacing& spacing) {
  validate_spacing(spacing);
  spacing_ = spacing;
}

std::size_t BinaryMask::popcount() const noexcept { return kernels::omp::popcount(bits_); }

std::vector<std::size_t> BinaryMask::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) out.push_back(i);
  }
  return out;
}

BinaryMask& BinaryMask::operator&=(const BinaryMask& other) {
  require_same_dims(dims_, other.dims_, "mask and");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= other.bits_[i];
  return *this;
}

BinaryMask& BinaryMask::operator|=(const BinaryMask& other) {
  require_same_dims(dims_, other.dims_, "mask or");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
  return *this;
}

BinaryMask& BinaryMask::operator-=(const BinaryMask& other) {
  require_same_dims(dims_, other.dims_, "mask difference");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= static_cast<std::uint8_t>(other.bits_[i] ^ 1U);
  return *this;
}

BinaryMask operator~(const BinaryMask& m) {
  BinaryMask out = m;
  for (auto& b : out.bits_) b ^= 1U;
  return out;
}

bool is_subset(const BinaryMask& a, const BinaryMask& b) {
  require_same_dims(a.dims(), b.dims(), "subset test");
  const auto x = a.bits();
  const auto y = b.bits();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] && !y[i]) return false;
  }
  return true;
}

bool intersects(const BinaryMask& a, const BinaryMask& b) {
  require_same_dims(a.dims(), b.dims(), "intersection test");
  const auto x = a.bits();
  const auto y = b.bits();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] && y[i]) return true;
  }
  return false;
}

std::optional<BoundingBox> bounding_box(const BinaryMask& mask) {
  const auto& d = mask.dims();
  std::optional<BoundingBox> box;
  std::size_t i = 0;
  for (int z = 0; z < d.nz; ++z) {
    for (int y = 0; y < d.ny; ++y) {
      for (int x = 0; x < d.nx; ++x, ++i) {
        if (!mask[i]) continue;
        if (!box) {
          box = BoundingBox{{x, y, z}, {x, y, z}};
          continue;
        }
        box->lo = {std::min(box->lo.x, x), std::min(box->lo.y, y), std::min(box->lo.z, z)};
        box->hi = {std::max(box->hi.x, x), std::max(box->hi.y, y), std::max(box->hi.z, z)};
      }
    }
  }
  return box;
}

// ---------------------------------------------------------------------------
// AtlasLabelMap

namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

AtlasLabelMap::AtlasLabelMap(Dims dims, std::vector<LabelId> labels, std::map<LabelId, std::string> label_names,
                             Spacing spacing)
    : dims_(dims), spacing_(spacing), labels_(std::move(labels)), names_(std::move(label_names)) {
  validate_dims(dims_);
  validate_spacing(spacing_);
  if (labels_.size() != dims_.size()) {
    throw Error(ErrorCode::InvalidArgument, "label data length does not match dims " + to_string(dims_));
  }
  if (names_.contains(0)) {
    throw Error(ErrorCode::InvalidArgument, "label 0 is reserved for background");
  }
  std::vector<std::uint8_t> seen(65536, 0);
  for (LabelId l : labels_) seen[l] = 1;
  for (std::size_t l = 1; l < seen.size(); ++l) {
    if (!seen[l]) continue;
    const auto id = static_cast<LabelId>(l);
    if (!names_.contains(id)) {
      throw Error(ErrorCode::UnknownLabel, "label " + std::to_string(l) + " occurs in the grid but has no name");
    }
    present_.push_back(id);
  }
}

const std::string& AtlasLabelMap::name(LabelId label) const {
  auto it = names_.find(label);
  if (it == names_.end()) throw Error(ErrorCode::UnknownLabel, "label " + std::to_string(label));
  return it->second;
}

std::optional<LabelId> AtlasLabelMap::find_label(std::string_view name) const {
  const std::string key = lowercase(name);
  for (const auto& [id, n] : names_) {
    if (lowercase(n) == key) return id;
  }
  return std::nullopt;
}

BinaryMask structure_mask(const AtlasLabelMap& atlas, LabelId label) {
  if (label == 0 || !atlas.has_label(label)) {
    throw Error(ErrorCode::UnknownLabel, "label " + std::to_string(label) + " is not in the atlas");
  }
  BinaryMask out(atlas.dims(), false, atlas.spacing());
  kernels::omp::label_equals(atlas.labels(), label, out.mutable_bits());
  return out;
}

BinaryMask brain_mask(const AtlasLabelMap& atlas) {
  BinaryMask out(atlas.dims(), false, atlas.spacing());
  kernels::omp::label_nonzero(atlas.labels(), out.mutable_bits());
  return out;
}

// ---------------------------------------------------------------------------
// FeatureGrid

FeatureGrid::FeatureGrid(Dims dims, int channels, std::vector<float> data)
    : dims_(dims), channels_(channels), data_(std::move(data)) {
  validate_dims(dims_);
  if (channels_ < 1) throw Error(ErrorCode::InvalidArgument, "feature grid needs >= 1 channel");
  if (data_.size() != dims_.size() * static_cast<std::size_t>(channels_)) {
    throw Error(ErrorCode::InvalidArgument, "feature data length does not match dims x channels");
  }
  if (!std::all_of(data_.begin(), data_.end(), [](float v) { return std::isfinite(v); })) {
    throw Error(ErrorCode::NonFiniteData, "feature grid contains NaN or Inf");
  }
}

FeatureGrid::FeatureGrid(Dims dims, int channels, float fill)
    : FeatureGrid(dims, channels,
                  std::vector<float>(dims.nx < 1 || dims.ny < 1 || dims.nz < 1 || channels < 1
                                         ? 0
                                         : dims.size() * static_cast<std::size_t>(channels),
                                     fill)) {}

}  // namespace voxrg
