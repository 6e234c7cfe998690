#pragma once

// Dense 3D grid types shared by every module. Voxel layout is x-fastest:
// linear index = x + nx * (y + ny * z).

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "voxrg/error.hpp"

namespace voxrg {

using LabelId = std::uint16_t;

struct Voxel {
  int x = 0;
  int y = 0;
  int z = 0;

  friend bool operator==(const Voxel&, const Voxel&) = default;
};

struct Dims {
  int nx = 1;
  int ny = 1;
  int nz = 1;

  std::size_t size() const noexcept {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) * static_cast<std::size_t>(nz);
  }
  std::size_t index(int x, int y, int z) const noexcept {
    return static_cast<std::size_t>(x) +
           static_cast<std::size_t>(nx) * (static_cast<std::size_t>(y) + static_cast<std::size_t>(ny) * static_cast<std::size_t>(z));
  }
  std::size_t index(const Voxel& v) const noexcept { return index(v.x, v.y, v.z); }
  Voxel voxel(std::size_t i) const noexcept {
    const auto sx = static_cast<std::size_t>(nx);
    const auto sxy = sx * static_cast<std::size_t>(ny);
    return {static_cast<int>(i % sx), static_cast<int>((i / sx) % static_cast<std::size_t>(ny)), static_cast<int>(i / sxy)};
  }
  bool contains(int x, int y, int z) const noexcept {
    return x >= 0 && y >= 0 && z >= 0 && x < nx && y < ny && z < nz;
  }
  bool contains(const Voxel& v) const noexcept { return contains(v.x, v.y, v.z); }

  friend bool operator==(const Dims&, const Dims&) = default;
};

/// Millimetres per voxel along each axis.
struct Spacing {
  float sx = 1.0F;
  float sy = 1.0F;
  float sz = 1.0F;

  friend bool operator==(const Spacing&, const Spacing&) = default;
};

void validate_dims(const Dims& dims);
void validate_spacing(const Spacing& spacing);
void require_same_dims(const Dims& a, const Dims& b, std::string_view what);
std::string to_string(const Dims& dims);

/// Scalar intensity scan. All values finite.
class Volume {
 public:
  Volume(Dims dims, Spacing spacing, std::vector<float> data);
  /// Constant-valued volume.
  Volume(Dims dims, Spacing spacing, float fill);

  const Dims& dims() const noexcept { return dims_; }
  const Spacing& spacing() const noexcept { return spacing_; }
  std::span<const float> data() const noexcept { return data_; }
  float operator[](std::size_t i) const noexcept { return data_[i]; }
  float at(int x, int y, int z) const noexcept { return data_[dims_.index(x, y, z)]; }
  float at(const Voxel& v) const noexcept { return data_[dims_.index(v)]; }

  friend bool operator==(const Volume&, const Volume&) = default;

 private:
  Dims dims_;
  Spacing spacing_;
  std::vector<float> data_;
};

/// Boolean voxel set. Stored unpacked, one byte (0/1) per voxel.
class BinaryMask {
 public:
  explicit BinaryMask(Dims dims, bool fill = false, Spacing spacing = {});
  BinaryMask(Dims dims, std::vector<std::uint8_t> bits, Spacing spacing = {});

  const Dims& dims() const noexcept { return dims_; }
  const Spacing& spacing() const noexcept { return spacing_; }
  void set_spacing(const Spacing& spacing);
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::span<std::uint8_t> mutable_bits() noexcept { return bits_; }

  bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
  bool at(int x, int y, int z) const noexcept { return bits_[dims_.index(x, y, z)] != 0; }
  bool at(const Voxel& v) const noexcept { return bits_[dims_.index(v)] != 0; }
  void set(std::size_t i, bool value = true) noexcept { bits_[i] = value ? 1 : 0; }
  void set(const Voxel& v, bool value = true) noexcept { set(dims_.index(v), value); }

  std::size_t popcount() const noexcept;
  bool empty() const noexcept { return popcount() == 0; }
  std::vector<std::size_t> indices() const;

  BinaryMask& operator&=(const BinaryMask& other);
  BinaryMask& operator|=(const BinaryMask& other);
  /// Set difference: this AND NOT other.
  BinaryMask& operator-=(const BinaryMask& other);

  friend BinaryMask operator&(BinaryMask a, const BinaryMask& b) { return a &= b; }
  friend BinaryMask operator|(BinaryMask a, const BinaryMask& b) { return a |= b; }
  friend BinaryMask operator-(BinaryMask a, const BinaryMask& b) { return a -= b; }
  friend BinaryMask operator~(const BinaryMask& m);

  /// Voxels are compared; spacing is metadata and ignored.
  friend bool operator==(const BinaryMask& a, const BinaryMask& b) noexcept {
    return a.dims_ == b.dims_ && a.bits_ == b.bits_;
  }

 private:
  Dims dims_;
  Spacing spacing_;
  std::vector<std::uint8_t> bits_;
};

bool is_subset(const BinaryMask& a, const BinaryMask& b);
bool intersects(const BinaryMask& a, const BinaryMask& b);

/// Inclusive voxel bounding box.
struct BoundingBox {
  Voxel lo;
  Voxel hi;
  Dims extent() const noexcept { return {hi.x - lo.x + 1, hi.y - lo.y + 1, hi.z - lo.z + 1}; }
};

std::optional<BoundingBox> bounding_box(const BinaryMask& mask);

/// Labelled anatomy. Label 0 is background.
class AtlasLabelMap {
 public:
  AtlasLabelMap(Dims dims, std::vector<LabelId> labels, std::map<LabelId, std::string> label_names,
                Spacing spacing = {});

  const Dims& dims() const noexcept { return dims_; }
  const Spacing& spacing() const noexcept { return spacing_; }
  std::span<const LabelId> labels() const noexcept { return labels_; }
  const std::map<LabelId, std::string>& label_names() const noexcept { return names_; }
  LabelId operator[](std::size_t i) const noexcept { return labels_[i]; }
  LabelId at(int x, int y, int z) const noexcept { return labels_[dims_.index(x, y, z)]; }

  /// Nonzero labels that occur in the grid, ascending.
  const std::vector<LabelId>& present_labels() const noexcept { return present_; }
  bool has_label(LabelId label) const noexcept { return names_.contains(label); }
  const std::string& name(LabelId label) const;
  /// Case-insensitive lookup of a structure name.
  std::optional<LabelId> find_label(std::string_view name) const;

  friend bool operator==(const AtlasLabelMap& a, const AtlasLabelMap& b) {
    return a.dims_ == b.dims_ && a.spacing_ == b.spacing_ && a.labels_ == b.labels_ && a.names_ == b.names_;
  }

 private:
  Dims dims_;
  Spacing spacing_;
  std::vector<LabelId> labels_;
  std::map<LabelId, std::string> names_;
  std::vector<LabelId> present_;
};

/// Mask of the voxels carrying `label`. Throws UnknownLabel for unnamed ids.
BinaryMask structure_mask(const AtlasLabelMap& atlas, LabelId label);
/// Mask of every nonzero-labelled voxel.
BinaryMask brain_mask(const AtlasLabelMap& atlas);

/// Multi-channel feature map, channel-planar: value(c, v) = data[c * voxels + v].
class FeatureGrid {
 public:
  FeatureGrid(Dims dims, int channels, std::vector<float> data);
  FeatureGrid(Dims dims, int channels, float fill = 0.0F);

  const Dims& dims() const noexcept { return dims_; }
  int channels() const noexcept { return channels_; }
  std::span<const float> data() const noexcept { return data_; }
  std::span<const float> channel(int c) const noexcept {
    return std::span<const float>(data_).subspan(static_cast<std::size_t>(c) * dims_.size(), dims_.size());
  }
  float at(int c, std::size_t voxel) const noexcept { return data_[static_cast<std::size_t>(c) * dims_.size() + voxel]; }

  friend bool operator==(const FeatureGrid&, const FeatureGrid&) = default;

 private:
  Dims dims_;
  int channels_;
  std::vector<float> data_;
};

}  // namespace voxrg
