#pragma once

// Signal-aware synthetic lesion generation. A lesion is placed inside an
// atlas structure (on its edge band or in its interior), shaped from an
// ellipsoid or a rescaled anatomical region, elastically deformed, and
// blended into the scan with an intensity drawn above or below the host
// region's mean.

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "voxrg/morphology.hpp"
#include "voxrg/rng.hpp"
#include "voxrg/volume.hpp"

namespace voxrg::synth {

enum class Placement { Edge, Interior };
enum class Polarity { Hyper, Hypo };

std::string_view to_string(Placement p) noexcept;
std::string_view to_string(Polarity p) noexcept;

struct EllipsoidShape {
  double a = 1.0;  // semi-axes in voxels
  double b = 1.0;
  double c = 1.0;
  friend bool operator==(const EllipsoidShape&, const EllipsoidShape&) = default;
};

struct StructureShape {
  LabelId label = 0;
  Dims extent;  // box the cropped structure is rescaled into
  friend bool operator==(const StructureShape&, const StructureShape&) = default;
};

using ShapeInit = std::variant<EllipsoidShape, StructureShape>;

struct ElasticParams {
  double alpha = 2.0;    // max displacement, voxels
  double sigma_e = 2.0;  // field smoothing std, voxels
  friend bool operator==(const ElasticParams&, const ElasticParams&) = default;
};

/// Everything needed to regenerate one lesion from the pre-synthesis volume.
struct LesionRecipe {
  LabelId structure_label = 0;
  Placement placement = Placement::Interior;
  Voxel center;
  ShapeInit shape_init = EllipsoidShape{};
  ElasticParams elastic;
  Polarity polarity = Polarity::Hyper;
  double epsilon = 0.0;
  double sigma_b = 1.0;
  std::uint64_t seed = 0;  // drives the deformation field and the intensity draw

  friend bool operator==(const LesionRecipe&, const LesionRecipe&) = default;
};

struct IntensityStats {
  double avg = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct SynthConfig {
  std::pair<int, int> lesion_count_range{1, 3};
  double polarity_probability_hyper = 0.5;
  double edge_probability = 0.3;
  std::pair<double, double> ellipsoid_axis_range{2.0, 5.0};
  ElasticParams elastic;
  /// Unset: 0.1 * (max - min) of the host region.
  std::optional<double> epsilon;
  /// Unset: half the lesion's equivalent-sphere radius.
  std::optional<double> sigma_b;
  double shape_init_structure_probability = 0.3;

  void validate() const;
};

struct Location {
  LabelId structure = 0;
  Placement placement = Placement::Interior;
  Voxel center;
};

struct SynthResult {
  Volume volume;
  BinaryMask anomaly;
  std::vector<LesionRecipe> recipes;
};

/// Uniform structure among those present, then a uniform voxel of its edge
/// band (probability `edge_probability`) or of its interior. An empty
/// interior falls back to the whole structure.
Location select_location(const AtlasLabelMap& atlas, double edge_probability, Rng& rng);

/// Box the shape is generated in when no target extent is given.
Dims natural_extent(const ShapeInit& source);

/// Ellipsoid centred in the extent, or the named structure cropped to its
/// bounding box and nearest-neighbour rescaled to the extent.
BinaryMask init_shape(const ShapeInit& source, const AtlasLabelMap& atlas, const Dims& target_extent);
BinaryMask init_shape(const ShapeInit& source, const AtlasLabelMap& atlas);

/// Nearest-neighbour warp by a smoothed random displacement field whose
/// largest vector has length alpha. Retries up to 5 fields until the voxel
/// count stays within [0.25x, 4x] of the input.
BinaryMask elastic_deform(const BinaryMask& shape, double alpha, double sigma_e, Rng& rng);

IntensityStats intensity_stats(const Volume& volume, const BinaryMask& region);

/// U(avg + eps, max) for hyper, U(min, avg - eps) for hypo.
double sample_intensity(const IntensityStats& stats, Polarity polarity, double epsilon, Rng& rng);
bool interval_is_valid(const IntensityStats& stats, Polarity polarity, double epsilon) noexcept;

/// out = (1 - w) * in + w * intensity on lesion voxels, w = exp(-d^2 / (2 sigma_b^2)).
Volume inpaint_lesion(const Volume& volume, const BinaryMask& lesion, const Voxel& center, double intensity,
                      double sigma_b);

/// Lesion footprint for a recipe: init, deform, translate to the centre,
/// clip to the brain. The centre voxel is always part of the footprint.
BinaryMask lesion_footprint(const LesionRecipe& recipe, const AtlasLabelMap& atlas, const BinaryMask& brain,
                            Rng& lesion_rng);

SynthResult synthesize(const Volume& volume, const AtlasLabelMap& atlas, const SynthConfig& config,
                       std::uint64_t seed);

/// Applies recipes in order to the pre-synthesis volume.
SynthResult replay(const Volume& volume, const AtlasLabelMap& atlas, const std::vector<LesionRecipe>& recipes);

void to_json(nlohmann::json& j, const LesionRecipe& r);
void from_json(const nlohmann::json& j, LesionRecipe& r);
void to_json(nlohmann::json& j, const SynthConfig& c);
/// Strict: unknown keys and out-of-range values throw BadConfig.
SynthConfig config_from_json(const nlohmann::json& j);

}  // namespace voxrg::synth
