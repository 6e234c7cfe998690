#include "voxrg/synthlesion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "voxrg/kernels.hpp"

namespace voxrg::synth {

using nlohmann::json;

std::string_view to_string(Placement p) noexcept { return p == Placement::Edge ? "edge" : "interior"; }
std::string_view to_string(Polarity p) noexcept { return p == Polarity::Hyper ? "hyper" : "hypo"; }

namespace {

constexpr int kDeformAttempts = 5;
constexpr int kPlacementAttempts = 10;
constexpr int kEpsilonHalvings = 3;

int semi_axis_extent(double semi_axis) { return 2 * static_cast<int>(std::ceil(semi_axis)) + 1; }

std::vector<float> gaussian_kernel(double sigma) {
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<float> k(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double w = std::exp(-static_cast<double>(i * i) / (2.0 * sigma * sigma));
    k[i + radius] = static_cast<float>(w);
    sum += w;
  }
  for (auto& w : k) w = static_cast<float>(w / sum);
  return k;
}

BinaryMask pad(const BinaryMask& mask, int margin) {
  if (margin == 0) return mask;
  const Dims& d = mask.dims();
  const Dims out_dims{d.nx + 2 * margin, d.ny + 2 * margin, d.nz + 2 * margin};
  BinaryMask out(out_dims);
  for (int z = 0; z < d.nz; ++z) {
    for (int y = 0; y < d.ny; ++y) {
      for (int x = 0; x < d.nx; ++x) {
        if (mask.at(x, y, z)) out.set({x + margin, y + margin, z + margin});
      }
    }
  }
  return out;
}

// The shape centre that lands on the lesion centre voxel.
Voxel anchor_of(const Dims& d) { return {(d.nx - 1) / 2, (d.ny - 1) / 2, (d.nz - 1) / 2}; }

double default_sigma_b(std::size_t lesion_voxels) {
  const double radius = std::cbrt(3.0 * static_cast<double>(lesion_voxels) / (4.0 * std::numbers::pi));
  return 0.5 * radius;
}

}  // namespace

Location select_location(const AtlasLabelMap& atlas, double edge_probability, Rng& rng) {
  const auto& present = atlas.present_labels();
  if (present.empty()) throw Error(ErrorCode::EmptyAtlas, "atlas has no nonzero labels");

  Location loc;
  loc.structure = present[rng.index(present.size())];
  const BinaryMask structure = structure_mask(atlas, loc.structure);
  const BinaryMask edge = morphology::morphological_gradient(structure, morphology::StructuringElement::face6()) & structure;

  loc.placement = rng.bernoulli(edge_probability) ? Placement::Edge : Placement::Interior;
  BinaryMask band = loc.placement == Placement::Edge ? edge : structure - edge;
  if (band.empty()) band = structure;
  const auto candidates = band.indices();
  if (candidates.empty()) {
    throw Error(ErrorCode::DegenerateStructure, "structure " + std::to_string(loc.structure) + " has no voxels");
  }
  loc.center = atlas.dims().voxel(candidates[rng.index(candidates.size())]);
  return loc;
}

Dims natural_extent(const ShapeInit& source) {
  if (const auto* e = std::get_if<EllipsoidShape>(&source)) {
    return {semi_axis_extent(e->a), semi_axis_extent(e->b), semi_axis_extent(e->c)};
  }
  return std::get<StructureShape>(source).extent;
}

BinaryMask init_shape(const ShapeInit& source, const AtlasLabelMap& atlas, const Dims& target_extent) {
  validate_dims(target_extent);
  BinaryMask out(target_extent);

  if (const auto* e = std::get_if<EllipsoidShape>(&source)) {
    if (e->a < 1.0 || e->b < 1.0 || e->c < 1.0) {
      throw Error(ErrorCode::InvalidArgument, "ellipsoid semi-axes must be >= 1 voxel");
    }
    auto fits = [](double semi_axis, int n) { return 2.0 * semi_axis + 1.0 <= n + 1e-9; };
    if (!fits(e->a, target_extent.nx) || !fits(e->b, target_extent.ny) || !fits(e->c, target_extent.nz)) {
      throw Error(ErrorCode::InvalidArgument, "ellipsoid does not fit the target extent");
    }
    const double cx = (target_extent.nx - 1) / 2.0;
    const double cy = (target_extent.ny - 1) / 2.0;
    const double cz = (target_extent.nz - 1) / 2.0;
    for (int z = 0; z < target_extent.nz; ++z) {
      for (int y = 0; y < target_extent.ny; ++y) {
        for (int x = 0; x < target_extent.nx; ++x) {
          const double u = (x - cx) / e->a;
          const double v = (y - cy) / e->b;
          const double w = (z - cz) / e->c;
          if (u * u + v * v + w * w <= 1.0) out.set({x, y, z});
        }
      }
    }
  } else {
    const auto& s = std::get<StructureShape>(source);
    const BinaryMask structure = structure_mask(atlas, s.label);
    const auto box = bounding_box(structure);
    if (!box) throw Error(ErrorCode::EmptyShape, "structure " + std::to_string(s.label) + " has no voxels");
    const Dims src = box->extent();
    // Nearest neighbour: destination cell centre mapped into the source box.
    auto source_coord = [](int i, int src_n, int dst_n) {
      return static_cast<int>((static_cast<std::int64_t>(2 * i + 1) * src_n) / (2 * static_cast<std::int64_t>(dst_n)));
    };
    for (int z = 0; z < target_extent.nz; ++z) {
      const int sz = box->lo.z + source_coord(z, src.nz, target_extent.nz);
      for (int y = 0; y < target_extent.ny; ++y) {
        const int sy = box->lo.y + source_coord(y, src.ny, target_extent.ny);
        for (int x = 0; x < target_extent.nx; ++x) {
          const int sx = box->lo.x + source_coord(x, src.nx, target_extent.nx);
          if (structure.at(sx, sy, sz)) out.set({x, y, z});
        }
      }
    }
  }

  if (out.empty()) throw Error(ErrorCode::EmptyShape, "initial shape has no voxels");
  return out;
}

BinaryMask init_shape(const ShapeInit& source, const AtlasLabelMap& atlas) {
  return init_shape(source, atlas, natural_extent(source));
}

BinaryMask elastic_deform(const BinaryMask& shape, double alpha, double sigma_e, Rng& rng) {
  if (!(alpha >= 0.0) || !(sigma_e > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "elastic deformation needs alpha >= 0 and sigma_e > 0");
  }
  if (alpha == 0.0) return shape;

  const std::size_t before = shape.popcount();
  if (before == 0) throw Error(ErrorCode::EmptyShape, "cannot deform an empty shape");

  const Dims& dims = shape.dims();
  const std::size_t n = dims.size();
  const auto kernel = gaussian_kernel(sigma_e);
  std::array<std::vector<float>, 3> field;

  for (int attempt = 0; attempt < kDeformAttempts; ++attempt) {
    for (auto& channel : field) {
      channel.resize(n);
      for (auto& v : channel) v = static_cast<float>(rng.uniform(-1.0, 1.0));
      for (int axis = 0; axis < 3; ++axis) kernels::omp::convolve_axis(channel, dims, axis, kernel);
    }
    double longest = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double m = std::sqrt(static_cast<double>(field[0][i]) * field[0][i] +
                                 static_cast<double>(field[1][i]) * field[1][i] +
                                 static_cast<double>(field[2][i]) * field[2][i]);
      longest = std::max(longest, m);
    }
    const double scale = longest > 0.0 ? alpha / longest : 0.0;

    BinaryMask out(dims, false, shape.spacing());
    std::size_t i = 0;
    for (int z = 0; z < dims.nz; ++z) {
      for (int y = 0; y < dims.ny; ++y) {
        for (int x = 0; x < dims.nx; ++x, ++i) {
          const int sx = static_cast<int>(std::floor(x + scale * field[0][i] + 0.5));
          const int sy = static_cast<int>(std::floor(y + scale * field[1][i] + 0.5));
          const int sz = static_cast<int>(std::floor(z + scale * field[2][i] + 0.5));
          if (dims.contains(sx, sy, sz) && shape.at(sx, sy, sz)) out.set(i);
        }
      }
    }
    const std::size_t after = out.popcount();
    if (4 * after >= before && after <= 4 * before) return out;
  }
  throw Error(ErrorCode::DeformationCollapse, "no deformation kept the volume within [0.25x, 4x]");
}

IntensityStats intensity_stats(const Volume& volume, const BinaryMask& region) {
  require_same_dims(volume.dims(), region.dims(), "intensity_stats");
  IntensityStats s;
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < region.bits().size(); ++i) {
    if (!region[i]) continue;
    const double v = volume[i];
    if (count == 0) {
      s.min = s.max = v;
    } else {
      s.min = std::min(s.min, v);
      s.max = std::max(s.max, v);
    }
    sum += v;
    ++count;
  }
  if (count == 0) throw Error(ErrorCode::EmptyRegion, "intensity statistics over an empty region");
  s.avg = std::clamp(sum / static_cast<double>(count), s.min, s.max);
  return s;
}

bool interval_is_valid(const IntensityStats& stats, Polarity polarity, double epsilon) noexcept {
  return polarity == Polarity::Hyper ? stats.avg + epsilon < stats.max : stats.min < stats.avg - epsilon;
}

double sample_intensity(const IntensityStats& stats, Polarity polarity, double epsilon, Rng& rng) {
  if (!interval_is_valid(stats, polarity, epsilon)) {
    throw Error(ErrorCode::DegenerateInterval,
                std::string(to_string(polarity)) + " interval is empty for avg=" + std::to_string(stats.avg) +
                    " min=" + std::to_string(stats.min) + " max=" + std::to_string(stats.max) +
                    " eps=" + std::to_string(epsilon));
  }
  if (polarity == Polarity::Hyper) return rng.uniform(stats.avg + epsilon, stats.max);
  return rng.uniform(stats.min, stats.avg - epsilon);
}

Volume inpaint_lesion(const Volume& volume, const BinaryMask& lesion, const Voxel& center, double intensity,
                      double sigma_b) {
  require_same_dims(volume.dims(), lesion.dims(), "inpaint_lesion");
  if (!(sigma_b > 0.0)) throw Error(ErrorCode::InvalidArgument, "sigma_b must be > 0");
  if (!std::isfinite(intensity)) throw Error(ErrorCode::NonFiniteData, "lesion intensity is not finite");
  const Dims& dims = volume.dims();
  if (!dims.contains(center) || !lesion.at(center)) {
    throw Error(ErrorCode::CenterOutsideLesion, "lesion centre is not a lesion voxel");
  }

  std::vector<float> out(volume.data().begin(), volume.data().end());
  const double denom = 2.0 * sigma_b * sigma_b;
  std::size_t i = 0;
  for (int z = 0; z < dims.nz; ++z) {
    for (int y = 0; y < dims.ny; ++y) {
      for (int x = 0; x < dims.nx; ++x, ++i) {
        if (!lesion[i]) continue;
        const int dx = x - center.x, dy = y - center.y, dz = z - center.z;
        const double w = std::exp(-static_cast<double>(dx * dx + dy * dy + dz * dz) / denom);
        out[i] = static_cast<float>((1.0 - w) * static_cast<double>(out[i]) + w * intensity);
      }
    }
  }
  return Volume(dims, volume.spacing(), std::move(out));
}

BinaryMask lesion_footprint(const LesionRecipe& recipe, const AtlasLabelMap& atlas, const BinaryMask& brain,
                            Rng& lesion_rng) {
  require_same_dims(atlas.dims(), brain.dims(), "lesion_footprint");
  const Dims& dims = atlas.dims();
  if (!dims.contains(recipe.center)) throw Error(ErrorCode::InvalidArgument, "lesion centre outside the grid");

  const int margin = recipe.elastic.alpha > 0.0 ? static_cast<int>(std::ceil(recipe.elastic.alpha)) + 1 : 0;
  const BinaryMask shape = elastic_deform(pad(init_shape(recipe.shape_init, atlas), margin), recipe.elastic.alpha,
                                          recipe.elastic.sigma_e, lesion_rng);

  const Dims& sd = shape.dims();
  const Voxel anchor = anchor_of(sd);
  BinaryMask out(dims, false, atlas.spacing());
  std::size_t i = 0;
  for (int z = 0; z < sd.nz; ++z) {
    for (int y = 0; y < sd.ny; ++y) {
      for (int x = 0; x < sd.nx; ++x, ++i) {
        if (!shape[i]) continue;
        const Voxel t{recipe.center.x + x - anchor.x, recipe.center.y + y - anchor.y, recipe.center.z + z - anchor.z};
        if (dims.contains(t) && brain.at(t)) out.set(t);
      }
    }
  }
  out.set(recipe.center);
  return out;
}

namespace {

// Shared by synthesis and replay so both consume the lesion generator identically.
void blend_lesion(const Volume& original, const LesionRecipe& recipe, const BinaryMask& footprint, Rng& lesion_rng,
                  Volume& current, BinaryMask& anomaly) {
  const IntensityStats stats = intensity_stats(original, footprint);
  const double intensity = sample_intensity(stats, recipe.polarity, recipe.epsilon, lesion_rng);
  // Earlier lesions keep their voxels; the centre is never one of them.
  current = inpaint_lesion(current, footprint - anomaly, recipe.center, intensity, recipe.sigma_b);
  anomaly |= footprint;
}

}  // namespace

SynthResult synthesize(const Volume& volume, const AtlasLabelMap& atlas, const SynthConfig& config,
                       std::uint64_t seed) {
  config.validate();
  require_same_dims(volume.dims(), atlas.dims(), "synthesize");

  Rng master(seed);
  const auto count = master.between(config.lesion_count_range.first, config.lesion_count_range.second);
  SynthResult result{volume, BinaryMask(volume.dims(), false, volume.spacing()), {}};
  if (count == 0) return result;

  const auto& present = atlas.present_labels();
  if (present.empty()) throw Error(ErrorCode::EmptyAtlas, "atlas has no nonzero labels");
  const BinaryMask brain = brain_mask(atlas);
  const auto [axis_lo, axis_hi] = config.ellipsoid_axis_range;

  for (std::int64_t lesion = 0; lesion < count; ++lesion) {
    bool placed = false;
    for (int attempt = 0; attempt < kPlacementAttempts && !placed; ++attempt) {
      const Location loc = select_location(atlas, config.edge_probability, master);

      LesionRecipe recipe;
      recipe.structure_label = loc.structure;
      recipe.placement = loc.placement;
      recipe.center = loc.center;
      if (master.bernoulli(config.shape_init_structure_probability)) {
        const LabelId label = present[master.index(present.size())];
        Dims extent;
        extent.nx = semi_axis_extent(master.uniform(axis_lo, axis_hi));
        extent.ny = semi_axis_extent(master.uniform(axis_lo, axis_hi));
        extent.nz = semi_axis_extent(master.uniform(axis_lo, axis_hi));
        recipe.shape_init = StructureShape{label, extent};
      } else {
        EllipsoidShape e;
        e.a = master.uniform(axis_lo, axis_hi);
        e.b = master.uniform(axis_lo, axis_hi);
        e.c = master.uniform(axis_lo, axis_hi);
        recipe.shape_init = e;
      }
      recipe.elastic = config.elastic;
      const Polarity drawn = master.bernoulli(config.polarity_probability_hyper) ? Polarity::Hyper : Polarity::Hypo;
      recipe.seed = master.next_u64();

      if (result.anomaly.at(loc.center)) continue;

      Rng lesion_rng(recipe.seed);
      BinaryMask footprint(volume.dims());
      try {
        footprint = lesion_footprint(recipe, atlas, brain, lesion_rng);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::DeformationCollapse || e.code() == ErrorCode::EmptyShape) continue;
        throw;
      }

      const IntensityStats stats = intensity_stats(volume, footprint);
      const double base_eps = config.epsilon.value_or(0.1 * (stats.max - stats.min));
      const Polarity flipped = drawn == Polarity::Hyper ? Polarity::Hypo : Polarity::Hyper;
      bool feasible = false;
      double eps = base_eps;
      for (int halving = 0; halving <= kEpsilonHalvings && !feasible; ++halving, eps *= 0.5) {
        for (Polarity p : {drawn, flipped}) {
          if (interval_is_valid(stats, p, eps)) {
            recipe.polarity = p;
            recipe.epsilon = eps;
            feasible = true;
            break;
          }
        }
      }
      if (!feasible) continue;
      recipe.sigma_b = config.sigma_b.value_or(default_sigma_b(footprint.popcount()));

      blend_lesion(volume, recipe, footprint, lesion_rng, result.volume, result.anomaly);
      result.recipes.push_back(recipe);
      placed = true;
    }
    if (!placed) {
      throw Error(ErrorCode::SynthesisFailed, "lesion " + std::to_string(lesion) + " could not be placed after " +
                                                  std::to_string(kPlacementAttempts) + " attempts");
    }
  }
  return result;
}

SynthResult replay(const Volume& volume, const AtlasLabelMap& atlas, const std::vector<LesionRecipe>& recipes) {
  require_same_dims(volume.dims(), atlas.dims(), "replay");
  SynthResult result{volume, BinaryMask(volume.dims(), false, volume.spacing()), recipes};
  const BinaryMask brain = brain_mask(atlas);
  for (const auto& recipe : recipes) {
    Rng lesion_rng(recipe.seed);
    const BinaryMask footprint = lesion_footprint(recipe, atlas, brain, lesion_rng);
    blend_lesion(volume, recipe, footprint, lesion_rng, result.volume, result.anomaly);
  }
  return result;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

[[noreturn]] void bad_config(const std::string& what) { throw Error(ErrorCode::BadConfig, what); }

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) bad_config(std::string(name) + " must be in [0, 1]");
}

template <typename T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    bad_config(std::string("field '") + key + "': " + e.what());
  }
}

void reject_unknown_keys(const json& j, std::initializer_list<std::string_view> allowed, const char* where) {
  if (!j.is_object()) bad_config(std::string(where) + " must be a JSON object");
  for (const auto& item : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      bad_config(std::string("unknown key '") + item.key() + "' in " + where);
    }
  }
}

}  // namespace

void SynthConfig::validate() const {
  const auto [lo, hi] = lesion_count_range;
  if (lo < 0 || lo > hi) bad_config("lesion_count_range must satisfy 0 <= lo <= hi");
  check_probability(polarity_probability_hyper, "polarity_probability_hyper");
  check_probability(edge_probability, "edge_probability");
  check_probability(shape_init_structure_probability, "shape_init_structure_probability");
  const auto [alo, ahi] = ellipsoid_axis_range;
  if (!(alo >= 1.0 && alo <= ahi && std::isfinite(ahi))) bad_config("ellipsoid_axis_range must satisfy 1 <= lo <= hi");
  if (!(elastic.alpha >= 0.0 && std::isfinite(elastic.alpha))) bad_config("elastic.alpha must be >= 0");
  if (!(elastic.sigma_e > 0.0 && std::isfinite(elastic.sigma_e))) bad_config("elastic.sigma_e must be > 0");
  if (epsilon && !(*epsilon >= 0.0 && std::isfinite(*epsilon))) bad_config("epsilon must be >= 0");
  if (sigma_b && !(*sigma_b > 0.0 && std::isfinite(*sigma_b))) bad_config("sigma_b must be > 0");
}

void to_json(json& j, const SynthConfig& c) {
  j = json{{"lesion_count_range", {c.lesion_count_range.first, c.lesion_count_range.second}},
           {"polarity_probability_hyper", c.polarity_probability_hyper},
           {"edge_probability", c.edge_probability},
           {"ellipsoid_axis_range", {c.ellipsoid_axis_range.first, c.ellipsoid_axis_range.second}},
           {"elastic", {{"alpha", c.elastic.alpha}, {"sigma_e", c.elastic.sigma_e}}},
           {"epsilon", c.epsilon ? json(*c.epsilon) : json(nullptr)},
           {"sigma_b", c.sigma_b ? json(*c.sigma_b) : json(nullptr)},
           {"shape_init_structure_probability", c.shape_init_structure_probability}};
}

SynthConfig config_from_json(const json& j) {
  reject_unknown_keys(j,
                      {"lesion_count_range", "polarity_probability_hyper", "edge_probability", "ellipsoid_axis_range",
                       "elastic", "epsilon", "sigma_b", "shape_init_structure_probability"},
                      "synth config");
  SynthConfig c;
  auto pair_of = [&](const char* key, auto& out) {
    const auto v = get_as<std::vector<typename std::decay_t<decltype(out)>::first_type>>(j, key);
    if (v.size() != 2) bad_config(std::string(key) + " must have two elements");
    out = {v[0], v[1]};
  };
  if (j.contains("lesion_count_range")) pair_of("lesion_count_range", c.lesion_count_range);
  if (j.contains("ellipsoid_axis_range")) pair_of("ellipsoid_axis_range", c.ellipsoid_axis_range);
  if (j.contains("polarity_probability_hyper")) c.polarity_probability_hyper = get_as<double>(j, "polarity_probability_hyper");
  if (j.contains("edge_probability")) c.edge_probability = get_as<double>(j, "edge_probability");
  if (j.contains("shape_init_structure_probability")) {
    c.shape_init_structure_probability = get_as<double>(j, "shape_init_structure_probability");
  }
  if (j.contains("elastic")) {
    const json& e = j.at("elastic");
    reject_unknown_keys(e, {"alpha", "sigma_e"}, "elastic");
    if (e.contains("alpha")) c.elastic.alpha = get_as<double>(e, "alpha");
    if (e.contains("sigma_e")) c.elastic.sigma_e = get_as<double>(e, "sigma_e");
  }
  if (j.contains("epsilon") && !j.at("epsilon").is_null()) c.epsilon = get_as<double>(j, "epsilon");
  if (j.contains("sigma_b") && !j.at("sigma_b").is_null()) c.sigma_b = get_as<double>(j, "sigma_b");
  c.validate();
  return c;
}

void to_json(json& j, const LesionRecipe& r) {
  json shape;
  if (const auto* e = std::get_if<EllipsoidShape>(&r.shape_init)) {
    shape = {{"kind", "ellipsoid"}, {"semi_axes", {e->a, e->b, e->c}}};
  } else {
    const auto& s = std::get<StructureShape>(r.shape_init);
    shape = {{"kind", "structure_shape"}, {"label", s.label}, {"extent", {s.extent.nx, s.extent.ny, s.extent.nz}}};
  }
  j = json{{"structure_label", r.structure_label},
           {"placement", to_string(r.placement)},
           {"center", {r.center.x, r.center.y, r.center.z}},
           {"shape_init", shape},
           {"elastic", {{"alpha", r.elastic.alpha}, {"sigma_e", r.elastic.sigma_e}}},
           {"polarity", to_string(r.polarity)},
           {"epsilon", r.epsilon},
           {"sigma_b", r.sigma_b},
           {"seed", r.seed}};
}

void from_json(const json& j, LesionRecipe& r) {
  reject_unknown_keys(j, {"structure_label", "placement", "center", "shape_init", "elastic", "polarity", "epsilon",
                          "sigma_b", "seed"},
                      "lesion recipe");
  r.structure_label = get_as<LabelId>(j, "structure_label");
  const auto placement = get_as<std::string>(j, "placement");
  if (placement != "edge" && placement != "interior") bad_config("placement must be 'edge' or 'interior'");
  r.placement = placement == "edge" ? Placement::Edge : Placement::Interior;
  const auto c = get_as<std::array<int, 3>>(j, "center");
  r.center = {c[0], c[1], c[2]};

  const json& shape = j.at("shape_init");
  const auto kind = get_as<std::string>(shape, "kind");
  if (kind == "ellipsoid") {
    reject_unknown_keys(shape, {"kind", "semi_axes"}, "shape_init");
    const auto a = get_as<std::array<double, 3>>(shape, "semi_axes");
    r.shape_init = EllipsoidShape{a[0], a[1], a[2]};
  } else if (kind == "structure_shape") {
    reject_unknown_keys(shape, {"kind", "label", "extent"}, "shape_init");
    const auto e = get_as<std::array<int, 3>>(shape, "extent");
    r.shape_init = StructureShape{get_as<LabelId>(shape, "label"), Dims{e[0], e[1], e[2]}};
  } else {
    bad_config("shape_init.kind must be 'ellipsoid' or 'structure_shape'");
  }

  const json& elastic = j.at("elastic");
  reject_unknown_keys(elastic, {"alpha", "sigma_e"}, "elastic");
  r.elastic = {get_as<double>(elastic, "alpha"), get_as<double>(elastic, "sigma_e")};
  const auto polarity = get_as<std::string>(j, "polarity");
  if (polarity != "hyper" && polarity != "hypo") bad_config("polarity must be 'hyper' or 'hypo'");
  r.polarity = polarity == "hyper" ? Polarity::Hyper : Polarity::Hypo;
  r.epsilon = get_as<double>(j, "epsilon");
  r.sigma_b = get_as<double>(j, "sigma_b");
  r.seed = get_as<std::uint64_t>(j, "seed");
}

}  // namespace voxrg::synth
