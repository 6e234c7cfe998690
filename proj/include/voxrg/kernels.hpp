#pragma once

// Data-parallel inner loops. Every kernel exists twice with the same
// signature: `serial` is the plain reference used by the tests and the
// benchmarks, `omp` is the OpenMP version the library calls. Both must
// produce bit-identical results for any thread count, so reductions over
// floating point are done per z-slice and combined in slice order.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "voxrg/volume.hpp"

namespace voxrg::kernels {

struct OverlapCounts {
  std::size_t p = 0;     // |P|
  std::size_t g = 0;     // |G|
  std::size_t both = 0;  // |P and G|

  friend bool operator==(const OverlapCounts&, const OverlapCounts&) = default;
};

/// Partial sums of the soft dice / cross-entropy terms.
struct LossSums {
  double pred_target = 0.0;  // sum p*t
  double pred = 0.0;         // sum p
  double target = 0.0;       // sum t
  double log_likelihood = 0.0;  // sum t*log(p+eps) + (1-t)*log(1-p+eps)

  friend bool operator==(const LossSums&, const LossSums&) = default;
};

namespace serial {

std::size_t popcount(std::span<const std::uint8_t> bits);
void label_equals(std::span<const LabelId> labels, LabelId label, std::span<std::uint8_t> out);
void label_nonzero(std::span<const LabelId> labels, std::span<std::uint8_t> out);
// out(v) = OR over offsets o of in(v + o); outside the grid reads false.
// `offsets` must contain the origin.
void dilate(std::span<const std::uint8_t> in, const Dims& dims, std::span<const Voxel> offsets,
            std::span<std::uint8_t> out);
// out(v) = AND over offsets o of in(v + o); outside the grid reads false.
void erode(std::span<const std::uint8_t> in, const Dims& dims, std::span<const Voxel> offsets,
           std::span<std::uint8_t> out);
OverlapCounts overlap(std::span<const std::uint8_t> p, std::span<const std::uint8_t> g);
// max over sources of (min over targets of squared physical distance); +inf when targets is empty.
double max_min_sq_distance(std::span<const Voxel> sources, std::span<const Voxel> targets,
                           const std::array<double, 3>& spacing);
// In-place 1D convolution along axis 0/1/2 with an odd symmetric kernel, edges clamped.
void convolve_axis(std::span<float> data, const Dims& dims, int axis, std::span<const float> kernel);
LossSums loss_sums(std::span<const float> pred, std::span<const std::uint8_t> target, const Dims& dims,
                   double eps);

}  // namespace serial

namespace omp {

std::size_t popcount(std::span<const std::uint8_t> bits);
void label_equals(std::span<const LabelId> labels, LabelId label, std::span<std::uint8_t> out);
void label_nonzero(std::span<const LabelId> labels, std::span<std::uint8_t> out);
// out(v) = OR over offsets o of in(v + o); outside the grid reads false.
// `offsets` must contain the origin.
void dilate(std::span<const std::uint8_t> in, const Dims& dims, std::span<const Voxel> offsets,
            std::span<std::uint8_t> out);
// out(v) = AND over offsets o of in(v + o); outside the grid reads false.
void erode(std::span<const std::uint8_t> in, const Dims& dims, std::span<const Voxel> offsets,
           std::span<std::uint8_t> out);
OverlapCounts overlap(std::span<const std::uint8_t> p, std::span<const std::uint8_t> g);
// max over sources of (min over targets of squared physical distance); +inf when targets is empty.
double max_min_sq_distance(std::span<const Voxel> sources, std::span<const Voxel> targets,
                           const std::array<double, 3>& spacing);
// In-place 1D convolution along axis 0/1/2 with an odd symmetric kernel, edges clamped.
void convolve_axis(std::span<float> data, const Dims& dims, int axis, std::span<const float> kernel);
LossSums loss_sums(std::span<const float> pred, std::span<const std::uint8_t> target, const Dims& dims,
                   double eps);

}  // namespace omp

/// Caps OpenMP parallelism for subsequent kernel calls; 0 leaves the runtime default.
void set_thread_count(int threads);
int max_threads();

}  // namespace voxrg::kernels
