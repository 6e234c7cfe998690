#pragma once

// Brute-force reference computations. These deliberately avoid the library's
// kernels and data structures beyond plain voxel access.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "voxrg/volume.hpp"

namespace voxrg::oracle {

using VoxelSet = std::set<std::size_t>;

inline VoxelSet to_set(const BinaryMask& m) {
  VoxelSet s;
  for (std::size_t i = 0; i < m.dims().size(); ++i) {
    if (m[i]) s.insert(i);
  }
  return s;
}

inline BinaryMask from_set(const Dims& dims, const VoxelSet& s) {
  BinaryMask m(dims);
  for (auto i : s) m.set(i);
  return m;
}

struct Counts {
  double p, g, both;
};

inline Counts set_counts(const BinaryMask& p, const BinaryMask& g) {
  const auto sp = to_set(p), sg = to_set(g);
  std::vector<std::size_t> inter;
  std::set_intersection(sp.begin(), sp.end(), sg.begin(), sg.end(), std::back_inserter(inter));
  return {static_cast<double>(sp.size()), static_cast<double>(sg.size()), static_cast<double>(inter.size())};
}

/// max over P of min over G of the Euclidean distance, every pair visited.
inline double directed_hausdorff_all_pairs(const BinaryMask& p, const BinaryMask& g, const Spacing& s) {
  const Dims& d = p.dims();
  double worst = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!p[i]) continue;
    const Voxel a = d.voxel(i);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (!g[j]) continue;
      const Voxel b = d.voxel(j);
      const double dx = static_cast<double>(a.x) * s.sx - static_cast<double>(b.x) * s.sx;
      const double dy = static_cast<double>(a.y) * s.sy - static_cast<double>(b.y) * s.sy;
      const double dz = static_cast<double>(a.z) * s.sz - static_cast<double>(b.z) * s.sz;
      best = std::min(best, std::sqrt(dx * dx + dy * dy + dz * dz));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

/// Neighbourhood test written from the definitions: face-adjacent (L1 <= 1)
/// or any cube neighbour (Linf <= 1).
inline bool in_neighbourhood(int dx, int dy, int dz, bool full26) {
  if (full26) return std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) <= 1;
  return std::abs(dx) + std::abs(dy) + std::abs(dz) <= 1;
}

inline BinaryMask dilate_by_definition(const BinaryMask& m, bool full26) {
  const Dims& d = m.dims();
  BinaryMask out(d);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Voxel v = d.voxel(i);
    for (std::size_t j = 0; j < d.size() && !out[i]; ++j) {
      const Voxel q = d.voxel(j);
      if (m[j] && in_neighbourhood(q.x - v.x, q.y - v.y, q.z - v.z, full26)) out.set(i);
    }
  }
  return out;
}

inline BinaryMask erode_by_definition(const BinaryMask& m, bool full26) {
  const Dims& d = m.dims();
  BinaryMask out(d);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const Voxel v = d.voxel(i);
    bool all = true;
    for (int dz = -1; dz <= 1 && all; ++dz) {
      for (int dy = -1; dy <= 1 && all; ++dy) {
        for (int dx = -1; dx <= 1 && all; ++dx) {
          if (!in_neighbourhood(dx, dy, dz, full26)) continue;
          const Voxel q{v.x + dx, v.y + dy, v.z + dz};
          all = d.contains(q) && m.at(q);
        }
      }
    }
    if (all) out.set(i);
  }
  return out;
}

/// Breadth-first flood fill; components in order of their first raster voxel.
inline std::vector<VoxelSet> flood_fill_components(const BinaryMask& m, bool full26) {
  const Dims& d = m.dims();
  std::vector<char> seen(d.size(), 0);
  std::vector<VoxelSet> out;
  for (std::size_t s = 0; s < d.size(); ++s) {
    if (!m[s] || seen[s]) continue;
    VoxelSet comp;
    std::deque<std::size_t> queue{s};
    seen[s] = 1;
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      comp.insert(i);
      const Voxel v = d.voxel(i);
      for (int dz = -1; dz <= 1; ++dz) {
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if ((dx | dy | dz) == 0 || !in_neighbourhood(dx, dy, dz, full26)) continue;
            const Voxel q{v.x + dx, v.y + dy, v.z + dz};
            if (!d.contains(q)) continue;
            const std::size_t j = d.index(q);
            if (m[j] && !seen[j]) {
              seen[j] = 1;
              queue.push_back(j);
            }
          }
        }
      }
    }
    out.push_back(std::move(comp));
  }
  // Size descending, ties by smallest member index (already the discovery order).
  std::stable_sort(out.begin(), out.end(), [](const VoxelSet& a, const VoxelSet& b) { return a.size() > b.size(); });
  return out;
}

struct PromptOracle {
  std::set<LabelId> labels;
  VoxelSet mask;
};

/// Regional prompts by flood fill plus per-voxel label lookup.
inline std::vector<PromptOracle> regional_prompts_oracle(const BinaryMask& anomaly, const AtlasLabelMap& atlas,
                                                         bool full26) {
  std::vector<PromptOracle> out;
  for (const auto& comp : flood_fill_components(anomaly, full26)) {
    PromptOracle p;
    for (auto i : comp) {
      if (atlas[i] != 0) p.labels.insert(atlas[i]);
    }
    if (p.labels.empty()) {
      p.mask = comp;
    } else {
      for (std::size_t i = 0; i < atlas.dims().size(); ++i) {
        if (p.labels.contains(atlas[i])) p.mask.insert(i);
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

/// Clipped unigram precision times brevity penalty, counted with plain loops.
inline double bleu1_bruteforce(const std::vector<std::string>& cand, const std::vector<std::string>& ref) {
  double matched = 0.0;
  std::vector<char> used_ref(ref.size(), 0);
  for (const auto& w : cand) {
    for (std::size_t j = 0; j < ref.size(); ++j) {
      if (!used_ref[j] && ref[j] == w) {
        used_ref[j] = 1;
        matched += 1.0;
        break;
      }
    }
  }
  const double c = static_cast<double>(cand.size());
  const double r = static_cast<double>(ref.size());
  const double bp = c > r ? 1.0 : std::exp(1.0 - r / c);
  return bp * matched / c;
}

/// One-sample Kolmogorov-Smirnov statistic against U(lo, hi).
inline double ks_statistic_uniform(std::vector<double> xs, double lo, double hi) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = std::clamp((xs[i] - lo) / (hi - lo), 0.0, 1.0);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// Asymptotic p-value of the KS statistic (Stephens' small-sample correction).
inline double ks_p_value(double d, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? 1.0 : -1.0) * term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace voxrg::oracle
