#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "voxrg/morphology.hpp"

using namespace voxrg;
using namespace voxrg::morphology;

namespace {

BinaryMask cube(Dims d, int lo, int hi) {
  BinaryMask m(d);
  for (int z = lo; z <= hi; ++z)
    for (int y = lo; y <= hi; ++y)
      for (int x = lo; x <= hi; ++x) m.set({x, y, z});
  return m;
}

}  // namespace

TEST(StructuringElement, Shapes) {
  EXPECT_EQ(StructuringElement::face6().offsets().size(), 7U);
  EXPECT_EQ(StructuringElement::full26().offsets().size(), 27U);
  EXPECT_EQ(StructuringElement::ball(1).offsets().size(), 7U);
  EXPECT_EQ(StructuringElement::ball(2).offsets().size(), 33U);
  EXPECT_THROW(StructuringElement::ball(0), Error);
}

TEST(Dilate, EmptyAndSaturated) {
  const Dims d{4, 4, 4};
  for (const auto& se : {StructuringElement::face6(), StructuringElement::full26(), StructuringElement::ball(2)}) {
    EXPECT_TRUE(dilate(BinaryMask(d), se).empty());
    EXPECT_EQ(dilate(BinaryMask(d, true), se), BinaryMask(d, true));
  }
}

TEST(Dilate, SingleVoxelFace6IsPlus) {
  const Dims d{5, 5, 5};
  BinaryMask m(d);
  m.set({2, 2, 2});
  const auto out = dilate(m, StructuringElement::face6());
  EXPECT_EQ(out.popcount(), 7U);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto v = d.voxel(i);
    EXPECT_EQ(out[i], std::abs(v.x - 2) + std::abs(v.y - 2) + std::abs(v.z - 2) <= 1);
  }
}

TEST(Erode, CubeLeavesCentre) {
  const Dims d{7, 7, 7};
  EXPECT_TRUE(erode(BinaryMask(d), StructuringElement::face6()).empty());
  const auto out = erode(cube(d, 2, 4), StructuringElement::face6());
  EXPECT_EQ(out.indices(), std::vector<std::size_t>{d.index(3, 3, 3)});
}

TEST(Erode, GridBorderCountsAsFalse) {
  const Dims d{3, 3, 3};
  const auto out = erode(BinaryMask(d, true), StructuringElement::full26());
  EXPECT_EQ(out.indices(), std::vector<std::size_t>{d.index(1, 1, 1)});
}

TEST(Gradient, EmptyMask) { EXPECT_TRUE(morphological_gradient(BinaryMask(Dims{4, 4, 4})).empty()); }

TEST(Gradient, CubeMatchesDefinitionOracle) {
  const Dims d{7, 7, 7};
  const auto m = cube(d, 2, 4);
  const auto expected = oracle::dilate_by_definition(m, false) - oracle::erode_by_definition(m, false);
  const auto got = morphological_gradient(m);
  EXPECT_EQ(got, expected);
  // 27-voxel cube minus its centre, plus 9 cap voxels on each of 6 faces.
  EXPECT_EQ(got.popcount(), 26U + 6U * 9U);
}

TEST(Gradient, FullGridIsBorderShell) {
  const Dims d{4, 4, 4};
  const auto g = morphological_gradient(BinaryMask(d, true));
  EXPECT_EQ(g.popcount(), 64U - 8U);
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto v = d.voxel(i);
    const bool inner = v.x > 0 && v.x < 3 && v.y > 0 && v.y < 3 && v.z > 0 && v.z < 3;
    EXPECT_EQ(g[i], !inner);
  }
}

TEST(Morphology, PropertiesOnRandomMasks) {
  std::mt19937_64 rng(3);
  const Dims d{6, 5, 7};
  for (int trial = 0; trial < 60; ++trial) {
    const auto m = fixtures::random_mask(d, 0.2 + 0.6 * (trial % 5) / 4.0, rng);
    for (bool full : {false, true}) {
      const auto se = full ? StructuringElement::full26() : StructuringElement::face6();
      const auto dil = dilate(m, se);
      const auto ero = erode(m, se);
      EXPECT_EQ(dil, oracle::dilate_by_definition(m, full));
      EXPECT_EQ(ero, oracle::erode_by_definition(m, full));
      EXPECT_TRUE(is_subset(ero, m));
      EXPECT_TRUE(is_subset(m, dil));
      // Outside-is-false for both operations: duality holds away from the border,
      // and erosion is empty on the border shell.
      const auto interior = erode(BinaryMask(d, true), se);
      EXPECT_EQ(ero, ~dilate(~m, se) & interior);
      const auto grad = morphological_gradient(m, se);
      EXPECT_EQ(grad, dil - ero);
      EXPECT_FALSE(intersects(grad, ero));
    }
  }
}

TEST(Components, EmptyMask) { EXPECT_TRUE(connected_components(BinaryMask(Dims{3, 3, 3})).empty()); }

TEST(Components, TwoBlobs) {
  const Dims d{8, 8, 8};
  BinaryMask m(d);
  m.set({1, 1, 1});
  m.set({2, 1, 1});
  m.set({5, 5, 5});
  m.set({5, 6, 5});
  const auto comps = connected_components(m);
  ASSERT_EQ(comps.size(), 2U);
  EXPECT_EQ(comps[0].popcount(), 2U);
  EXPECT_EQ(comps[1].popcount(), 2U);
  // Equal sizes: the blob holding the smaller linear index comes first.
  EXPECT_TRUE(comps[0].at(1, 1, 1));
}

TEST(Components, DiagonalTouchDependsOnConnectivity) {
  const Dims d{4, 4, 4};
  BinaryMask m(d);
  m.set({1, 1, 1});
  m.set({2, 2, 2});
  EXPECT_EQ(connected_components(m, Connectivity::Full26).size(), 1U);
  EXPECT_EQ(connected_components(m, Connectivity::Face6).size(), 2U);
}

TEST(Components, SizeDescendingOrder) {
  const Dims d{10, 3, 3};
  BinaryMask m(d);
  m.set({0, 0, 0});
  for (int x = 3; x < 6; ++x) m.set({x, 1, 1});
  m.set({8, 2, 2});
  m.set({9, 2, 2});
  const auto labels = label_components(m);
  EXPECT_EQ(labels.sizes, (std::vector<std::size_t>{3, 2, 1}));
  EXPECT_EQ(labels.labels[d.index(4, 1, 1)], 1U);
  EXPECT_EQ(labels.labels[d.index(9, 2, 2)], 2U);
  EXPECT_EQ(labels.labels[0], 3U);
}

TEST(Components, MatchFloodFillOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const Dims d{5 + trial % 4, 6, 4 + trial % 3};
    const auto m = fixtures::random_mask(d, 0.15 + 0.05 * (trial % 8), rng);
    for (bool full : {false, true}) {
      const auto conn = full ? Connectivity::Full26 : Connectivity::Face6;
      const auto comps = connected_components(m, conn);
      const auto expected = oracle::flood_fill_components(m, full);
      ASSERT_EQ(comps.size(), expected.size());
      BinaryMask united(d);
      for (std::size_t k = 0; k < comps.size(); ++k) {
        EXPECT_EQ(oracle::to_set(comps[k]), expected[k]);
        EXPECT_FALSE(intersects(united, comps[k]));
        united |= comps[k];
        // Relabelling one component returns it unchanged.
        const auto again = connected_components(comps[k], conn);
        ASSERT_EQ(again.size(), 1U);
        EXPECT_EQ(again[0], comps[k]);
      }
      EXPECT_EQ(united, m);
    }
  }
}
