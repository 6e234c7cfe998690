#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "voxrg/textmetrics.hpp"

using namespace voxrg;
using namespace voxrg::text;

TEST(Tokenize, NormalisationIsIdempotent) {
  EXPECT_EQ(tokenize("Hyperintense  signal, in the LEFT-thalamus."),
            (TokenSeq{"hyperintense", "signal", "in", "the", "left", "thalamus"}));
  EXPECT_TRUE(tokenize(" .,; ").empty());
  EXPECT_EQ(tokenize("T2WI flair"), (TokenSeq{"t2wi", "flair"}));
  const std::string once = "Mixed: Signal! 3x";
  const auto t = tokenize(once);
  std::string joined;
  for (const auto& w : t) joined += w + " ";
  EXPECT_EQ(tokenize(joined), t);
}

TEST(Bleu, Examples) {
  const TokenSeq ref = tokenize("the lesion is bright");
  for (const auto& w : {kBleu1, kBleu4, kBleuUniform}) EXPECT_DOUBLE_EQ(bleu(ref, {ref}, w), 1.0);
  EXPECT_EQ(bleu(tokenize("x y z w"), {ref}, kBleu1), 0.0);
  EXPECT_NEAR(bleu(tokenize("a b c d"), {tokenize("a b x d")}, kBleu1), 0.75, 1e-12);
}

TEST(Bleu, ClippingBrevityAndMultipleReferences) {
  // "the the the" against "the cat": clipped precision 1/3, no brevity penalty.
  EXPECT_NEAR(bleu(tokenize("the the the"), {tokenize("the cat")}, kBleu1), 1.0 / 3.0, 1e-12);
  // Candidate shorter than reference: BP = exp(1 - 4/2).
  EXPECT_NEAR(bleu(tokenize("a b"), {tokenize("a b c d")}, kBleu1), std::exp(-1.0), 1e-12);
  // Closest reference length picks 3 over 6; clipping uses the max count over references.
  EXPECT_NEAR(bleu(tokenize("a a b"), {tokenize("a c b"), tokenize("a a x y z w")}, kBleu1), 1.0, 1e-12);
  // No 4-gram overlap: unsmoothed BLEU-4 is zero, smoothed is positive.
  const auto c = tokenize("a b c d e");
  const auto r = tokenize("a b c x e");
  EXPECT_EQ(bleu(c, {r}, kBleu4), 0.0);
  EXPECT_NEAR(bleu(c, {r}, kBleu4, {.add_one_smoothing = true}), 1.0 / 3.0, 1e-12);
}

TEST(Bleu, Errors) {
  const auto ok = tokenize("a b");
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::BadConfig;
  };
  EXPECT_EQ(code([&] { bleu({}, {ok}, kBleu1); }), ErrorCode::EmptyInput);
  EXPECT_EQ(code([&] { bleu(ok, {}, kBleu1); }), ErrorCode::EmptyInput);
  EXPECT_EQ(code([&] { bleu(ok, {TokenSeq{}}, kBleu1); }), ErrorCode::EmptyInput);
  EXPECT_EQ(code([&] { bleu(ok, {ok}, BleuWeights{0.5, 0.0, 0.0, 0.0}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code([&] { rouge_n(ok, {tokenize("a")}, 2); }), ErrorCode::DegenerateReference);
  EXPECT_EQ(code([&] { rouge_n(ok, {}, 1); }), ErrorCode::EmptyInput);
}

TEST(Bleu1, MatchesBruteForceCounter) {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<int> word(0, 5);
  std::uniform_int_distribution<int> len(1, 12);
  const std::vector<std::string> vocab{"left", "right", "lobe", "signal", "in", "the"};
  for (int trial = 0; trial < 300; ++trial) {
    TokenSeq c(10), r(static_cast<std::size_t>(len(rng)));
    for (auto& w : c) w = vocab[word(rng)];
    for (auto& w : r) w = vocab[word(rng)];
    EXPECT_NEAR(bleu(c, {r}, kBleu1), oracle::bleu1_bruteforce(c, r), 1e-12);
  }
}

TEST(Rouge, Examples) {
  const auto r = tokenize("the lesion is bright");
  EXPECT_DOUBLE_EQ(rouge_n(r, {r}, 1), 1.0);
  EXPECT_DOUBLE_EQ(rouge_n(r, {r}, 2), 1.0);
  EXPECT_EQ(rouge_n(tokenize("x y"), {r}, 1), 0.0);
  EXPECT_NEAR(rouge_n(tokenize("a c"), {tokenize("a b a")}, 1), 1.0 / 3.0, 1e-12);
  // Averaged over references: 1/3 and 1/2.
  EXPECT_NEAR(rouge_n(tokenize("a c"), {tokenize("a b a"), tokenize("c d")}, 1), (1.0 / 3.0 + 0.5) / 2.0, 1e-12);
}

TEST(Rouge, UnigramRecallIgnoresOrder) {
  std::mt19937_64 rng(4);
  const auto ref = tokenize("hypointense signal in the right occipital lobe with mild edema");
  auto cand = tokenize("signal in the occipital lobe is hypointense and the edema is mild");
  const double base = rouge_n(cand, {ref}, 1);
  for (int i = 0; i < 20; ++i) {
    std::shuffle(cand.begin(), cand.end(), rng);
    EXPECT_EQ(rouge_n(cand, {ref}, 1), base);
  }
}

TEST(Metrics, RangeOnRandomSequences) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> word(0, 3);
  for (int trial = 0; trial < 100; ++trial) {
    TokenSeq c(8), r(9);
    for (auto& w : c) w = std::string(1, static_cast<char>('a' + word(rng)));
    for (auto& w : r) w = std::string(1, static_cast<char>('a' + word(rng)));
    for (const auto& w : {kBleu1, kBleu4, kBleuUniform}) {
      const double b = bleu(c, {r}, w);
      EXPECT_GE(b, 0.0);
      EXPECT_LE(b, 1.0);
    }
    for (int n = 1; n <= 4; ++n) {
      const double s = rouge_n(c, {r}, n);
      EXPECT_GE(s, 0.0);
      EXPECT_LE(s, 1.0);
    }
  }
}
