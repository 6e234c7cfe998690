#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace voxrg::text {

/// Lowercase tokens; never empty strings.
using TokenSeq = std::vector<std::string>;

/// Lowercase ASCII, replace anything outside [a-z0-9] by a space, split on whitespace.
TokenSeq tokenize(std::string_view text);

using BleuWeights = std::array<double, 4>;
inline constexpr BleuWeights kBleu1{1.0, 0.0, 0.0, 0.0};
inline constexpr BleuWeights kBleu4{0.0, 0.0, 0.0, 1.0};
inline constexpr BleuWeights kBleuUniform{0.25, 0.25, 0.25, 0.25};

struct BleuOptions {
  /// Add one to the matched and total counts of orders n >= 2.
  bool add_one_smoothing = false;
};

/// Sentence BLEU with clipped n-gram precisions and the brevity penalty
/// against the closest reference length (shorter wins ties).
double bleu(const TokenSeq& candidate, const std::vector<TokenSeq>& references, const BleuWeights& weights,
            BleuOptions options = {});

/// Recall-oriented n-gram overlap, averaged over references.
double rouge_n(const TokenSeq& candidate, const std::vector<TokenSeq>& references, int n);

}  // namespace voxrg::text
