#include "voxrg/textmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>

#include "voxrg/error.hpp"

namespace voxrg::text {

namespace {

using NgramCounts = std::map<std::vector<std::string>, std::size_t>;

NgramCounts count_ngrams(const TokenSeq& tokens, int n) {
  NgramCounts counts;
  const auto len = static_cast<int>(tokens.size());
  for (int i = 0; i + n <= len; ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

}  // namespace

TokenSeq tokenize(std::string_view text) {
  TokenSeq out;
  std::string current;
  for (char raw : text) {
    char c = raw;
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    const bool keep = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
    if (keep) {
      current.push_back(c);
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

double bleu(const TokenSeq& candidate, const std::vector<TokenSeq>& references, const BleuWeights& weights,
            BleuOptions options) {
  if (candidate.empty()) throw Error(ErrorCode::EmptyInput, "empty candidate");
  if (std::none_of(references.begin(), references.end(), [](const TokenSeq& r) { return !r.empty(); })) {
    throw Error(ErrorCode::EmptyInput, "no nonempty reference");
  }
  const double weight_sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::any_of(weights.begin(), weights.end(), [](double w) { return w < 0.0; }) ||
      std::abs(weight_sum - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "BLEU weights must be non-negative and sum to 1");
  }

  double log_sum = 0.0;
  for (int n = 1; n <= 4; ++n) {
    const double w = weights[n - 1];
    if (w == 0.0) continue;
    const NgramCounts cand = count_ngrams(candidate, n);
    NgramCounts max_ref;
    for (const auto& ref : references) {
      for (const auto& [gram, count] : count_ngrams(ref, n)) {
        auto& slot = max_ref[gram];
        slot = std::max(slot, count);
      }
    }
    std::size_t matched = 0;
    std::size_t total = 0;
    for (const auto& [gram, count] : cand) {
      total += count;
      auto it = max_ref.find(gram);
      if (it != max_ref.end()) matched += std::min(count, it->second);
    }
    double numerator = static_cast<double>(matched);
    double denominator = static_cast<double>(total);
    if (options.add_one_smoothing && n >= 2) {
      numerator += 1.0;
      denominator += 1.0;
    }
    if (numerator == 0.0 || denominator == 0.0) return 0.0;
    log_sum += w * std::log(numerator / denominator);
  }

  const auto c = static_cast<double>(candidate.size());
  double r = 0.0;
  double best_gap = std::numeric_limits<double>::infinity();
  for (const auto& ref : references) {
    if (ref.empty()) continue;
    const auto len = static_cast<double>(ref.size());
    const double gap = std::abs(len - c);
    if (gap < best_gap || (gap == best_gap && len < r)) {
      best_gap = gap;
      r = len;
    }
  }
  const double bp = c > r ? 1.0 : std::exp(1.0 - r / c);
  return bp * std::exp(log_sum);
}

double rouge_n(const TokenSeq& candidate, const std::vector<TokenSeq>& references, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "ROUGE order must be >= 1");
  if (references.empty()) throw Error(ErrorCode::EmptyInput, "no reference");
  const NgramCounts cand = count_ngrams(candidate, n);
  double sum = 0.0;
  for (const auto& ref : references) {
    if (static_cast<int>(ref.size()) < n) {
      throw Error(ErrorCode::DegenerateReference, "reference shorter than n = " + std::to_string(n));
    }
    std::size_t matched = 0;
    std::size_t total = 0;
    for (const auto& [gram, count] : count_ngrams(ref, n)) {
      total += count;
      auto it = cand.find(gram);
      if (it != cand.end()) matched += std::min(count, it->second);
    }
    sum += static_cast<double>(matched) / static_cast<double>(total);
  }
  return sum / static_cast<double>(references.size());
}

}  // namespace voxrg::text
