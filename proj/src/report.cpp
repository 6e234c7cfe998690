#include "voxrg/report.hpp"

#include <algorithm>
#include <set>

namespace voxrg::report {

using nlohmann::json;

namespace {

// Trims whitespace and trailing full stops so sentences can be re-joined uniformly.
std::string bare_sentence(std::string_view s) {
  auto is_trim = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '.'; };
  std::size_t lo = 0;
  while (lo < s.size() && (s[lo] == ' ' || s[lo] == '\t' || s[lo] == '\n' || s[lo] == '\r')) ++lo;
  std::size_t hi = s.size();
  while (hi > lo && is_trim(s[hi - 1])) --hi;
  return std::string(s.substr(lo, hi - lo));
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

double mean_over(const Volume& volume, const BinaryMask& region, std::size_t& count) {
  double sum = 0.0;
  count = 0;
  for (std::size_t i = 0; i < region.bits().size(); ++i) {
    if (!region[i]) continue;
    sum += volume[i];
    ++count;
  }
  return count ? sum / static_cast<double>(count) : 0.0;
}

// Signal of `lesion` relative to `host`, falling back to all non-lesion brain tissue
// and then to every non-lesion voxel when the host is fully covered.
std::string_view signal_word(const Volume& volume, const BinaryMask& lesion, const BinaryMask& host,
                             const AtlasLabelMap& atlas, const BinaryMask& anomaly) {
  std::size_t n_lesion = 0;
  std::size_t n_ref = 0;
  const double lesion_mean = mean_over(volume, lesion, n_lesion);
  double ref_mean = mean_over(volume, host, n_ref);
  if (n_ref == 0) ref_mean = mean_over(volume, brain_mask(atlas) - anomaly, n_ref);
  if (n_ref == 0) ref_mean = mean_over(volume, ~anomaly, n_ref);
  return lesion_mean > ref_mean ? "hyperintense" : "hypointense";
}

}  // namespace

std::optional<Mode> parse_mode(std::string_view s) {
  if (s == "global") return Mode::Global;
  if (s == "autoseg") return Mode::AutoSeg;
  if (s == "prompt") return Mode::Prompt;
  return std::nullopt;
}

TemplateTable::TemplateTable(std::map<LabelId, std::string> sentences, std::string fallback)
    : sentences_(std::move(sentences)), fallback_(std::move(fallback)) {}

TemplateTable TemplateTable::from_json(const json& j, const AtlasLabelMap& atlas) {
  if (!j.is_object()) throw Error(ErrorCode::BadConfig, "template table must be a JSON object");
  TemplateTable t;
  for (const auto& item : j.items()) {
    if (!item.value().is_string()) {
      throw Error(ErrorCode::BadConfig, "template for '" + item.key() + "' must be a string");
    }
    const auto sentence = item.value().get<std::string>();
    if (item.key() == kFallbackKey) {
      t.fallback_ = sentence;
      continue;
    }
    if (const auto id = atlas.find_label(item.key())) t.sentences_[*id] = sentence;
  }
  return t;
}

std::string TemplateTable::sentence(LabelId label, const AtlasLabelMap& atlas) const {
  auto it = sentences_.find(label);
  std::string s = it != sentences_.end() ? it->second : fallback_;
  static constexpr std::string_view kPlaceholder = "{structure}";
  const std::string& name = atlas.name(label);
  for (auto pos = s.find(kPlaceholder); pos != std::string::npos; pos = s.find(kPlaceholder, pos + name.size())) {
    s.replace(pos, kPlaceholder.size(), name);
  }
  return s;
}

std::vector<LabelId> covered_structures(const roi::RegionalPrompt& prompt, const AtlasLabelMap& atlas) {
  if (prompt.is_global) return atlas.present_labels();
  return {prompt.structure_labels.begin(), prompt.structure_labels.end()};
}

std::string stub_report(const Volume& volume, const roi::RegionalPrompt& prompt, const AtlasLabelMap& atlas,
                        const BinaryMask& anomaly, const TemplateTable& templates) {
  require_same_dims(volume.dims(), atlas.dims(), "stub_report volume/atlas");
  require_same_dims(anomaly.dims(), atlas.dims(), "stub_report anomaly/atlas");
  require_same_dims(prompt.mask.dims(), atlas.dims(), "stub_report prompt/atlas");
  if (prompt.mask.empty()) throw Error(ErrorCode::EmptyPrompt, "prompt mask is empty");

  std::vector<std::string> sentences;
  const auto structures = covered_structures(prompt, atlas);
  for (LabelId label : structures) {
    const BinaryMask structure = structure_mask(atlas, label);
    const BinaryMask lesion = structure & anomaly;
    if (lesion.empty()) {
      sentences.push_back(bare_sentence(templates.sentence(label, atlas)));
      continue;
    }
    const auto word = signal_word(volume, lesion, structure - anomaly, atlas, anomaly);
    sentences.push_back(std::string(word) + " signal in the " + atlas.name(label));
  }
  if (structures.empty()) {
    // Component outside every labelled structure.
    const BinaryMask lesion = prompt.mask & anomaly;
    if (lesion.empty()) {
      sentences.emplace_back("no abnormal signal in the prompted region");
    } else {
      const BinaryMask none(atlas.dims());
      const auto word = signal_word(volume, lesion, none, atlas, anomaly);
      sentences.push_back(std::string(word) + " signal outside the labelled structures");
    }
  }
  return join(sentences, ". ") + ".";
}

Reporter make_stub_reporter(BinaryMask anomaly, TemplateTable templates) {
  return [anomaly = std::move(anomaly), templates = std::move(templates)](
             const Volume& volume, const roi::RegionalPrompt& prompt, const AtlasLabelMap& atlas) {
    return stub_report(volume, prompt, atlas, anomaly, templates);
  };
}

std::string assemble_global(const std::vector<RegionalReport>& regional, const AtlasLabelMap& atlas,
                            const TemplateTable& templates) {
  std::vector<std::string> parts;
  std::set<LabelId> covered;
  for (const auto& r : regional) {
    parts.push_back(r.text);
    const auto labels = covered_structures(r.prompt, atlas);
    covered.insert(labels.begin(), labels.end());
  }
  for (LabelId label : atlas.present_labels()) {
    if (covered.contains(label)) continue;
    parts.push_back(bare_sentence(templates.sentence(label, atlas)) + ".");
  }
  return join(parts, "\n");
}

ReportResult run_mode(Mode mode, const Volume& volume, const AtlasLabelMap& atlas, const ModeInputs& inputs,
                      const Reporter& reporter, const TemplateTable& templates) {
  require_same_dims(volume.dims(), atlas.dims(), "run_mode");
  ReportResult result;
  std::vector<roi::RegionalPrompt> prompts;

  switch (mode) {
    case Mode::Global: {
      auto prompt = roi::global_prompt(atlas.dims());
      std::string text = reporter(volume, prompt, atlas);
      result.text = text;
      result.regional.push_back({std::move(prompt), std::move(text), inputs.modality_tag});
      return result;
    }
    case Mode::AutoSeg:
      if (inputs.anomaly == nullptr) throw Error(ErrorCode::MissingAnomalyMask, "autoseg mode needs an anomaly mask");
      prompts = roi::regional_prompts(*inputs.anomaly, atlas, inputs.connectivity);
      break;
    case Mode::Prompt:
      if (inputs.user_prompts == nullptr || inputs.user_prompts->empty()) {
        throw Error(ErrorCode::MissingUserPrompts, "prompt mode needs at least one user prompt");
      }
      prompts = *inputs.user_prompts;
      break;
  }

  for (auto& prompt : prompts) {
    std::string text = reporter(volume, prompt, atlas);
    result.regional.push_back({std::move(prompt), std::move(text), inputs.modality_tag});
  }
  result.text = assemble_global(result.regional, atlas, templates);
  return result;
}

json to_json(const ReportResult& result, const AtlasLabelMap& atlas) {
  json regional = json::array();
  for (const auto& r : result.regional) {
    json names = json::array();
    for (LabelId l : covered_structures(r.prompt, atlas)) names.push_back(atlas.name(l));
    regional.push_back({{"structures", names}, {"text", r.text}});
  }
  return {{"global_text", result.text}, {"regional", regional}};
}

}  // namespace voxrg::report
