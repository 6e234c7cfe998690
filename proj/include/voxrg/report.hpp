#pragma once

// Global report assembly. Regional findings come first, in prompt order,
// followed by a normal-finding template for every atlas structure that no
// prompt covers.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "voxrg/morphology.hpp"
#include "voxrg/roiselect.hpp"
#include "voxrg/volume.hpp"

namespace voxrg::report {

enum class Mode { Global, AutoSeg, Prompt };

/// Parses "global", "autoseg" or "prompt".
std::optional<Mode> parse_mode(std::string_view s);

struct RegionalReport {
  roi::RegionalPrompt prompt;
  std::string text;
  std::string modality_tag;
};

/// Normal-finding sentence per structure. "{structure}" in a sentence is
/// replaced by the structure name; structures without an entry use the
/// fallback sentence.
class TemplateTable {
 public:
  static constexpr const char* kFallbackKey = "__fallback__";
  static constexpr const char* kDefaultFallback = "no abnormal signal in the {structure}";

  TemplateTable() = default;
  TemplateTable(std::map<LabelId, std::string> sentences, std::string fallback);

  /// JSON object mapping structure name (case-insensitive) to sentence plus
  /// an optional "__fallback__" entry. Names the atlas does not know are ignored.
  static TemplateTable from_json(const nlohmann::json& j, const AtlasLabelMap& atlas);

  std::string sentence(LabelId label, const AtlasLabelMap& atlas) const;

 private:
  std::map<LabelId, std::string> sentences_;
  std::string fallback_ = kDefaultFallback;
};

using Reporter = std::function<std::string(const Volume&, const roi::RegionalPrompt&, const AtlasLabelMap&)>;

/// Structures a prompt speaks for: every present label for a global prompt,
/// otherwise its structure labels.
std::vector<LabelId> covered_structures(const roi::RegionalPrompt& prompt, const AtlasLabelMap& atlas);

/// Deterministic intensity-statistics reporter. Per covered structure, in
/// ascending id order: "hyperintense signal in the <name>" or "hypointense
/// signal in the <name>" when the anomaly touches it, else the template.
std::string stub_report(const Volume& volume, const roi::RegionalPrompt& prompt, const AtlasLabelMap& atlas,
                        const BinaryMask& anomaly, const TemplateTable& templates);

/// stub_report bound to an anomaly mask and template table.
Reporter make_stub_reporter(BinaryMask anomaly, TemplateTable templates);

std::string assemble_global(const std::vector<RegionalReport>& regional, const AtlasLabelMap& atlas,
                            const TemplateTable& templates);

struct ReportResult {
  std::string text;
  std::vector<RegionalReport> regional;
};

struct ModeInputs {
  const BinaryMask* anomaly = nullptr;                     // required for AutoSeg
  const std::vector<roi::RegionalPrompt>* user_prompts = nullptr;  // required for Prompt
  morphology::Connectivity connectivity = morphology::Connectivity::Full26;
  std::string modality_tag;
};

ReportResult run_mode(Mode mode, const Volume& volume, const AtlasLabelMap& atlas, const ModeInputs& inputs,
                      const Reporter& reporter, const TemplateTable& templates);

/// {"global_text": ..., "regional": [{"structures": [names], "text": ...}]}
nlohmann::json to_json(const ReportResult& result, const AtlasLabelMap& atlas);

}  // namespace voxrg::report
