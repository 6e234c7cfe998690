#include "cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "voxrg/kernels.hpp"
#include "voxrg/report.hpp"
#include "voxrg/roiselect.hpp"
#include "voxrg/segmetrics.hpp"
#include "voxrg/synthlesion.hpp"
#include "voxrg/textmetrics.hpp"
#include "voxrg/vio.hpp"

namespace voxrg::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

class Log {
 public:
  Log(std::ostream& err, LogLevel level) : err_(err), level_(level) {}

  void error(const std::string& m) const { emit(LogLevel::Error, "error", m); }
  void warn(const std::string& m) const { emit(LogLevel::Warn, "warn", m); }
  void info(const std::string& m) const { emit(LogLevel::Info, "info", m); }
  void debug(const std::string& m) const { emit(LogLevel::Debug, "debug", m); }

 private:
  void emit(LogLevel l, const char* tag, const std::string& m) const {
    if (l <= level_) err_ << "voxrg [" << tag << "] " << m << '\n';
  }
  std::ostream& err_;
  LogLevel level_;
};

/// A failure that maps straight to an exit code.
struct Failure {
  int exit_code;
  std::string message;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SynthesisFailed:
    case ErrorCode::EmptyAtlas:
    case ErrorCode::DegenerateStructure:
    case ErrorCode::EmptyShape:
    case ErrorCode::DeformationCollapse:
    case ErrorCode::EmptyRegion:
    case ErrorCode::DegenerateInterval:
    case ErrorCode::CenterOutsideLesion:
      return kSynthesisFailure;
    case ErrorCode::MissingAnomalyMask:
    case ErrorCode::MissingUserPrompts:
    case ErrorCode::EmptyPrompt:
      return kModeArgument;
    default:
      return kIoOrFormat;
  }
}

// Shortest round-trip decimal, always with a fractional part ("1.0", "0.5").
std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::BadConfig, path.string() + ": " + e.what());
  }
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::string trim(std::string_view s) {
  const auto lo = s.find_first_not_of(" \t");
  if (lo == std::string_view::npos) return {};
  const auto hi = s.find_last_not_of(" \t");
  return std::string(s.substr(lo, hi - lo + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

morphology::Connectivity parse_connectivity(int c) {
  return c == 6 ? morphology::Connectivity::Face6 : morphology::Connectivity::Full26;
}

// ---------------------------------------------------------------------------
// synth / replay

struct SynthArgs {
  std::string volume, atlas, config, out_volume, out_mask, out_recipes;
};

int cmd_synth(const SynthArgs& a, std::uint64_t seed, const Log& log) {
  const Volume volume = vio::read_volume(a.volume);
  const AtlasLabelMap atlas = vio::read_atlas(a.atlas);
  const synth::SynthConfig config = a.config.empty() ? synth::SynthConfig{} : synth::config_from_json(read_json_file(a.config));
  log.info("synthesising with seed " + std::to_string(seed));
  const auto result = synth::synthesize(volume, atlas, config, seed);
  log.info("placed " + std::to_string(result.recipes.size()) + " lesions, " +
           std::to_string(result.anomaly.popcount()) + " anomalous voxels");
  vio::write(a.out_volume, result.volume);
  vio::write(a.out_mask, result.anomaly);
  write_text_file(a.out_recipes, json(result.recipes).dump(2) + "\n");
  return kOk;
}

struct ReplayArgs {
  std::string volume, atlas, recipes, out_volume, out_mask;
};

int cmd_replay(const ReplayArgs& a, const Log& log) {
  const Volume volume = vio::read_volume(a.volume);
  const AtlasLabelMap atlas = vio::read_atlas(a.atlas);
  std::vector<synth::LesionRecipe> recipes;
  try {
    recipes = read_json_file(a.recipes).get<std::vector<synth::LesionRecipe>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadConfig, a.recipes + ": " + e.what());
  }
  log.info("replaying " + std::to_string(recipes.size()) + " recipes");
  const auto result = synth::replay(volume, atlas, recipes);
  vio::write(a.out_volume, result.volume);
  vio::write(a.out_mask, result.anomaly);
  return kOk;
}

// ---------------------------------------------------------------------------
// roi

struct RoiArgs {
  std::string anomaly, atlas, out;
  int connectivity = 26;
};

int cmd_roi(const RoiArgs& a, const Log& log) {
  const BinaryMask anomaly = vio::read_mask(a.anomaly);
  const AtlasLabelMap atlas = vio::read_atlas(a.atlas);
  const auto prompts = roi::regional_prompts(anomaly, atlas, parse_connectivity(a.connectivity));

  const fs::path out(a.out);
  json entries = json::array();
  for (const auto& p : prompts) {
    const std::size_t index = *p.component_index;
    const fs::path mask_path = out.parent_path() / (out.stem().string() + "_prompt_" + std::to_string(index) + ".vvl");
    vio::write(mask_path, p.mask);
    json names = json::array();
    for (LabelId l : p.structure_labels) names.push_back(atlas.name(l));
    entries.push_back({{"component_index", index},
                       {"structure_labels", p.structure_labels},
                       {"structure_names", names},
                       {"mask_popcount", p.mask.popcount()},
                       {"mask_file", mask_path.filename().string()}});
  }
  write_text_file(out, entries.dump(2) + "\n");
  log.info(std::to_string(prompts.size()) + " regional prompts written");
  return kOk;
}

// ---------------------------------------------------------------------------
// seg-metrics

struct SegArgs {
  std::string manifest, out;
  std::string hd_mode = "directed";
};

int cmd_seg_metrics(const SegArgs& a, const Log& log) {
  const fs::path manifest(a.manifest);
  const auto lines = read_lines(manifest);
  const seg::HausdorffMode mode = a.hd_mode == "symmetric" ? seg::HausdorffMode::Symmetric : seg::HausdorffMode::Directed;

  std::ostringstream csv;
  csv << "case,dsc,pre,se,hd_mm\n";
  int status = kOk;
  std::size_t case_no = 0;
  for (const auto& raw : lines) {
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    ++case_no;
    std::string normalized = line;
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::istringstream fields(normalized);
    std::string pred_path, gt_path;
    fields >> pred_path >> gt_path;
    try {
      if (gt_path.empty()) throw Error(ErrorCode::BadConfig, "manifest line needs a prediction and a ground-truth path");
      auto resolve = [&](const std::string& p) {
        const fs::path path(p);
        return path.is_relative() ? manifest.parent_path() / path : path;
      };
      const BinaryMask pred = vio::read_mask(resolve(pred_path));
      const BinaryMask gt = vio::read_mask(resolve(gt_path));
      const auto s = seg::score(pred, gt, gt.spacing(), mode);
      csv << case_no << ',' << format_number(s.dsc) << ',' << format_optional(s.pre) << ','
          << format_optional(s.se) << ',' << format_optional(s.hd_mm) << '\n';
    } catch (const Error& e) {
      log.error("case " + std::to_string(case_no) + ": " + e.what());
      csv << case_no << ",,,,," << csv_field(e.what()) << '\n';
      status = kIoOrFormat;
    }
  }
  write_text_file(a.out, csv.str());
  return status;
}

// ---------------------------------------------------------------------------
// text-metrics

struct TextArgs {
  std::string candidates, references, out;
};

int cmd_text_metrics(const TextArgs& a, const Log& log) {
  auto candidates = read_lines(a.candidates);
  auto references = read_lines(a.references);
  if (candidates.size() != references.size()) {
    throw Error(ErrorCode::BadConfig, "candidate and reference files have " + std::to_string(candidates.size()) +
                                          " and " + std::to_string(references.size()) + " lines");
  }
  auto guarded = [&](auto&& metric) -> std::string {
    try {
      return format_number(metric());
    } catch (const Error& e) {
      log.debug(e.what());
      return {};
    }
  };
  std::ostringstream csv;
  csv << "line,bleu1,bleu4,rouge1\n";
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto cand = text::tokenize(candidates[i]);
    const std::vector<text::TokenSeq> refs{text::tokenize(references[i])};
    csv << (i + 1) << ',' << guarded([&] { return text::bleu(cand, refs, text::kBleu1); }) << ','
        << guarded([&] { return text::bleu(cand, refs, text::kBleu4); }) << ','
        << guarded([&] { return text::rouge_n(cand, refs, 1); }) << '\n';
  }
  write_text_file(a.out, csv.str());
  return kOk;
}

// ---------------------------------------------------------------------------
// report

struct ReportArgs {
  std::string mode, volume, atlas, anomaly, structures, templates;
  bool json_output = false;
  int connectivity = 26;
};

int cmd_report(const ReportArgs& a, std::ostream& out) {
  const auto mode = report::parse_mode(a.mode);
  if (!mode) throw Failure{kModeArgument, "unknown mode '" + a.mode + "' (expected global, autoseg or prompt)"};
  if (*mode == report::Mode::AutoSeg && a.anomaly.empty()) {
    throw Error(ErrorCode::MissingAnomalyMask, "autoseg mode needs --anomaly");
  }
  if (*mode == report::Mode::Prompt && trim(a.structures).empty()) {
    throw Error(ErrorCode::MissingUserPrompts, "prompt mode needs --structures");
  }

  const Volume volume = vio::read_volume(a.volume);
  const AtlasLabelMap atlas = vio::read_atlas(a.atlas);
  const BinaryMask anomaly = a.anomaly.empty() ? BinaryMask(atlas.dims()) : vio::read_mask(a.anomaly);
  require_same_dims(anomaly.dims(), atlas.dims(), "anomaly/atlas");
  const report::TemplateTable templates =
      a.templates.empty() ? report::TemplateTable{} : report::TemplateTable::from_json(read_json_file(a.templates), atlas);

  std::vector<roi::RegionalPrompt> user_prompts;
  if (*mode == report::Mode::Prompt) {
    for (const auto& group : split(a.structures, ';')) {
      std::set<LabelId> labels;
      for (const auto& name : split(group, ',')) {
        if (name.empty()) continue;
        const auto id = atlas.find_label(name);
        if (!id) throw Failure{kModeArgument, "UnknownLabel: no structure named '" + name + "'"};
        labels.insert(*id);
      }
      if (!labels.empty()) user_prompts.push_back(roi::prompt_from_structures(atlas, labels));
    }
  }

  report::ModeInputs inputs;
  inputs.anomaly = a.anomaly.empty() ? nullptr : &anomaly;
  inputs.user_prompts = &user_prompts;
  inputs.connectivity = parse_connectivity(a.connectivity);
  const auto result =
      report::run_mode(*mode, volume, atlas, inputs, report::make_stub_reporter(anomaly, templates), templates);
  if (a.json_output) {
    out << report::to_json(result, atlas).dump(2) << '\n';
  } else {
    out << result.text << '\n';
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Synthetic lesions, ROI prompts, segmentation/text metrics and report assembly for brain MRI volumes",
               "voxrg"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  int threads = 0;
  std::string log_level = "warn";
  app.add_option("--seed", seed, "Seed for every random draw")->capture_default_str();
  app.add_option("--threads", threads, "Upper bound on worker threads (0 = runtime default)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--log-level", log_level, "error, warn, info or debug")
      ->check(CLI::IsMember({"error", "warn", "info", "debug"}))
      ->capture_default_str();

  SynthArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synth", "Insert synthetic lesions into a volume");
  synth_cmd->add_option("--volume", synth_args.volume, "Input VVL1 float32 volume")->required();
  synth_cmd->add_option("--atlas", synth_args.atlas, "Input VVL1 label map")->required();
  synth_cmd->add_option("--config", synth_args.config, "Synthesis config JSON");
  synth_cmd->add_option("--out-volume", synth_args.out_volume)->required();
  synth_cmd->add_option("--out-mask", synth_args.out_mask)->required();
  synth_cmd->add_option("--out-recipes", synth_args.out_recipes)->required();

  ReplayArgs replay_args;
  auto* replay_cmd = app.add_subcommand("replay", "Re-apply a recipe list to the original volume");
  replay_cmd->add_option("--volume", replay_args.volume)->required();
  replay_cmd->add_option("--atlas", replay_args.atlas)->required();
  replay_cmd->add_option("--recipes", replay_args.recipes)->required();
  replay_cmd->add_option("--out-volume", replay_args.out_volume)->required();
  replay_cmd->add_option("--out-mask", replay_args.out_mask)->required();

  RoiArgs roi_args;
  auto* roi_cmd = app.add_subcommand("roi", "Regional mask prompts from an anomaly mask");
  roi_cmd->add_option("--anomaly", roi_args.anomaly)->required();
  roi_cmd->add_option("--atlas", roi_args.atlas)->required();
  roi_cmd->add_option("--connectivity", roi_args.connectivity)->check(CLI::IsMember({6, 26}))->capture_default_str();
  roi_cmd->add_option("--out", roi_args.out, "JSON output; prompt masks are written next to it")->required();

  SegArgs seg_args;
  auto* seg_cmd = app.add_subcommand("seg-metrics", "DSC, precision, sensitivity and Hausdorff distance per case");
  seg_cmd->add_option("--manifest", seg_args.manifest, "Lines of 'pred-path,gt-path'")->required();
  seg_cmd->add_option("--hd-mode", seg_args.hd_mode)
      ->check(CLI::IsMember({"directed", "symmetric"}))
      ->capture_default_str();
  seg_cmd->add_option("--out", seg_args.out, "CSV output")->required();

  TextArgs text_args;
  auto* text_cmd = app.add_subcommand("text-metrics", "BLEU-1, BLEU-4 and ROUGE-1 per aligned line");
  text_cmd->add_option("--candidates", text_args.candidates)->required();
  text_cmd->add_option("--references", text_args.references)->required();
  text_cmd->add_option("--out", text_args.out, "CSV output")->required();

  ReportArgs report_args;
  auto* report_cmd = app.add_subcommand("report", "Assemble a report with the intensity-statistics reporter");
  report_cmd->add_option("--mode", report_args.mode, "global, autoseg or prompt")->required();
  report_cmd->add_option("--volume", report_args.volume)->required();
  report_cmd->add_option("--atlas", report_args.atlas)->required();
  report_cmd->add_option("--anomaly", report_args.anomaly);
  report_cmd->add_option("--structures", report_args.structures,
                         "Structure names; ',' within a prompt, ';' between prompts");
  report_cmd->add_option("--templates", report_args.templates, "Template table JSON");
  report_cmd->add_option("--connectivity", report_args.connectivity)->check(CLI::IsMember({6, 26}));
  report_cmd->add_flag("--json", report_args.json_output, "Emit JSON instead of plain text");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "voxrg: " << e.what() << '\n';
    return kIoOrFormat;
  }

  const LogLevel level = log_level == "error" ? LogLevel::Error
                         : log_level == "info" ? LogLevel::Info
                         : log_level == "debug" ? LogLevel::Debug
                                                : LogLevel::Warn;
  const Log log(err, level);
  kernels::set_thread_count(threads);

  try {
    if (synth_cmd->parsed()) return cmd_synth(synth_args, seed, log);
    if (replay_cmd->parsed()) return cmd_replay(replay_args, log);
    if (roi_cmd->parsed()) return cmd_roi(roi_args, log);
    if (seg_cmd->parsed()) return cmd_seg_metrics(seg_args, log);
    if (text_cmd->parsed()) return cmd_text_metrics(text_args, log);
    if (report_cmd->parsed()) return cmd_report(report_args, out);
  } catch (const Failure& f) {
    log.error(f.message);
    return f.exit_code;
  } catch (const Error& e) {
    log.error(e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    log.error(e.what());
    return kIoOrFormat;
  }
  return kIoOrFormat;
}

}  // namespace voxrg::cli
