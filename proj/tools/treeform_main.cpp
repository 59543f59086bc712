#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "treeform/aggregate.hpp"
#include "treeform/evaluate.hpp"
#include "treeform/funsd.hpp"
#include "treeform/postprocess.hpp"
#include "treeform/synth.hpp"
#include "treeform/ted.hpp"
#include "treeform/treeform.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace treeform;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;   // validation / evaluation failure
constexpr int kExitUsage = 2;     // usage or IO error

bool g_quiet = false;

void note(const std::string& msg) {
  if (!g_quiet) std::cerr << msg << "\n";
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& target, const std::string& bytes) {
  if (target == "-") {
    std::cout << bytes;
    return;
  }
  std::ofstream out(target, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + target);
  out << bytes;
}

std::vector<fs::path> json_files(const fs::path& path) {
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path))
      if (entry.is_regular_file() && entry.path().extension() == ".json")
        files.push_back(entry.path());
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  return files;
}

const char* severity_name(ValidationIssue::Severity s) {
  return s == ValidationIssue::Severity::Error ? "error" : "warning";
}

struct CommonConfig {
  EvalOptions eval;
  DedupConfig dedup;
  int min_entity_len = 20;
};

// Optional JSON config file mirroring the command-line knobs; explicit flags
// win over file values.
void load_config_file(const std::string& path, CommonConfig& cfg) {
  json j = json::parse(read_file(path));
  if (j.contains("alignment_threshold"))
    cfg.eval.alignment_threshold = j["alignment_threshold"].get<double>();
  if (j.contains("column_epsilon_fraction"))
    cfg.eval.conversion.column_epsilon_fraction =
        j["column_epsilon_fraction"].get<double>();
  if (j.contains("min_table_answers"))
    cfg.eval.conversion.min_table_answers = j["min_table_answers"].get<int>();
  if (j.contains("keep_unanswered"))
    cfg.eval.conversion.keep_unanswered = j["keep_unanswered"].get<bool>();
  if (j.contains("similarity")) cfg.dedup.threshold = j["similarity"].get<double>();
  if (j.contains("literal_distance_gate"))
    cfg.dedup.literal_distance_gate = j["literal_distance_gate"].get<bool>();
  if (j.contains("min_entity_len"))
    cfg.min_entity_len = j["min_entity_len"].get<int>();
  if (j.contains("metrics")) {
    cfg.eval.metrics.clear();
    for (const json& m : j["metrics"]) cfg.eval.metrics.insert(m.get<std::string>());
  }
}

int cmd_validate(const std::vector<std::string>& paths) {
  bool any_error = false;
  for (const std::string& p : paths) {
    if (!fs::exists(p)) {
      std::cerr << "error: no such path: " << p << "\n";
      return kExitUsage;
    }
    for (const fs::path& file : json_files(p)) {
      ParsedFunsd parsed;
      try {
        parsed = parse_funsd(read_file(file));
      } catch (const std::exception& err) {
        std::cerr << "error: " << file.string() << ": " << err.what() << "\n";
        return kExitUsage;
      }
      std::vector<ValidationIssue> issues = parsed.warnings;
      auto checked = validate(parsed.doc);
      issues.insert(issues.end(), checked.begin(), checked.end());
      for (const ValidationIssue& issue : issues) {
        std::cout << file.string() << "\t" << severity_name(issue.severity) << "\t";
        if (issue.entity_id) std::cout << "entity " << *issue.entity_id << "\t";
        std::cout << issue.message << "\n";
        if (issue.severity == ValidationIssue::Severity::Error) any_error = true;
      }
    }
  }
  return any_error ? kExitFailure : kExitOk;
}

int cmd_convert(const std::string& input, const std::string& output,
                const std::string& to, const CommonConfig& cfg) {
  ParsedFunsd parsed;
  try {
    parsed = parse_funsd(read_file(input));
  } catch (const std::exception& err) {
    std::cerr << "error: " << input << ": " << err.what() << "\n";
    return kExitUsage;
  }
  std::string bytes;
  if (to == "aggregated") {
    bytes = serialize_aggregated(build_aggregated_tree(parsed.doc));
  } else {
    TreeFormDoc doc = convert(parsed.doc, cfg.eval.conversion);
    bytes = serialize_treeform(doc, to == "treeform-concise");
  }
  write_output(output, bytes);
  return kExitOk;
}

int cmd_eval(const std::string& gt_dir, const std::string& pred_dir,
             const std::string& aggregation, const std::string& format,
             const CommonConfig& cfg) {
  if (!fs::is_directory(gt_dir) || !fs::is_directory(pred_dir)) {
    std::cerr << "error: --gt and --pred must be directories\n";
    return kExitUsage;
  }
  std::map<std::string, fs::path> preds;
  for (const fs::path& p : json_files(pred_dir)) preds[p.stem().string()] = p;

  std::vector<DocPair> pairs;
  int matched = 0;
  for (const fs::path& g : json_files(gt_dir)) {
    DocPair pair;
    pair.id = g.stem().string();
    try {
      pair.gt = parse_funsd(read_file(g)).doc;
      auto it = preds.find(pair.id);
      if (it != preds.end()) {
        pair.pred = parse_funsd(read_file(it->second)).doc;
        ++matched;
      } else {
        note("warning: missing prediction for " + pair.id +
             "; scoring an empty prediction");
      }
    } catch (const std::exception& err) {
      std::cerr << "error: " << err.what() << "\n";
      return kExitUsage;
    }
    pairs.push_back(std::move(pair));
  }
  if (pairs.empty() || matched == 0) {
    std::cerr << "error: no ground-truth/prediction pairs found\n";
    return kExitFailure;
  }

  std::vector<DocScores> scores = evaluate_corpus(pairs, cfg.eval);
  MetricReport report = aggregate_report(
      std::move(scores),
      aggregation == "mean" ? Aggregation::Mean : Aggregation::Median);
  std::cout << (format == "tsv" ? report_to_tsv(report) : report_to_json(report));
  return kExitOk;
}

int cmd_gen(std::uint64_t seed, int count, const std::string& out_dir,
            const SynthConfig& base) {
  fs::create_directories(out_dir);
  SynthConfig cfg = base;
  cfg.seed = seed;
  std::vector<SynthForm> forms = generate_corpus(cfg, count);
  for (int i = 0; i < count; ++i) {
    char stem[32];
    std::snprintf(stem, sizeof(stem), "%04d", i);
    write_output((fs::path(out_dir) / (std::string(stem) + ".funsd.json")).string(),
                 serialize_funsd(forms[static_cast<std::size_t>(i)].funsd));
    write_output((fs::path(out_dir) / (std::string(stem) + ".treeform.json")).string(),
                 serialize_treeform(forms[static_cast<std::size_t>(i)].treeform));
  }
  return kExitOk;
}

int cmd_postprocess(const std::string& input, const std::string& output,
                    bool funsd_mode, const CommonConfig& cfg) {
  std::string raw;
  try {
    raw = read_file(input);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  if (funsd_mode) {
    ParsedFunsd parsed;
    try {
      parsed = parse_funsd(raw);
    } catch (const std::exception& err) {
      std::cerr << "error: " << input << ": " << err.what() << "\n";
      return kExitUsage;
    }
    auto [doc, report] = dedup_long_entities(parsed.doc, cfg.min_entity_len, cfg.dedup);
    note("removed " + std::to_string(report.removed_entities) + " duplicate entities");
    write_output(output, serialize_funsd(doc));
    return kExitOk;
  }
  json j;
  try {
    j = json::parse(raw);
  } catch (const json::parse_error& err) {
    std::cerr << "error: " << input << ": " << err.what() << "\n";
    return kExitUsage;
  }
  auto [doc, repair] = repair_treeform(j);
  auto [deduped, dedup] = dedup_leaves(doc, cfg.dedup);
  note("discarded " + std::to_string(repair.discarded_paths) + " paths, merged " +
       std::to_string(dedup.merged_leaves) + " leaves");
  write_output(output, serialize_treeform(deduped));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"TreeForm conversion and evaluation toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file");
  app.add_flag("--quiet", g_quiet, "suppress warnings");

  CommonConfig cfg;

  auto* validate_cmd = app.add_subcommand("validate", "check annotation files");
  std::vector<std::string> validate_paths;
  validate_cmd->add_option("paths", validate_paths, "files or directories")
      ->required();

  auto* convert_cmd = app.add_subcommand("convert", "convert a FUNSD file");
  std::string conv_in, conv_out = "-", conv_to = "treeform";
  convert_cmd->add_option("input", conv_in, "FUNSD JSON file")->required();
  convert_cmd->add_option("output", conv_out, "output file or -");
  convert_cmd->add_option("--to", conv_to, "target representation")
      ->check(CLI::IsMember({"treeform", "treeform-concise", "aggregated"}));
  convert_cmd->add_option("--column-epsilon", cfg.eval.conversion.column_epsilon_fraction,
                          "column alignment tolerance (fraction of page)");
  convert_cmd->add_flag("--keep-unanswered", cfg.eval.conversion.keep_unanswered,
                        "retain questions without answers");

  auto* eval_cmd = app.add_subcommand("eval", "score predictions against ground truth");
  std::string gt_dir, pred_dir, aggregation = "median", format = "json";
  std::string metrics_csv;
  eval_cmd->add_option("--gt", gt_dir, "ground-truth directory")->required();
  eval_cmd->add_option("--pred", pred_dir, "prediction directory")->required();
  eval_cmd->add_option("--metrics", metrics_csv,
                       "comma-separated subset of labeling_f1,linking_f1,tree_f1,naa,ganted");
  eval_cmd->add_option("--aggregation", aggregation, "corpus aggregation")
      ->check(CLI::IsMember({"mean", "median"}));
  eval_cmd->add_option("--threshold", cfg.eval.alignment_threshold,
                       "alignment distance threshold");
  eval_cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "tsv"}));

  auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic corpus");
  std::uint64_t seed = 0;
  int count = 1;
  std::string out_dir = ".";
  SynthConfig synth_cfg;
  gen_cmd->add_option("--seed", seed, "corpus seed");
  gen_cmd->add_option("--count", count, "number of documents");
  gen_cmd->add_option("--out", out_dir, "output directory")->required();
  gen_cmd->add_option("--table-probability", synth_cfg.table_probability,
                      "probability of a table per section");

  auto* post_cmd = app.add_subcommand("postprocess", "repair model output");
  std::string post_in, post_out = "-";
  bool funsd_mode = false;
  post_cmd->add_option("input", post_in, "raw JSON file")->required();
  post_cmd->add_option("output", post_out, "output file or -");
  post_cmd->add_option("--similarity", cfg.dedup.threshold, "dedup similarity threshold");
  post_cmd->add_option("--min-entity-len", cfg.min_entity_len,
                       "length gate for entity dedup");
  post_cmd->add_flag("--literal-distance-gate", cfg.dedup.literal_distance_gate,
                     "merge when distance exceeds the threshold");
  post_cmd->add_flag("--funsd", funsd_mode, "dedup long entities in a FUNSD file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (!config_path.empty()) load_config_file(config_path, cfg);
    if (!metrics_csv.empty()) {
      cfg.eval.metrics.clear();
      std::stringstream ss(metrics_csv);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (!kAllMetrics.count(item)) {
          std::cerr << "error: unknown metric `" << item << "`\n";
          return kExitUsage;
        }
        cfg.eval.metrics.insert(item);
      }
    }

    if (validate_cmd->parsed()) return cmd_validate(validate_paths);
    if (convert_cmd->parsed()) return cmd_convert(conv_in, conv_out, conv_to, cfg);
    if (eval_cmd->parsed())
      return cmd_eval(gt_dir, pred_dir, aggregation, format, cfg);
    if (gen_cmd->parsed()) return cmd_gen(seed, count, out_dir, synth_cfg);
    if (post_cmd->parsed()) return cmd_postprocess(post_in, post_out, funsd_mode, cfg);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
