#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

RunResult run(const std::string& args) {
  std::string out_file = (fs::temp_directory_path() / "treeform_cli_out.txt").string();
  std::string cmd = std::string(TREEFORM_BIN) + " " + args + " > " + out_file + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_file, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

std::string fixture(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("missing subcommand is a usage error") {
  CHECK(run("").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
}

TEST_CASE("validate accepts the golden annotation file") {
  RunResult r = run("validate " + fixture("fax_cover.funsd.json"));
  CHECK(r.exit_code == 0);
}

TEST_CASE("validate reports dangling links with exit 1") {
  fs::path dir = temp_dir("cli_validate");
  std::ofstream(dir / "bad.json")
      << R"([{"id": 0, "text": "Q", "label": "question", "linking": [[0, 9]]}])";
  RunResult r = run("validate " + (dir / "bad.json").string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("error") != std::string::npos);
}

TEST_CASE("validate on a missing path is a usage error") {
  CHECK(run("validate /no/such/file.json").exit_code == 2);
}

TEST_CASE("convert matches the golden files") {
  for (auto [flag, golden] :
       {std::pair{"aggregated", "fax_cover.aggregated.json"}, {"treeform", "fax_cover.treeform.json"},
        {"treeform-concise", "fax_cover.concise.json"}}) {
    RunResult r = run("convert " + fixture("fax_cover.funsd.json") + " --to " + flag);
    CHECK(r.exit_code == 0);
    CHECK(r.output == read_file(fixture(golden)));
  }
}

TEST_CASE("convert rejects malformed input with exit 2") {
  fs::path dir = temp_dir("cli_convert");
  std::ofstream(dir / "broken.json") << "{not json";
  CHECK(run("convert " + (dir / "broken.json").string()).exit_code == 2);
}

TEST_CASE("gen produces a deterministic paired corpus that evaluates clean") {
  fs::path dir = temp_dir("cli_gen");
  CHECK(run("gen --seed 3 --count 4 --out " + dir.string()).exit_code == 0);
  CHECK(fs::exists(dir / "0003.funsd.json"));
  CHECK(fs::exists(dir / "0003.treeform.json"));

  fs::path dir2 = temp_dir("cli_gen2");
  REQUIRE(run("gen --seed 3 --count 4 --out " + dir2.string()).exit_code == 0);
  CHECK(read_file((dir / "0002.funsd.json").string()) ==
        read_file((dir2 / "0002.funsd.json").string()));

  // Conversion of the emitted annotation reproduces the emitted tree.
  RunResult conv = run("convert " + (dir / "0001.funsd.json").string());
  CHECK(conv.output == read_file((dir / "0001.treeform.json").string()));
}

TEST_CASE("eval pairs files by stem and reports the requested metrics") {
  fs::path gt = temp_dir("cli_eval_gt"), pred = temp_dir("cli_eval_pred");
  REQUIRE(run("gen --seed 5 --count 3 --out " + gt.string()).exit_code == 0);
  for (int i = 0; i < 3; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "%04d", i);
    fs::copy(gt / (std::string(name) + ".funsd.json"), gt / (std::string(name) + ".json"));
    fs::copy(gt / (std::string(name) + ".json"), pred / (std::string(name) + ".json"));
    fs::remove(gt / (std::string(name) + ".funsd.json"));
    fs::remove(gt / (std::string(name) + ".treeform.json"));
  }
  RunResult r = run("eval --gt " + gt.string() + " --pred " + pred.string() +
                    " --metrics tree_f1,naa --format tsv");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("corpus\t-\t-\t100.0\t0.00\t-") != std::string::npos);
}

TEST_CASE("a missing prediction scores as empty, an empty match set fails") {
  fs::path gt = temp_dir("cli_eval2_gt"), pred = temp_dir("cli_eval2_pred");
  REQUIRE(run("gen --seed 6 --count 2 --out " + gt.string()).exit_code == 0);
  for (fs::directory_iterator it(gt), end; it != end; ++it)
    if (it->path().string().find("treeform") != std::string::npos)
      fs::remove(it->path());
  // no predictions at all -> failure exit
  CHECK(run("--quiet eval --gt " + gt.string() + " --pred " + pred.string())
            .exit_code == 1);
  // one prediction present: the other is scored as an empty document
  fs::copy(gt / "0000.funsd.json", pred / "0000.funsd.json");
  RunResult r = run("--quiet eval --gt " + gt.string() + " --pred " +
                    pred.string() + " --aggregation mean --format tsv");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("0001.funsd\t0.0\t0.0\t0.0\t1.00\t100.0") != std::string::npos);
}

TEST_CASE("unknown metric names are a usage error") {
  fs::path gt = temp_dir("cli_eval3");
  CHECK(run("eval --gt " + gt.string() + " --pred " + gt.string() +
            " --metrics bogus").exit_code == 2);
}

TEST_CASE("postprocess repairs raw model output") {
  fs::path dir = temp_dir("cli_post");
  std::ofstream(dir / "raw.json")
      << R"({"header": [{"value": "T", "question": [
            {"value": "Q", "answer": "A"}, {"value": "Q", "answer": "A"},
            {"value": "bad"}]}]})";
  RunResult r = run("--quiet postprocess " + (dir / "raw.json").string());
  CHECK(r.exit_code == 0);
  // the truncated question is dropped and the duplicate pair merged
  CHECK(r.output.find("\"bad\"") == std::string::npos);
  CHECK(r.output.find("Q") != std::string::npos);
  std::size_t first = r.output.find("\"Q\"");
  CHECK(r.output.find("\"Q\"", first + 1) == std::string::npos);
}

TEST_CASE("config file sets defaults that flags override") {
  fs::path dir = temp_dir("cli_config");
  std::ofstream(dir / "cfg.json") << R"({"metrics": ["naa"]})";
  fs::path gt = temp_dir("cli_config_gt");
  REQUIRE(run("gen --seed 8 --count 1 --out " + gt.string()).exit_code == 0);
  fs::remove(gt / "0000.treeform.json");
  RunResult r = run("--config " + (dir / "cfg.json").string() + " eval --gt " +
                    gt.string() + " --pred " + gt.string() + " --format tsv");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("corpus\t-\t-\t-\t0.00\t-") != std::string::npos);
}
