// Acceptance suite: one self-contained check per release criterion, each
// printing a PASS/FAIL line. Exit status is nonzero if any check fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.hpp"
#include "treeform/aggregate.hpp"
#include "treeform/align.hpp"
#include "treeform/evaluate.hpp"
#include "treeform/metrics.hpp"
#include "treeform/postprocess.hpp"
#include "treeform/synth.hpp"
#include "treeform/ted.hpp"
#include "treeform/treeform.hpp"

using namespace treeform;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool ok, double seconds,
            const std::string& detail = "") {
  std::printf("%s  %2d. %-38s (%6.2fs)%s%s\n", ok ? "PASS" : "FAIL", number,
              name.c_str(), seconds, detail.empty() ? "" : "  -- ",
              detail.c_str());
  if (!ok) ++g_failures;
}

void run(int number, const std::string& name,
         const std::function<bool(std::string&)>& check) {
  auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = check(detail);
  } catch (const std::exception& err) {
    detail = std::string("exception: ") + err.what();
  }
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  report(number, name, ok, seconds, detail);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --- 1: golden conversion --------------------------------------------------

bool check_golden(std::string& detail) {
  std::string dir = FIXTURE_DIR;
  FunsdDocument doc = parse_funsd(read_file(dir + "/fax_cover.funsd.json")).doc;
  struct Case {
    const char* golden;
    std::string produced;
  };
  std::vector<Case> cases = {
      {"/fax_cover.aggregated.json", serialize_aggregated(build_aggregated_tree(doc))},
      {"/fax_cover.treeform.json", serialize_treeform(convert(doc))},
      {"/fax_cover.concise.json", serialize_treeform(convert(doc), true)},
  };
  for (const Case& c : cases)
    if (c.produced != read_file(dir + c.golden)) {
      detail = std::string("mismatch against ") + c.golden;
      return false;
    }
  return true;
}

// --- 2: Levenshtein oracle -------------------------------------------------

bool check_levenshtein(std::string& detail) {
  auto strings = oracles::strings_up_to(6);  // 1093 strings
  for (const auto& a : strings)
    for (const auto& b : strings)
      if (levenshtein(a, b) != oracles::levenshtein(a, b)) {
        detail = "mismatch on \"" + a + "\" vs \"" + b + "\"";
        return false;
      }
  std::mt19937 rng(20260826);
  for (int i = 0; i < 10000; ++i) {
    std::string a = oracles::random_utf8(rng, 12);
    std::string b = oracles::random_utf8(rng, 12);
    if (levenshtein(a, b) != oracles::levenshtein(a, b)) {
      detail = "mismatch on random pair " + std::to_string(i);
      return false;
    }
  }
  return true;
}

// --- 3: tree edit distance oracle ------------------------------------------

bool check_ted(std::string& detail) {
  auto trees = oracles::labeled_trees_up_to(5);  // 550 trees
  EditCosts costs;
  for (std::size_t i = 0; i < trees.size(); ++i)
    for (std::size_t j = 0; j < trees.size(); ++j) {
      double fast = tree_edit_distance(trees[i], trees[j], costs);
      double slow = oracles::ted(trees[i], trees[j], costs);
      if (std::abs(fast - slow) > 1e-9) {
        detail = "pair (" + std::to_string(i) + ", " + std::to_string(j) +
                 "): got " + std::to_string(fast) + ", oracle " +
                 std::to_string(slow);
        return false;
      }
    }
  return true;
}

// --- 4: edge-set precision/recall fixtures ----------------------------------

bool check_tree_f1(std::string& detail) {
  using E = AggregatedTree::Edge;
  auto tree = [](std::vector<std::string> nodes, std::vector<E> edges) {
    return AggregatedTree{std::move(nodes), std::move(edges)};
  };
  struct Fixture {
    const char* name;
    AggregatedTree pred, gt;
    PRF expected;
  };
  AggregatedTree g3 = tree({"T", "Q", "A"},
                           {E{kRoot, 0, Label::Header},
                            E{kRoot, 1, Label::Question},
                            E{1, 2, Label::Answer}});
  std::vector<Fixture> fixtures;
  fixtures.push_back({"perfect", g3, g3, PRF{3, 0, 0}});
  fixtures.push_back({"empty prediction", tree({}, {}), g3, PRF{0, 0, 3}});
  fixtures.push_back({"empty both", tree({}, {}), tree({}, {}), PRF{0, 0, 0}});
  fixtures.push_back(
      {"wrong label", tree({"T", "Q", "A"},
                           {E{kRoot, 0, Label::Header},
                            E{kRoot, 1, Label::Question},
                            E{1, 2, Label::Question}}),
       g3, PRF{2, 1, 1}});
  fixtures.push_back(
      {"wrong parent", tree({"T", "Q", "A"},
                            {E{kRoot, 0, Label::Header},
                             E{kRoot, 1, Label::Question},
                             E{0, 2, Label::Answer}}),
       g3, PRF{2, 1, 1}});
  fixtures.push_back(
      {"spurious edge", tree({"T", "Q", "A"},
                             {E{kRoot, 0, Label::Header},
                              E{kRoot, 1, Label::Question},
                              E{1, 2, Label::Answer},
                              E{0, 1, Label::Question}}),
       g3, PRF{3, 1, 0}});
  fixtures.push_back(
      {"unaligned node", tree({"T", "zzzzzz", "A"},
                              {E{kRoot, 0, Label::Header},
                               E{kRoot, 1, Label::Question},
                               E{1, 2, Label::Answer}}),
       g3, PRF{1, 2, 2}});
  AggregatedTree g4 = tree({"T", "Q1", "A1", "Q2"},
                           {E{kRoot, 0, Label::Header}, E{0, 1, Label::Question},
                            E{1, 2, Label::Answer}, E{0, 3, Label::Question}});
  // Equal punishment: one error on a ROOT-adjacent edge vs one on a leaf
  // edge, identical |T| and |G|, identical PRF.
  AggregatedTree root_err = tree(
      {"T", "Q1", "A1", "Q2"},
      {E{kRoot, 0, Label::Header}, E{0, 1, Label::Question},
       E{1, 2, Label::Answer}, E{kRoot, 3, Label::Question}});
  AggregatedTree leaf_err = tree(
      {"T", "Q1", "A1", "Q2"},
      {E{kRoot, 0, Label::Header}, E{0, 1, Label::Question},
       E{0, 2, Label::Answer}, E{0, 3, Label::Question}});
  fixtures.push_back({"root-edge error", root_err, g4, PRF{3, 1, 1}});
  fixtures.push_back({"leaf-edge error", leaf_err, g4, PRF{3, 1, 1}});
  fixtures.push_back(
      {"doubly wrong", tree({"T", "Q1", "A1", "Q2"},
                            {E{kRoot, 0, Label::Header}, E{kRoot, 1, Label::Question},
                             E{0, 2, Label::Answer}, E{0, 3, Label::Question}}),
       g4, PRF{2, 2, 2}});
  fixtures.push_back(
      {"subset prediction", tree({"T", "Q1", "A1", "Q2"},
                                 {E{kRoot, 0, Label::Header},
                                  E{0, 1, Label::Question}}),
       g4, PRF{2, 0, 2}});

  if (fixtures.size() < 10) {
    detail = "need at least 10 fixtures";
    return false;
  }
  for (const Fixture& f : fixtures) {
    Alignment a = greedy_align(f.pred.nodes, f.gt.nodes);
    PRF got = tree_f1(f.pred, f.gt, a);
    if (!(got == f.expected)) {
      detail = std::string(f.name) + ": got (" + std::to_string(got.tp) + ", " +
               std::to_string(got.fp) + ", " + std::to_string(got.fn) + ")";
      return false;
    }
  }
  PRF a = tree_f1(root_err, g4, greedy_align(root_err.nodes, g4.nodes));
  PRF b = tree_f1(leaf_err, g4, greedy_align(leaf_err.nodes, g4.nodes));
  if (a.f1() != b.f1()) {
    detail = "root-edge and leaf-edge errors scored differently";
    return false;
  }
  return true;
}

// --- 5: node-alignment accuracy boundaries ----------------------------------

bool check_naa(std::string& detail) {
  if (naa(greedy_align({}, {"a", "bb", "ccc"})) != 1.0) {
    detail = "empty prediction should score 1.00";
    return false;
  }
  if (naa(greedy_align({"a", "bb"}, {"a", "bb"})) != 0.0) {
    detail = "perfect prediction should score 0.00";
    return false;
  }
  Alignment excluded = greedy_align({"ab"}, {"cb"});  // distance 0.5
  if (!excluded.pairs.empty() || naa(excluded) != 1.0) {
    detail = "distance 0.5 must not align at threshold 0.4";
    return false;
  }
  Alignment included = greedy_align({"0123456789x"}, {"0123456789y"});
  if (included.pairs.size() != 1 ||
      std::abs(naa(included) - 1.0 / 11.0) > 1e-15) {
    detail = "distance 1/11 must align and set the score";
    return false;
  }
  return true;
}

// --- 6: GAnTED invariances ---------------------------------------------------

TreeFormDoc distinct_label_tree(std::mt19937& rng, int tag) {
  std::uniform_int_distribution<int> nsec(1, 4), nqa(1, 4), table(0, 3);
  TreeFormDoc doc;
  int sections = nsec(rng);
  for (int s = 0; s < sections; ++s) {
    TreeFormNode header{NodeKind::Header, "", {}};
    std::string base = std::to_string(tag) + "_" + std::to_string(s);
    header.children.push_back(TreeFormNode::leaf("sec" + base));
    int qa = nqa(rng);
    for (int q = 0; q < qa; ++q)
      header.children.push_back(TreeFormNode::question(
          "q" + base + "_" + std::to_string(q), "a" + std::to_string(q)));
    if (table(rng) == 0) {
      TreeFormNode entry{NodeKind::Entry, "", {}};
      entry.children.push_back(TreeFormNode::leaf("row" + base));
      entry.children.push_back(TreeFormNode::question("c" + base, "v1"));
      header.children.push_back(std::move(entry));
    }
    doc.roots.push_back(std::move(header));
  }
  return doc;
}

void permute_siblings(TreeFormNode& n, std::mt19937& rng) {
  std::shuffle(n.children.begin(), n.children.end(), rng);
  for (TreeFormNode& c : n.children) permute_siblings(c, rng);
}

bool check_ganted(std::string& detail) {
  std::mt19937 rng(515151);
  for (int i = 0; i < 1000; ++i) {
    TreeFormDoc gt = distinct_label_tree(rng, i);
    if (ganted(gt, gt) != 0.0) {
      detail = "ganted(t, t) != 0 at tree " + std::to_string(i);
      return false;
    }
    TreeFormDoc shuffled = gt;
    std::shuffle(shuffled.roots.begin(), shuffled.roots.end(), rng);
    for (TreeFormNode& r : shuffled.roots) permute_siblings(r, rng);
    double g = ganted(shuffled, gt);
    if (g != 0.0) {
      detail = "ganted(permuted, t) = " + std::to_string(g) + " at tree " +
               std::to_string(i);
      return false;
    }
  }

  // 20-node ground truth; the prediction misses one question-answer pair,
  // i.e. 3 of 20 embedded nodes: 3/20 x 100 = 15.0.
  TreeFormDoc gt;
  TreeFormNode entry{NodeKind::Entry, "",
                     {TreeFormNode::leaf("row"), TreeFormNode::question("c1", "v1")}};
  TreeFormNode top{NodeKind::Header, "",
                   {TreeFormNode::leaf("T"), TreeFormNode::question("q1", "a1"),
                    TreeFormNode::question("q2", "a2"),
                    TreeFormNode::question("q3", "a3"),
                    TreeFormNode::question("q4", "a4"), std::move(entry)}};
  gt.roots.push_back(std::move(top));
  if (embedded_size(gt) != 20) {
    detail = "fixture should embed to 20 nodes, got " +
             std::to_string(embedded_size(gt));
    return false;
  }
  TreeFormDoc pred = gt;
  pred.roots[0].children.erase(pred.roots[0].children.begin() + 2);
  if (std::abs(ganted(pred, gt) - 15.0) > 1e-9) {
    detail = "expected 15.0, got " + std::to_string(ganted(pred, gt));
    return false;
  }
  return true;
}

// --- 7: synthetic round trip -------------------------------------------------

bool check_round_trip(std::string& detail) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    SynthConfig cfg;
    cfg.seed = seed;
    SynthForm f = generate(cfg);
    if (!(convert(f.funsd) == f.treeform)) {
      detail = "conversion mismatch at seed " + std::to_string(seed);
      return false;
    }
    FunsdDocument funsd2 = parse_funsd(serialize_funsd(f.funsd)).doc;
    if (!(funsd2 == f.funsd)) {
      detail = "annotation serializer round trip failed at seed " +
               std::to_string(seed);
      return false;
    }
    if (!(parse_treeform(serialize_treeform(f.treeform)) == f.treeform)) {
      detail = "tree serializer round trip failed at seed " +
               std::to_string(seed);
      return false;
    }
    if (!(parse_treeform(serialize_treeform(f.treeform, true), true) ==
          f.treeform)) {
      detail = "concise serializer round trip failed at seed " +
               std::to_string(seed);
      return false;
    }
    AggregatedTree agg = build_aggregated_tree(f.funsd);
    if (!(parse_aggregated(serialize_aggregated(agg)) == agg)) {
      detail = "aggregated serializer round trip failed at seed " +
               std::to_string(seed);
      return false;
    }
  }
  return true;
}

// --- 8: noise monotonicity ---------------------------------------------------

bool check_monotonicity(std::string& detail) {
  struct Channel {
    const char* name;
    // rate -> noise spec
    std::function<NoiseSpec(double, std::uint64_t)> noise;
    // scores -> value that must weakly degrade (higher-is-better negated)
    std::function<double(const DocScores&)> badness;
  };
  std::vector<Channel> channels = {
      {"label_flip/labeling_f1",
       [](double r, std::uint64_t s) { return NoiseSpec{.label_flip_rate = r, .seed = s}; },
       [](const DocScores& d) { return -*d.labeling_f1; }},
      {"label_flip/tree_f1",
       [](double r, std::uint64_t s) { return NoiseSpec{.label_flip_rate = r, .seed = s}; },
       [](const DocScores& d) { return -*d.tree_f1; }},
      {"link_drop/linking_f1",
       [](double r, std::uint64_t s) { return NoiseSpec{.link_drop_rate = r, .seed = s}; },
       [](const DocScores& d) { return -*d.linking_f1; }},
      {"link_drop/tree_f1",
       [](double r, std::uint64_t s) { return NoiseSpec{.link_drop_rate = r, .seed = s}; },
       [](const DocScores& d) { return -*d.tree_f1; }},
      {"char_edit/naa",
       [](double r, std::uint64_t s) { return NoiseSpec{.char_edit_rate = r, .seed = s}; },
       [](const DocScores& d) { return *d.naa; }},
      {"char_edit/ganted",
       [](double r, std::uint64_t s) { return NoiseSpec{.char_edit_rate = r, .seed = s}; },
       [](const DocScores& d) { return *d.ganted; }},
  };
  const std::vector<double> rates = {0.0, 0.1, 0.3};
  const double tolerance = 1e-9;
  int trials = 0, held = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SynthConfig cfg;
    cfg.seed = seed * 7919 + 1;
    cfg.sections = {2, 3};
    cfg.qa_per_section = {2, 4};
    SynthForm f = generate(cfg);
    for (const Channel& ch : channels) {
      std::vector<double> bad;
      for (double r : rates) {
        FunsdDocument noisy = perturb(f.funsd, ch.noise(r, seed + 1));
        bad.push_back(ch.badness(evaluate_pair(noisy, f.funsd)));
      }
      for (std::size_t i = 1; i < bad.size(); ++i) {
        ++trials;
        if (bad[i] + tolerance >= bad[i - 1]) ++held;
      }
    }
  }
  double rate = static_cast<double>(held) / trials;
  detail = std::to_string(held) + "/" + std::to_string(trials) +
           " transitions weakly degraded";
  return rate >= 0.95;
}

// --- 9: post-processing fuzz safety -----------------------------------------

nlohmann::json fuzz_json(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> kind(0, depth > 3 ? 3 : 6);
  std::uniform_int_distribution<int> len(0, 3);
  static const std::vector<std::string> keys = {
      "value", "answer", "question", "header", "entry", "", "junk", "名前"};
  std::uniform_int_distribution<std::size_t> pick(0, keys.size() - 1);
  switch (kind(rng)) {
    case 0: return nlohmann::json();
    case 1: return nlohmann::json(rng() % 2 == 0);
    case 2: return nlohmann::json(static_cast<int>(rng() % 100) - 50);
    case 3: return nlohmann::json(keys[pick(rng)]);
    case 4: {
      nlohmann::json arr = nlohmann::json::array();
      int n = len(rng);
      for (int i = 0; i < n; ++i) arr.push_back(fuzz_json(rng, depth + 1));
      return arr;
    }
    default: {
      nlohmann::json obj = nlohmann::json::object();
      int n = len(rng);
      for (int i = 0; i < n; ++i) obj[keys[pick(rng)]] = fuzz_json(rng, depth + 1);
      return obj;
    }
  }
}

bool check_postprocess(std::string& detail) {
  std::mt19937 rng(777);
  for (int i = 0; i < 10000; ++i) {
    nlohmann::json j = fuzz_json(rng, 0);
    auto [doc, report] = repair_treeform(j);
    if (auto err = check_invariants(doc)) {
      detail = "invalid repaired tree at input " + std::to_string(i) + ": " +
               *err;
      return false;
    }
    auto [once, r1] = dedup_leaves(doc);
    auto [twice, r2] = dedup_leaves(once);
    if (!(once == twice)) {
      detail = "dedup not idempotent at input " + std::to_string(i);
      return false;
    }
  }
  return true;
}

// --- 10: aggregation ---------------------------------------------------------

bool check_aggregation(std::string& detail) {
  struct Case {
    std::vector<double> values;
    Aggregation mode;
    double expected;
  };
  std::vector<Case> cases = {
      {{1, 2, 3, 4}, Aggregation::Mean, 2.5},
      {{5, 1, 3}, Aggregation::Median, 3.0},
      {{4, 1, 2, 8}, Aggregation::Median, 3.0},  // even count: middle mean
      {{7}, Aggregation::Median, 7.0},
      {{7}, Aggregation::Mean, 7.0},
      {{0.5, 0.5, 99.5, 99.5}, Aggregation::Median, 50.0},
      {{10, 20, 30, 40, 50}, Aggregation::Median, 30.0},
      {{10, 20, 30, 40, 50}, Aggregation::Mean, 30.0},
  };
  for (std::size_t i = 0; i < cases.size(); ++i) {
    double got = aggregate_values(cases[i].values, cases[i].mode);
    if (got != cases[i].expected) {
      detail = "case " + std::to_string(i) + ": got " + std::to_string(got);
      return false;
    }
  }
  try {
    aggregate_values({}, Aggregation::Median);
    detail = "empty corpus must throw";
    return false;
  } catch (const std::invalid_argument&) {
  }
  return true;
}

}  // namespace

int main() {
  run(1, "golden conversion fixtures", check_golden);
  run(2, "edit distance vs oracle", check_levenshtein);
  run(3, "tree edit distance vs oracle", check_ted);
  run(4, "labeled edge precision/recall", check_tree_f1);
  run(5, "alignment accuracy boundaries", check_naa);
  run(6, "reorder-invariant tree distance", check_ganted);
  run(7, "synthetic round trip", check_round_trip);
  run(8, "noise monotonicity", check_monotonicity);
  run(9, "repair fuzz safety", check_postprocess);
  run(10, "score aggregation", check_aggregation);
  if (g_failures > 0) {
    std::printf("%d criteria failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
