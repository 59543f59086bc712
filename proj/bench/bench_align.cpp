#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "treeform/align.hpp"
#include "treeform/evaluate.hpp"
#include "treeform/synth.hpp"

using namespace treeform;

namespace {

std::vector<std::string> make_texts(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> len(3, 24);
  std::uniform_int_distribution<int> ch('a', 'z');
  std::vector<std::string> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::string s;
    int l = len(rng);
    for (int j = 0; j < l; ++j) s.push_back(static_cast<char>(ch(rng)));
    out.push_back(std::move(s));
  }
  return out;
}

void BM_DistanceMatrixSerial(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto pred = make_texts(n, 1), gt = make_texts(n, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(distance_matrix_serial(pred, gt));
  state.SetComplexityN(n);
}

void BM_DistanceMatrixParallel(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  auto pred = make_texts(n, 1), gt = make_texts(n, 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(distance_matrix_parallel(pred, gt));
  state.SetComplexityN(n);
}

std::vector<DocPair> make_corpus(int docs) {
  SynthConfig cfg;
  cfg.sections = {2, 3};
  cfg.qa_per_section = {2, 4};
  auto forms = generate_corpus(cfg, docs);
  NoiseSpec noise{.label_flip_rate = 0.1, .char_edit_rate = 0.1, .seed = 5};
  std::vector<DocPair> pairs;
  for (int i = 0; i < docs; ++i)
    pairs.push_back({std::to_string(i), perturb(forms[i].funsd, noise),
                     forms[i].funsd});
  return pairs;
}

void BM_EvaluateCorpus(benchmark::State& state) {
  auto pairs = make_corpus(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_corpus(pairs));
}

}  // namespace

BENCHMARK(BM_DistanceMatrixSerial)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_DistanceMatrixParallel)->Arg(64)->Arg(256)->Arg(1024);
BENCHMARK(BM_EvaluateCorpus)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
