#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>
#include <string>
#include <vector>

#include "absreuse/kernels.hpp"

namespace {

using absreuse::Sentence;

std::vector<Sentence> random_sentences(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> word(0, 1999);
  std::uniform_int_distribution<int> len(8, 30);
  std::vector<Sentence> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string text;
    const int words = len(rng);
    for (int w = 0; w < words; ++w) {
      if (w) text += ' ';
      text += "w" + std::to_string(word(rng));
    }
    text += '.';
    out.push_back(absreuse::make_sentence(text, absreuse::StopWordList::builtin()));
  }
  return out;
}

struct Article {
  std::vector<Sentence> abstract;
  std::vector<Sentence> body;
};

Article make_article(std::size_t body_len) {
  std::mt19937_64 rng(42);
  Article a{random_sentences(10, rng), random_sentences(body_len, rng)};
  a.abstract[0] = a.body[body_len / 2];
  a.abstract[3] = a.body[body_len - 1];
  return a;
}

void BM_Reference(benchmark::State& state) {
  const Article a = make_article(static_cast<std::size_t>(state.range(0)));
  const absreuse::MatchConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(absreuse::match_article_reference(a.abstract, {}, a.body, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 10);
}

void BM_Parallel(benchmark::State& state) {
  const Article a = make_article(static_cast<std::size_t>(state.range(0)));
  const absreuse::MatchConfig cfg;
  omp_set_num_threads(static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(absreuse::match_article_parallel(a.abstract, {}, a.body, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 10);
}

}  // namespace

BENCHMARK(BM_Reference)->Arg(50)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->ArgsProduct({{50, 200, 800}, {1, 2, 4, 8}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
