// Threaded kernels against their serial references. Thread count follows OMP_NUM_THREADS.
#include <benchmark/benchmark.h>

#include "qp/verifier.hpp"

using namespace qp;

namespace {

// A wide input: the sum of the test battery at degree >= -3 on a level-two sl3 module.
struct WordInput {
  ModuleHandle h = ModuleHandle::make(2, 1, 1, 1, 7);
  ModuleVector v;
  const std::vector<VertexWord>* words = nullptr;
  WordInput() {
    for (const auto& b : test_battery(h)) v.add(b, Scalar(1));
    words = &compile_qp(h, Flavor::Type1, 2, 2);
  }
};

const WordInput& word_input() {
  static const WordInput in;
  return in;
}

void BM_ApplyWordsParallel(benchmark::State& st) {
  const auto& in = word_input();
  for (auto _ : st) benchmark::DoNotOptimize(apply_words(in.h, *in.words, static_cast<int>(st.range(0)), in.v));
}
void BM_ApplyWordsSerial(benchmark::State& st) {
  const auto& in = word_input();
  for (auto _ : st) benchmark::DoNotOptimize(apply_words_serial(in.h, *in.words, static_cast<int>(st.range(0)), in.v));
}

void main_theorem(benchmark::State& st, bool parallel) {
  auto h = ModuleHandle::make(2, 1, 0, 1, 0);
  MainOptions opt;
  opt.parallel = parallel;
  for (auto _ : st) benchmark::DoNotOptimize(check_main_theorem(h, static_cast<int>(st.range(0)), opt));
}
void BM_MainTheoremParallel(benchmark::State& st) { main_theorem(st, true); }
void BM_MainTheoremSerial(benchmark::State& st) { main_theorem(st, false); }

}  // namespace

BENCHMARK(BM_ApplyWordsParallel)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ApplyWordsSerial)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MainTheoremParallel)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MainTheoremSerial)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
