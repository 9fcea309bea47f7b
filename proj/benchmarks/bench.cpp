#include <benchmark/benchmark.h>

#include "fra/action.hpp"
#include "fra/compile.hpp"
#include "fra/contract.hpp"
#include "fra/io.hpp"
#include "fra/order.hpp"
#include "fra/trace.hpp"

using namespace fra;

namespace {

Transducer load(const char* name) { return parse_transducer(read_file(std::string(FRA_DATA_DIR "/") + name)).transducer; }

minsky::MinskyMachine tiny() { return parse_machine("states: s1 h\nstart: s1\nfinal: h\ns1: III h\n"); }

void BM_OrderAB(benchmark::State& state) {
  auto g = load("grigorchuk.fra");
  const GroupWord ab = g.word({"a", "b"});
  for (auto _ : state) benchmark::DoNotOptimize(order(g, ab, 1000));
}
BENCHMARK(BM_OrderAB);

void BM_WordProblem(benchmark::State& state) {
  auto g = load("grigorchuk.fra");
  const GroupWord w = g.word({"a", "b"}).power(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(word_problem_fs(g, w));
}
BENCHMARK(BM_WordProblem)->RangeMultiplier(2)->Range(2, 64);

void BM_ActWord(benchmark::State& state) {
  auto g = load("grigorchuk.fra");
  const GroupWord w = g.word({"a", "b", "a", "c", "a", "d"});
  const Word input(static_cast<std::size_t>(state.range(0)), 0);
  for (auto _ : state) benchmark::DoNotOptimize(act_word(g, w, input));
}
BENCHMARK(BM_ActWord)->Range(8, 4096);

void BM_Nucleus(benchmark::State& state) {
  auto g = load("grigorchuk.fra");
  for (auto _ : state) benchmark::DoNotOptimize(nucleus(g, 100000));
}
BENCHMARK(BM_Nucleus);

void BM_OrderLoop(benchmark::State& state) {
  auto c = compile_order(parse_machine("states: s1 h\nstart: s1\nfinal: h\ns1: III s1\n"));
  for (auto _ : state) benchmark::DoNotOptimize(order(c.transducer, c.witness("start"), 500));
}
BENCHMARK(BM_OrderLoop);

void BM_Contractify(benchmark::State& state) {
  auto c = compile_order(tiny());
  for (auto _ : state) benchmark::DoNotOptimize(contractify(c.transducer));
}
BENCHMARK(BM_Contractify)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
