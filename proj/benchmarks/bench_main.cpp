#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "simval/monitor.hpp"
#include "simval/parser.hpp"
#include "simval/project.hpp"

using namespace simval;

namespace {

Alphabet bench_alphabet(int n_vars) {
  std::vector<VariableDecl> vars;
  for (int i = 0; i < n_vars; ++i)
    vars.push_back(VariableDecl::real_var("v" + std::to_string(i), "", 0.0, 100.0));
  return Alphabet(std::move(vars));
}

AssertionSet bench_set(const Alphabet& sigma, unsigned seed, int n_boxes) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(0.0, 100.0);
  std::uniform_int_distribution<std::size_t> pick(0, sigma.size() - 1);
  std::vector<Box> boxes;
  for (int b = 0; b < n_boxes; ++b) {
    Box box;
    for (int k = 0; k < 2; ++k) {
      const VariableDecl& decl = sigma.vars()[pick(rng)];
      double x = value(rng), y = value(rng);
      box[decl.name] = Interval{std::min(x, y), std::max(x, y), false, false};
    }
    boxes.push_back(std::move(box));
  }
  return AssertionSet::from_boxes(sigma, std::move(boxes));
}

std::string project_path() { return std::string(SIMVAL_DATA_DIR) + "/highway_project.json"; }

void BM_set_intersect(benchmark::State& state) {
  Alphabet sigma = bench_alphabet(static_cast<int>(state.range(0)));
  AssertionSet a = bench_set(sigma, 1, 4);
  AssertionSet b = bench_set(sigma, 2, 4);
  for (auto _ : state) benchmark::DoNotOptimize(a.intersect(b));
}
BENCHMARK(BM_set_intersect)->Arg(2)->Arg(4)->Arg(8);

void BM_set_complement(benchmark::State& state) {
  Alphabet sigma = bench_alphabet(static_cast<int>(state.range(0)));
  AssertionSet a = bench_set(sigma, 3, 4);
  for (auto _ : state) benchmark::DoNotOptimize(a.complement());
}
BENCHMARK(BM_set_complement)->Arg(2)->Arg(4)->Arg(8);

void BM_subset_check(benchmark::State& state) {
  Alphabet sigma = bench_alphabet(4);
  AssertionSet a = bench_set(sigma, 4, static_cast<int>(state.range(0)));
  AssertionSet b = bench_set(sigma, 5, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(a.is_subset_of(b));
}
BENCHMARK(BM_subset_check)->Arg(2)->Arg(4)->Arg(8);

void BM_compose_refine(benchmark::State& state) {
  Project p = load_project_file(project_path());
  const Contract& c1 = *p.find_contract("veh_dyn_nominal");
  const Contract& c2 = *p.find_contract("loc_precise_valid");
  const TestCaseSpec& tc = *p.find_test_case("tc_highway");
  Contract target = build_test_case_contract(tc, p.architecture);
  for (auto _ : state) {
    Contract composed = compose(c1, c2);
    auto [sub, super] = equalize_alphabets(composed, target);
    benchmark::DoNotOptimize(refines(sub, super));
  }
}
BENCHMARK(BM_compose_refine);

void BM_configure_example(benchmark::State& state) {
  Project p = load_project_file(project_path());
  const TestCaseSpec& tc = *p.find_test_case("tc_highway");
  for (auto _ : state) benchmark::DoNotOptimize(configure(p.architecture, tc));
}
BENCHMARK(BM_configure_example);

void BM_parse_assertion(benchmark::State& state) {
  Alphabet sigma = bench_alphabet(4);
  std::string text =
      "v0 in [0, 50] & v1 in (10, 90] | !(v2 in [25, 75]) & v3 >= 40 | v0 != 30";
  for (auto _ : state) benchmark::DoNotOptimize(parse_assertion(text, sigma));
}
BENCHMARK(BM_parse_assertion);

void BM_monitor_rows(benchmark::State& state) {
  Project p = load_project_file(project_path());
  const TestCaseSpec& tc = *p.find_test_case("tc_highway");
  SetupAssignment setup;
  setup.model_for_component = {{"ego_vehicle", "veh_bicycle"}, {"localization", "loc_precise"}};
  MonitorSpec spec =
      generate_monitors(p.architecture, setup, build_test_case_contract(tc, p.architecture));

  std::ostringstream csv;
  csv << "time,ego_speed,pos_err,road_type\n";
  for (int i = 0; i < 10000; ++i)
    csv << 0.01 * i << "," << 20 + i % 30 << "," << 0.01 * (i % 19) << ",hw\n";
  Trace trace = load_trace_csv(csv.str(), spec.alphabet);

  for (auto _ : state) {
    MonitorReport report = check_trace(trace, spec);
    benchmark::DoNotOptimize(report);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trace.rows.size()));
}
BENCHMARK(BM_monitor_rows);

}  // namespace

BENCHMARK_MAIN();
