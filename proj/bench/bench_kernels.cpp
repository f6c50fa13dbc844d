// Serial (jobs=1) vs OpenMP (jobs=0) for the parallel kernels.

#include <benchmark/benchmark.h>

#include "theta4/io.hpp"
#include "theta4/theta.hpp"

using namespace theta4;

namespace {

std::string data_file(const std::string& name) { return std::string(THETA4_DATA_DIR) + "/" + name; }

struct Example {
  delpezzo::PointConfig cfg;
  delpezzo::AnticanonicalData data;
  delpezzo::SpaceSextic curve;
  std::vector<delpezzo::Tritangent> tris;
  theta::RiemannMatrix tau;
};

const Example& example() {
  static const Example e = [] {
    Example x;
    x.cfg = delpezzo::validate_general_position(io::points_from_json(io::read_json_file(data_file("delpezzo8_points.json"))));
    x.data = delpezzo::anticanonical_basis(x.cfg);
    x.curve = delpezzo::build_curve(x.data);
    x.tris = delpezzo::tritangents(x.cfg, x.data, 1);
    x.tau = io::riemann_from_json(io::read_json_file(data_file("delpezzo8_riemann.json")));
    return x;
  }();
  return e;
}

void BM_Tritangents(benchmark::State& st) {
  const auto& e = example();
  for (auto _ : st) benchmark::DoNotOptimize(delpezzo::tritangents(e.cfg, e.data, static_cast<int>(st.range(0))));
}

void BM_Contacts(benchmark::State& st) {
  const auto& e = example();
  for (auto _ : st) benchmark::DoNotOptimize(contact::all_contacts(e.tris, e.curve, 60, static_cast<int>(st.range(0))));
}

void BM_ThetaConstants(benchmark::State& st) {
  const auto& e = example();
  for (auto _ : st) benchmark::DoNotOptimize(theta::all_theta_constants(e.tau, 8, static_cast<int>(st.range(0))));
}

}  // namespace

BENCHMARK(BM_Tritangents)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Contacts)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ThetaConstants)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
