// Serial reference kernels against the OpenMP versions.
#include <benchmark/benchmark.h>

#include <cmath>

#include "npspec/npops.hpp"
#include "npspec/transmission.hpp"

using namespace npspec;

namespace {

MeshPtr ellipse(int n) { return build_mesh(make_ellipse(2, 1, 16), n); }
MeshPtr square(int n) { return build_mesh(make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, 16).first, n); }

template <BoundaryOperatorMatrix (*Assemble)(const MeshPtr&), MeshPtr (*Make)(int)>
void bm_assemble(benchmark::State& state) {
    const MeshPtr m = Make(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Assemble(m).entries.data());
    state.SetComplexityN(state.range(0));
}

std::vector<Vec2> grid(int n) {
    std::vector<Vec2> pts;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) pts.emplace_back(-1.2 + 2.4 * i / (n - 1), -0.6 + 1.2 * j / (n - 1));
    return pts;
}

template <FieldSample (*Evaluate)(const TransmissionSolution&, const std::vector<Vec2>&)>
void bm_field(benchmark::State& state) {
    const auto sol = solve_transmission(ellipse(256), 3.0, IncidentField::linear({1, 0}));
    const auto pts = grid(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(Evaluate(sol, pts).values.data());
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(pts.size()));
}

}  // namespace

BENCHMARK(bm_assemble<assemble_single_layer, ellipse>)->Name("single_layer/ellipse/parallel")->Arg(256)->Arg(512);
BENCHMARK(bm_assemble<reference::assemble_single_layer, ellipse>)->Name("single_layer/ellipse/serial")->Arg(256)->Arg(512);
BENCHMARK(bm_assemble<assemble_adj_double_layer, ellipse>)->Name("adjoint_double_layer/ellipse/parallel")->Arg(256)->Arg(512);
BENCHMARK(bm_assemble<reference::assemble_adj_double_layer, ellipse>)->Name("adjoint_double_layer/ellipse/serial")->Arg(256)->Arg(512);
BENCHMARK(bm_assemble<assemble_adj_double_layer, square>)->Name("adjoint_double_layer/square/parallel")->Arg(256);
BENCHMARK(bm_assemble<reference::assemble_adj_double_layer, square>)->Name("adjoint_double_layer/square/serial")->Arg(256);
BENCHMARK(bm_field<evaluate_field>)->Name("field/parallel")->Arg(32);
BENCHMARK(bm_field<reference::evaluate_field>)->Name("field/serial")->Arg(32);

BENCHMARK_MAIN();
