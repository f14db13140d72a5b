// Library kernels against their serial reference versions. Run with
// --benchmark_filter and vary VLT thread counts through the threads argument.

#include <benchmark/benchmark.h>

#include "vlt/beam.hpp"
#include "vlt/parallel.hpp"
#include "vlt/phantom.hpp"
#include "vlt/poisson.hpp"
#include "vlt/radon.hpp"
#include "vlt/reference.hpp"
#include "vlt/star.hpp"
#include "vlt/vline.hpp"

using namespace vlt;

namespace {

const VLineGeometry& geometry() {
    static const VLineGeometry g(Direction::from_angle(0.4), Direction::from_angle(2.3));
    return g;
}

Grid2D grid(int n) { return Grid2D::centered(n, 1.0, geometry().min_r2(1.0)); }

void BM_ForwardL(benchmark::State& state) {
    par::set_threads(static_cast<int>(state.range(1)));
    const Phantom p = make_phantom(PhantomKind::mixed, {0, 0}, 1.0, grid(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(forward_L(p.field, geometry()));
}

void BM_ForwardLSerialReference(benchmark::State& state) {
    const Grid2D g = grid(static_cast<int>(state.range(0)));
    const Phantom p = make_phantom(PhantomKind::mixed, {0, 0}, 1.0, g);
    for (auto _ : state) benchmark::DoNotOptimize(reference::forward_L(p.field, geometry(), 0.5 * g.h));
}

void BM_Radon(benchmark::State& state) {
    par::set_threads(static_cast<int>(state.range(1)));
    const Phantom p = make_phantom(PhantomKind::mixed, {0, 0}, 1.0, grid(static_cast<int>(state.range(0))));
    RadonOptions o;
    o.n_angles = 180;
    for (auto _ : state) benchmark::DoNotOptimize(radon_forward(p.field.f1, o));
}

void BM_RadonSerialReference(benchmark::State& state) {
    const Phantom p = make_phantom(PhantomKind::mixed, {0, 0}, 1.0, grid(static_cast<int>(state.range(0))));
    RadonOptions o;
    o.n_angles = 180;
    for (auto _ : state) benchmark::DoNotOptimize(reference::radon_forward(p.field.f1, o));
}

void BM_Fbp(benchmark::State& state) {
    par::set_threads(static_cast<int>(state.range(1)));
    const Grid2D g = grid(static_cast<int>(state.range(0)));
    const Phantom p = make_phantom(PhantomKind::mixed, {0, 0}, 1.0, g);
    RadonOptions o;
    o.n_angles = 180;
    const Sinogram sg = radon_forward(p.field.f1, o);
    for (auto _ : state) benchmark::DoNotOptimize(fbp_inverse(sg, g));
}

void BM_FbpDirectConvolution(benchmark::State& state) {
    const Grid2D g = grid(static_cast<int>(state.range(0)));
    const Phantom p = make_phantom(PhantomKind::mixed, {0, 0}, 1.0, g);
    RadonOptions o;
    o.n_angles = 180;
    const Sinogram sg = radon_forward(p.field.f1, o);
    for (auto _ : state) benchmark::DoNotOptimize(reference::fbp_inverse_direct(sg, g));
}

void BM_FreeSpaceFft(benchmark::State& state) {
    par::set_threads(static_cast<int>(state.range(1)));
    const Phantom p = make_phantom(PhantomKind::mixed, {0, 0}, 1.0, grid(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(solve_free_space({p.curl, PoissonMode::free_space, 0.0}));
}

void BM_FreeSpaceDirect(benchmark::State& state) {
    const Phantom p = make_phantom(PhantomKind::mixed, {0, 0}, 1.0, grid(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(reference::solve_free_space_direct(p.curl));
}

void BM_PipelineLT(benchmark::State& state) {
    par::set_threads(static_cast<int>(state.range(1)));
    const Phantom p = make_phantom(PhantomKind::mixed, {0, 0}, 1.0, grid(static_cast<int>(state.range(0))));
    const TransformField L = forward_L(p.field, geometry()), T = forward_T(p.field, geometry());
    for (auto _ : state) benchmark::DoNotOptimize(recover_field_LT(L, T, geometry()));
}

void BM_StarInversion(benchmark::State& state) {
    par::set_threads(static_cast<int>(state.range(1)));
    const StarGeometry sg = StarGeometry::equiangular(3);
    const Phantom p = make_phantom(PhantomKind::mixed, {0, 0}, 1.0, Grid2D::centered(static_cast<int>(state.range(0)), 1.0, sg.min_r2(1.0)));
    const TransformField s = forward_star(p.field, sg);
    StarInversionOptions opt;
    opt.n_angles = 180;
    for (auto _ : state) benchmark::DoNotOptimize(invert_star(s, sg, opt));
}

void threads_and_sizes(benchmark::internal::Benchmark* b) {
    for (int n : {64, 128})
        for (int t : {1, 2, 4}) b->Args({n, t});
    b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_ForwardL)->Apply(threads_and_sizes);
BENCHMARK(BM_ForwardLSerialReference)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Radon)->Apply(threads_and_sizes);
BENCHMARK(BM_RadonSerialReference)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Fbp)->Apply(threads_and_sizes);
BENCHMARK(BM_FbpDirectConvolution)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FreeSpaceFft)->Apply(threads_and_sizes);
BENCHMARK(BM_FreeSpaceDirect)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PipelineLT)->Apply(threads_and_sizes);
BENCHMARK(BM_StarInversion)->Apply(threads_and_sizes);

BENCHMARK_MAIN();
