#include <benchmark/benchmark.h>

#include "tikflow/convex_set.hpp"
#include "tikflow/flow.hpp"
#include "tikflow/regpath.hpp"
#include "tikflow/sampling.hpp"

namespace {

using tikflow::ConvexSet;
using tikflow::Vector;

void BM_ProjectBox(benchmark::State& state) {
  const auto n = state.range(0);
  const ConvexSet box = ConvexSet::box(Vector::Zero(n), Vector::Ones(n));
  tikflow::PointSampler sampler(ConvexSet::whole_space(n), 1);
  const Vector x = sampler.next();
  for (auto _ : state) benchmark::DoNotOptimize(box.project(x));
}
BENCHMARK(BM_ProjectBox)->Arg(2)->Arg(16)->Arg(256);

void BM_ProjectBall(benchmark::State& state) {
  const auto n = state.range(0);
  const ConvexSet ball = ConvexSet::ball(Vector::Zero(n), 1.0);
  tikflow::PointSampler sampler(ConvexSet::whole_space(n), 1);
  const Vector x = sampler.next();
  for (auto _ : state) benchmark::DoNotOptimize(ball.project(x));
}
BENCHMARK(BM_ProjectBall)->Arg(2)->Arg(16)->Arg(256);

// Cold solve of F(eps, y) for the line projection; cost grows like 1/eps.
void BM_SolveRegPoint(benchmark::State& state) {
  const double eps = 1.0 / static_cast<double>(state.range(0));
  const auto T = tikflow::ops::projection(
      ConvexSet::hyperplane(tikflow::vec({0.0, 1.0}), 0.0));
  const Vector y = tikflow::vec({3.0, 4.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(tikflow::solve_reg_point(T, eps, y, 1e-10).point);
  }
}
BENCHMARK(BM_SolveRegPoint)->Arg(1)->Arg(16)->Arg(256);

// Plain flow of the line projection over [0, 1] with RK4 h = 1e-3.
void BM_IntegrateRk4(benchmark::State& state) {
  const auto T = tikflow::ops::projection(
      ConvexSet::hyperplane(tikflow::vec({0.0, 1.0}), 0.0));
  const auto problem = tikflow::FlowProblem::plain(T, ConvexSet::whole_space(2));
  const std::vector<double> grid{0.0, 1.0};
  tikflow::IntegratorControls c;
  const Vector x0 = tikflow::vec({3.0, 4.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        tikflow::integrate(problem, x0, 1.0, c, grid).final_state());
  }
}
BENCHMARK(BM_IntegrateRk4);

}  // namespace
BENCHMARK_MAIN();
