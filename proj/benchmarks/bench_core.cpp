#include <benchmark/benchmark.h>

#include <cstdint>
#include <map>

#include "dgz/curve.hpp"
#include "dgz/field.hpp"
#include "dgz/galois.hpp"
#include "dgz/pgl.hpp"
#include "dgz/plane.hpp"
#include "dgz/poly.hpp"
#include "dgz/rng.hpp"

namespace {

const dgz::Curve& curve(std::uint32_t q) {
  static std::map<std::uint32_t, dgz::Curve> cache;
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, dgz::Curve::build(q)).first;
  return it->second;
}

void BM_FieldMul(benchmark::State& state) {
  auto F = dgz::FieldCtx::get(3, 1, 12);
  dgz::SeededRng rng(1);
  dgz::Fel a = F->exp(rng.bounded(F->units()));
  dgz::Fel b = F->exp(rng.bounded(F->units()));
  for (auto _ : state) {
    a = F->mul(a, b);
    a = F->add(a, b);
    benchmark::DoNotOptimize(a);
  }
}
BENCHMARK(BM_FieldMul);

void BM_CurveBuild(benchmark::State& state) {
  std::uint32_t q = std::uint32_t(state.range(0));
  for (auto _ : state) {
    dgz::Curve C = dgz::Curve::build(q);
    benchmark::DoNotOptimize(C.degree());
  }
}
BENCHMARK(BM_CurveBuild)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_SubstituteLinear(benchmark::State& state) {
  std::uint32_t q = std::uint32_t(state.range(0));
  const dgz::Curve& C = curve(q);
  const dgz::FieldCtx& F = C.ctx();
  dgz::SeededRng rng(2);
  dgz::ProjPoint P = dgz::random_point(F, 2, rng);
  dgz::Mat3 M = dgz::complete_to_basis(F, P, 2);
  for (auto _ : state) {
    dgz::TriPoly g = dgz::substitute_linear(C.f(), M);
    benchmark::DoNotOptimize(g.term_count());
  }
}
BENCHMARK(BM_SubstituteLinear)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_RestrictToLine(benchmark::State& state) {
  std::uint32_t q = std::uint32_t(state.range(0));
  const dgz::Curve& C = curve(q);
  const dgz::FieldCtx& F = C.ctx();
  dgz::SeededRng rng(3);
  dgz::ProjPoint A = dgz::random_point(F, 2, rng);
  dgz::ProjPoint B = dgz::random_point(F, 2, rng);
  for (auto _ : state) {
    dgz::BinForm g = dgz::restrict_to_line(C.f(), A, B);
    benchmark::DoNotOptimize(g.degree());
  }
}
BENCHMARK(BM_RestrictToLine)->Arg(3)->Arg(4);

void BM_FiberProfile(benchmark::State& state) {
  std::uint32_t q = std::uint32_t(state.range(0));
  const dgz::Curve& C = curve(q);
  const dgz::FieldCtx& F = C.ctx();
  dgz::ProjPoint P = dgz::make_point(F, F.zero(), F.one(), F.zero());
  dgz::ProjLine l = dgz::pencil_through(F, P, 1).front();
  for (auto _ : state) {
    dgz::FiberProfile fp = dgz::fiber_profile(C, P, 0, l);
    benchmark::DoNotOptimize(fp.entries.size());
  }
}
BENCHMARK(BM_FiberProfile)->Arg(2)->Arg(3)->Arg(4);

void BM_InvarianceCheck(benchmark::State& state) {
  std::uint32_t q = std::uint32_t(state.range(0));
  const dgz::Curve& C = curve(q);
  const dgz::FieldCtx& F = C.ctx();
  std::uint32_t t = dgz::table_extension_degree(C, 1);
  const dgz::InvarianceTable& table = dgz::invariance_table(C, t);
  dgz::Mat3 M = dgz::mat_identity(F);
  M[0][1] = F.one();  // a preserving shear: worst case, full grid pass
  for (auto _ : state) {
    auto lam = table.check(M);
    benchmark::DoNotOptimize(lam.has_value());
  }
}
BENCHMARK(BM_InvarianceCheck)->Arg(2)->Arg(3)->Arg(4);

void BM_MultiplicityAt(benchmark::State& state) {
  const dgz::Curve& C = curve(3);
  const dgz::ProjPoint& Q = C.singular_points(2).front();
  for (auto _ : state) {
    dgz::TangentData td = dgz::multiplicity_at(C, Q);
    benchmark::DoNotOptimize(td.multiplicity);
  }
}
BENCHMARK(BM_MultiplicityAt)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
