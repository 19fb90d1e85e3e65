#include <benchmark/benchmark.h>

#include "mes/clone.hpp"
#include "mes/free_algebra.hpp"
#include "mes/parser.hpp"
#include "mes/term_monad.hpp"

namespace {

const char* kSemilattice = R"(name semilattice
sig meet/2
ax comm:  forall x y.   meet(x,y) = meet(y,x)
ax assoc: forall x y z. meet(meet(x,y),z) = meet(x,meet(y,z))
ax idem:  forall x.     meet(x,x) = x
)";

void BM_KleisliCompose(benchmark::State& state) {
  mes::Presentation p = mes::parse_presentation(kSemilattice);
  mes::FinSet a({"x", "y"});
  auto pool = mes::enumerate_terms(p.signature, a, 2);
  mes::KleisliMap w1{a, a, {{"x", pool[pool.size() - 1]}, {"y", pool[3]}}};
  mes::KleisliMap w2{a, a, {{"x", pool[2]}, {"y", pool[pool.size() - 2]}}};
  for (auto _ : state)
    benchmark::DoNotOptimize(mes::kleisli_compose(w1, w2));
}
BENCHMARK(BM_KleisliCompose);

void BM_FreeSemilattice(benchmark::State& state) {
  mes::Presentation p = mes::parse_presentation(kSemilattice);
  mes::FinSet gens({"a", "b"});
  for (auto _ : state)
    benchmark::DoNotOptimize(mes::build_free_algebra(p, gens, 3));
}
BENCHMARK(BM_FreeSemilattice);

void BM_CloneMultDual(benchmark::State& state) {
  mes::FinSet x({"0", "1"});
  mes::FinSet a({"a0", "a1"});
  for (auto _ : state)
    benchmark::DoNotOptimize(mes::clone_mult_dual(x, a));
}
BENCHMARK(BM_CloneMultDual);

void BM_DecideSemilattice(benchmark::State& state) {
  mes::Presentation p = mes::parse_presentation(kSemilattice);
  mes::Equation e =
      mes::parse_equation(p.signature, "meet(x,meet(y,x)) = meet(x,y)");
  for (auto _ : state)
    benchmark::DoNotOptimize(mes::decide(p, e, 3, 2));
}
BENCHMARK(BM_DecideSemilattice);

}  // namespace

BENCHMARK_MAIN();
