#include <benchmark/benchmark.h>

#include "dqa/algebra.hpp"

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  return 0;
}
