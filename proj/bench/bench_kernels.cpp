// Times the OpenMP kernels against their serial paths (jobs=1) on a mid-size
// Kautz-collapse instance plus one small search.  Not a test; run manually.
#include <chrono>
#include <cstdio>
#include <functional>

#include "mgx/certify.hpp"
#include "mgx/constructions.hpp"
#include "mgx/graph.hpp"
#include "mgx/search.hpp"

namespace {

double time_of(const std::function<void()>& fn, int reps) {
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-28s %10.4fs %10.4fs %8.2fx\n", name, serial, parallel,
              parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
  mgx::MixedGraph g = mgx::kautz_collapse(10);  // 132 vertices
  std::printf("kautz_collapse(10): n=%d, %zu edges, %zu arcs\n", g.order(), g.edges().size(),
              g.arcs().size());
  std::printf("%-28s %11s %11s %9s\n", "kernel", "serial", "parallel", "speedup");

  row("nbt_walk_matrix k=2", time_of([&] { mgx::nbt_walk_matrix(g, 2, 1); }, 5),
      time_of([&] { mgx::nbt_walk_matrix(g, 2, 0); }, 5));
  row("nbt_walk_matrix k=4", time_of([&] { mgx::nbt_walk_matrix(g, 4, 1); }, 3),
      time_of([&] { mgx::nbt_walk_matrix(g, 4, 0); }, 3));
  row("diameter", time_of([&] { mgx::diameter(g, 1); }, 5),
      time_of([&] { mgx::diameter(g, 0); }, 5));
  row("is_k_geodetic k=2", time_of([&] { mgx::is_k_geodetic(g, 2, 1); }, 5),
      time_of([&] { mgx::is_k_geodetic(g, 2, 0); }, 5));

  mgx::SearchSpec spec;
  spec.r = 2;
  spec.z = 1;
  spec.k = 2;
  spec.mode = mgx::Mode::excess;
  spec.slack = 1;
  spec.assume_total_regular = true;
  spec.enumerate_all = true;
  spec.jobs = 1;
  double s = time_of([&] { mgx::search_extremal(spec); }, 1);
  spec.jobs = 0;
  double p = time_of([&] { mgx::search_extremal(spec); }, 1);
  row("search (2,1,2) excess 1", s, p);
  return 0;
}
