// Minimal tour: build the Poincare disk, Mann-iterate the metric projection
// onto a diameter segment, and verify the shadow metastability bound.
//
//   ./shadow_demo [seed]

#include <cstdio>
#include <cstdlib>

#include "ucw/shadow.hpp"

using namespace ucw;

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 7;

  ModelParams params;
  params.kind = ModelKind::poincare;
  params.r_sample = 0.9;
  const ModelSpace disk = instantiate_model(params);
  const auto& sp = static_cast<const PoincareDisk&>(*disk.space);

  const auto segment =
      segment_set(disk.space, sp.make({-0.5, 0}), sp.make({0.5, 0}), "diameter segment");

  MappingSpec P;
  P.name = "segment_projection";
  P.apply = [&](const Point& p) { return project(*disk.space, segment, p); };
  P.sample_fixed_point = segment.sample_witness;

  auto trace = mann_iteration(disk.space, P, sp.make({0.3, 0.5}), [](Index) { return 0.5; });
  const double b =
      disk.space->dist(trace.at(0), project(*disk.space, segment, trace.at(0))) * 1.05;

  const CounterFn g{"const8", [](Index) { return Index{8}; }};
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    const auto rep = fejer_shadow_metastability(disk, segment, trace, b, eps, g, seed);
    std::printf("eps=%-7g status=%-10s found_N=%llu bound=%llu%s window=[%llu,%llu] osc=%.3g\n",
                eps, to_string(rep.status), static_cast<unsigned long long>(rep.found_N),
                static_cast<unsigned long long>(rep.theoretical_bound),
                rep.bound_capped ? "(capped)" : "",
                static_cast<unsigned long long>(rep.found_N),
                static_cast<unsigned long long>(rep.window_end), rep.max_oscillation);
  }
  return 0;
}
