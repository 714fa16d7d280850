#pragma once

#include <cstdint>
#include <vector>

#include "mwc/graph.hpp"

namespace mwc {

// Each ordered (directed) or unordered pair is an edge independently, so the
// expected edge count is n * avg_degree / 2. With `connected`, a random
// spanning tree is laid down first.
Graph gen_random(int n, double avg_degree, bool directed, Weight W, uint64_t seed,
                 bool connected = false);

struct PlantedOptions {
  double avg_degree = 3.0;
  // Background weight range; 0 picks {1} for unit cycles, else {cycle_weight..2*cycle_weight}.
  Weight bg_lo = 0;
  Weight bg_hi = 0;
};

struct Planted {
  Graph g;
  std::vector<Vertex> cycle;
};

// A connected graph whose minimum weight cycle has the requested hop length
// and weight. Certified by the exact oracle; retries up to 16 seed offsets.
Planted gen_planted_cycle(int n, int cycle_len, Weight cycle_weight, bool directed, uint64_t seed,
                          const PlantedOptions& opt = {});

struct Stretched {
  Graph g;
  int host_n = 0;
  std::vector<int32_t> host_edge;   // per stretched vertex: host edge id, -1 for host vertices
  std::vector<Vertex> owner;        // host vertex simulating each stretched vertex
  std::vector<int32_t> edge_origin; // per stretched edge: host edge id
};

// Replaces every weight-w edge by a w-edge unweighted path.
Stretched stretch_graph(const Graph& g);

// ceil(2 h w / (eps 2^i)).
Weight scale_weight(Weight w, int h, double eps, int i);
// Number of scaling levels, ceil(log2(h W)) and at least 1.
int scale_levels(int h, Weight W);
Graph scale_graph(const Graph& g, int i, int h, double eps);

}  // namespace mwc
