#pragma once

#include <vector>

#include "mwc/directed.hpp"
#include "mwc/girth.hpp"
#include "mwc/sssp.hpp"

namespace mwc {

struct WeightedOptions {
  uint64_t seed = 1;
  double eps = 0.5;            // target ratio 2 + 2 eps
  double sample_factor = 1.0;  // p = sample_factor * log n / h
  double sssp_sample_factor = 3.0;
  const std::vector<Vertex>* forced_S = nullptr;
  GirthOptions girth;      // per-level settings, seed and forced_S are overridden
  DirectedOptions directed;
};

struct WeightedLevel {
  int i = 0;
  Dist raw = kInf;     // M^i on the stretched scaled graph
  Dist scaled = kInf;  // eps 2^i / 2h * M^i
  bool skipped = false;
};

struct WeightedResult {
  Dist M = kInf;
  Dist M_long = kInf;  // best long-cycle rule value
  std::vector<Dist> M_v;
  std::vector<Vertex> long_v;  // per vertex: sample behind M_v, -1 if none
  std::vector<Vertex> S;
  DistanceTable sssp;  // approximate distances from S (first-hop tags when undirected)
  std::vector<WeightedLevel> levels;
  int64_t h = 0, h_star = 0;
  double eps_in = 0;
};

// (2 + 2 eps)-approximate minimum weight cycle of an undirected weighted graph.
WeightedResult mwc_undirected_weighted(Engine& e, const Graph& g, const WeightedOptions& o);

// The directed counterpart, with the hop-limited directed routine per level.
WeightedResult mwc_directed_weighted(Engine& e, const Graph& g, const WeightedOptions& o);

// Scaled copy of g for level i where weights above `cap` are clipped to cap.
Graph clipped_level(const Graph& g, int i, int64_t h, double eps, Weight cap);

}  // namespace mwc
