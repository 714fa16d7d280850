#pragma once

#include <vector>

#include "mwc/primitives.hpp"

namespace mwc {

struct GirthOptions {
  uint64_t seed = 1;
  double sample_factor = 1.0;  // p = sample_factor * log n / sqrt(n)
  const std::vector<Vertex>* forced_S = nullptr;
};

enum class GirthRule : int8_t {
  kNone = 0,
  kSampleBfs = 1,  // non-tree edge (a, b) of the search from sample z
  kEdge = 2,       // edge (holder, a), both near z
  kPair = 3,       // neighbours a != b of the holder, both near z
};

struct GirthCert {
  GirthRule rule = GirthRule::kNone;
  Vertex z = -1;
  Vertex a = -1, b = -1;
};

struct GirthResult {
  Dist M = kInf;
  std::vector<Dist> M_v;
  std::vector<GirthCert> cert;
  std::vector<Vertex> S;
  NearTable Q;
  DistanceTable bfs;  // parent-tagged searches from S
  int R = 0;
  int64_t hop_bound = 0;
  double sample_p = 0;
};

// (2 - 1/g)-approximate girth of an undirected unweighted graph.
GirthResult girth_approx(Engine& e, const Graph& g, const GirthOptions& o);

// Approximate h-hop limited minimum cycle of the stretched graph of a weighted
// undirected host, simulated on the host with edge weights as pipe latencies.
// Candidates heavier than 2h are dropped.
GirthResult hop_limited_mwc(Engine& e, const Graph& host, int64_t h, const GirthOptions& o);

// Q(v) as sorted vertex lists, for the case classifier.
std::vector<std::vector<Vertex>> neighbourhoods(const GirthResult& r);

// Closed walk behind cert[v] (first vertex repeated at the end); its weight is M_v.
std::vector<Vertex> girth_witness(const GirthResult& r, const Graph& g, Vertex v);

}  // namespace mwc
