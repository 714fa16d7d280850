#pragma once

#include <string>
#include <vector>

#include "mwc/primitives.hpp"

namespace mwc {

// Independent coins with probability p, one per vertex, from (seed, label).
std::vector<Vertex> sample_vertices(int n, double p, uint64_t seed, uint64_t label);

struct SkeletonEdge {
  int32_t s, t;  // indices into SkeletonGraph::vertices
  Dist w;
};

struct SkeletonGraph {
  std::vector<Vertex> vertices;
  std::vector<SkeletonEdge> edges;
  int64_t h = 0;
};

enum class Provider { kExactShortcut, kNull };

struct SsspOptions {
  uint64_t seed = 1;
  double eps = 0.25;
  double sample_factor = 3.0;  // p = sample_factor * log n / h
  int64_t phase_cap_factor = 8;
  Provider provider = Provider::kExactShortcut;
  TagKind tag = TagKind::kNone;  // kFirstHop carries f(u, v) through the pipeline
};

struct SsspResult {
  DistanceTable table;
  std::vector<Vertex> S;
  int64_t h = 0;
  SkeletonGraph skeleton;  // before hopset edges
  int delay_attempts = 0;
};

// Exact directed BFS from k >= n^{1/3} sources (unweighted digraphs).
SsspResult ksource_bfs_exact(Engine& e, const Graph& g, const std::vector<Vertex>& U, const SsspOptions& o);

// The same pipeline without the k >= n^{1/3} precondition; `approx` switches
// every hop-bounded search to the scaled (1 + eps/4) version.
SsspResult multisource_sssp(Engine& e, const Graph& g, const std::vector<Vertex>& U, const SsspOptions& o,
                            bool approx, const std::string& prefix = "sssp");

// (1+eps)-approximate h-hop distances from U. Exact on unweighted graphs.
// Reported values satisfy d <= reported <= (1+eps) d_h for pairs with an
// h-hop path; pairs without one may still get an upper bound or stay kInf.
DistanceTable approx_hop_sssp(Engine& e, const Graph& g, const std::vector<Vertex>& U, int64_t h, double eps,
                              Direction dir = Direction::kForward, TagKind tag = TagKind::kNone,
                              const std::string& name = "approx_hop_sssp");

// (1+eps)-approximate k-source SSSP, k >= n^{1/3}.
SsspResult ksource_sssp_approx(Engine& e, const Graph& g, const std::vector<Vertex>& U, const SsspOptions& o);

// Source-to-skeleton distances by broadcast waves: init holds the (u, s) entry
// edges, steps bounds the largest distance explored (integer weights).
// Returns dist[u * |S| + s], kInf where not reached.
std::vector<Dist> skeleton_hop_bfs(Engine& e, const SkeletonGraph& skel, int k,
                                   const std::vector<SkeletonEdge>& init, int64_t steps,
                                   const std::string& name = "skeleton_bfs");

struct ParamChoice {
  int64_t S = 1;
  int64_t h = 1;
  int regime = 1;  // table row 1..4
  double S_real = 1, h_real = 1;
};

ParamChoice choose_params(double n, double k, double D);

// Approximate k-source SSSP for 1 <= k < n^{1/3} with a hopset provider.
SsspResult ksource_small_k(Engine& e, const Graph& g, const std::vector<Vertex>& U, const SsspOptions& o);

}  // namespace mwc
