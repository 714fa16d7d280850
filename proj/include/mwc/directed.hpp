#pragma once

#include <string>
#include <vector>

#include "mwc/sssp.hpp"

namespace mwc {

struct DirectedOptions {
  uint64_t seed = 1;
  double sample_factor = 3.0;     // p = sample_factor * log^3 n / h
  int64_t phase_cap_factor = 8;   // cap = phase_cap_factor * log n
  int64_t cap_override = 0;       // > 0 pins the per-phase cap (forced overflow)
  bool witness = false;           // parent word on restricted-BFS messages
  const std::vector<Vertex>* forced_S = nullptr;
  double sssp_sample_factor = 3.0;  // inner k-source pipeline
};

// How a finite mu_v was obtained.
enum class CycleKind : int8_t { kNone = 0, kSample = 1, kRestricted = 2, kOverflow = 3 };

struct CycleCert {
  CycleKind kind = CycleKind::kNone;
  Vertex anchor = -1;  // sampled vertex, restricted-BFS source or overflow vertex
  Vertex from = -1;    // closing edge (from, anchor); the path runs anchor -> from
};

struct Reach {
  Vertex source;
  Dist d;
  Vertex parent;
};

struct DirectedResult {
  Dist mu = kInf;
  std::vector<Dist> mu_v;
  std::vector<CycleCert> cert;
  std::vector<Vertex> S;
  std::vector<std::vector<Vertex>> R;   // per vertex, members of S
  std::vector<char> inZ;
  std::vector<std::vector<Reach>> reached;  // per receiving node
  DistanceTable z_table;                    // h-hop search from Z
  int64_t h = 0, rho = 0, beta = 0, cap = 0, phase_len = 0, phases = 0;
  int64_t hop_bound = 0;  // restricted BFS depth
  double N = 0;           // vertex count the parameters are computed from

  int64_t z_count() const;
};

// 2-approximate minimum weight cycle of a directed unweighted graph.
DirectedResult mwc_directed_unweighted(Engine& e, const Graph& g, const DirectedOptions& o);

// The same algorithm on the stretched graph of a weighted digraph (each edge a
// chain of w unit edges), restricted to cycles of at most h_cap stretched hops.
// Candidates heavier than 2 h_cap are dropped.
DirectedResult hop_limited_mwc_directed(Engine& e, const Graph& host, int64_t h_cap, const DirectedOptions& o);

// Local R(v) construction from sample distances. to_s[v][si] = d(v, S[si]),
// ss[si * |S| + ti] = d(S[si], S[ti]). Returns indices into S.
std::vector<int32_t> build_R(Vertex v, const std::vector<Dist>& to_s_v, const std::vector<Dist>& ss, size_t ns,
                             int beta, uint64_t seed);

// Membership predicate with the infinity rule: an infinite left side fails,
// an infinite right side alone passes.
bool sample_predicate(Dist lhs, Dist rhs);

// Closed walk behind cert[v] for restricted and overflow kinds (first vertex
// repeated at the end), empty otherwise.
std::vector<Vertex> witness_walk(const DirectedResult& r, Vertex v);

// Case label 1..4 of a minimum cycle C for this run, using exact P(v) sets.
int classify_run(const Graph& g, const DirectedResult& r, const std::vector<Vertex>& C);

}  // namespace mwc
