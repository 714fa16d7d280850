#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mwc/graph.hpp"

namespace mwc {

// Sequential single-source shortest paths (BFS when unweighted, Dijkstra
// otherwise). parent[v] is the predecessor on the chosen path, -1 at s.
std::vector<Dist> sssp(const Graph& g, Vertex s, std::vector<Vertex>* parent = nullptr);
// Same on the reversed graph: result[v] = d(v, t).
std::vector<Dist> sssp_to(const Graph& g, Vertex t);
// Hop-bounded BFS on an unweighted graph; entries beyond `hop_cap` are kInf.
std::vector<Dist> bfs(const Graph& g, Vertex s, int hop_cap);
// d_h(s, .) by h rounds of Bellman-Ford.
std::vector<Dist> hop_limited_dijkstra(const Graph& g, Vertex s, int h);

struct Apsp {
  int n = 0;
  std::vector<Dist> dist;
  std::vector<int> hops;  // hop count of a minimum-hop shortest path, -1 if unreachable
  Dist d(Vertex u, Vertex v) const { return dist[static_cast<size_t>(u) * n + v]; }
  int hop(Vertex u, Vertex v) const { return hops[static_cast<size_t>(u) * n + v]; }
};

Apsp exact_apsp(const Graph& g);
std::vector<Dist> floyd_warshall(const Graph& g);

struct OracleReport {
  Dist value = kInf;
  std::vector<Vertex> cycle;  // vertex sequence, closing edge implied
  std::string label;
};

OracleReport exact_mwc(const Graph& g);
// Exhaustive simple-cycle enumeration; n <= 14 only.
OracleReport enumerate_mwc(const Graph& g);
void for_each_simple_cycle(const Graph& g,
                           const std::function<void(const std::vector<Vertex>&, Weight)>& f);
// Weight of `cycle` if it is a simple cycle of g, else -1.
Weight cycle_weight(const Graph& g, const std::vector<Vertex>& cycle);
// Minimum hop length over simple cycles with at most h hops (unweighted input).
Dist hop_limited_mwc_oracle(const Graph& g, int h);
// Minimum weight over cycles of weight at most h in a weighted host, i.e. the
// h-hop limited MWC of its stretched graph.
Dist hop_limited_mwc_host(const Graph& host, Weight h);

// y in P(v) for the constraint set R (membership predicate over exact distances).
bool p_member(const Apsp& a, Vertex v, Vertex y, const std::vector<Vertex>& R);
std::vector<Vertex> brute_force_P(const Apsp& a, Vertex v, const std::vector<Vertex>& R);
std::vector<std::vector<Vertex>> P_inverse(const std::vector<std::vector<Vertex>>& P, int n);

struct NearEntry {
  Vertex z;
  int d;
  Vertex parent;  // neighbour of v on a shortest v-z path, -1 for z = v
};
// The R nearest vertices of v within h hops on the support, ordered by (d, id).
std::vector<NearEntry> nearest_oracle(const Graph& g, Vertex v, int R, int h);

// Directed short-cycle classification of witness C.
//   1: w(C) >= h; 4: C inside some P(v) with no vertex in Z;
//   3: C inside some P(v) but Z hits C; 2: otherwise.
int classify_directed(const Graph& g, const std::vector<Vertex>& C, double h,
                      const std::vector<std::vector<Vertex>>& P, const std::vector<char>& inZ);

// Girth classification of witness C against the neighbourhoods Q(v) (sorted).
// Returns "1.a", "1.b", "1.c" for even length, "2.a", "2.b" for odd.
std::string classify_girth(const std::vector<Vertex>& C,
                           const std::vector<std::vector<Vertex>>& Q);

// Sequential scaled estimate min_i { eps 2^i / 2h * d^i(s, .) : d^i <= (1+2/eps) h },
// with d^i the h-hop limited distance in the level-i scaled graph.
std::vector<Dist> scaled_hop_estimate(const Graph& g, Vertex s, int h, double eps);

}  // namespace mwc
