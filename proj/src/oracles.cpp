#include "mwc/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <tuple>

#include "mwc/generators.hpp"

namespace mwc {

namespace {

struct SearchOpts {
  int skip_edge = -1;
  Vertex target = -1;
  Dist bound = kInf;  // stop once the frontier reaches this distance
  bool reverse = false;
};

// Dijkstra (or BFS when unit weights) with optional skipped edge and early exit.
std::vector<Dist> search(const Graph& g, Vertex s, const SearchOpts& o, std::vector<Vertex>* parent) {
  const int n = g.n();
  std::vector<Dist> d(n, kInf);
  if (parent) parent->assign(n, -1);
  d[s] = 0;
  auto arcs = [&](Vertex x) { return o.reverse ? g.in(x) : g.out(x); };
  if (g.unweighted()) {
    std::vector<Vertex> q{s};
    for (size_t i = 0; i < q.size(); ++i) {
      Vertex x = q[i];
      if (x == o.target || d[x] >= o.bound) break;
      for (const Arc& a : arcs(x)) {
        if (a.edge == o.skip_edge || d[a.to] != kInf) continue;
        d[a.to] = d[x] + 1;
        if (parent) (*parent)[a.to] = x;
        q.push_back(a.to);
      }
    }
    return d;
  }
  using Item = std::pair<Dist, Vertex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  pq.push({0, s});
  while (!pq.empty()) {
    auto [dx, x] = pq.top();
    pq.pop();
    if (dx > d[x]) continue;
    if (x == o.target || dx >= o.bound) break;
    for (const Arc& a : arcs(x)) {
      if (a.edge == o.skip_edge) continue;
      Dist nd = dx + static_cast<Dist>(a.w);
      if (nd < d[a.to]) {
        d[a.to] = nd;
        if (parent) (*parent)[a.to] = x;
        pq.push({nd, a.to});
      }
    }
  }
  return d;
}

std::vector<Vertex> trace(const std::vector<Vertex>& parent, Vertex s, Vertex t) {
  std::vector<Vertex> path;
  for (Vertex x = t; x != -1; x = parent[x]) {
    path.push_back(x);
    if (x == s) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::vector<Dist> sssp(const Graph& g, Vertex s, std::vector<Vertex>* parent) {
  return search(g, s, {}, parent);
}

std::vector<Dist> sssp_to(const Graph& g, Vertex t) {
  SearchOpts o;
  o.reverse = true;
  return search(g, t, o, nullptr);
}

std::vector<Dist> bfs(const Graph& g, Vertex s, int hop_cap) {
  std::vector<Dist> d(g.n(), kInf);
  d[s] = 0;
  std::vector<Vertex> q{s};
  for (size_t i = 0; i < q.size(); ++i) {
    Vertex x = q[i];
    if (d[x] >= hop_cap) continue;
    for (const Arc& a : g.out(x))
      if (d[a.to] == kInf) {
        d[a.to] = d[x] + 1;
        q.push_back(a.to);
      }
  }
  return d;
}

std::vector<Dist> hop_limited_dijkstra(const Graph& g, Vertex s, int h) {
  std::vector<Dist> d(g.n(), kInf), next;
  d[s] = 0;
  for (int r = 0; r < h; ++r) {
    next = d;
    bool changed = false;
    for (const Edge& e : g.edges()) {
      auto relax = [&](Vertex a, Vertex b) {
        if (d[a] + static_cast<Dist>(e.w) < next[b]) {
          next[b] = d[a] + static_cast<Dist>(e.w);
          changed = true;
        }
      };
      relax(e.u, e.v);
      if (!g.directed()) relax(e.v, e.u);
    }
    d.swap(next);
    if (!changed) break;
  }
  return d;
}

Apsp exact_apsp(const Graph& g) {
  const int n = g.n();
  Apsp a;
  a.n = n;
  a.dist.assign(static_cast<size_t>(n) * n, kInf);
  a.hops.assign(static_cast<size_t>(n) * n, -1);
  using Item = std::tuple<Dist, int, Vertex>;
  for (Vertex s = 0; s < n; ++s) {
    Dist* d = &a.dist[static_cast<size_t>(s) * n];
    int* hp = &a.hops[static_cast<size_t>(s) * n];
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d[s] = 0;
    hp[s] = 0;
    pq.push({0, 0, s});
    while (!pq.empty()) {
      auto [dx, hx, x] = pq.top();
      pq.pop();
      if (dx > d[x] || (dx == d[x] && hx > hp[x])) continue;
      for (const Arc& arc : g.out(x)) {
        Dist nd = dx + static_cast<Dist>(arc.w);
        int nh = hx + 1;
        if (nd < d[arc.to] || (nd == d[arc.to] && nh < hp[arc.to])) {
          d[arc.to] = nd;
          hp[arc.to] = nh;
          pq.push({nd, nh, arc.to});
        }
      }
    }
  }
  return a;
}

std::vector<Dist> floyd_warshall(const Graph& g) {
  const size_t n = g.n();
  std::vector<Dist> d(n * n, kInf);
  for (size_t i = 0; i < n; ++i) d[i * n + i] = 0;
  for (const Edge& e : g.edges()) {
    Dist w = static_cast<Dist>(e.w);
    d[e.u * n + e.v] = std::min(d[e.u * n + e.v], w);
    if (!g.directed()) d[e.v * n + e.u] = std::min(d[e.v * n + e.u], w);
  }
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i) {
      if (d[i * n + k] == kInf) continue;
      for (size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
    }
  return d;
}

OracleReport exact_mwc(const Graph& g) {
  OracleReport r;
  std::vector<Vertex> parent;
  if (g.directed()) {
    // Shortest s->u path closed by an edge (u,s).
    for (Vertex s = 0; s < g.n(); ++s) {
      if (g.in(s).empty() || g.out(s).empty()) continue;
      SearchOpts o;
      o.bound = r.value;
      auto d = search(g, s, o, &parent);
      for (const Arc& a : g.in(s)) {
        Dist c = d[a.to] + static_cast<Dist>(a.w);
        if (c < r.value) {
          r.value = c;
          r.cycle = trace(parent, s, a.to);
        }
      }
    }
  } else {
    // Per-edge removal: d_{G-e}(u,v) + w(e).
    for (int id = 0; id < static_cast<int>(g.m()); ++id) {
      const Edge& e = g.edges()[id];
      if (static_cast<Dist>(e.w) >= r.value) continue;
      SearchOpts o;
      o.skip_edge = id;
      o.target = e.v;
      o.bound = r.value - static_cast<Dist>(e.w);
      auto d = search(g, e.u, o, &parent);
      Dist c = d[e.v] + static_cast<Dist>(e.w);
      if (c < r.value) {
        r.value = c;
        r.cycle = trace(parent, e.u, e.v);
      }
    }
  }
  return r;
}

void for_each_simple_cycle(const Graph& g,
                           const std::function<void(const std::vector<Vertex>&, Weight)>& f) {
  const int n = g.n();
  const size_t min_len = g.directed() ? 2 : 3;
  std::vector<Vertex> path;
  std::vector<char> on(n, 0);
  // Cycles are rooted at their smallest vertex; undirected ones appear in both orientations.
  std::function<void(Vertex, Vertex, Weight)> dfs = [&](Vertex s, Vertex x, Weight w) {
    for (const Arc& a : g.out(x)) {
      if (a.to == s && path.size() >= min_len) {
        f(path, w + a.w);
      } else if (a.to > s && !on[a.to]) {
        on[a.to] = 1;
        path.push_back(a.to);
        dfs(s, a.to, w + a.w);
        path.pop_back();
        on[a.to] = 0;
      }
    }
  };
  for (Vertex s = 0; s < n; ++s) {
    path.assign(1, s);
    on[s] = 1;
    dfs(s, s, 0);
    on[s] = 0;
  }
}

OracleReport enumerate_mwc(const Graph& g) {
  if (g.n() > 14) throw Error(ErrorCode::kInvalidArgument, "enumeration limited to n <= 14");
  OracleReport r;
  for_each_simple_cycle(g, [&](const std::vector<Vertex>& c, Weight w) {
    if (static_cast<Dist>(w) < r.value) {
      r.value = static_cast<Dist>(w);
      r.cycle = c;
    }
  });
  return r;
}

Weight cycle_weight(const Graph& g, const std::vector<Vertex>& c) {
  const size_t k = c.size();
  if (k < (g.directed() ? 2u : 3u)) return -1;
  std::vector<Vertex> s = c;
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) return -1;
  Weight total = 0;
  for (size_t i = 0; i < k; ++i) {
    if (c[i] < 0 || c[i] >= g.n()) return -1;
    Weight w = g.edge_weight(c[i], c[(i + 1) % k]);
    if (w < 0) return -1;
    total += w;
  }
  return total;
}

Dist hop_limited_mwc_oracle(const Graph& g, int h) {
  Dist best = kInf;
  if (g.directed()) {
    for (Vertex s = 0; s < g.n(); ++s) {
      auto d = bfs(g, s, h - 1);
      for (const Arc& a : g.in(s)) best = std::min(best, d[a.to] + 1);
    }
  } else {
    const Graph u = g.as_unweighted();
    for (int id = 0; id < static_cast<int>(g.m()); ++id) {
      const Edge& e = g.edges()[id];
      SearchOpts o;
      o.skip_edge = id;
      o.target = e.v;
      o.bound = std::min<Dist>(h - 1, best - 1);
      auto d = search(u, e.u, o, nullptr);
      best = std::min(best, d[e.v] + 1);
    }
  }
  return best <= h ? best : kInf;
}

Dist hop_limited_mwc_host(const Graph& host, Weight h) {
  Dist g = exact_mwc(host).value;
  return g <= static_cast<Dist>(h) ? g : kInf;
}

bool p_member(const Apsp& a, Vertex v, Vertex y, const std::vector<Vertex>& R) {
  for (Vertex t : R) {
    Dist lhs = a.d(y, t) + 2 * a.d(v, y);
    Dist rhs = a.d(t, y) + 2 * a.d(v, t);
    if (lhs == kInf) return false;
    if (rhs == kInf) continue;
    if (lhs > rhs) return false;
  }
  return true;
}

std::vector<Vertex> brute_force_P(const Apsp& a, Vertex v, const std::vector<Vertex>& R) {
  std::vector<Vertex> P;
  for (Vertex y = 0; y < a.n; ++y)
    if (p_member(a, v, y, R)) P.push_back(y);
  return P;
}

std::vector<std::vector<Vertex>> P_inverse(const std::vector<std::vector<Vertex>>& P, int n) {
  std::vector<std::vector<Vertex>> inv(n);
  for (Vertex v = 0; v < static_cast<Vertex>(P.size()); ++v)
    for (Vertex y : P[v]) inv[y].push_back(v);
  return inv;
}

std::vector<NearEntry> nearest_oracle(const Graph& g, Vertex v, int R, int h) {
  auto support_bfs = [&](Vertex s) {
    std::vector<int> d(g.n(), -1);
    std::vector<Vertex> q{s};
    d[s] = 0;
    for (size_t i = 0; i < q.size(); ++i) {
      Vertex x = q[i];
      if (d[x] >= h) continue;
      for (Vertex y : g.support(x))
        if (d[y] < 0) {
          d[y] = d[x] + 1;
          q.push_back(y);
        }
    }
    return d;
  };
  auto dv = support_bfs(v);
  std::vector<std::pair<int, Vertex>> cand;
  for (Vertex z = 0; z < g.n(); ++z)
    if (dv[z] >= 0) cand.push_back({dv[z], z});
  std::sort(cand.begin(), cand.end());
  if (static_cast<int>(cand.size()) > R) cand.resize(R);
  std::vector<std::vector<int>> du;
  for (Vertex u : g.support(v)) du.push_back(support_bfs(u));
  std::vector<NearEntry> out;
  for (auto [d, z] : cand) {
    Vertex p = -1;
    if (z != v) {
      auto nb = g.support(v);
      for (size_t i = 0; i < nb.size(); ++i)
        if (du[i][z] == d - 1) {
          p = nb[i];
          break;
        }
    }
    out.push_back({z, d, p});
  }
  return out;
}

int classify_directed(const Graph& g, const std::vector<Vertex>& C, double h,
                      const std::vector<std::vector<Vertex>>& P, const std::vector<char>& inZ) {
  Weight w = cycle_weight(g, C);
  if (static_cast<double>(w) >= h) return 1;
  bool z_hits = std::any_of(C.begin(), C.end(), [&](Vertex x) { return inZ[x] != 0; });
  for (Vertex v : C) {
    const auto& pv = P[v];
    bool inside = std::all_of(C.begin(), C.end(), [&](Vertex x) {
      return std::binary_search(pv.begin(), pv.end(), x);
    });
    if (inside) return z_hits ? 3 : 4;
  }
  return 2;
}

std::string classify_girth(const std::vector<Vertex>& C, const std::vector<std::vector<Vertex>>& Q) {
  bool all_inside = true;
  bool at_most_one = true;
  for (Vertex v : C) {
    int outside = 0;
    for (Vertex x : C)
      if (!std::binary_search(Q[v].begin(), Q[v].end(), x)) ++outside;
    if (outside > 0) all_inside = false;
    if (outside > 1) at_most_one = false;
  }
  if (C.size() % 2 == 0) return all_inside ? "1.a" : at_most_one ? "1.b" : "1.c";
  return all_inside ? "2.a" : "2.b";
}

std::vector<Dist> scaled_hop_estimate(const Graph& g, Vertex s, int h, double eps) {
  std::vector<Dist> best(g.n(), kInf);
  const double hstar = (1.0 + 2.0 / eps) * h;
  const int levels = scale_levels(h, g.max_weight());
  for (int i = 1; i <= levels; ++i) {
    Graph gi = scale_graph(g, i, h, eps);
    auto di = hop_limited_dijkstra(gi, s, h);
    const double back = eps * std::ldexp(1.0, i) / (2.0 * h);
    for (Vertex v = 0; v < g.n(); ++v)
      if (di[v] <= hstar) best[v] = std::min(best[v], back * di[v]);
  }
  return best;
}

}  // namespace mwc
