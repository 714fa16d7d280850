#include "mwc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <unordered_set>

#include "mwc/oracles.hpp"

namespace mwc {

namespace {

uint64_t key(Vertex u, Vertex v) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(u)) << 32) | static_cast<uint32_t>(v);
}

std::vector<Vertex> permutation(int n, Rng& rng) {
  std::vector<Vertex> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(p[i], p[uniform_u64(rng, i + 1)]);
  return p;
}

// Geometric gap between successes of independent p-coins.
int64_t geometric_skip(Rng& rng, double p) {
  if (p >= 1.0) return 0;
  double u = uniform01(rng);
  if (u <= 0.0) u = 0x1.0p-53;
  return static_cast<int64_t>(std::floor(std::log(u) / std::log1p(-p)));
}

}  // namespace

Graph gen_random(int n, double avg_degree, bool directed, Weight W, uint64_t seed, bool connected) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "gen_random needs n >= 2");
  if (avg_degree < 0) throw Error(ErrorCode::kInvalidArgument, "avg_degree must be >= 0");
  if (W < 1) throw Error(ErrorCode::kInvalidArgument, "W must be >= 1");
  Rng rng(derive_seed(seed, 0x72616e64));
  std::vector<Edge> edges;
  std::unordered_set<uint64_t> have;
  auto add = [&](Vertex u, Vertex v) {
    Vertex a = u, b = v;
    if (!directed && a > b) std::swap(a, b);
    if (!have.insert(key(a, b)).second) return;
    edges.push_back({u, v, uniform_int(rng, 1, W)});
  };
  if (connected) {
    auto perm = permutation(n, rng);
    for (int j = 1; j < n; ++j) {
      Vertex a = perm[uniform_u64(rng, j)], b = perm[j];
      if (directed && coin(rng, 0.5)) std::swap(a, b);
      add(a, b);
    }
  }
  const double p = directed ? avg_degree / (2.0 * (n - 1)) : avg_degree / (n - 1);
  if (p > 0) {
    for (Vertex u = 0; u < n; ++u) {
      // Row u covers v in [0, n) for directed, (u, n) for undirected.
      int64_t v = directed ? 0 : u + 1;
      for (v += geometric_skip(rng, p); v < n; v += 1 + geometric_skip(rng, p))
        if (v != u) add(u, static_cast<Vertex>(v));
    }
  }
  return Graph::from_edges(n, directed, std::move(edges));
}

Planted gen_planted_cycle(int n, int cycle_len, Weight cycle_weight, bool directed, uint64_t seed,
                          const PlantedOptions& opt) {
  if (cycle_len < 3 || cycle_len > n)
    throw Error(ErrorCode::kInvalidArgument, "cycle_len must satisfy 3 <= cycle_len <= n");
  if (cycle_weight < cycle_len)
    throw Error(ErrorCode::kInvalidArgument, "infeasible weight split: cycle_weight < cycle_len");
  Weight lo = opt.bg_lo, hi = opt.bg_hi;
  if (lo <= 0) {
    lo = cycle_weight == cycle_len ? 1 : cycle_weight;
    hi = cycle_weight == cycle_len ? 1 : 2 * cycle_weight;
  }
  hi = std::max(hi, lo);

  for (int attempt = 0; attempt < 16; ++attempt) {
    Rng rng(derive_seed(seed, 0x706c616e, attempt));
    auto perm = permutation(n, rng);
    std::vector<std::vector<std::pair<Vertex, Weight>>> adj(n);
    std::unordered_set<uint64_t> have;
    std::vector<Edge> edges;
    auto add = [&](Vertex u, Vertex v, Weight w) {
      Vertex a = u, b = v;
      if (!directed && a > b) std::swap(a, b);
      have.insert(key(a, b));
      edges.push_back({u, v, w});
      adj[u].push_back({v, w});
      if (!directed) adj[v].push_back({u, w});
    };
    // Random composition of cycle_weight into cycle_len positive parts.
    std::vector<Weight> cuts{0, cycle_weight - cycle_len};
    for (int i = 0; i + 1 < cycle_len; ++i) cuts.push_back(uniform_int(rng, 0, cycle_weight - cycle_len));
    std::sort(cuts.begin(), cuts.end());
    std::vector<Vertex> cycle(perm.begin(), perm.begin() + cycle_len);
    for (int i = 0; i < cycle_len; ++i)
      add(cycle[i], cycle[(i + 1) % cycle_len], 1 + cuts[i + 1] - cuts[i]);
    for (int j = cycle_len; j < n; ++j) {
      Vertex a = perm[uniform_u64(rng, j)], b = perm[j];
      if (directed && coin(rng, 0.5)) std::swap(a, b);
      add(a, b, uniform_int(rng, lo, hi));
    }
    // Extra edge (u,v,w) is admitted only if every cycle it closes weighs >= cycle_weight.
    auto closes_light_cycle = [&](Vertex u, Vertex v, Weight w) {
      const Weight limit = cycle_weight - w;
      if (limit <= 0) return true;
      std::vector<Weight> d(n, -1);
      using Item = std::pair<Weight, Vertex>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      d[v] = 0;
      pq.push({0, v});
      while (!pq.empty()) {
        auto [dx, x] = pq.top();
        pq.pop();
        if (dx != d[x]) continue;
        if (x == u) return true;
        for (auto [y, wy] : adj[x]) {
          Weight nd = dx + wy;
          if (nd < limit && (d[y] < 0 || nd < d[y])) {
            d[y] = nd;
            pq.push({nd, y});
          }
        }
      }
      return false;
    };
    const int64_t target = std::llround(n * opt.avg_degree / 2.0);
    for (int64_t tries = 0; static_cast<int64_t>(edges.size()) < target && tries < 20 * target; ++tries) {
      Vertex u = static_cast<Vertex>(uniform_u64(rng, n));
      Vertex v = static_cast<Vertex>(uniform_u64(rng, n));
      if (u == v) continue;
      Vertex a = u, b = v;
      if (!directed && a > b) std::swap(a, b);
      if (have.count(key(a, b))) continue;
      Weight w = uniform_int(rng, lo, hi);
      if (closes_light_cycle(u, v, w)) continue;
      add(u, v, w);
    }
    Graph g = Graph::from_edges(n, directed, std::move(edges));
    if (exact_mwc(g).value == static_cast<Dist>(cycle_weight)) return {std::move(g), cycle};
  }
  throw Error(ErrorCode::kInternal, "planted cycle could not be certified after 16 attempts");
}

Stretched stretch_graph(const Graph& g) {
  Stretched s;
  s.host_n = g.n();
  int total = g.n();
  for (const Edge& e : g.edges()) {
    if (e.w < 1) throw Error(ErrorCode::kInvalidArgument, "zero-weight edge cannot be stretched");
    total += static_cast<int>(e.w - 1);
  }
  s.host_edge.assign(total, -1);
  s.owner.resize(total);
  for (Vertex v = 0; v < g.n(); ++v) s.owner[v] = v;
  std::vector<Edge> edges;
  Vertex next = g.n();
  for (int32_t id = 0; id < static_cast<int32_t>(g.m()); ++id) {
    const Edge& e = g.edges()[id];
    Vertex prev = e.u;
    for (Weight j = 1; j < e.w; ++j) {
      Vertex x = next++;
      s.host_edge[x] = id;
      s.owner[x] = std::min(e.u, e.v);
      edges.push_back({prev, x, 1});
      s.edge_origin.push_back(id);
      prev = x;
    }
    edges.push_back({prev, e.v, 1});
    s.edge_origin.push_back(id);
  }
  s.g = Graph::from_edges(total, g.directed(), std::move(edges));
  return s;
}

Weight scale_weight(Weight w, int h, double eps, int i) {
  const double x = 2.0 * h * static_cast<double>(w) / (eps * std::ldexp(1.0, i));
  return std::max<Weight>(1, static_cast<Weight>(std::ceil(x - 1e-9 * std::max(1.0, x))));
}

int scale_levels(int h, Weight W) {
  const double target = static_cast<double>(h) * static_cast<double>(std::max<Weight>(W, 1));
  int i = 1;
  while (std::ldexp(1.0, i) < target) ++i;
  return i;
}

Graph scale_graph(const Graph& g, int i, int h, double eps) {
  if (eps <= 0) throw Error(ErrorCode::kInvalidArgument, "eps must be positive");
  if (i < 1) throw Error(ErrorCode::kInvalidArgument, "scaling level must be >= 1");
  std::vector<Weight> w;
  w.reserve(g.m());
  for (const Edge& e : g.edges()) w.push_back(scale_weight(e.w, h, eps, i));
  return g.with_weights(w);
}

}  // namespace mwc
