#include "mwc/sssp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>

#include "mwc/generators.hpp"

namespace mwc {

namespace {

constexpr int64_t kFar = int64_t{1} << 62;

int64_t enc(Dist d) { return std::bit_cast<int64_t>(d); }
Dist dec(int64_t x) { return std::bit_cast<Dist>(x); }

int64_t log_ceil(int n) { return static_cast<int64_t>(std::ceil(log2n(n))); }

void require_positive_weights(const Graph& g) {
  if (g.m() > 0 && g.min_weight() < 1) throw Error(ErrorCode::kInvalidArgument, "zero weights are not supported");
}

bool at_least_cbrt(double k, double n) { return k >= std::cbrt(n) * (1 - 1e-12); }

// Dijkstra over a small dense index space.
std::vector<Dist> dijkstra_idx(int N, const std::vector<std::vector<std::pair<int32_t, Dist>>>& adj, int32_t src) {
  std::vector<Dist> d(N, kInf);
  using Item = std::pair<Dist, int32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  d[src] = 0;
  pq.push({0, src});
  while (!pq.empty()) {
    auto [du, u] = pq.top();
    pq.pop();
    if (du > d[u]) continue;
    for (auto [v, w] : adj[u])
      if (du + w < d[v]) {
        d[v] = du + w;
        pq.push({d[v], v});
      }
  }
  return d;
}

std::vector<Dist> skeleton_apsp(int N, const std::vector<SkeletonEdge>& edges) {
  std::vector<std::vector<std::pair<int32_t, Dist>>> adj(N);
  for (const auto& e : edges) adj[e.s].push_back({e.t, e.w});
  std::vector<Dist> out(static_cast<size_t>(N) * N);
  for (int s = 0; s < N; ++s) {
    auto d = dijkstra_idx(N, adj, s);
    std::copy(d.begin(), d.end(), out.begin() + static_cast<size_t>(s) * N);
  }
  return out;
}

struct ReceivedDist {
  int32_t u, t;
  Vertex tag;
  Dist d;
};

// Push d(u,s) down the h-hop trees of S with random delays, then
// combine at every reached node. Overflow restarts the stage with doubled rho.
DistanceTable propagate(Engine& e, const Graph& g, const std::vector<Vertex>& U, const std::vector<Vertex>& S,
                        const DistanceTable& trees, const DistanceTable& from_s, const DistanceTable& direct,
                        const std::vector<Dist>& du_s, const std::vector<Vertex>& du_tag, int64_t h,
                        const SsspOptions& o, const std::string& prefix, int* attempts) {
  const int n = g.n();
  const size_t k = U.size(), ns = S.size();
  DelaySpec d;
  d.trees = &trees;
  for (size_t si = 0; si < ns; ++si)
    for (size_t ui = 0; ui < k; ++ui) {
      const Dist x = du_s[ui * ns + si];
      if (x == kInf) continue;
      // A sampled source has no first hop to hand down; its own h-hop search covers this range.
      if (o.tag == TagKind::kFirstHop && S[si] == U[ui]) continue;
      d.cascades.push_back({static_cast<int32_t>(si), static_cast<int64_t>(ui), enc(x), du_tag[ui * ns + si]});
    }
  const int64_t lg = log_ceil(n);
  d.rho = std::max<int64_t>(1, (static_cast<int64_t>(d.cascades.size()) + lg - 1) / lg);
  d.cap = o.phase_cap_factor * lg;
  d.depth = std::max<int64_t>(1, h);
  d.strict = false;
  DelayResult r;
  for (int attempt = 1;; ++attempt) {
    r = random_delay_schedule(e, g, d, prefix + "-propagate");
    std::vector<Dist> flags(n);
    for (int v = 0; v < n; ++v) flags[v] = r.overflow[v];
    *attempts = attempt;
    if (convergecast(e, flags, Fold::kMax, prefix + "-propagate") == 0) break;
    if (attempt >= 12) throw Error(ErrorCode::kInternal, "random delay scheduling kept overflowing");
    d.rho *= 2;
  }
  DistanceTable out(n, U);
  for (size_t ui = 0; ui < k; ++ui)
    for (Vertex v = 0; v < n; ++v) {
      const size_t at = out.at(ui, v);
      out.dist[at] = direct.dist[at];
      out.hops[at] = direct.hops[at];
      out.tag[at] = direct.tag[at];
    }
  for (Vertex v = 0; v < n; ++v)
    for (int32_t c : r.received[v]) {
      const Cascade& cs = d.cascades[c];
      const Dist sv = from_s.d(cs.tree, v);
      if (sv == kInf) continue;
      const Dist cand = dec(cs.b) + sv;
      const size_t at = out.at(cs.a, v);
      if (cand < out.dist[at]) {
        out.dist[at] = cand;
        out.hops[at] = -1;
        out.tag[at] = static_cast<Vertex>(cs.c);
      }
    }
  return out;
}

}  // namespace

std::vector<Vertex> sample_vertices(int n, double p, uint64_t seed, uint64_t label) {
  std::vector<Vertex> S;
  for (Vertex v = 0; v < n; ++v) {
    Rng rng(derive_seed(seed, label, v));
    if (coin(rng, p)) S.push_back(v);
  }
  return S;
}

DistanceTable approx_hop_sssp(Engine& e, const Graph& g, const std::vector<Vertex>& U, int64_t h, double eps,
                              Direction dir, TagKind tag, const std::string& name) {
  if (!(eps > 0)) throw Error(ErrorCode::kInvalidArgument, "eps must be positive");
  require_positive_weights(g);
  BfsSpec base;
  base.sources = U;
  base.hop_bound = h;
  base.dir = dir;
  base.tag = tag;
  if (g.unweighted()) return multi_bfs(e, g, base, name);
  const int hi = static_cast<int>(std::min<int64_t>(h, 1 << 30));
  const int levels = scale_levels(hi, g.max_weight());
  const int64_t hstar = static_cast<int64_t>(std::ceil((1 + 2 / eps) * static_cast<double>(h) - 1e-9));
  DistanceTable out(g.n(), U);
  std::vector<Weight> w(g.m());
  for (int i = 1; i <= levels; ++i) {
    for (size_t j = 0; j < g.m(); ++j) w[j] = scale_weight(g.edges()[j].w, hi, eps, i);
    BfsSpec s = base;
    s.pipes = true;
    s.weights = &w;
    s.hop_bound = hstar;
    DistanceTable t = multi_bfs(e, g, s, name);
    const double back = eps * std::ldexp(1.0, i) / (2.0 * static_cast<double>(h));
    for (size_t c = 0; c < t.dist.size(); ++c) {
      if (t.dist[c] == kInf) continue;
      const Dist val = t.dist[c] * back;
      if (val < out.dist[c]) {
        out.dist[c] = val;
        out.hops[c] = t.hops[c];
        out.tag[c] = t.tag[c];
      }
    }
  }
  for (size_t ui = 0; ui < U.size(); ++ui) out.dist[out.at(ui, U[ui])] = 0;
  return out;
}

SsspResult multisource_sssp(Engine& e, const Graph& g, const std::vector<Vertex>& U, const SsspOptions& o,
                            bool approx, const std::string& prefix) {
  const int n = g.n();
  const size_t k = U.size();
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "no sources");
  if (!approx && !g.unweighted()) throw Error(ErrorCode::kInvalidArgument, "exact BFS needs an unweighted graph (weighted input)");
  if (approx && !(o.eps > 0)) throw Error(ErrorCode::kInvalidArgument, "eps must be positive");
  SsspResult res;
  const double eps_in = o.eps / 4;
  const int64_t h = std::clamp<int64_t>(
      static_cast<int64_t>(std::ceil(std::sqrt(static_cast<double>(n) * static_cast<double>(k)) - 1e-9)), 1, n);
  res.h = h;
  const double p = std::min(1.0, o.sample_factor * log2n(n) / static_cast<double>(h));
  const std::vector<Vertex> S = sample_vertices(n, p, o.seed, 0x53414d50);
  res.S = S;
  const size_t ns = S.size();

  // h-hop searches from S, forward and reverse.
  DistanceTable F, Rv, trees;
  BfsSpec fs;
  fs.sources = S;
  fs.hop_bound = h;
  fs.tag = TagKind::kParent;
  BfsSpec rs = fs;
  rs.tag = TagKind::kNone;
  rs.dir = Direction::kReverse;
  const bool directed = g.directed();
  if (!approx) {
    if (directed) {
      std::tie(F, Rv) = multi_bfs_pair(e, g, fs, rs, prefix + "-sample-bfs");
    } else {
      F = multi_bfs(e, g, fs, prefix + "-sample-bfs");
      Rv = F;
    }
    trees = F;
  } else {
    F = approx_hop_sssp(e, g, S, h, eps_in, Direction::kForward, TagKind::kNone, prefix + "-sample-bfs");
    Rv = directed ? approx_hop_sssp(e, g, S, h, eps_in, Direction::kReverse, TagKind::kNone, prefix + "-sample-bfs")
                  : F;
    Graph ug = g.as_unweighted();
    trees = multi_bfs(e, ug, fs, prefix + "-sample-trees");
  }

  // Skeleton edges out of every s, broadcast, local APSP.
  std::vector<std::vector<Word>> items(n);
  for (size_t si = 0; si < ns; ++si)
    for (size_t ti = 0; ti < ns; ++ti) {
      if (si == ti) continue;
      const Dist w = Rv.d(ti, S[si]);
      if (w != kInf) items[S[si]].push_back({static_cast<int64_t>(si), static_cast<int64_t>(ti), enc(w)});
    }
  std::vector<SkeletonEdge> sk;
  for (const Word& w : broadcast(e, items, prefix + "-skeleton"))
    sk.push_back({static_cast<int32_t>(w.a), static_cast<int32_t>(w.b), dec(w.c)});
  res.skeleton = {S, sk, h};
  const std::vector<Dist> dS = skeleton_apsp(static_cast<int>(ns), sk);

  // h-hop searches from U; sampled vertices broadcast what they saw.
  DistanceTable T;
  if (!approx) {
    BfsSpec us;
    us.sources = U;
    us.hop_bound = h;
    us.tag = o.tag;
    T = multi_bfs(e, g, us, prefix + "-source-bfs");
  } else {
    T = approx_hop_sssp(e, g, U, h, eps_in, Direction::kForward, o.tag, prefix + "-source-bfs");
  }
  std::vector<std::vector<Word>> hits(n);
  for (size_t si = 0; si < ns; ++si)
    for (size_t ui = 0; ui < k; ++ui) {
      const size_t at = T.at(ui, S[si]);
      if (T.dist[at] == kInf) continue;
      if (o.tag == TagKind::kFirstHop && S[si] == U[ui]) continue;
      const int64_t packed = static_cast<int64_t>(si) | (static_cast<int64_t>(T.tag[at] + 1) << 32);
      hits[S[si]].push_back({static_cast<int64_t>(ui), packed, enc(T.dist[at])});
    }
  std::vector<ReceivedDist> got;
  for (const Word& w : broadcast(e, hits, prefix + "-hits"))
    got.push_back({static_cast<int32_t>(w.a), static_cast<int32_t>(w.b & 0xffffffff),
                   static_cast<Vertex>((w.b >> 32) - 1), dec(w.c)});

  // d(u,s) <- min(d(u,s), d(u,t) + d(t,s)) at every sampled s.
  std::vector<Dist> du(k * ns, kInf);
  std::vector<Vertex> dtag(k * ns, -1);
  for (size_t ui = 0; ui < k; ++ui)
    for (size_t si = 0; si < ns; ++si) {
      du[ui * ns + si] = T.d(ui, S[si]);
      dtag[ui * ns + si] = T.tag[T.at(ui, S[si])];
    }
  for (const ReceivedDist& r : got)
    for (size_t si = 0; si < ns; ++si) {
      const Dist c = r.d + dS[static_cast<size_t>(r.t) * ns + si];
      if (c < du[r.u * ns + si]) {
        du[r.u * ns + si] = c;
        dtag[r.u * ns + si] = r.tag;
      }
    }

  // Back to the sources.
  res.table = propagate(e, g, U, S, trees, F, T, du, dtag, h, o, prefix, &res.delay_attempts);
  return res;
}

SsspResult ksource_bfs_exact(Engine& e, const Graph& g, const std::vector<Vertex>& U, const SsspOptions& o) {
  if (!g.unweighted()) throw Error(ErrorCode::kInvalidArgument, "ksource_bfs_exact needs an unweighted graph (weighted input)");
  if (!at_least_cbrt(static_cast<double>(U.size()), g.n()))
    throw Error(ErrorCode::kInvalidArgument, "ksource_bfs_exact needs k >= n^(1/3); use ksource_small_k");
  return multisource_sssp(e, g, U, o, false, "ksource_bfs");
}

SsspResult ksource_sssp_approx(Engine& e, const Graph& g, const std::vector<Vertex>& U, const SsspOptions& o) {
  require_positive_weights(g);
  if (!at_least_cbrt(static_cast<double>(U.size()), g.n()))
    throw Error(ErrorCode::kInvalidArgument, "ksource_sssp_approx needs k >= n^(1/3); use ksource_small_k");
  return multisource_sssp(e, g, U, o, true, "ksource_sssp");
}

std::vector<Dist> skeleton_hop_bfs(Engine& e, const SkeletonGraph& skel, int k, const std::vector<SkeletonEdge>& init,
                                   int64_t steps, const std::string& name) {
  const int ns = static_cast<int>(skel.vertices.size());
  const int n = e.n();
  std::vector<std::vector<std::pair<int32_t, int64_t>>> out(ns);
  for (const auto& ed : skel.edges) out[ed.s].push_back({ed.t, static_cast<int64_t>(ed.w)});
  std::vector<int64_t> dist(static_cast<size_t>(k) * ns, kFar);
  std::vector<char> done(dist.size(), 0);
  using Item = std::pair<int64_t, int64_t>;  // (distance, u * ns + s)
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (const auto& in : init) {
    const size_t at = static_cast<size_t>(in.s) * ns + in.t;
    const int64_t w = static_cast<int64_t>(in.w);
    if (w <= steps && w < dist[at]) {
      dist[at] = w;
      pq.push({w, static_cast<int64_t>(at)});
    }
  }
  auto next_step = [&]() {
    while (!pq.empty() && done[pq.top().second]) pq.pop();
    return pq.empty() ? kFar : pq.top().first;
  };
  // Each node reports its next pending step; the minimum decides the next wave.
  auto agree = [&]() {
    std::vector<Dist> local(n, kInf);
    for (size_t at = 0; at < dist.size(); ++at)
      if (!done[at] && dist[at] < kFar) {
        Vertex s = skel.vertices[at % ns];
        local[s] = std::min(local[s], static_cast<Dist>(dist[at]));
      }
    convergecast(e, local, Fold::kMin, name);
  };
  agree();
  for (int64_t t = next_step(); t <= steps; t = next_step()) {
    std::vector<std::vector<Word>> items(n);
    while (!pq.empty() && pq.top().first == t) {
      const int64_t at = pq.top().second;
      pq.pop();
      if (done[at] || dist[at] != t) continue;
      done[at] = 1;
      items[skel.vertices[at % ns]].push_back({at / ns, at % ns, t});
    }
    for (const Word& w : broadcast(e, items, name)) {
      for (auto [v, wt] : out[w.b]) {
        const size_t at = static_cast<size_t>(w.a) * ns + v;
        const int64_t c = t + wt;
        if (c <= steps && c < dist[at]) {
          dist[at] = c;
          pq.push({c, static_cast<int64_t>(at)});
        }
      }
    }
    agree();
  }
  std::vector<Dist> res(dist.size(), kInf);
  for (size_t at = 0; at < dist.size(); ++at)
    if (dist[at] <= steps) res[at] = static_cast<Dist>(dist[at]);
  return res;
}

ParamChoice choose_params(double n, double k, double D) {
  ParamChoice c;
  // Relative slack so that exact boundary values are not lost to rounding.
  const double t1 = std::pow(n, 0.25) * std::pow(k, 0.75) * (1 + 1e-9);
  const double t2 = std::pow(n, 2.0 / 3.0) * (1 + 1e-9);
  if (at_least_cbrt(k, n)) {
    c.regime = 1;
    c.S_real = std::sqrt(n / k);
    c.h_real = 1;
  } else if (D <= t1) {
    c.regime = 2;
    c.S_real = std::sqrt(n / k);
    c.h_real = std::pow(n / k, 0.25);
  } else if (D <= t2) {
    c.regime = 3;
    c.S_real = std::pow(n, 0.6) / std::pow(D, 0.4);
    c.h_real = std::pow(n, 0.4) / std::pow(D, 0.6);
  } else {
    c.regime = 4;
    c.S_real = std::cbrt(n);
    c.h_real = 1;
  }
  c.S = std::max<int64_t>(1, std::llround(c.S_real));
  c.h = std::max<int64_t>(1, std::llround(c.h_real));
  return c;
}

SsspResult ksource_small_k(Engine& e, const Graph& g, const std::vector<Vertex>& U, const SsspOptions& o) {
  const int n = g.n();
  const size_t k = U.size();
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "no sources");
  if (at_least_cbrt(static_cast<double>(k), n))
    throw Error(ErrorCode::kInvalidArgument, "k >= n^(1/3) uses ksource_sssp_approx");
  if (!(o.eps > 0)) throw Error(ErrorCode::kInvalidArgument, "eps must be positive");
  require_positive_weights(g);
  const std::string prefix = "small_k";
  const double eps_in = o.eps / 4;
  const int D = e.diameter();
  const ParamChoice pc = choose_params(n, static_cast<double>(k), D);
  SsspResult res;
  const int64_t hB = std::clamp<int64_t>((n + pc.S - 1) / pc.S, 1, n);
  res.h = hB;
  const double p = std::min(1.0, static_cast<double>(pc.S) * log2n(n) / n);
  const std::vector<Vertex> S = sample_vertices(n, p, o.seed, 0x534d4c4b);
  res.S = S;
  const size_t ns = S.size();
  const bool weighted = !g.unweighted();

  // h-hop searches from S.
  BfsSpec fs;
  fs.sources = S;
  fs.hop_bound = hB;
  fs.tag = TagKind::kParent;
  DistanceTable F, trees, T;
  if (!weighted) {
    F = multi_bfs(e, g, fs, prefix + "-sample-bfs");
    trees = F;
    BfsSpec us;
    us.sources = U;
    us.hop_bound = hB;
    T = multi_bfs(e, g, us, prefix + "-source-bfs");
  } else {
    F = approx_hop_sssp(e, g, S, hB, eps_in, Direction::kForward, TagKind::kNone, prefix + "-sample-bfs");
    Graph ug = g.as_unweighted();
    trees = multi_bfs(e, ug, fs, prefix + "-sample-trees");
    T = approx_hop_sssp(e, g, U, hB, eps_in, Direction::kForward, TagKind::kNone, prefix + "-source-bfs");
  }

  // Every t knows its incoming skeleton edges.
  SkeletonGraph skel;
  skel.vertices = S;
  for (size_t si = 0; si < ns; ++si)
    for (size_t ti = 0; ti < ns; ++ti)
      if (si != ti && F.d(si, S[ti]) != kInf)
        skel.edges.push_back({static_cast<int32_t>(si), static_cast<int32_t>(ti), F.d(si, S[ti])});
  skel.h = hB;
  res.skeleton = skel;

  // Hopset. The exact provider adds every shortest-path shortcut and
  // charges the cited construction cost.
  int64_t hh = static_cast<int64_t>(std::max<size_t>(ns, 1));
  if (o.provider == Provider::kExactShortcut) {
    hh = pc.h;
    const std::vector<Dist> dS = skeleton_apsp(static_cast<int>(ns), skel.edges);
    for (size_t si = 0; si < ns; ++si)
      for (size_t ti = 0; ti < ns; ++ti) {
        const Dist w = dS[si * ns + ti];
        if (si != ti && w != kInf) skel.edges.push_back({static_cast<int32_t>(si), static_cast<int32_t>(ti), w});
      }
    const double sz = static_cast<double>(ns);
    const double hd = static_cast<double>(hh);
    e.charge(prefix + "-hopset", static_cast<int64_t>(std::ceil(sz * sz / (hd * hd) + hd * D)));
  }
  skel.h = hh;
  // Scaled skeleton searches with the (u, s) entry edges.
  std::vector<SkeletonEdge> init;
  Dist wmax = 1;
  for (size_t ui = 0; ui < k; ++ui)
    for (size_t si = 0; si < ns; ++si) {
      const Dist x = T.d(ui, S[si]);
      if (x == kInf) continue;
      init.push_back({static_cast<int32_t>(ui), static_cast<int32_t>(si), x});
      wmax = std::max(wmax, x);
    }
  for (const auto& ed : skel.edges) wmax = std::max(wmax, ed.w);
  const double H = static_cast<double>(hh + 1);
  const int levels = std::max(1, static_cast<int>(std::ceil(std::log2(H * wmax) - 1e-9)));
  const int64_t steps = static_cast<int64_t>(std::ceil((1 + 2 / eps_in) * H - 1e-9));
  std::vector<Dist> du(k * ns, kInf);
  for (int i = 1; i <= levels; ++i) {
    const double scale = 2 * H / (eps_in * std::ldexp(1.0, i));
    auto sc = [&](Dist w) { return std::ceil(w * scale - 1e-9); };
    SkeletonGraph si = skel;
    for (auto& ed : si.edges) ed.w = sc(ed.w);
    std::vector<SkeletonEdge> ii = init;
    for (auto& ed : ii) ed.w = sc(ed.w);
    std::vector<Dist> d = skeleton_hop_bfs(e, si, static_cast<int>(k), ii, steps, prefix + "-skeleton-bfs");
    for (size_t c = 0; c < d.size(); ++c)
      if (d[c] != kInf) du[c] = std::min(du[c], d[c] / scale);
  }
  // Direct h-hop values are never worse than the skeleton route.
  for (const auto& in : init) du[in.s * ns + in.t] = std::min(du[in.s * ns + in.t], in.w);

  // Back to the sources.
  std::vector<Vertex> dtag(k * ns, -1);
  res.table = propagate(e, g, U, S, trees, F, T, du, dtag, hB, o, prefix, &res.delay_attempts);
  return res;
}

}  // namespace mwc
