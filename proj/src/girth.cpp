#include "mwc/girth.hpp"

#include <algorithm>
#include <cmath>

namespace mwc {

namespace {

struct NearEntryRef {
  Vertex z;
  Dist d;
  Vertex parent;
};

// Q(v) sorted by id for lookups.
std::vector<std::vector<NearEntryRef>> by_id(const NearTable& q) {
  std::vector<std::vector<NearEntryRef>> out(q.z.size());
  for (size_t v = 0; v < q.z.size(); ++v) {
    for (size_t i = 0; i < q.z[v].size(); ++i) out[v].push_back({q.z[v][i], static_cast<Dist>(q.d[v][i]), q.parent[v][i]});
    std::sort(out[v].begin(), out[v].end(), [](const NearEntryRef& a, const NearEntryRef& b) { return a.z < b.z; });
  }
  return out;
}

const NearEntryRef* find_near(const std::vector<NearEntryRef>& q, Vertex z) {
  auto it = std::lower_bound(q.begin(), q.end(), z, [](const NearEntryRef& a, Vertex x) { return a.z < x; });
  return it != q.end() && it->z == z ? &*it : nullptr;
}

GirthResult run_girth(Engine& e, const Graph& g, int64_t h, const GirthOptions& o, const std::string& prefix) {
  const int n = g.n();
  const bool pipes = !g.unweighted();
  const bool limited = h > 0;
  GirthResult res;
  res.M_v.assign(n, kInf);
  res.cert.assign(n, {});
  const Dist keep = limited ? 2.0 * static_cast<double>(h) : kInf;
  auto offer = [&](Vertex v, Dist w, GirthCert c) {
    if (w <= keep && w < res.M_v[v]) {
      res.M_v[v] = w;
      res.cert[v] = c;
    }
  };
  // Without a bound every search runs to the full (stretched) extent.
  int64_t bound = h;
  if (!limited) {
    bound = 0;
    for (const Edge& ed : g.edges()) bound += ed.w;
    bound = std::max<int64_t>(bound, n);
  }
  res.hop_bound = bound;

  // Sample S.
  res.sample_p = std::min(1.0, o.sample_factor * log2n(n) / std::sqrt(static_cast<double>(n)));
  if (o.forced_S) {
    res.S = *o.forced_S;
  } else {
    for (Vertex v = 0; v < n; ++v) {
      Rng rng(derive_seed(o.seed, 0x47495254, v));
      if (coin(rng, res.sample_p)) res.S.push_back(v);
    }
  }

  // Searches from S; a vertex hears d(w, y) from every neighbour y
  // that forwarded, so each non-tree edge closes a walk through w.
  if (!res.S.empty()) {
    BfsSpec bs;
    bs.sources = res.S;
    bs.hop_bound = bound;
    bs.tag = TagKind::kParent;
    bs.pipes = pipes;
    res.bfs = multi_bfs(e, g, bs, prefix + "-sample-bfs");
    for (size_t wi = 0; wi < res.S.size(); ++wi)
      for (const Edge& ed : g.edges()) {
        const Dist da = res.bfs.d(wi, ed.u), db = res.bfs.d(wi, ed.v);
        if (da == kInf || db == kInf) continue;
        if (res.bfs.tag[res.bfs.at(wi, ed.u)] == ed.v || res.bfs.tag[res.bfs.at(wi, ed.v)] == ed.u) continue;
        const Dist sum = da + db + static_cast<Dist>(ed.w);
        // The two waves meet within the bound.
        if (sum > 2.0 * static_cast<double>(bound)) continue;
        const Vertex holder = da >= db ? ed.u : ed.v;
        offer(holder, sum, {GirthRule::kSampleBfs, res.S[wi], ed.u, ed.v});
      }
  } else {
    res.bfs = DistanceTable(n, {});
  }

  // R nearest vertices per node.
  SourceDetectionSpec sd;
  res.R = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)) - 1e-9));
  sd.R = res.R;
  sd.hop_bound = bound;
  sd.pipes = pipes;
  res.Q = source_detection(e, g, sd, prefix + "-source-detection");

  // (z, d(v,z), p(v,z)) triples to every neighbour.
  const int64_t words = 3 * static_cast<int64_t>(res.R);
  const int64_t links = e.net().num_links();
  e.account(prefix + "-neighbourhood-exchange", words, 2 * links * words, 2 * links * words);

  const auto Q = by_id(res.Q);
  for (Vertex v = 0; v < n; ++v) {
    // An edge (v, u) closing two neighbourhood paths to z.
    for (const Arc& a : g.out(v)) {
      const Vertex u = a.to;
      for (const NearEntryRef& qv : Q[v]) {
        if (qv.parent == u) continue;
        const NearEntryRef* qu = find_near(Q[u], qv.z);
        if (!qu || qu->parent == v) continue;
        offer(v, qv.d + qu->d + static_cast<Dist>(a.w), {GirthRule::kEdge, qv.z, u, -1});
      }
    }
    // Two neighbours x != y whose paths to z avoid v.
    std::vector<std::pair<Vertex, std::pair<Dist, Vertex>>> offers;
    for (const Arc& a : g.out(v))
      for (const NearEntryRef& qx : Q[a.to])
        if (qx.z != v && qx.parent != v) offers.push_back({qx.z, {qx.d + static_cast<Dist>(a.w), a.to}});
    std::sort(offers.begin(), offers.end());
    for (size_t i = 0; i + 1 < offers.size(); ++i)
      if (offers[i].first == offers[i + 1].first && (i == 0 || offers[i - 1].first != offers[i].first)) {
        const auto& f = offers[i].second;
        const auto& s = offers[i + 1].second;
        offer(v, f.first + s.first, {GirthRule::kPair, offers[i].first, f.second, s.second});
      }
  }

  res.M = convergecast(e, res.M_v, Fold::kMin, prefix + "-min");
  return res;
}

}  // namespace

GirthResult girth_approx(Engine& e, const Graph& g, const GirthOptions& o) {
  if (g.directed()) throw Error(ErrorCode::kInvalidArgument, "girth_approx needs an undirected graph");
  if (!g.unweighted()) throw Error(ErrorCode::kInvalidArgument, "girth_approx needs an unweighted graph");
  return run_girth(e, g, 0, o, "girth");
}

GirthResult hop_limited_mwc(Engine& e, const Graph& host, int64_t h, const GirthOptions& o) {
  if (host.directed()) throw Error(ErrorCode::kInvalidArgument, "hop_limited_mwc needs an undirected host");
  if (host.m() > 0 && host.min_weight() < 1) throw Error(ErrorCode::kInvalidArgument, "zero weights are not supported");
  if (h < 1) throw Error(ErrorCode::kInvalidArgument, "hop bound must be positive");
  return run_girth(e, host, h, o, "girth-hop");
}

std::vector<std::vector<Vertex>> neighbourhoods(const GirthResult& r) {
  std::vector<std::vector<Vertex>> out(r.Q.z.size());
  for (size_t v = 0; v < out.size(); ++v) {
    out[v] = r.Q.z[v];
    std::sort(out[v].begin(), out[v].end());
  }
  return out;
}

namespace {

// v, p(v,z), ..., z along recorded neighbourhood parents.
std::vector<Vertex> near_path(const std::vector<std::vector<NearEntryRef>>& Q, Vertex v, Vertex z) {
  std::vector<Vertex> p{v};
  while (v != z) {
    const NearEntryRef* q = find_near(Q[v], z);
    if (!q || q->parent < 0) return {};
    v = q->parent;
    p.push_back(v);
  }
  return p;
}

// w, ..., x along the search tree of sample row wi.
std::vector<Vertex> tree_path(const DistanceTable& t, size_t wi, Vertex x) {
  std::vector<Vertex> p{x};
  while (x != t.sources[wi]) {
    x = t.tag[t.at(wi, x)];
    if (x < 0) return {};
    p.push_back(x);
  }
  std::reverse(p.begin(), p.end());
  return p;
}

}  // namespace

std::vector<Vertex> girth_witness(const GirthResult& r, const Graph& g, Vertex v) {
  (void)g;
  const GirthCert& c = r.cert[v];
  std::vector<Vertex> walk;
  if (c.rule == GirthRule::kSampleBfs) {
    const size_t wi = std::find(r.S.begin(), r.S.end(), c.z) - r.S.begin();
    auto pa = tree_path(r.bfs, wi, c.a);
    auto pb = tree_path(r.bfs, wi, c.b);
    if (pa.empty() || pb.empty()) return {};
    walk = pa;
    walk.insert(walk.end(), pb.rbegin(), pb.rend());
  } else if (c.rule == GirthRule::kEdge) {
    const auto Q = by_id(r.Q);
    auto pv = near_path(Q, v, c.z);
    auto pu = near_path(Q, c.a, c.z);
    if (pv.empty() || pu.empty()) return {};
    walk = pv;
    walk.insert(walk.end(), pu.rbegin() + 1, pu.rend());
    walk.push_back(v);
  } else if (c.rule == GirthRule::kPair) {
    const auto Q = by_id(r.Q);
    auto px = near_path(Q, c.a, c.z);
    auto py = near_path(Q, c.b, c.z);
    if (px.empty() || py.empty()) return {};
    walk.push_back(v);
    walk.insert(walk.end(), px.begin(), px.end());
    walk.insert(walk.end(), py.rbegin() + 1, py.rend());
    walk.push_back(v);
  }
  return walk;
}

}  // namespace mwc
