#include "mwc/directed.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <unordered_map>

#include "mwc/oracles.hpp"

namespace mwc {

namespace {

int64_t ceil_log(double n) { return static_cast<int64_t>(std::ceil(log2n(n))); }

int64_t ceil_pow(double n, double e) { return std::max<int64_t>(1, static_cast<int64_t>(std::ceil(std::pow(n, e) - 1e-9))); }

void require_directed(const Graph& g) {
  if (!g.directed()) throw Error(ErrorCode::kInvalidArgument, "directed MWC needs a directed graph");
  if (g.n() < 2) throw Error(ErrorCode::kInvalidArgument, "directed MWC needs n >= 2");
}

// Everything the restricted search needs besides the graph.
struct RestrictedInput {
  const std::vector<std::vector<int32_t>>* R;  // indices into S
  const std::vector<Dist>* from_s;             // from_s[si * n + v] = d(S[si], v)
  const std::vector<Dist>* to_s;               // to_s[si * n + v] = d(v, S[si])
  int n = 0;
  int64_t hop_bound = 0, rho = 0, cap = 0, phase_len = 0, phases = 0;
  bool pipes = false;
  bool witness = false;
  std::vector<int64_t> delta;
};

class RestrictedBfs : public Program {
 public:
  RestrictedBfs(const Graph& g, const RestrictedInput& in) : g_(g), in_(in) {}

  void start(Engine& e) override {
    const int n = g_.n();
    dead_.assign(n, 0);
    pending_.assign(n, {});
    seen_.assign(n, {});
    reached_.assign(n, {});
    for (Vertex v = 0; v < n; ++v) e.wake(v, (in_.delta[v] - 1) * in_.phase_len);
  }

  void step(Engine& e, Vertex v, std::span<const Message> inbox) override {
    if (dead_[v]) return;
    const int64_t r = e.round();
    const int64_t L = in_.phase_len;
    pending_[v].insert(pending_[v].end(), inbox.begin(), inbox.end());
    if (r % L != 0) {
      e.wake(v, (r / L + 1) * L);
      return;
    }
    const int64_t phase = r / L + 1;
    std::vector<Message> batch = std::move(pending_[v]);
    pending_[v].clear();

    // Receive side: at most cap messages per incoming link.
    std::map<int32_t, int64_t> per_link;
    for (const Message& m : batch)
      if (++per_link[m.link] > in_.cap) return overflow(v);

    // First-time sources; simultaneous copies carry the same distance.
    std::sort(batch.begin(), batch.end(), [](const Message& a, const Message& b) {
      return a.a != b.a ? a.a < b.a : a.b != b.b ? a.b < b.b : a.c < b.c;
    });
    std::vector<std::pair<Vertex, int64_t>> Y;
    for (size_t i = 0; i < batch.size(); ++i) {
      const Vertex y = static_cast<Vertex>(batch[i].a);
      if (i > 0 && batch[i - 1].a == batch[i].a) continue;
      if (y == v || !seen_[v].emplace(y, 1).second) continue;
      reached_[v].push_back({y, static_cast<Dist>(batch[i].b), static_cast<Vertex>(batch[i].c)});
      Y.push_back({y, batch[i].b});
    }
    if (in_.delta[v] == phase) Y.insert(Y.begin(), {v, 0});
    if (static_cast<int64_t>(Y.size()) > in_.cap) return overflow(v);
    if (phase > in_.phases) return;

    std::map<int32_t, int64_t> used;
    for (auto [y, dy] : Y) {
      const auto& Ry = (*in_.R)[y];
      const int32_t words = 1 + 2 * static_cast<int32_t>(Ry.size()) + (in_.witness ? 1 : 0);
      for (const Arc& a : g_.out(v)) {
        const Vertex u = a.to;
        const int64_t du = dy + a.w;
        if (du > in_.hop_bound || u == y) continue;
        if (!member(u, y, static_cast<Dist>(du))) continue;
        const int32_t link = e.net().arc_link(v, a);
        Message m;
        m.words = words;
        m.a = y;
        m.b = du;
        m.c = v;
        const int64_t extra = in_.pipes ? (a.w - 1) * L : 0;
        e.send(v, link, m, extra, r + used[link]);
        used[link] += words;
      }
    }
  }

  std::vector<char> dead_;
  std::vector<std::vector<Reach>> reached_;

 private:
  // d(u,t) + 2 d*(y,u) <= d(t,u) + 2 d(y,t) for every t in R(y).
  bool member(Vertex u, Vertex y, Dist dyu) const {
    const int n = in_.n;
    for (int32_t ti : (*in_.R)[y]) {
      const size_t tu = static_cast<size_t>(ti) * n;
      const Dist lhs = (*in_.to_s)[tu + u] + 2 * dyu;
      const Dist rhs = (*in_.from_s)[tu + u] + 2 * (*in_.to_s)[tu + y];
      if (!sample_predicate(lhs, rhs)) return false;
    }
    return true;
  }

  void overflow(Vertex v) {
    dead_[v] = 1;
    pending_[v].clear();
  }

  const Graph& g_;
  const RestrictedInput& in_;
  std::vector<std::vector<Message>> pending_;
  std::vector<std::unordered_map<Vertex, char>> seen_;
};

struct Params {
  double N;
  int64_t h, rho, beta, cap;
};

Params make_params(double N, const DirectedOptions& o) {
  Params p;
  p.N = N;
  p.h = ceil_pow(N, 0.6);
  p.rho = ceil_pow(N, 0.8);
  p.beta = ceil_log(N);
  p.cap = o.cap_override > 0 ? o.cap_override : o.phase_cap_factor * ceil_log(N);
  return p;
}

// Shared pipeline. hop_cap == 0 means unrestricted (unweighted input only).
DirectedResult run_directed(Engine& e, const Graph& g, int64_t hop_cap, const DirectedOptions& o,
                            const std::string& prefix) {
  const int n = g.n();
  const bool pipes = !g.unweighted();
  double N = n;
  if (pipes)
    for (const Edge& ed : g.edges()) N += static_cast<double>(ed.w - 1);
  const Params P = make_params(N, o);

  DirectedResult res;
  res.N = N;
  res.h = P.h;
  res.rho = P.rho;
  res.beta = P.beta;
  res.cap = P.cap;
  res.mu_v.assign(n, kInf);
  res.cert.assign(n, {});
  res.inZ.assign(n, 0);

  const Dist keep = hop_cap > 0 ? 2.0 * static_cast<double>(hop_cap) : kInf;
  auto offer = [&](Vertex x, Dist w, CycleKind kind, Vertex anchor) {
    if (w <= keep && w < res.mu_v[x]) {
      res.mu_v[x] = w;
      res.cert[x] = {kind, anchor, x};
    }
  };

  // Sampling. On the stretched graph a subdivision vertex of edge
  // (a, b) is represented by b, so b is hit with the chain's probability.
  const double p = std::min(1.0, o.sample_factor * std::pow(log2n(N), 3) / static_cast<double>(P.h));
  std::vector<Vertex> S;
  if (o.forced_S) {
    S = *o.forced_S;
  } else {
    std::vector<double> chain(n, 1.0);
    if (pipes)
      for (const Edge& ed : g.edges()) chain[ed.v] += static_cast<double>(ed.w - 1);
    for (Vertex v = 0; v < n; ++v) {
      Rng rng(derive_seed(o.seed, 0x44495253, v));
      const double pv = p >= 1.0 ? 1.0 : 1.0 - std::pow(1.0 - p, chain[v]);
      if (coin(rng, pv)) S.push_back(v);
    }
  }
  res.S = S;
  const size_t ns = S.size();

  // Distances between S and everything, both directions.
  std::vector<Dist> from_s(ns * n, kInf), to_s(ns * n, kInf);
  if (ns > 0) {
    if (hop_cap == 0) {
      SsspOptions so;
      so.seed = derive_seed(o.seed, 0x46574431);
      so.sample_factor = o.sssp_sample_factor;
      SsspResult fw = multisource_sssp(e, g, S, so, false, prefix + "-sample-fwd");
      so.seed = derive_seed(o.seed, 0x52455631);
      SsspResult rv = multisource_sssp(e, g.reversed(), S, so, false, prefix + "-sample-rev");
      from_s = fw.table.dist;
      to_s = rv.table.dist;
    } else {
      BfsSpec a, b;
      a.sources = S;
      a.hop_bound = 2 * hop_cap;
      a.pipes = pipes;
      b = a;
      b.dir = Direction::kReverse;
      auto [F, Rv] = multi_bfs_pair(e, g, a, b, prefix + "-sample-bfs");
      from_s = F.dist;
      to_s = Rv.dist;
    }
  }

  // Cycles through sampled vertices, closed by an edge (v, s).
  std::vector<int32_t> s_index(n, -1);
  for (size_t si = 0; si < ns; ++si) s_index[S[si]] = static_cast<int32_t>(si);
  for (Vertex v = 0; v < n; ++v)
    for (const Arc& a : g.out(v))
      if (s_index[a.to] >= 0) {
        const Dist d = from_s[static_cast<size_t>(s_index[a.to]) * n + v];
        if (d < kInf) offer(v, d + static_cast<Dist>(a.w), CycleKind::kSample, a.to);
      }

  // Every t broadcasts d(s, t) for s in S.
  std::vector<Dist> ss(ns * ns, kInf);
  if (ns > 0) {
    std::vector<std::vector<Word>> items(n);
    for (size_t ti = 0; ti < ns; ++ti)
      for (size_t si = 0; si < ns; ++si) {
        const Dist d = from_s[si * n + S[ti]];
        if (d < kInf) items[S[ti]].push_back({static_cast<int64_t>(si), static_cast<int64_t>(ti), static_cast<int64_t>(d)});
      }
    for (const Word& w : broadcast(e, items, prefix + "-sample-pairs")) ss[w.a * ns + w.b] = static_cast<Dist>(w.c);
  }

  // Short cycles. R(v) is node-local.
  res.R.assign(n, {});
  std::vector<std::vector<int32_t>> Ridx(n);
  for (Vertex v = 0; v < n; ++v) {
    std::vector<Dist> tv(ns);
    for (size_t si = 0; si < ns; ++si) tv[si] = to_s[si * n + v];
    Ridx[v] = build_R(v, tv, ss, ns, static_cast<int>(P.beta), derive_seed(o.seed, 0x52534554));
    for (int32_t si : Ridx[v]) res.R[v].push_back(S[si]);
  }

  // (d(v,s), d(s,v)) to every neighbour.
  if (ns > 0) {
    const int64_t words = static_cast<int64_t>(2 * ns);
    const int64_t links = e.net().num_links();
    e.account(prefix + "-neighbour-share", words, 2 * links * words, 2 * links * words);
  }

  RestrictedInput in;
  in.R = &Ridx;
  in.from_s = &from_s;
  in.to_s = &to_s;
  in.n = n;
  in.hop_bound = hop_cap > 0 ? std::min(P.h, hop_cap) : P.h;
  in.rho = P.rho;
  in.cap = P.cap;
  in.pipes = pipes;
  in.witness = o.witness;
  in.phase_len = P.cap * (2 * P.beta + 1 + (o.witness ? 1 : 0));
  in.phases = in.hop_bound + P.rho;
  in.delta.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    Rng rng(derive_seed(o.seed, 0x44454c54, v));
    in.delta[v] = uniform_int(rng, 1, P.rho);
  }
  res.hop_bound = in.hop_bound;
  res.phase_len = in.phase_len;
  res.phases = in.phases;
  RestrictedBfs bfs(g, in);
  e.run(prefix + "-restricted-bfs", bfs, Engine::kNoLimit, in.phases * in.phase_len);
  res.inZ = bfs.dead_;
  res.reached = std::move(bfs.reached_);

  // h-hop search from the overflow vertices.
  std::vector<Vertex> Z;
  for (Vertex v = 0; v < n; ++v)
    if (res.inZ[v]) Z.push_back(v);
  if (!Z.empty()) {
    BfsSpec zs;
    zs.sources = Z;
    zs.hop_bound = in.hop_bound;
    zs.tag = TagKind::kParent;
    zs.pipes = pipes;
    res.z_table = multi_bfs(e, g, zs, prefix + "-overflow-bfs");
    for (size_t zi = 0; zi < Z.size(); ++zi)
      for (const Arc& a : g.in(Z[zi])) {
        const Dist d = res.z_table.d(zi, a.to);
        if (d < kInf) offer(a.to, d + static_cast<Dist>(a.w), CycleKind::kOverflow, Z[zi]);
      }
  } else {
    res.z_table = DistanceTable(n, {});
  }

  // Close restricted-search distances with an edge back to the source.
  for (Vertex x = 0; x < n; ++x)
    for (const Reach& r : res.reached[x]) {
      const Weight w = g.edge_weight(x, r.source);
      if (w >= 1) offer(x, r.d + static_cast<Dist>(w), CycleKind::kRestricted, r.source);
    }

  res.mu = convergecast(e, res.mu_v, Fold::kMin, prefix + "-min");
  return res;
}

}  // namespace

int64_t DirectedResult::z_count() const { return std::count(inZ.begin(), inZ.end(), 1); }

bool sample_predicate(Dist lhs, Dist rhs) {
  if (lhs == kInf) return false;
  if (rhs == kInf) return true;
  return lhs <= rhs;
}

std::vector<int32_t> build_R(Vertex v, const std::vector<Dist>& to_s_v, const std::vector<Dist>& ss, size_t ns,
                             int beta, uint64_t seed) {
  if (to_s_v.size() != ns || ss.size() != ns * ns) throw Error(ErrorCode::kInvalidArgument, "build_R: missing distance inputs");
  std::vector<int32_t> R;
  if (ns == 0 || beta < 1) return R;
  Rng rng(derive_seed(seed, v));
  for (int i = 0; i < beta; ++i) {
    std::vector<int32_t> T;
    for (size_t si = static_cast<size_t>(i); si < ns; si += static_cast<size_t>(beta)) {
      if (to_s_v[si] == kInf) continue;
      bool ok = true;
      for (int32_t ti : R) {
        const Dist lhs = ss[si * ns + ti] + 2 * to_s_v[si];
        const Dist rhs = ss[ti * ns + si] + 2 * to_s_v[ti];
        if (!sample_predicate(lhs, rhs)) {
          ok = false;
          break;
        }
      }
      if (ok) T.push_back(static_cast<int32_t>(si));
    }
    if (!T.empty()) R.push_back(T[uniform_u64(rng, T.size())]);
  }
  return R;
}

DirectedResult mwc_directed_unweighted(Engine& e, const Graph& g, const DirectedOptions& o) {
  require_directed(g);
  if (!g.unweighted()) throw Error(ErrorCode::kInvalidArgument, "mwc_directed_unweighted needs an unweighted graph");
  return run_directed(e, g, 0, o, "mwc-dir");
}

DirectedResult hop_limited_mwc_directed(Engine& e, const Graph& host, int64_t h_cap, const DirectedOptions& o) {
  require_directed(host);
  if (host.m() > 0 && host.min_weight() < 1) throw Error(ErrorCode::kInvalidArgument, "zero weights are not supported");
  if (h_cap < 1) throw Error(ErrorCode::kInvalidArgument, "h_cap must be positive");
  return run_directed(e, host, h_cap, o, "mwc-dir-hop");
}

std::vector<Vertex> witness_walk(const DirectedResult& r, Vertex v) {
  const CycleCert& c = r.cert[v];
  std::vector<Vertex> walk;
  if (c.kind == CycleKind::kRestricted) {
    // Parents recorded by the receivers, back to the source.
    Vertex x = c.from;
    walk.push_back(x);
    while (x != c.anchor) {
      auto it = std::find_if(r.reached[x].begin(), r.reached[x].end(),
                             [&](const Reach& q) { return q.source == c.anchor; });
      if (it == r.reached[x].end()) return {};
      x = it->parent;
      walk.push_back(x);
    }
  } else if (c.kind == CycleKind::kOverflow) {
    const auto& src = r.z_table.sources;
    const size_t zi = std::find(src.begin(), src.end(), c.anchor) - src.begin();
    if (zi == src.size()) return {};
    Vertex x = c.from;
    walk.push_back(x);
    while (x != c.anchor) {
      x = r.z_table.tag[r.z_table.at(zi, x)];
      if (x < 0) return {};
      walk.push_back(x);
    }
  } else {
    return {};
  }
  std::reverse(walk.begin(), walk.end());  // anchor ... from
  walk.push_back(c.anchor);
  return walk;
}

int classify_run(const Graph& g, const DirectedResult& r, const std::vector<Vertex>& C) {
  const Apsp a = exact_apsp(g);
  std::vector<std::vector<Vertex>> P(g.n());
  for (Vertex v = 0; v < g.n(); ++v) P[v] = brute_force_P(a, v, r.R[v]);
  return classify_directed(g, C, static_cast<double>(r.h), P, r.inZ);
}

}  // namespace mwc
