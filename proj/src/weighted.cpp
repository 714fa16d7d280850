#include "mwc/weighted.hpp"

#include <algorithm>
#include <cmath>

#include "mwc/generators.hpp"

namespace mwc {

Graph clipped_level(const Graph& g, int i, int64_t h, double eps, Weight cap) {
  std::vector<Weight> w;
  w.reserve(g.m());
  for (const Edge& ed : g.edges()) w.push_back(std::min(cap, scale_weight(ed.w, static_cast<int>(h), eps, i)));
  return g.with_weights(w);
}

namespace {

WeightedResult run_weighted(Engine& e, const Graph& g, const WeightedOptions& o) {
  if (!(o.eps > 0)) throw Error(ErrorCode::kInvalidArgument, "eps must be positive");
  if (g.m() > 0 && g.min_weight() < 1) throw Error(ErrorCode::kInvalidArgument, "zero weights are not supported");
  const int n = g.n();
  const bool directed = g.directed();
  const std::string prefix = directed ? "mwc-wt-dir" : "mwc-wt";
  WeightedResult res;
  res.eps_in = o.eps / 2;
  res.h = std::max<int64_t>(1, static_cast<int64_t>(std::ceil(std::pow(n, 2.0 / 3.0) - 1e-9)));
  res.h_star = static_cast<int64_t>(std::ceil((1 + 2 / res.eps_in) * static_cast<double>(res.h) - 1e-9));
  res.M_v.assign(n, kInf);
  res.long_v.assign(n, -1);

  // Sample S.
  const double p = std::min(1.0, o.sample_factor * log2n(n) / static_cast<double>(res.h));
  res.S = o.forced_S ? *o.forced_S : sample_vertices(n, p, o.seed, 0x57474854);
  const size_t ns = res.S.size();
  std::vector<int> index(n, -1);
  for (size_t si = 0; si < ns; ++si) index[res.S[si]] = static_cast<int>(si);

  // Long cycles through S from approximate distances.
  if (ns > 0) {
    SsspOptions so;
    so.seed = derive_seed(o.seed, 0x53535350);
    so.eps = res.eps_in;
    so.sample_factor = o.sssp_sample_factor;
    so.tag = directed ? TagKind::kNone : TagKind::kFirstHop;
    res.sssp = multisource_sssp(e, g, res.S, so, true, prefix + "-sssp").table;
    const DistanceTable& t = res.sssp;
    const int64_t links = e.net().num_links();
    if (directed) {
      // Sampled vertices announce themselves; v closes d(s,v) + w(v,s).
      e.account(prefix + "-sample-flags", 1, 2 * links, 2 * links);
      for (Vertex v = 0; v < n; ++v)
        for (const Arc& a : g.out(v)) {
          const int si = index[a.to];
          if (si < 0 || t.d(si, v) == kInf) continue;
          const Dist c = t.d(si, v) + static_cast<Dist>(a.w);
          if (c < res.M_v[v]) res.M_v[v] = c, res.long_v[v] = a.to;
        }
    } else {
      // (d(w,v), f(w,v)) to every neighbour.
      const int64_t words = 2 * static_cast<int64_t>(ns);
      e.account(prefix + "-neighbour-exchange", words, 2 * links * words, 2 * links * words);
      for (Vertex v = 0; v < n; ++v)
        for (const Arc& a : g.out(v)) {
          const Vertex x = a.to;
          for (size_t si = 0; si < ns; ++si) {
            const Vertex w = res.S[si];
            const Dist dv = t.d(si, v), dx = t.d(si, x);
            if (dv == kInf || dx == kInf || v == w) continue;
            const Vertex fv = t.tag[t.at(si, v)];
            // x == w: the path to v must leave w by another edge than (w, v).
            const bool distinct = x == w ? fv != v : fv != t.tag[t.at(si, x)];
            if (!distinct) continue;
            const Dist c = dv + dx + static_cast<Dist>(a.w);
            if (c < res.M_v[v]) res.M_v[v] = c, res.long_v[v] = w;
          }
        }
    }
  }
  for (Dist x : res.M_v) res.M_long = std::min(res.M_long, x);

  // Short cycles: hop-limited search on every scaled level. Edges heavier
  // than 2h* + 1 cannot sit in a kept candidate, so they are clipped there.
  std::vector<Dist> lo(n, kInf), hi(n, 0);
  for (Vertex v = 0; v < n; ++v)
    for (const Arc& a : g.out(v)) {
      lo[v] = std::min(lo[v], static_cast<Dist>(a.w));
      hi[v] = std::max(hi[v], static_cast<Dist>(a.w));
    }
  const Dist w_min = convergecast(e, lo, Fold::kMin, prefix + "-min-weight");
  const Dist w_max = convergecast(e, hi, Fold::kMax, prefix + "-max-weight");
  if (w_min < kInf) {
    const int levels = scale_levels(static_cast<int>(res.h), static_cast<Weight>(w_max));
    const Weight cap = 2 * res.h_star + 1;
    const int shortest = directed ? 2 : 3;
    for (int i = 1; i <= levels; ++i) {
      WeightedLevel lv;
      lv.i = i;
      const Weight lightest = scale_weight(static_cast<Weight>(w_min), static_cast<int>(res.h), res.eps_in, i);
      if (static_cast<double>(shortest) * static_cast<double>(lightest) > 2.0 * static_cast<double>(res.h_star)) {
        lv.skipped = true;
        res.levels.push_back(lv);
        continue;
      }
      const Graph gi = clipped_level(g, i, res.h, res.eps_in, cap);
      if (directed) {
        DirectedOptions d = o.directed;
        d.seed = derive_seed(o.seed, 0x4c45564c, i);
        d.forced_S = nullptr;
        lv.raw = hop_limited_mwc_directed(e, gi, res.h_star, d).mu;
      } else {
        GirthOptions q = o.girth;
        q.seed = derive_seed(o.seed, 0x4c45564c, i);
        q.forced_S = nullptr;
        lv.raw = hop_limited_mwc(e, gi, res.h_star, q).M;
      }
      if (lv.raw < kInf) lv.scaled = lv.raw * res.eps_in * std::ldexp(1.0, i) / (2.0 * static_cast<double>(res.h));
      res.M = std::min(res.M, lv.scaled);
      res.levels.push_back(lv);
    }
  }

  res.M = std::min(res.M, convergecast(e, res.M_v, Fold::kMin, prefix + "-min"));
  return res;
}

}  // namespace

WeightedResult mwc_undirected_weighted(Engine& e, const Graph& g, const WeightedOptions& o) {
  if (g.directed()) throw Error(ErrorCode::kInvalidArgument, "mwc_undirected_weighted needs an undirected graph");
  return run_weighted(e, g, o);
}

WeightedResult mwc_directed_weighted(Engine& e, const Graph& g, const WeightedOptions& o) {
  if (!g.directed()) throw Error(ErrorCode::kInvalidArgument, "mwc_directed_weighted needs a directed graph");
  return run_weighted(e, g, o);
}

}  // namespace mwc
