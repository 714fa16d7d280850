#include "mwc/mwc.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "json.hpp"
#include "mwc/directed.hpp"
#include "mwc/gadgets.hpp"
#include "mwc/generators.hpp"
#include "mwc/girth.hpp"
#include "mwc/oracles.hpp"
#include "mwc/sssp.hpp"
#include "mwc/weighted.hpp"

using json = nlohmann::ordered_json;
using namespace mwc;

struct mwc_graph {
  Graph g;
  std::vector<Vertex> witness;
};

struct mwc_run {
  double value = kInf;
  int64_t rounds = 0;
  uint64_t hash = 0;
  int64_t max_words = 0;
  bool violated = false;
  std::string json;
};

namespace {

thread_local std::string last_error;

mwc_status fail(mwc_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

// Runs f, mapping exceptions to status codes.
template <class F>
mwc_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return MWC_OK;
  } catch (const Error& e) {
    return fail(static_cast<mwc_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MWC_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MWC_INTERNAL, e.what());
  }
}

json num(Dist x) { return x == kInf ? json(nullptr) : json(x); }

using KV = std::vector<std::pair<std::string, std::string>>;

KV parse_kv(const std::string& spec) {
  KV kv;
  std::istringstream in(spec);
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::kParse, "expected key=value, got '" + tok + "'");
    kv.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
  }
  return kv;
}

struct Spec {
  KV kv;
  std::string get(const std::string& k, const std::string& def = "") const {
    for (const auto& [a, b] : kv)
      if (a == k) return b;
    return def;
  }
  bool has(const std::string& k) const {
    return std::any_of(kv.begin(), kv.end(), [&](const auto& p) { return p.first == k; });
  }
  int64_t i64(const std::string& k, int64_t def) const {
    if (!has(k)) return def;
    try {
      size_t used = 0;
      const std::string v = get(k);
      const int64_t x = std::stoll(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return x;
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, "bad integer for " + k + ": " + get(k));
    }
  }
  double f64(const std::string& k, double def) const {
    if (!has(k)) return def;
    try {
      return std::stod(get(k));
    } catch (const std::exception&) {
      throw Error(ErrorCode::kParse, "bad number for " + k + ": " + get(k));
    }
  }
  bool flag(const std::string& k, bool def) const {
    if (!has(k)) return def;
    const std::string v = get(k);
    if (v == "1" || v == "true" || v == "yes" || v == "directed") return true;
    if (v == "0" || v == "false" || v == "no" || v == "undirected") return false;
    throw Error(ErrorCode::kParse, "bad flag for " + k + ": " + v);
  }
};

Graph ring(int n, bool directed, Weight W, uint64_t seed) {
  std::vector<Edge> ed;
  Rng rng(derive_seed(seed, 0x52494e47));
  for (int i = 0; i < n; ++i) ed.push_back({i, (i + 1) % n, W > 1 ? uniform_int(rng, 1, W) : 1});
  return Graph::from_edges(n, directed, ed);
}

mwc_graph* generate(const std::string& text) {
  Spec s{parse_kv(text)};
  const std::string fam = s.get("family", "random");
  const int n = static_cast<int>(s.i64("n", 64));
  const bool directed = s.flag("directed", false);
  const Weight W = s.i64("W", 1);
  const uint64_t seed = static_cast<uint64_t>(s.i64("seed", 1));
  auto out = std::make_unique<mwc_graph>();
  if (fam == "random") {
    out->g = gen_random(n, s.f64("avg", 3.0), directed, W, seed, s.flag("connected", true));
  } else if (fam == "tree") {
    out->g = gen_random(n, 0, directed, W, seed, true);
  } else if (fam == "planted") {
    PlantedOptions po;
    po.avg_degree = s.f64("avg", po.avg_degree);
    const int len = static_cast<int>(s.i64("len", 5));
    auto p = gen_planted_cycle(n, len, s.i64("weight", len), directed, seed, po);
    out->g = std::move(p.g);
    out->witness = std::move(p.cycle);
  } else if (fam == "cycle") {
    out->g = ring(n, directed, W, seed);
    for (int i = 0; i < n; ++i) out->witness.push_back(i);
  } else if (fam == "path" || fam == "star") {
    std::vector<Edge> ed;
    for (int i = 1; i < n; ++i) ed.push_back({fam == "path" ? i - 1 : 0, i, 1});
    out->g = Graph::from_edges(n, directed, ed);
  } else if (fam == "grid") {
    const int rows = static_cast<int>(s.i64("rows", 8)), cols = static_cast<int>(s.i64("cols", 8));
    if (rows < 1 || cols < 1) throw Error(ErrorCode::kInvalidArgument, "grid needs rows, cols >= 1");
    std::vector<Edge> ed;
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        if (c + 1 < cols) ed.push_back({r * cols + c, r * cols + c + 1, 1});
        if (r + 1 < rows) ed.push_back({r * cols + c, (r + 1) * cols + c, 1});
      }
    out->g = Graph::from_edges(rows * cols, directed, ed);
  } else if (fam == "petersen") {
    out->g = girth_base(2, "petersen", 0);
  } else if (fam == "gadget") {
    KV rest;
    for (const auto& p : s.kv)
      if (p.first != "family") rest.push_back(p);
    out->g = gen_gadget(parse_gadget_spec(rest)).g;
  } else {
    throw Error(ErrorCode::kInvalidArgument, "unknown family: " + fam);
  }
  return out.release();
}

std::vector<Vertex> sources_of(const Graph& g, const mwc_params& p) {
  std::vector<Vertex> U;
  if (p.sources) {
    if (p.num_sources < 1) throw Error(ErrorCode::kInvalidArgument, "num_sources must be positive");
    U.assign(p.sources, p.sources + p.num_sources);
    for (Vertex u : U)
      if (u < 0 || u >= g.n()) throw Error(ErrorCode::kInvalidArgument, "source out of range");
    std::sort(U.begin(), U.end());
    if (std::adjacent_find(U.begin(), U.end()) != U.end()) throw Error(ErrorCode::kInvalidArgument, "duplicate source");
    return U;
  }
  const int k = p.num_sources > 0 ? std::min(p.num_sources, g.n()) : 1;
  for (int i = 0; i < k; ++i) U.push_back(static_cast<Vertex>(static_cast<int64_t>(i) * g.n() / k));
  return U;
}

uint64_t table_digest(const DistanceTable& t) {
  uint64_t h = 1469598103934665603ULL;
  for (Dist d : t.dist) {
    const uint64_t x = d == kInf ? ~0ULL : static_cast<uint64_t>(d * 1024);
    h = (h ^ x) * 1099511628211ULL;
  }
  return h;
}

std::string hex(uint64_t x) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

struct Ctx {
  Network net;
  RoundLog log;
  Engine e;
  Ctx(const Graph& g, uint64_t seed) : net(Network::support_of(g)), e(net, seed, log) {}
};

void run_sssp(const Graph& g, const std::string& algo, const mwc_params& p, json& j, mwc_run& r) {
  const auto U = sources_of(g, p);
  Ctx c(g, p.seed);
  SsspOptions o;
  o.seed = p.seed;
  o.eps = p.eps;
  if (p.sample_factor > 0) o.sample_factor = p.sample_factor;
  if (p.phase_cap_factor > 0) o.phase_cap_factor = p.phase_cap_factor;
  o.provider = p.provider == 1 ? Provider::kNull : Provider::kExactShortcut;
  SsspResult res;
  if (algo == "bfs-exact") res = ksource_bfs_exact(c.e, g, U, o);
  else if (algo == "sssp-approx") res = ksource_sssp_approx(c.e, g, U, o);
  else res = ksource_small_k(c.e, g, U, o);
  if (algo != "bfs-exact") j["eps"] = p.eps;
  j["k"] = U.size();
  j["h"] = res.h;
  j["S"] = res.S.size();
  j["table_digest"] = hex(table_digest(res.table));
  if (p.tables) {
    json rows = json::array();
    for (size_t ui = 0; ui < U.size(); ++ui) {
      json row = json::array();
      for (Vertex v = 0; v < g.n(); ++v) row.push_back(num(res.table.d(ui, v)));
      rows.push_back(json{{"source", U[ui]}, {"dist", row}});
    }
    j["tables"] = rows;
  }
  if (p.verify) {
    const bool exact = algo == "bfs-exact";
    double worst = 1;
    int64_t bad = 0;
    for (size_t ui = 0; ui < U.size(); ++ui) {
      const auto d = sssp(g, U[ui]);
      for (Vertex v = 0; v < g.n(); ++v) {
        const Dist got = res.table.d(ui, v);
        if (d[v] == kInf || got == kInf) {
          bad += (d[v] == kInf) != (got == kInf);
          continue;
        }
        if (d[v] > 0) worst = std::max(worst, got / d[v]);
        if (exact ? got != d[v] : (got < d[v] - 1e-9 || got > (1 + p.eps) * d[v] + 1e-9)) ++bad;
      }
    }
    j["ratio"] = worst;
    r.value = worst;
    j["violations"] = bad;
    r.violated = bad > 0;
  }
  r.rounds = c.log.total_rounds;
  r.hash = c.log.hash;
  r.max_words = c.log.max_words_per_edge_round;
  j["log"] = json::parse(c.log.to_json());
}

struct Part {
  Dist value = kInf;
  json info;
  Dist oracle = kInf;
  bool violated = false;
};

Part run_mwc_dir(const Graph& g, const mwc_params& p, Engine& e) {
  DirectedOptions o;
  o.seed = p.seed;
  if (p.sample_factor > 0) o.sample_factor = p.sample_factor;
  if (p.phase_cap_factor > 0) o.phase_cap_factor = p.phase_cap_factor;
  o.cap_override = p.cap_override;
  o.witness = p.witness != 0;
  const bool hop = p.hop_bound > 0;
  DirectedResult res = hop ? hop_limited_mwc_directed(e, g, p.hop_bound, o) : mwc_directed_unweighted(e, g, o);
  Part out;
  out.value = res.mu;
  out.info = {{"S", res.S.size()}, {"Z", res.z_count()}, {"h", res.h},       {"rho", res.rho},
              {"beta", res.beta},  {"cap", res.cap},       {"phases", res.phases}};
  if (p.verify) {
    const OracleReport ref = exact_mwc(g);
    out.oracle = hop ? hop_limited_mwc_host(g, p.hop_bound) : ref.value;
    const Dist lo = hop ? ref.value : out.oracle;
    out.violated = res.mu < lo || (out.oracle < kInf && res.mu > 2 * out.oracle) || (!hop && (res.mu == kInf) != (out.oracle == kInf));
    if (!hop && ref.value < kInf) out.info["case"] = classify_run(g, res, ref.cycle);
    if (p.witness && res.mu < kInf) {
      Vertex at = static_cast<Vertex>(std::min_element(res.mu_v.begin(), res.mu_v.end()) - res.mu_v.begin());
      out.info["witness"] = witness_walk(res, at);
    }
  }
  return out;
}

Part run_girth(const Graph& g, const mwc_params& p, Engine& e) {
  GirthOptions o;
  o.seed = p.seed;
  if (p.sample_factor > 0) o.sample_factor = p.sample_factor;
  const bool hop = p.hop_bound > 0;
  GirthResult res = hop ? hop_limited_mwc(e, g, p.hop_bound, o) : girth_approx(e, g, o);
  Part out;
  out.value = res.M;
  out.info = {{"S", res.S.size()}, {"R", res.R}};
  if (p.verify) {
    const OracleReport ref = exact_mwc(g);
    out.oracle = hop ? hop_limited_mwc_host(g, p.hop_bound) : ref.value;
    out.violated = res.M < ref.value || (out.oracle < kInf && res.M > 2 * out.oracle - 1);
    if (!hop) {
      out.violated = out.violated || (res.M == kInf) != (ref.value == kInf);
      if (ref.value < kInf) {
        const std::string label = classify_girth(ref.cycle, neighbourhoods(res));
        out.info["case"] = label;
        if ((label == "1.a" || label == "1.b" || label == "2.a") && res.M != ref.value) out.violated = true;
      }
    }
    if (p.witness && res.M < kInf) {
      Vertex at = static_cast<Vertex>(std::min_element(res.M_v.begin(), res.M_v.end()) - res.M_v.begin());
      out.info["witness"] = girth_witness(res, g, at);
    }
  }
  return out;
}

Part run_weighted(const Graph& g, const mwc_params& p, Engine& e) {
  WeightedOptions o;
  o.seed = p.seed;
  o.eps = p.eps;
  if (p.sample_factor > 0) o.sample_factor = p.sample_factor;
  WeightedResult res = g.directed() ? mwc_directed_weighted(e, g, o) : mwc_undirected_weighted(e, g, o);
  Part out;
  out.value = res.M;
  json levels = json::array();
  for (const WeightedLevel& lv : res.levels) levels.push_back(lv.skipped ? json("skipped") : num(lv.scaled));
  out.info = {{"S", res.S.size()}, {"h", res.h}, {"h_star", res.h_star}, {"M_long", num(res.M_long)},
              {"per_level_M", levels}};
  if (p.verify) {
    out.oracle = exact_mwc(g).value;
    out.violated = res.M < out.oracle || (res.M == kInf) != (out.oracle == kInf) ||
                   (out.oracle < kInf && res.M > (2 + 2 * p.eps) * out.oracle + 1e-9);
  }
  return out;
}

std::vector<std::vector<Vertex>> components(const Graph& g) {
  std::vector<int> comp(g.n(), -1);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < g.n(); ++s) {
    if (comp[s] >= 0) continue;
    out.push_back({s});
    comp[s] = static_cast<int>(out.size()) - 1;
    for (size_t i = 0; i < out.back().size(); ++i) {
      const Vertex v = out.back()[i];
      for (auto arcs : {g.out(v), g.in(v)})
        for (const Arc& a : arcs)
          if (comp[a.to] < 0) {
            comp[a.to] = comp[s];
            out.back().push_back(a.to);
          }
    }
  }
  return out;
}

Graph induced(const Graph& g, const std::vector<Vertex>& vs) {
  std::vector<int> id(g.n(), -1);
  for (size_t i = 0; i < vs.size(); ++i) id[vs[i]] = static_cast<int>(i);
  std::vector<Edge> ed;
  for (const Edge& x : g.edges())
    if (id[x.u] >= 0 && id[x.v] >= 0) ed.push_back({id[x.u], id[x.v], x.w});
  return Graph::from_edges(static_cast<int>(vs.size()), g.directed(), ed);
}

void run_mwc(const Graph& g, const std::string& algo, const mwc_params& p, json& j, mwc_run& r) {
  if (algo == "mwc-dir" && !g.directed()) throw Error(ErrorCode::kInvalidArgument, "mwc-dir needs a directed graph");
  if (algo == "girth" && g.directed()) throw Error(ErrorCode::kInvalidArgument, "girth needs an undirected graph");
  // Components run side by side on disjoint networks.
  auto comps = components(g);
  json parts = json::array();
  Dist best = kInf, oracle = kInf;
  uint64_t h = 1469598103934665603ULL;
  for (const auto& vs : comps) {
    if (vs.size() < 2) continue;
    const Graph sub = comps.size() == 1 ? g : induced(g, vs);
    Ctx c(sub, p.seed);
    Part part = algo == "mwc-dir" ? run_mwc_dir(sub, p, c.e) : algo == "girth" ? run_girth(sub, p, c.e) : run_weighted(sub, p, c.e);
    best = std::min(best, part.value);
    oracle = std::min(oracle, part.oracle);
    r.violated = r.violated || part.violated;
    r.rounds = std::max(r.rounds, c.log.total_rounds);
    r.max_words = std::max(r.max_words, c.log.max_words_per_edge_round);
    h = (h ^ c.log.hash) * 1099511628211ULL;
    part.info["n"] = sub.n();
    part.info["value"] = num(part.value);
    part.info["log"] = json::parse(c.log.to_json());
    parts.push_back(part.info);
  }
  r.value = best;
  r.hash = h;
  j["value"] = num(best);
  if (p.verify) {
    j["oracle"] = num(oracle);
    j["ratio"] = oracle < kInf && best < kInf ? json(best / oracle) : json(nullptr);
    j["violated"] = r.violated;
  }
  if (parts.size() == 1) {
    for (auto& [k, v] : parts[0].items())
      if (!j.contains(k)) j[k] = v;
  } else {
    j["components"] = parts;
  }
}

}  // namespace

extern "C" {

const char* mwc_version(void) { return "0.1.0"; }

const char* mwc_status_name(mwc_status s) {
  switch (s) {
    case MWC_OK: return "ok";
    case MWC_INVALID_ARGUMENT: return "invalid_argument";
    case MWC_PARSE: return "parse";
    case MWC_INVARIANT: return "invariant";
    case MWC_CONGESTION: return "congestion";
    case MWC_ROUND_LIMIT: return "round_limit";
    case MWC_DISCONNECTED: return "disconnected";
    case MWC_UNSUPPORTED: return "unsupported";
    case MWC_INTERNAL: return "internal";
    case MWC_IO: return "io";
  }
  return "unknown";
}

const char* mwc_last_error(void) { return last_error.c_str(); }

mwc_status mwc_graph_create(int32_t n, int directed, int64_t m, const int32_t* u, const int32_t* v, const int64_t* w,
                            mwc_graph** out) {
  if (!out || m < 0 || (m > 0 && (!u || !v))) return fail(MWC_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<Edge> ed;
    ed.reserve(static_cast<size_t>(m));
    for (int64_t i = 0; i < m; ++i) ed.push_back({u[i], v[i], w ? w[i] : 1});
    auto g = std::make_unique<mwc_graph>();
    g->g = Graph::from_edges(n, directed != 0, std::move(ed));
    *out = g.release();
  });
}

mwc_status mwc_graph_parse(const char* text, mwc_graph** out) {
  if (!text || !out) return fail(MWC_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto g = std::make_unique<mwc_graph>();
    g->g = parse_edge_list(text);
    *out = g.release();
  });
}

mwc_status mwc_graph_load(const char* path, mwc_graph** out) {
  if (!path || !out) return fail(MWC_INVALID_ARGUMENT, "null argument");
  if (std::FILE* f = std::fopen(path, "r")) std::fclose(f);
  else return fail(MWC_IO, std::string("cannot open ") + path);
  return guarded([&] {
    auto g = std::make_unique<mwc_graph>();
    g->g = load_graph(path);
    *out = g.release();
  });
}

mwc_status mwc_graph_save(const mwc_graph* g, const char* path) {
  if (!g || !path) return fail(MWC_INVALID_ARGUMENT, "null argument");
  return guarded([&] { save_graph(g->g, path); });
}

mwc_status mwc_graph_generate(const char* spec, mwc_graph** out) {
  if (!spec || !out) return fail(MWC_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = generate(spec); });
}

void mwc_graph_free(mwc_graph* g) { delete g; }

int32_t mwc_graph_n(const mwc_graph* g) { return g ? g->g.n() : 0; }
int64_t mwc_graph_m(const mwc_graph* g) { return g ? g->g.m() : 0; }
int mwc_graph_directed(const mwc_graph* g) { return g && g->g.directed() ? 1 : 0; }
int64_t mwc_graph_max_weight(const mwc_graph* g) { return g ? g->g.max_weight() : 0; }

mwc_status mwc_graph_edge(const mwc_graph* g, int64_t i, int32_t* u, int32_t* v, int64_t* w) {
  if (!g) return fail(MWC_INVALID_ARGUMENT, "null graph");
  if (i < 0 || i >= static_cast<int64_t>(g->g.m())) return fail(MWC_INVALID_ARGUMENT, "edge index out of range");
  const Edge& e = g->g.edges()[i];
  if (u) *u = e.u;
  if (v) *v = e.v;
  if (w) *w = e.w;
  return MWC_OK;
}

int32_t mwc_graph_witness(const mwc_graph* g, int32_t* buf, int32_t cap) {
  if (!g) return 0;
  const int32_t len = static_cast<int32_t>(g->witness.size());
  for (int32_t i = 0; buf && i < std::min(len, cap); ++i) buf[i] = g->witness[i];
  return len;
}

mwc_status mwc_graph_diameter(const mwc_graph* g, int32_t* D) {
  if (!g || !D) return fail(MWC_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *D = static_cast<int32_t>(undirected_diameter(g->g).D); });
}

mwc_status mwc_oracle_mwc(const mwc_graph* g, double* value, int32_t* cycle, int32_t cap, int32_t* len) {
  if (!g || !value) return fail(MWC_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const OracleReport r = exact_mwc(g->g);
    *value = r.value;
    const int32_t L = static_cast<int32_t>(r.cycle.size());
    for (int32_t i = 0; cycle && i < std::min(L, cap); ++i) cycle[i] = r.cycle[i];
    if (len) *len = L;
  });
}

mwc_status mwc_oracle_hop_mwc(const mwc_graph* g, int64_t h, double* value) {
  if (!g || !value) return fail(MWC_INVALID_ARGUMENT, "null argument");
  if (h < 1) return fail(MWC_INVALID_ARGUMENT, "hop bound must be positive");
  return guarded([&] { *value = hop_limited_mwc_host(g->g, h); });
}

void mwc_params_init(mwc_params* p) {
  if (!p) return;
  std::memset(p, 0, sizeof *p);
  p->seed = 1;
  p->eps = 0.25;
}

mwc_status mwc_run_algorithm(const mwc_graph* g, const char* algorithm, const mwc_params* params, mwc_run** out) {
  if (!g || !algorithm || !out) return fail(MWC_INVALID_ARGUMENT, "null argument");
  mwc_params p;
  mwc_params_init(&p);
  if (params) p = *params;
  const std::string algo = algorithm;
  return guarded([&] {
    auto r = std::make_unique<mwc_run>();
    json j;
    j["algorithm"] = algo;
    j["n"] = g->g.n();
    j["m"] = g->g.m();
    j["directed"] = g->g.directed();
    j["seed"] = p.seed;
    if (algo == "bfs-exact" || algo == "sssp-approx" || algo == "sssp-small-k") {
      run_sssp(g->g, algo, p, j, *r);
    } else if (algo == "mwc-dir" || algo == "girth" || algo == "mwc-wt") {
      if (algo == "mwc-wt") j["eps"] = p.eps;
      if (p.hop_bound > 0) j["hop_bound"] = p.hop_bound;
      run_mwc(g->g, algo, p, j, *r);
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown algorithm: " + algo);
    }
    j["rounds"] = r->rounds;
    j["hash"] = hex(r->hash);
    j["max_words_per_edge_round"] = r->max_words;
    r->json = j.dump();
    *out = r.release();
  });
}

double mwc_run_value(const mwc_run* r) { return r ? r->value : kInf; }
int64_t mwc_run_rounds(const mwc_run* r) { return r ? r->rounds : 0; }
uint64_t mwc_run_hash(const mwc_run* r) { return r ? r->hash : 0; }
int64_t mwc_run_max_words(const mwc_run* r) { return r ? r->max_words : 0; }
int mwc_run_violated(const mwc_run* r) { return r && r->violated ? 1 : 0; }
const char* mwc_run_json(const mwc_run* r) { return r ? r->json.c_str() : ""; }
void mwc_run_free(mwc_run* r) { delete r; }

}  // extern "C"
