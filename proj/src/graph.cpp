#include "mwc/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <queue>
#include <sstream>
#include <tuple>
#include <unordered_set>

namespace mwc {

namespace {

// Largest admissible weight: n^4 (with n floored at 8 so tiny gadgets fit).
Weight weight_bound(int n) {
  const double b = std::pow(std::max(8, n), 4.0);
  return static_cast<Weight>(std::min(b, 9.0e15));
}

uint64_t pair_key(Vertex u, Vertex v) {
  return (static_cast<uint64_t>(static_cast<uint32_t>(u)) << 32) | static_cast<uint32_t>(v);
}

}  // namespace

Graph Graph::from_edges(int n, bool directed, std::vector<Edge> edges) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "negative vertex count");
  std::unordered_set<uint64_t> seen;
  seen.reserve(edges.size() * 2);
  const Weight bound = weight_bound(n);
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw Error(ErrorCode::kInvariant, "vertex id out of range in edge (" +
                                             std::to_string(e.u) + "," + std::to_string(e.v) + ")");
    if (e.u == e.v) throw Error(ErrorCode::kInvariant, "self-loop at vertex " + std::to_string(e.u));
    if (e.w < 0) throw Error(ErrorCode::kInvariant, "negative weight");
    if (e.w > bound) throw Error(ErrorCode::kInvariant, "weight exceeds polynomial bound");
    Vertex a = e.u, b = e.v;
    if (!directed && a > b) std::swap(a, b);
    if (!seen.insert(pair_key(a, b)).second)
      throw Error(ErrorCode::kInvariant, "duplicate edge (" + std::to_string(e.u) + "," +
                                             std::to_string(e.v) + ")");
  }
  Graph g;
  g.n_ = n;
  g.directed_ = directed;
  g.edges_ = std::move(edges);
  g.build();
  return g;
}

void Graph::build() {
  max_w_ = 0;
  min_w_ = edges_.empty() ? 0 : edges_.front().w;
  for (const Edge& e : edges_) {
    max_w_ = std::max(max_w_, e.w);
    min_w_ = std::min(min_w_, e.w);
  }
  out_off_.assign(n_ + 1, 0);
  in_off_.assign(n_ + 1, 0);
  for (const Edge& e : edges_) {
    ++out_off_[e.u + 1];
    ++in_off_[e.v + 1];
    if (!directed_) {
      ++out_off_[e.v + 1];
      ++in_off_[e.u + 1];
    }
  }
  for (int i = 0; i < n_; ++i) {
    out_off_[i + 1] += out_off_[i];
    in_off_[i + 1] += in_off_[i];
  }
  out_arcs_.resize(out_off_[n_]);
  in_arcs_.resize(in_off_[n_]);
  std::vector<int32_t> oc(out_off_.begin(), out_off_.end() - 1);
  std::vector<int32_t> ic(in_off_.begin(), in_off_.end() - 1);
  for (int32_t id = 0; id < static_cast<int32_t>(edges_.size()); ++id) {
    const Edge& e = edges_[id];
    out_arcs_[oc[e.u]++] = {e.v, e.w, id};
    in_arcs_[ic[e.v]++] = {e.u, e.w, id};
    if (!directed_) {
      out_arcs_[oc[e.v]++] = {e.u, e.w, id};
      in_arcs_[ic[e.u]++] = {e.v, e.w, id};
    }
  }
  auto by_to = [](const Arc& a, const Arc& b) { return a.to < b.to; };
  for (int v = 0; v < n_; ++v) {
    std::sort(out_arcs_.begin() + out_off_[v], out_arcs_.begin() + out_off_[v + 1], by_to);
    std::sort(in_arcs_.begin() + in_off_[v], in_arcs_.begin() + in_off_[v + 1], by_to);
  }
  sup_off_.assign(n_ + 1, 0);
  sup_.clear();
  std::vector<Vertex> tmp;
  for (int v = 0; v < n_; ++v) {
    tmp.clear();
    for (const Arc& a : out(v)) tmp.push_back(a.to);
    for (const Arc& a : in(v)) tmp.push_back(a.to);
    std::sort(tmp.begin(), tmp.end());
    tmp.erase(std::unique(tmp.begin(), tmp.end()), tmp.end());
    sup_.insert(sup_.end(), tmp.begin(), tmp.end());
    sup_off_[v + 1] = static_cast<int32_t>(sup_.size());
  }
}

bool Graph::has_edge(Vertex u, Vertex v) const { return edge_weight(u, v) >= 0; }

Weight Graph::edge_weight(Vertex u, Vertex v) const {
  auto arcs = out(u);
  auto it = std::lower_bound(arcs.begin(), arcs.end(), v,
                             [](const Arc& a, Vertex x) { return a.to < x; });
  if (it != arcs.end() && it->to == v) return it->w;
  return -1;
}

Graph Graph::reversed() const {
  if (!directed_) return *this;
  std::vector<Edge> es;
  es.reserve(edges_.size());
  for (const Edge& e : edges_) es.push_back({e.v, e.u, e.w});
  Graph g;
  g.n_ = n_;
  g.directed_ = true;
  g.edges_ = std::move(es);
  g.build();
  return g;
}

Graph Graph::with_weights(const std::vector<Weight>& w) const {
  if (w.size() != edges_.size()) throw Error(ErrorCode::kInvalidArgument, "weight vector size mismatch");
  Graph g = *this;
  for (size_t i = 0; i < w.size(); ++i) g.edges_[i].w = w[i];
  g.build();
  return g;
}

Graph Graph::as_unweighted() const { return with_weights(std::vector<Weight>(edges_.size(), 1)); }

bool Graph::operator==(const Graph& o) const {
  if (n_ != o.n_ || directed_ != o.directed_ || edges_.size() != o.edges_.size()) return false;
  auto canon = [this](std::vector<Edge> es) {
    for (Edge& e : es)
      if (!directed_ && e.u > e.v) std::swap(e.u, e.v);
    std::sort(es.begin(), es.end(), [](const Edge& a, const Edge& b) {
      return std::tie(a.u, a.v, a.w) < std::tie(b.u, b.v, b.w);
    });
    return es;
  };
  return canon(edges_) == canon(o.edges_);
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int n = -1;
  bool directed = false;
  std::vector<Edge> edges;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kParse, "line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (n < 0) {
      if (tok.size() != 2) fail("expected header \"n directed|undirected\"");
      try {
        n = std::stoi(tok[0]);
      } catch (...) {
        fail("bad vertex count");
      }
      if (n < 0) fail("bad vertex count");
      if (tok[1] == "directed") {
        directed = true;
      } else if (tok[1] == "undirected") {
        directed = false;
      } else {
        fail("expected directed or undirected");
      }
      continue;
    }
    if (tok.size() < 2 || tok.size() > 3) fail("expected \"u v [w]\"");
    Edge e{0, 0, 1};
    try {
      size_t pos = 0;
      e.u = std::stoi(tok[0], &pos);
      if (pos != tok[0].size()) fail("bad vertex id");
      e.v = std::stoi(tok[1], &pos);
      if (pos != tok[1].size()) fail("bad vertex id");
      if (tok.size() == 3) {
        e.w = std::stoll(tok[2], &pos);
        if (pos != tok[2].size()) fail("bad weight");
      }
    } catch (const Error&) {
      throw;
    } catch (...) {
      fail("bad number");
    }
    if (e.u == e.v) fail("self-loop");
    edges.push_back(e);
  }
  if (n < 0) throw Error(ErrorCode::kParse, "missing header line");
  try {
    return Graph::from_edges(n, directed, std::move(edges));
  } catch (const Error& e) {
    throw Error(e.code(), std::string("invalid graph: ") + e.what());
  }
}

Graph load_graph(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_edge_list(ss.str());
}

std::string format_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.n() << ' ' << (g.directed() ? "directed" : "undirected") << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
  return out.str();
}

void save_graph(const Graph& g, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  f << format_edge_list(g);
}

namespace {

std::vector<int> support_bfs(const Graph& g, Vertex s) {
  std::vector<int> d(g.n(), -1);
  std::vector<Vertex> q{s};
  d[s] = 0;
  for (size_t i = 0; i < q.size(); ++i) {
    Vertex x = q[i];
    for (Vertex y : g.support(x))
      if (d[y] < 0) {
        d[y] = d[x] + 1;
        q.push_back(y);
      }
  }
  return d;
}

}  // namespace

bool support_connected(const Graph& g) {
  if (g.n() <= 1) return true;
  auto d = support_bfs(g, 0);
  return std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; });
}

DiameterReport undirected_diameter(const Graph& g) {
  DiameterReport r;
  for (Vertex s = 0; s < g.n(); ++s) {
    auto d = support_bfs(g, s);
    for (int x : d) {
      if (x < 0) throw Error(ErrorCode::kDisconnected, "undirected support is disconnected");
      r.D = std::max(r.D, x);
    }
  }
  return r;
}

}  // namespace mwc
