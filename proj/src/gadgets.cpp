#include "mwc/gadgets.hpp"

#include <array>
#include <cmath>

namespace mwc {

namespace {

void check_bits(const std::string& s, const char* name) {
  for (char c : s)
    if (c != '0' && c != '1') throw Error(ErrorCode::kInvalidArgument, std::string(name) + " must be a 0/1 string");
}

// Incidence graph of the projective plane of prime order q (girth 6).
Graph projective_plane(int q) {
  if (q < 2) throw Error(ErrorCode::kInvalidArgument, "pg2 needs a prime order >= 2");
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) throw Error(ErrorCode::kInvalidArgument, "pg2 order must be prime");
  std::vector<std::array<int, 3>> pts;
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) pts.push_back({1, a, b});
  for (int b = 0; b < q; ++b) pts.push_back({0, 1, b});
  pts.push_back({0, 0, 1});
  const int N = static_cast<int>(pts.size());
  std::vector<Edge> edges;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      int dot = pts[i][0] * pts[j][0] + pts[i][1] * pts[j][1] + pts[i][2] * pts[j][2];
      if (dot % q == 0) edges.push_back({i, N + j, 1});
    }
  return Graph::from_edges(2 * N, false, std::move(edges));
}

Graph petersen() {
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.push_back({i, (i + 1) % 5, 1});
    edges.push_back({5 + i, 5 + (i + 2) % 5, 1});
    edges.push_back({i, 5 + i, 1});
  }
  return Graph::from_edges(10, false, std::move(edges));
}

Graph cycle_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1});
  return Graph::from_edges(n, false, std::move(edges));
}

Graph complete_bipartite(int a) {
  if (a < 2) throw Error(ErrorCode::kInvalidArgument, "kaa needs a >= 2");
  std::vector<Edge> edges;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < a; ++j) edges.push_back({i, a + j, 1});
  return Graph::from_edges(2 * a, false, std::move(edges));
}

// Balanced tree of height p plus paths; shared by both tree gadgets.
Gadget tree_gadget(const GadgetSpec& s, bool directed) {
  check_bits(s.Sa, "Sa");
  check_bits(s.Sb, "Sb");
  if (s.Sa.size() != s.Sb.size() || s.Sa.empty())
    throw Error(ErrorCode::kInvalidArgument, "Sa and Sb must be non-empty and of equal length");
  if (s.p < 1 || s.p > 16) throw Error(ErrorCode::kInvalidArgument, "tree height p must be in [1, 16]");
  const int p = s.p;
  const int ell = 1 << p;
  const int q = static_cast<int>(s.Sa.size());
  const int tree = (1 << (p + 1)) - 1;
  const int first_leaf = (1 << p) - 1;
  const Vertex u_last = tree;  // u_l hangs under the parent of u_{l-1}
  const int n = tree + 1 + q * (ell + 1);
  auto u = [&](int j) { return j == ell ? u_last : first_leaf + j; };
  auto v = [&](int i, int j) { return tree + 1 + i * (ell + 1) + j; };
  std::vector<char> spine(tree + 1, 0);
  for (Vertex x = u_last; x != 0;) {
    spine[x] = 1;
    x = x == u_last ? (first_leaf + ell - 2) / 2 : (x - 1) / 2;
  }
  const Weight heavy = directed ? 1 : static_cast<Weight>(std::ceil(s.alpha * n));
  std::vector<Edge> edges;
  for (Vertex c = 1; c < tree; ++c) {
    Vertex par = (c - 1) / 2;
    if (spine[c]) edges.push_back({c, par, 1});
    else edges.push_back({par, c, 1});
  }
  edges.push_back({u_last, (first_leaf + ell - 2) / 2, 1});
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < ell; ++j) edges.push_back({v(i, j), v(i, j + 1), 1});
    if (s.Sa[i] == '1') edges.push_back({u(0), v(i, 0), 1});
    if (s.Sb[i] == '1') edges.push_back({v(i, ell), u(ell), 1});
    for (int j = 1; j < ell; ++j) edges.push_back({v(i, j), u(j), heavy});
  }
  Gadget gd;
  gd.g = Graph::from_edges(n, directed, std::move(edges));
  gd.alice = u(0);
  gd.bob = u(ell);
  return gd;
}

Gadget girth_gadget(const GadgetSpec& s) {
  check_bits(s.Sa, "Sa");
  check_bits(s.Sb, "Sb");
  if (s.t < 1) throw Error(ErrorCode::kInvalidArgument, "stretch t must be >= 1");
  Graph base = girth_base(s.k, s.base, s.base_param);
  if (s.Sa.size() != base.m() || s.Sb.size() != base.m())
    throw Error(ErrorCode::kInvalidArgument,
                "Sa and Sb must have one bit per base edge (" + std::to_string(base.m()) + ")");
  const int nb = base.n();
  std::vector<Edge> edges;
  for (Vertex x = 0; x < nb; ++x) edges.push_back({x, nb + x, 1});
  Vertex next = 2 * nb;
  auto path = [&](Vertex a, Vertex b) {
    Vertex prev = a;
    for (int j = 1; j < s.t; ++j) {
      edges.push_back({prev, next, 1});
      prev = next++;
    }
    edges.push_back({prev, b, 1});
  };
  for (size_t i = 0; i < base.m(); ++i) {
    const Edge& e = base.edges()[i];
    if (s.Sa[i] == '1') path(e.u, e.v);
    if (s.Sb[i] == '1') path(nb + e.u, nb + e.v);
  }
  Gadget gd;
  gd.g = Graph::from_edges(next, false, std::move(edges));
  return gd;
}

}  // namespace

Graph girth_base(int k, const std::string& name, int param) {
  if (k == 2) {
    if (name.empty() || name == "pg2") return projective_plane(param);
    if (name == "cycle5") return cycle_graph(5);
    if (name == "petersen") return petersen();
    throw Error(ErrorCode::kInvalidArgument, "unknown base graph for k=2: " + name);
  }
  if (k == 1) {
    if (name.empty() || name == "kaa") return complete_bipartite(std::max(2, param));
    throw Error(ErrorCode::kInvalidArgument, "unknown base graph for k=1: " + name);
  }
  throw Error(ErrorCode::kUnsupported, "no base construction shipped for k=" + std::to_string(k));
}

Gadget gen_gadget(const GadgetSpec& spec) {
  switch (spec.kind) {
    case GadgetKind::kDirectedTree:
      return tree_gadget(spec, true);
    case GadgetKind::kWeightedTree:
      return tree_gadget(spec, false);
    case GadgetKind::kGirth:
      return girth_gadget(spec);
  }
  throw Error(ErrorCode::kInternal, "unknown gadget kind");
}

GadgetSpec parse_gadget_spec(const std::vector<std::pair<std::string, std::string>>& kv) {
  GadgetSpec s;
  for (const auto& [k, v] : kv) {
    try {
      if (k == "kind") {
        if (v == "fig1" || v == "directed-fig1") s.kind = GadgetKind::kDirectedTree;
        else if (v == "fig2" || v == "undirected-weighted-fig2") s.kind = GadgetKind::kWeightedTree;
        else if (v == "fig3" || v == "girth-fig3") s.kind = GadgetKind::kGirth;
        else throw Error(ErrorCode::kInvalidArgument, "unknown gadget kind: " + v);
      } else if (k == "Sa") {
        s.Sa = v;
      } else if (k == "Sb") {
        s.Sb = v;
      } else if (k == "p") {
        s.p = std::stoi(v);
      } else if (k == "alpha") {
        s.alpha = std::stod(v);
      } else if (k == "t") {
        s.t = std::stoi(v);
      } else if (k == "k") {
        s.k = std::stoi(v);
      } else if (k == "base") {
        s.base = v;
      } else if (k == "base_param") {
        s.base_param = std::stoi(v);
      }
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument, "bad value for gadget key " + k + ": " + v);
    }
  }
  return s;
}

}  // namespace mwc
