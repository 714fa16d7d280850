#pragma once

#include <span>
#include <string>
#include <vector>

#include "mwc/common.hpp"

namespace mwc {

struct Edge {
  Vertex u;
  Vertex v;
  Weight w;
  bool operator==(const Edge&) const = default;
};

// One adjacency entry; `edge` indexes Graph::edges().
struct Arc {
  Vertex to;
  Weight w;
  int32_t edge;
};

// Immutable vertex/edge store. Undirected edges are stored once and appear in
// both endpoints' out() and in() lists.
class Graph {
 public:
  Graph() = default;

  // Validates ids, self-loops, duplicates and weights; throws Error.
  static Graph from_edges(int n, bool directed, std::vector<Edge> edges);

  int n() const { return n_; }
  bool directed() const { return directed_; }
  size_t m() const { return edges_.size(); }
  Weight max_weight() const { return max_w_; }
  Weight min_weight() const { return min_w_; }
  bool unweighted() const { return edges_.empty() || (max_w_ == 1 && min_w_ == 1); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const Arc> out(Vertex v) const {
    return {out_arcs_.data() + out_off_[v], out_arcs_.data() + out_off_[v + 1]};
  }
  std::span<const Arc> in(Vertex v) const {
    return {in_arcs_.data() + in_off_[v], in_arcs_.data() + in_off_[v + 1]};
  }
  // Neighbours in the undirected support, sorted, without repetition.
  std::span<const Vertex> support(Vertex v) const {
    return {sup_.data() + sup_off_[v], sup_.data() + sup_off_[v + 1]};
  }

  bool has_edge(Vertex u, Vertex v) const;
  // Weight of edge (u,v), or -1 when absent.
  Weight edge_weight(Vertex u, Vertex v) const;

  Graph reversed() const;
  Graph with_weights(const std::vector<Weight>& w) const;
  Graph as_unweighted() const;

  bool operator==(const Graph& o) const;

 private:
  void build();

  int n_ = 0;
  bool directed_ = false;
  std::vector<Edge> edges_;
  Weight max_w_ = 0;
  Weight min_w_ = 0;
  std::vector<int32_t> out_off_, in_off_, sup_off_;
  std::vector<Arc> out_arcs_, in_arcs_;
  std::vector<Vertex> sup_;
};

// Edge-list text format: header "n directed|undirected", then "u v [w]".
Graph parse_edge_list(const std::string& text);
Graph load_graph(const std::string& path);
std::string format_edge_list(const Graph& g);
void save_graph(const Graph& g, const std::string& path);

struct DiameterReport {
  int D = 0;
};

// Hop diameter of the undirected, unweighted support.
DiameterReport undirected_diameter(const Graph& g);
bool support_connected(const Graph& g);

}  // namespace mwc
