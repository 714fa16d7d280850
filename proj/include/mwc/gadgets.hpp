#pragma once

#include <string>
#include <vector>

#include "mwc/graph.hpp"

namespace mwc {

enum class GadgetKind { kDirectedTree, kWeightedTree, kGirth };

struct GadgetSpec {
  GadgetKind kind = GadgetKind::kDirectedTree;
  std::string Sa;  // '0'/'1' strings
  std::string Sb;
  int p = 2;            // tree height; path length l = 2^p
  double alpha = 2.0;   // heavy weight ceil(alpha * n) for the weighted tree
  int t = 1;            // stretch of base edges (girth gadget)
  int k = 2;            // base girth parameter
  std::string base;     // "pg2", "cycle5", "petersen" (k=2); "kaa" (k=1)
  int base_param = 2;   // prime order for pg2, side a for kaa
};

struct Gadget {
  Graph g;
  Vertex alice = -1;  // u_0 (tree gadgets)
  Vertex bob = -1;    // u_l
};

Gadget gen_gadget(const GadgetSpec& spec);

// Base graph of girth at least 2k+1 for the girth gadget.
Graph girth_base(int k, const std::string& name, int param);

// Parses "kind=fig1 Sa=0101 ..." style key=value text.
GadgetSpec parse_gadget_spec(const std::vector<std::pair<std::string, std::string>>& kv);

}  // namespace mwc
