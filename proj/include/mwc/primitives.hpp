#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mwc/engine.hpp"

namespace mwc {

// Per-source distances at every node. Row si belongs to sources[si].
struct DistanceTable {
  int n = 0;
  std::vector<Vertex> sources;
  std::vector<Dist> dist;     // kInf when unreached
  std::vector<int32_t> hops;  // -1 when unreached
  std::vector<Vertex> tag;    // parent / first hop / -1

  DistanceTable() = default;
  DistanceTable(int n_, std::vector<Vertex> src);
  size_t k() const { return sources.size(); }
  size_t at(size_t si, Vertex v) const { return si * static_cast<size_t>(n) + v; }
  Dist d(size_t si, Vertex v) const { return dist[at(si, v)]; }
};

// One broadcast word: a constant-size tuple.
struct Word {
  int64_t a = 0, b = 0, c = 0;
  bool operator==(const Word&) const = default;
};

// Every node learns every word. The upcast to the tree root is simulated; the
// pipelined downcast is scheduled in closed form (root sends strictly one word
// per round, arrival = send + depth). Returns the words in root order.
std::vector<Word> broadcast(Engine& e, const std::vector<std::vector<Word>>& items,
                            const std::string& name = "broadcast");

enum class Fold { kMin, kMax, kSum };
// Up and down the BFS tree; every node ends with the fold of all values.
Dist convergecast(Engine& e, const std::vector<Dist>& values, Fold op,
                  const std::string& name = "convergecast");

enum class Direction { kForward, kReverse };
enum class TagKind { kNone, kParent, kFirstHop };

struct BfsSpec {
  std::vector<Vertex> sources;
  int64_t hop_bound = 0;  // in edge-weight units when `pipes`
  Direction dir = Direction::kForward;
  TagKind tag = TagKind::kNone;
  // Treat every edge as a FIFO pipe whose latency is its weight (simulated
  // subdivision chain); distances and the hop bound are then in weight units.
  bool pipes = false;
  const std::vector<Weight>* weights = nullptr;  // per-edge override when pipes
};

// Pipelined multi-source BFS: each round a node forwards its smallest pending
// (distance, source) pair to all neighbours in the search direction.
DistanceTable multi_bfs(Engine& e, const Graph& g, const BfsSpec& spec, const std::string& name = "multi_bfs");
// Two searches sharing the links on alternating slots.
std::pair<DistanceTable, DistanceTable> multi_bfs_pair(Engine& e, const Graph& g, const BfsSpec& a,
                                                       const BfsSpec& b, const std::string& name = "multi_bfs");

struct NearTable {
  std::vector<std::vector<Vertex>> z;       // per node, sorted by (d, id)
  std::vector<std::vector<int32_t>> d;
  std::vector<std::vector<Vertex>> parent;  // -1 for the node itself
};

struct SourceDetectionSpec {
  int R = 1;
  int64_t hop_bound = 0;
  bool pipes = false;  // weighted pipes; only graph vertices are sources
};

// Every node learns its R nearest vertices within the hop bound (ties by id).
NearTable source_detection(Engine& e, const Graph& g, const SourceDetectionSpec& spec,
                           const std::string& name = "source_detection");

// A single-word wave down tree `tree` (rows of a parent-tagged table) from its root.
struct Cascade {
  int32_t tree;
  int64_t a = 0, b = 0, c = 0;
};

struct DelaySpec {
  const DistanceTable* trees = nullptr;  // parent tags define the trees
  std::vector<Cascade> cascades;
  int64_t rho = 1;         // delays drawn from {1..rho}
  int64_t cap = 1;         // words per edge per phase; also the phase length
  int64_t depth = 1;       // maximum tree depth
  bool strict = true;      // throw on overflow instead of flagging
  const std::vector<int64_t>* forced_delay = nullptr;
};

struct DelayResult {
  std::vector<std::vector<int32_t>> received;  // per node, cascade ids
  std::vector<char> overflow;
  int64_t phases = 0;
};

DelayResult random_delay_schedule(Engine& e, const Graph& g, const DelaySpec& spec,
                                  const std::string& name = "random_delay");

}  // namespace mwc
