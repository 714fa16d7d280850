#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mwc/graph.hpp"

namespace mwc {

struct LinkEnd {
  int32_t link;
  Vertex peer;
};

// Communication topology. Links are bidirectional; parallel links between the
// same pair are allowed and are reported as time dilation.
class Network {
 public:
  Network() = default;
  Network(int n, const std::vector<std::pair<Vertex, Vertex>>& links);
  // One link per pair adjacent in the undirected support.
  static Network support_of(const Graph& g);
  // One link per edge of g (link id == edge id).
  static Network per_edge(const Graph& g);

  int n() const { return n_; }
  int num_links() const { return static_cast<int>(links_.size()); }
  std::span<const LinkEnd> ends(Vertex v) const {
    return {ends_.data() + off_[v], ends_.data() + off_[v + 1]};
  }
  std::pair<Vertex, Vertex> link(int32_t id) const { return links_[id]; }
  int32_t link_between(Vertex u, Vertex v) const;
  // Link carrying arc a out of v in graph g.
  int32_t arc_link(Vertex v, const Arc& a) const {
    return per_edge_ ? a.edge : link_between(v, a.to);
  }
  int dilation() const { return dilation_; }
  bool connected() const;

 private:
  int n_ = 0;
  bool per_edge_ = false;
  int dilation_ = 1;
  std::vector<std::pair<Vertex, Vertex>> links_;
  std::vector<int32_t> off_;
  std::vector<LinkEnd> ends_;  // sorted by peer within each vertex
};

struct Message {
  Vertex from = -1;
  Vertex to = -1;
  int32_t link = -1;
  int32_t kind = 0;
  int32_t words = 1;
  int64_t sent = 0;
  int64_t a = 0, b = 0, c = 0, d = 0;
};

struct RoundLog {
  int64_t total_rounds = 0;
  int64_t charged_rounds = 0;  // analytic charges, not simulated
  std::vector<std::pair<std::string, int64_t>> breakdown;
  std::vector<std::pair<std::string, int64_t>> charged;
  int64_t max_words_per_edge_round = 0;
  int64_t messages = 0;
  int64_t words = 0;
  int time_dilation = 1;
  uint64_t hash = 1469598103934665603ULL;
  bool trace_enabled = false;
  std::map<int64_t, int64_t> trace;  // global round -> words put on links

  void add(const std::string& name, int64_t rounds);
  void add_charged(const std::string& name, int64_t rounds);
  int64_t rounds_of(const std::string& name) const;
  void mix(uint64_t x);
  std::string to_json() const;
  std::string trace_csv() const;
};

struct BfsTree {
  Vertex root = 0;
  int height = 0;
  std::vector<Vertex> parent;
  std::vector<int32_t> parent_link;
  std::vector<int> depth;
  std::vector<std::vector<std::pair<Vertex, int32_t>>> children;  // (child, link)
};

class Engine;

// A node program. step() runs for every node that has deliveries or a wake-up
// in the current round, in ascending id order.
class Program {
 public:
  virtual ~Program() = default;
  virtual void start(Engine& e) = 0;
  virtual void step(Engine& e, Vertex v, std::span<const Message> inbox) = 0;
};

class Engine {
 public:
  static constexpr int64_t kNoLimit = int64_t{1} << 60;

  Engine(const Network& net, uint64_t seed, RoundLog& log);

  const Network& net() const { return *net_; }
  int n() const { return net_->n(); }
  uint64_t seed() const { return seed_; }
  RoundLog& log() { return *log_; }
  int64_t round() const { return round_; }
  int stage() const { return stage_; }

  // Puts an m.words-word message on `link` starting at round `at` (default:
  // now). It occupies the link direction for m.words rounds and is delivered
  // `extra_delay` rounds after its last word. Overlap is a congestion violation.
  void send(Vertex from, int32_t link, Message m, int64_t extra_delay = 0, int64_t at = -1);
  void wake(Vertex v, int64_t at);
  // Node-local random stream, fresh per stage.
  Rng& rng(Vertex v);
  // First round at which `from` may start a send on `link`.
  int64_t link_free(Vertex from, int32_t link) const;

  // Runs one stage to quiescence and logs max(last delivery, planned) rounds.
  int64_t run(const std::string& name, Program& p, int64_t max_rounds = kNoLimit, int64_t planned = 0);
  // Rounds of a schedule executed in closed form.
  void account(const std::string& name, int64_t rounds, int64_t messages, int64_t words);
  // Rounds charged analytically for a component that is not simulated.
  void charge(const std::string& name, int64_t rounds);

  // BFS tree of the support from the lowest id; built on first use.
  const BfsTree& tree();
  int diameter();

 private:
  struct Event {
    int64_t round;
    uint64_t seq;
    int32_t idx;  // message index, or -(v+1) for a wake-up
    bool operator>(const Event& o) const {
      return round != o.round ? round > o.round : seq > o.seq;
    }
  };

  const Network* net_;
  uint64_t seed_;
  RoundLog* log_;
  int64_t round_ = 0;
  int64_t offset_ = 0;  // global round at stage start
  int stage_ = 0;
  uint64_t seq_ = 0;
  std::vector<int64_t> busy_;
  std::vector<Message> pool_;
  std::vector<int32_t> free_;
  std::vector<Event> heap_;
  std::vector<std::unique_ptr<Rng>> rngs_;
  std::unique_ptr<BfsTree> tree_;
  int diameter_ = -1;
};

}  // namespace mwc
