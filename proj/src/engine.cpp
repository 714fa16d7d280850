#include "mwc/engine.hpp"

#include <algorithm>

#include "json.hpp"

namespace mwc {

Network::Network(int n, const std::vector<std::pair<Vertex, Vertex>>& links) : n_(n), links_(links) {
  off_.assign(n + 1, 0);
  for (auto [a, b] : links_) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b)
      throw Error(ErrorCode::kInvalidArgument, "bad link endpoint");
    ++off_[a + 1];
    ++off_[b + 1];
  }
  for (int i = 0; i < n; ++i) off_[i + 1] += off_[i];
  ends_.resize(off_[n]);
  std::vector<int32_t> pos(off_.begin(), off_.end() - 1);
  for (int32_t id = 0; id < static_cast<int32_t>(links_.size()); ++id) {
    auto [a, b] = links_[id];
    ends_[pos[a]++] = {id, b};
    ends_[pos[b]++] = {id, a};
  }
  for (int v = 0; v < n; ++v) {
    std::sort(ends_.begin() + off_[v], ends_.begin() + off_[v + 1], [](const LinkEnd& x, const LinkEnd& y) {
      return x.peer != y.peer ? x.peer < y.peer : x.link < y.link;
    });
    auto e = ends(v);
    for (size_t i = 0; i < e.size();) {
      size_t j = i;
      while (j < e.size() && e[j].peer == e[i].peer) ++j;
      dilation_ = std::max(dilation_, static_cast<int>(j - i));
      i = j;
    }
  }
}

Network Network::support_of(const Graph& g) {
  std::vector<std::pair<Vertex, Vertex>> links;
  for (Vertex v = 0; v < g.n(); ++v)
    for (Vertex u : g.support(v))
      if (v < u) links.push_back({v, u});
  return Network(g.n(), links);
}

Network Network::per_edge(const Graph& g) {
  std::vector<std::pair<Vertex, Vertex>> links;
  links.reserve(g.m());
  for (const Edge& e : g.edges()) links.push_back({e.u, e.v});
  Network net(g.n(), links);
  net.per_edge_ = true;
  return net;
}

int32_t Network::link_between(Vertex u, Vertex v) const {
  auto e = ends(u);
  auto it = std::lower_bound(e.begin(), e.end(), v, [](const LinkEnd& x, Vertex p) { return x.peer < p; });
  return it != e.end() && it->peer == v ? it->link : -1;
}

bool Network::connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(n_, 0);
  std::vector<Vertex> q{0};
  seen[0] = 1;
  for (size_t i = 0; i < q.size(); ++i)
    for (const LinkEnd& e : ends(q[i]))
      if (!seen[e.peer]) {
        seen[e.peer] = 1;
        q.push_back(e.peer);
      }
  return static_cast<int>(q.size()) == n_;
}

void RoundLog::add(const std::string& name, int64_t rounds) {
  total_rounds += rounds;
  for (auto& [k, v] : breakdown)
    if (k == name) {
      v += rounds;
      return;
    }
  breakdown.push_back({name, rounds});
}

void RoundLog::add_charged(const std::string& name, int64_t rounds) {
  charged_rounds += rounds;
  for (auto& [k, v] : charged)
    if (k == name) {
      v += rounds;
      return;
    }
  charged.push_back({name, rounds});
}

int64_t RoundLog::rounds_of(const std::string& name) const {
  for (const auto& [k, v] : breakdown)
    if (k == name) return v;
  return 0;
}

void RoundLog::mix(uint64_t x) {
  hash ^= x;
  hash *= 1099511628211ULL;
  hash ^= hash >> 29;
}

std::string RoundLog::to_json() const {
  nlohmann::ordered_json j;
  j["total_rounds"] = total_rounds;
  j["charged_rounds"] = charged_rounds;
  nlohmann::ordered_json b = nlohmann::ordered_json::object();
  for (const auto& [k, v] : breakdown) b[k] = v;
  j["breakdown"] = b;
  nlohmann::ordered_json c = nlohmann::ordered_json::object();
  for (const auto& [k, v] : charged) c[k] = v;
  j["charged"] = c;
  j["max_words_per_edge_round"] = max_words_per_edge_round;
  j["messages"] = messages;
  j["words"] = words;
  j["time_dilation"] = time_dilation;
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  j["hash"] = buf;
  return j.dump();
}

std::string RoundLog::trace_csv() const {
  std::string out = "round,words\n";
  for (const auto& [r, w] : trace) out += std::to_string(r) + "," + std::to_string(w) + "\n";
  return out;
}

Engine::Engine(const Network& net, uint64_t seed, RoundLog& log) : net_(&net), seed_(seed), log_(&log) {
  log_->time_dilation = std::max(log_->time_dilation, net.dilation());
}

void Engine::send(Vertex from, int32_t link, Message m, int64_t extra_delay, int64_t at) {
  if (at < 0) at = round_;
  if (at < round_) throw Error(ErrorCode::kInternal, "send scheduled in the past");
  auto [a, b] = net_->link(link);
  int dir;
  Vertex to;
  if (from == a) {
    to = b;
    dir = 0;
  } else if (from == b) {
    to = a;
    dir = 1;
  } else {
    throw Error(ErrorCode::kInternal, "sender is not an endpoint of the link");
  }
  int64_t& busy = busy_[2 * static_cast<size_t>(link) + dir];
  if (at < busy) throw CongestionViolation(from, to, at);
  if (m.words < 1) m.words = 1;
  busy = at + m.words;
  m.from = from;
  m.to = to;
  m.link = link;
  m.sent = at;
  int32_t idx;
  if (!free_.empty()) {
    idx = free_.back();
    free_.pop_back();
    pool_[idx] = m;
  } else {
    if (pool_.size() >= static_cast<size_t>(INT32_MAX)) throw Error(ErrorCode::kInternal, "too many messages in flight");
    idx = static_cast<int32_t>(pool_.size());
    pool_.push_back(m);
  }
  heap_.push_back({at + m.words + extra_delay, seq_++, idx});
  std::push_heap(heap_.begin(), heap_.end(), std::greater<>());
  ++log_->messages;
  log_->words += m.words;
  log_->max_words_per_edge_round = std::max<int64_t>(log_->max_words_per_edge_round, 1);
  if (log_->trace_enabled)
    for (int64_t r = at; r < at + m.words; ++r) ++log_->trace[offset_ + r];
}

void Engine::wake(Vertex v, int64_t at) {
  if (at < round_) at = round_;
  heap_.push_back({at, seq_++, -(v + 1)});
  std::push_heap(heap_.begin(), heap_.end(), std::greater<>());
}

Rng& Engine::rng(Vertex v) {
  if (!rngs_[v]) rngs_[v] = std::make_unique<Rng>(derive_seed(seed_, 0x6e6f6465, stage_, v));
  return *rngs_[v];
}

int64_t Engine::link_free(Vertex from, int32_t link) const {
  auto [a, b] = net_->link(link);
  const int dir = from == a ? 0 : 1;
  (void)b;
  return std::max(round_, busy_[2 * static_cast<size_t>(link) + dir]);
}

int64_t Engine::run(const std::string& name, Program& p, int64_t max_rounds, int64_t planned) {
  ++stage_;
  round_ = 0;
  seq_ = 0;
  busy_.assign(2 * static_cast<size_t>(net_->num_links()), 0);
  pool_.clear();
  free_.clear();
  heap_.clear();
  rngs_.clear();
  rngs_.resize(net_->n());
  p.start(*this);
  int64_t last = 0;
  std::vector<Event> batch;
  std::vector<Message> inbox;
  auto node_of = [&](const Event& ev) { return ev.idx >= 0 ? pool_[ev.idx].to : -ev.idx - 1; };
  while (!heap_.empty()) {
    const int64_t r = heap_.front().round;
    if (r > max_rounds)
      throw Error(ErrorCode::kRoundLimit, name + ": exceeded max_rounds " + std::to_string(max_rounds));
    round_ = r;
    batch.clear();
    while (!heap_.empty() && heap_.front().round == r) {
      std::pop_heap(heap_.begin(), heap_.end(), std::greater<>());
      batch.push_back(heap_.back());
      heap_.pop_back();
    }
    std::sort(batch.begin(), batch.end(), [&](const Event& x, const Event& y) {
      Vertex a = node_of(x), b = node_of(y);
      return a != b ? a < b : x.seq < y.seq;
    });
    for (size_t i = 0; i < batch.size();) {
      const Vertex v = node_of(batch[i]);
      inbox.clear();
      for (; i < batch.size() && node_of(batch[i]) == v; ++i) {
        if (batch[i].idx < 0) continue;
        const Message& m = pool_[batch[i].idx];
        inbox.push_back(m);
        last = r;
        log_->mix(static_cast<uint64_t>(r) * 0x9e3779b97f4a7c15ULL ^ (static_cast<uint64_t>(m.from) << 32) ^
                  static_cast<uint64_t>(m.to));
        log_->mix(static_cast<uint64_t>(m.kind) ^ (static_cast<uint64_t>(m.words) << 40));
        log_->mix(static_cast<uint64_t>(m.a) ^ splitmix64(static_cast<uint64_t>(m.b)));
        log_->mix(static_cast<uint64_t>(m.c) ^ splitmix64(static_cast<uint64_t>(m.d)));
      }
      p.step(*this, v, inbox);
    }
    // Delivered slots are reused by later sends.
    for (const Event& ev : batch)
      if (ev.idx >= 0) free_.push_back(ev.idx);
  }
  const int64_t len = std::max(last, planned);
  log_->add(name, len);
  offset_ += len;
  round_ = 0;
  return len;
}

void Engine::account(const std::string& name, int64_t rounds, int64_t messages, int64_t words) {
  log_->add(name, rounds);
  log_->messages += messages;
  log_->words += words;
  if (messages > 0) log_->max_words_per_edge_round = std::max<int64_t>(log_->max_words_per_edge_round, 1);
  log_->mix(static_cast<uint64_t>(rounds) ^ (static_cast<uint64_t>(words) << 20));
  offset_ += rounds;
}

void Engine::charge(const std::string& name, int64_t rounds) {
  log_->add_charged(name, rounds);
  log_->mix(static_cast<uint64_t>(rounds) ^ 0xc4a26eULL);
}

namespace {

class TreeBuild : public Program {
 public:
  explicit TreeBuild(BfsTree& t) : t_(t) {}
  void start(Engine& e) override {
    const int n = e.n();
    t_.parent.assign(n, -1);
    t_.parent_link.assign(n, -1);
    t_.depth.assign(n, -1);
    t_.children.assign(n, {});
    e.wake(t_.root, 0);
  }
  void step(Engine& e, Vertex v, std::span<const Message> inbox) override {
    for (const Message& m : inbox)
      if (m.kind == 2) t_.children[v].push_back({m.from, m.link});
    if (t_.depth[v] >= 0) return;
    const Message* first = nullptr;
    for (const Message& m : inbox)
      if (m.kind == 1) {
        first = &m;
        break;
      }
    if (v != t_.root && !first) return;
    t_.depth[v] = static_cast<int>(e.round());
    t_.height = std::max(t_.height, t_.depth[v]);
    if (first) {
      t_.parent[v] = first->from;
      t_.parent_link[v] = first->link;
      Message ack;
      ack.kind = 2;
      e.send(v, first->link, ack);
    }
    for (const LinkEnd& le : e.net().ends(v)) {
      bool heard = false;
      for (const Message& m : inbox) heard |= m.link == le.link;
      if (heard || le.link == t_.parent_link[v]) continue;
      Message join;
      join.kind = 1;
      e.send(v, le.link, join);
    }
  }

 private:
  BfsTree& t_;
};

}  // namespace

const BfsTree& Engine::tree() {
  if (!tree_) {
    if (!net_->connected()) throw Error(ErrorCode::kDisconnected, "communication network is disconnected");
    auto t = std::make_unique<BfsTree>();
    t->root = 0;
    TreeBuild prog(*t);
    run("bfs-tree", prog);
    for (auto& c : t->children) std::sort(c.begin(), c.end());
    tree_ = std::move(t);
  }
  return *tree_;
}

int Engine::diameter() {
  if (diameter_ < 0) {
    const int n = net_->n();
    int D = 0;
    std::vector<int> d(n);
    std::vector<Vertex> q;
    for (Vertex s = 0; s < n; ++s) {
      std::fill(d.begin(), d.end(), -1);
      q.assign(1, s);
      d[s] = 0;
      for (size_t i = 0; i < q.size(); ++i)
        for (const LinkEnd& e : net_->ends(q[i]))
          if (d[e.peer] < 0) {
            d[e.peer] = d[q[i]] + 1;
            q.push_back(e.peer);
          }
      if (static_cast<int>(q.size()) < n) throw Error(ErrorCode::kDisconnected, "communication network is disconnected");
      D = std::max(D, d[q.back()]);
    }
    diameter_ = D;
  }
  return diameter_;
}

}  // namespace mwc
