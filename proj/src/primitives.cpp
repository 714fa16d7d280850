#include "mwc/primitives.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <queue>
#include <set>

namespace mwc {

DistanceTable::DistanceTable(int n_, std::vector<Vertex> src) : n(n_), sources(std::move(src)) {
  const size_t cells = sources.size() * static_cast<size_t>(n);
  dist.assign(cells, kInf);
  hops.assign(cells, -1);
  tag.assign(cells, -1);
}

namespace {

constexpr int64_t kFar = int64_t{1} << 62;

class Upcast : public Program {
 public:
  Upcast(const BfsTree& t, const std::vector<std::vector<Word>>& items) : t_(t), items_(items) {}

  void start(Engine& e) override {
    queue_.assign(e.n(), {});
    for (Vertex v = 0; v < e.n(); ++v) {
      for (const Word& w : items_[v]) {
        if (v == t_.root) arrivals_.push_back({0, w});
        else queue_[v].push_back(w);
      }
      if (!queue_[v].empty()) e.wake(v, 0);
    }
  }

  void step(Engine& e, Vertex v, std::span<const Message> inbox) override {
    for (const Message& m : inbox) {
      Word w{m.a, m.b, m.c};
      if (v == t_.root) arrivals_.push_back({e.round(), w});
      else queue_[v].push_back(w);
    }
    if (v == t_.root || queue_[v].empty()) return;
    const int32_t link = t_.parent_link[v];
    if (e.link_free(v, link) > e.round()) return;  // already sent this round; a wake is pending
    Message m;
    m.a = queue_[v].front().a;
    m.b = queue_[v].front().b;
    m.c = queue_[v].front().c;
    queue_[v].pop_front();
    e.send(v, link, m);
    if (!queue_[v].empty()) e.wake(v, e.round() + 1);
  }

  std::vector<std::pair<int64_t, Word>> arrivals_;

 private:
  const BfsTree& t_;
  const std::vector<std::vector<Word>>& items_;
  std::vector<std::deque<Word>> queue_;
};

}  // namespace

std::vector<Word> broadcast(Engine& e, const std::vector<std::vector<Word>>& items, const std::string& name) {
  const BfsTree& t = e.tree();
  Upcast up(t, items);
  const int64_t up_rounds = e.run(name, up);
  std::vector<Word> out;
  int64_t send = -1;
  for (const auto& [arr, w] : up.arrivals_) {
    send = std::max(arr, send + 1);
    out.push_back(w);
  }
  const int64_t M = static_cast<int64_t>(out.size());
  const int64_t end = M > 0 ? send + t.height : 0;
  const int64_t fanout = static_cast<int64_t>(e.n()) - 1;
  e.account(name, std::max<int64_t>(0, end - up_rounds), M * fanout, M * fanout);
  for (const Word& w : out) e.log().mix(static_cast<uint64_t>(w.a) ^ splitmix64(w.b) ^ splitmix64(~w.c));
  return out;
}

namespace {

class Converge : public Program {
 public:
  Converge(const BfsTree& t, const std::vector<Dist>& vals, Fold op) : t_(t), acc_(vals), op_(op) {}

  void start(Engine& e) override {
    got_.assign(e.n(), 0);
    for (Vertex v = 0; v < e.n(); ++v)
      if (t_.children[v].empty()) e.wake(v, 0);
  }

  void step(Engine& e, Vertex v, std::span<const Message> inbox) override {
    for (const Message& m : inbox) {
      Dist x = std::bit_cast<Dist>(m.a);
      if (m.kind == 1) {
        result_ = x;
        down(e, v, x);
        return;
      }
      acc_[v] = fold(acc_[v], x);
      ++got_[v];
    }
    if (got_[v] != static_cast<int>(t_.children[v].size())) return;
    got_[v] = -1;
    if (v == t_.root) {
      result_ = acc_[v];
      down(e, v, acc_[v]);
      return;
    }
    Message m;
    m.a = std::bit_cast<int64_t>(acc_[v]);
    e.send(v, t_.parent_link[v], m);
  }

  Dist result_ = kInf;

 private:
  Dist fold(Dist a, Dist b) const {
    switch (op_) {
      case Fold::kMin:
        return std::min(a, b);
      case Fold::kMax:
        return std::max(a, b);
      case Fold::kSum:
        return a + b;
    }
    return a;
  }
  void down(Engine& e, Vertex v, Dist x) {
    for (auto [c, link] : t_.children[v]) {
      Message m;
      m.kind = 1;
      m.a = std::bit_cast<int64_t>(x);
      e.send(v, link, m);
    }
  }

  const BfsTree& t_;
  std::vector<Dist> acc_;
  Fold op_;
  std::vector<int> got_;
};

}  // namespace

Dist convergecast(Engine& e, const std::vector<Dist>& values, Fold op, const std::string& name) {
  if (static_cast<int>(values.size()) != e.n()) throw Error(ErrorCode::kInvalidArgument, "one value per node");
  const BfsTree& t = e.tree();
  Converge c(t, values, op);
  e.run(name, c);
  return c.result_;
}

namespace {

class MultiBfs : public Program {
 public:
  MultiBfs(const Graph& g, std::vector<const BfsSpec*> specs) : g_(g), specs_(std::move(specs)) {
    for (const BfsSpec* s : specs_) {
      if (!s->pipes && !g.unweighted())
        throw Error(ErrorCode::kInvalidArgument, "multi_bfs needs an unweighted graph (weighted input)");
      if (s->dir == Direction::kReverse && !g.directed())
        throw Error(ErrorCode::kInvalidArgument, "reverse search needs a directed graph");
      words_ = std::max(words_, s->tag == TagKind::kFirstHop ? 2 : 1);
    }
    period_ = words_ * static_cast<int>(specs_.size());
  }

  void start(Engine& e) override {
    const size_t n = g_.n();
    ch_.resize(specs_.size());
    for (size_t c = 0; c < specs_.size(); ++c) {
      Chan& ch = ch_[c];
      const BfsSpec& s = *specs_[c];
      ch.k = s.sources.size();
      ch.dist.assign(ch.k * n, kFar);
      ch.sent.assign(ch.k * n, kFar);
      ch.hops.assign(ch.k * n, -1);
      ch.tag.assign(ch.k * n, -1);
      ch.pending.assign(n, {});
      ch.wake_at.assign(n, -1);
      for (size_t si = 0; si < ch.k; ++si) {
        Vertex src = s.sources[si];
        if (src < 0 || src >= g_.n()) throw Error(ErrorCode::kInvalidArgument, "source out of range");
        ch.dist[si * n + src] = 0;
        ch.hops[si * n + src] = 0;
        ch.pending[src].push({0, static_cast<int32_t>(si)});
        schedule(e, c, src, true);
      }
    }
  }

  void step(Engine& e, Vertex v, std::span<const Message> inbox) override {
    const size_t n = g_.n();
    for (const Message& m : inbox) {
      Chan& ch = ch_[m.kind];
      const BfsSpec& s = *specs_[m.kind];
      const int64_t w = s.pipes ? weight(s, arc_edge(s, m.from, v)) : 1;
      const int64_t cand = m.b + w;
      const size_t at = static_cast<size_t>(m.a) * n + v;
      if (cand > s.hop_bound || cand >= ch.dist[at]) continue;
      ch.dist[at] = cand;
      ch.hops[at] = static_cast<int32_t>(m.d + 1);
      if (s.tag == TagKind::kParent) ch.tag[at] = m.from;
      else if (s.tag == TagKind::kFirstHop) ch.tag[at] = m.from == s.sources[m.a] ? v : static_cast<Vertex>(m.c);
      ch.pending[v].push({cand, static_cast<int32_t>(m.a)});
    }
    for (size_t c = 0; c < ch_.size(); ++c) {
      if (e.round() % period_ == static_cast<int64_t>(c) * words_) send_one(e, c, v);
      schedule(e, c, v);
    }
  }

  DistanceTable table(size_t c) const {
    const BfsSpec& s = *specs_[c];
    const Chan& ch = ch_[c];
    DistanceTable t(g_.n(), s.sources);
    for (size_t i = 0; i < ch.dist.size(); ++i) {
      if (ch.dist[i] >= kFar) continue;
      t.dist[i] = static_cast<Dist>(ch.dist[i]);
      t.hops[i] = ch.hops[i];
      t.tag[i] = ch.tag[i];
    }
    return t;
  }

 private:
  using Item = std::pair<int64_t, int32_t>;
  struct Chan {
    size_t k = 0;
    std::vector<int64_t> dist, sent;
    std::vector<int32_t> hops;
    std::vector<Vertex> tag;
    std::vector<std::priority_queue<Item, std::vector<Item>, std::greater<>>> pending;
    std::vector<int64_t> wake_at;
  };

  int64_t weight(const BfsSpec& s, int32_t edge) const {
    return s.weights ? (*s.weights)[edge] : g_.edges()[edge].w;
  }

  // Edge carrying a search message from `from` to `to`.
  int32_t arc_edge(const BfsSpec& s, Vertex from, Vertex to) const {
    auto arcs = s.dir == Direction::kForward ? g_.out(from) : g_.in(from);
    auto it = std::lower_bound(arcs.begin(), arcs.end(), to, [](const Arc& a, Vertex x) { return a.to < x; });
    return it->edge;
  }

  bool clean(Chan& ch, Vertex v) {
    const size_t n = g_.n();
    auto& pq = ch.pending[v];
    while (!pq.empty()) {
      auto [d, si] = pq.top();
      const size_t at = static_cast<size_t>(si) * n + v;
      if (d == ch.dist[at] && ch.sent[at] != d) return true;
      pq.pop();
    }
    return false;
  }

  void send_one(Engine& e, size_t c, Vertex v) {
    Chan& ch = ch_[c];
    if (!clean(ch, v)) return;
    const BfsSpec& s = *specs_[c];
    const size_t n = g_.n();
    auto [d, si] = ch.pending[v].top();
    ch.pending[v].pop();
    const size_t at = static_cast<size_t>(si) * n + v;
    ch.sent[at] = d;
    auto arcs = s.dir == Direction::kForward ? g_.out(v) : g_.in(v);
    for (const Arc& a : arcs) {
      const int64_t w = s.pipes ? weight(s, a.edge) : 1;
      if (d + w > s.hop_bound) continue;
      Message m;
      m.kind = static_cast<int32_t>(c);
      m.words = s.tag == TagKind::kFirstHop ? 2 : 1;
      m.a = si;
      m.b = d;
      m.c = ch.tag[at];
      m.d = ch.hops[at];
      e.send(v, e.net().arc_link(v, a), m, w - 1);
    }
  }

  // Wakes v at its channel's next slot: >= now when `inclusive`, else > now.
  void schedule(Engine& e, size_t c, Vertex v, bool inclusive = false) {
    Chan& ch = ch_[c];
    if (!clean(ch, v)) return;
    const int64_t off = static_cast<int64_t>(c) * words_;
    const int64_t r = e.round();
    int64_t next = r - (r % period_) + off;
    if (next < r || (next == r && !inclusive)) next += period_;
    if (ch.wake_at[v] == next) return;
    ch.wake_at[v] = next;
    e.wake(v, next);
  }

  const Graph& g_;
  std::vector<const BfsSpec*> specs_;
  std::vector<Chan> ch_;
  int words_ = 1;
  int period_ = 1;
};

}  // namespace

DistanceTable multi_bfs(Engine& e, const Graph& g, const BfsSpec& spec, const std::string& name) {
  MultiBfs prog(g, {&spec});
  e.run(name, prog);
  return prog.table(0);
}

std::pair<DistanceTable, DistanceTable> multi_bfs_pair(Engine& e, const Graph& g, const BfsSpec& a,
                                                       const BfsSpec& b, const std::string& name) {
  MultiBfs prog(g, {&a, &b});
  e.run(name, prog);
  return {prog.table(0), prog.table(1)};
}

namespace {

class SourceDetect : public Program {
 public:
  SourceDetect(const Graph& g, const SourceDetectionSpec& s) : g_(g), s_(s) {}

  void start(Engine& e) override {
    const int n = e.n();
    nodes_.assign(n, {});
    wake_at_.assign(n, -1);
    link_w_.assign(e.net().num_links(), 1);
    if (s_.pipes)
      for (int32_t l = 0; l < e.net().num_links(); ++l) {
        auto [a, b] = e.net().link(l);
        const Weight w = g_.edge_weight(a, b);
        link_w_[l] = w >= 0 ? w : g_.edge_weight(b, a);
      }
    for (Vertex v = 0; v < n; ++v) {
      nodes_[v].ent[v] = {0, -1};
      nodes_[v].order.insert({0, v});
      if (s_.hop_bound > 0) {
        nodes_[v].unsent.insert({0, v});
        e.wake(v, 0);
        wake_at_[v] = 0;
      }
    }
  }

  void step(Engine& e, Vertex v, std::span<const Message> inbox) override {
    Node& nd = nodes_[v];
    for (const Message& m : inbox) {
      const int64_t cand = m.b + weight(m.link);
      if (cand > s_.hop_bound) continue;
      const Vertex z = static_cast<Vertex>(m.a);
      auto it = nd.ent.find(z);
      if (it != nd.ent.end()) {
        Ent& en = it->second;
        if (cand < en.d) {
          nd.order.erase({en.d, z});
          nd.unsent.erase({en.d, z});
          en = {cand, m.from};
          nd.order.insert({cand, z});
          if (cand < s_.hop_bound) nd.unsent.insert({cand, z});
        } else if (cand == en.d && m.from < en.parent) {
          en.parent = m.from;
        }
        continue;
      }
      if (static_cast<int>(nd.order.size()) >= s_.R && std::make_pair(cand, z) > *nd.order.rbegin()) continue;
      nd.ent[z] = {cand, m.from};
      nd.order.insert({cand, z});
      if (cand < s_.hop_bound) nd.unsent.insert({cand, z});
      if (static_cast<int>(nd.order.size()) > s_.R) {
        auto last = *nd.order.rbegin();
        nd.order.erase(last);
        nd.unsent.erase(last);
        nd.ent.erase(last.second);
      }
    }
    if (nd.unsent.empty()) return;
    if (wake_at_[v] == e.round()) {
      auto [d, z] = *nd.unsent.begin();
      nd.unsent.erase(nd.unsent.begin());
      for (const LinkEnd& le : e.net().ends(v)) {
        if (d + weight(le.link) > s_.hop_bound) continue;
        Message m;
        m.a = z;
        m.b = d;
        e.send(v, le.link, m, weight(le.link) - 1);
      }
    }
    if (!nd.unsent.empty() && wake_at_[v] <= e.round()) {
      wake_at_[v] = e.round() + 1;
      e.wake(v, e.round() + 1);
    }
  }

  NearTable table() const {
    NearTable t;
    const size_t n = nodes_.size();
    t.z.resize(n);
    t.d.resize(n);
    t.parent.resize(n);
    for (size_t v = 0; v < n; ++v)
      for (auto [d, z] : nodes_[v].order) {
        t.z[v].push_back(z);
        t.d[v].push_back(static_cast<int32_t>(d));
        t.parent[v].push_back(nodes_[v].ent.at(z).parent);
      }
    return t;
  }

 private:
  struct Ent {
    int64_t d;
    Vertex parent;
  };
  struct Node {
    std::map<Vertex, Ent> ent;
    std::set<std::pair<int64_t, Vertex>> order, unsent;
  };

  int64_t weight(int32_t link) const { return link_w_[link]; }

  const Graph& g_;
  const SourceDetectionSpec& s_;
  std::vector<Node> nodes_;
  std::vector<int64_t> wake_at_;
  std::vector<int64_t> link_w_;
};

}  // namespace

NearTable source_detection(Engine& e, const Graph& g, const SourceDetectionSpec& spec, const std::string& name) {
  if (spec.R < 1) throw Error(ErrorCode::kInvalidArgument, "source_detection needs R >= 1");
  if (!spec.pipes && !g.unweighted()) throw Error(ErrorCode::kInvalidArgument, "source_detection on weighted input needs pipes");
  SourceDetect prog(g, spec);
  e.run(name, prog);
  return prog.table();
}

namespace {

class DelayWaves : public Program {
 public:
  DelayWaves(const DelaySpec& s, std::vector<int64_t> delay) : s_(s), delay_(std::move(delay)) {}

  void start(Engine& e) override {
    const DistanceTable& t = *s_.trees;
    const int n = e.n();
    const size_t k = t.k();
    off_.assign(k * (n + 1), 0);
    kids_.assign(k, {});
    for (size_t si = 0; si < k; ++si) {
      int32_t* off = off_.data() + si * (n + 1);
      for (Vertex v = 0; v < n; ++v) {
        const Vertex p = t.tag[t.at(si, v)];
        if (p >= 0 && t.dist[t.at(si, v)] != kInf) ++off[p + 1];
      }
      for (int i = 0; i < n; ++i) off[i + 1] += off[i];
      kids_[si].resize(off[n]);
      std::vector<int32_t> pos(off, off + n);
      for (Vertex v = 0; v < n; ++v) {
        const Vertex p = t.tag[t.at(si, v)];
        if (p >= 0 && t.dist[t.at(si, v)] != kInf) kids_[si][pos[p]++] = v;
      }
    }
    res_.received.assign(n, {});
    res_.overflow.assign(n, 0);
    dead_.assign(n, 0);
    queued_.assign(n, {});
    for (size_t c = 0; c < s_.cascades.size(); ++c) {
      const Vertex root = t.sources[s_.cascades[c].tree];
      res_.received[root].push_back(static_cast<int32_t>(c));
      const int64_t at = (delay_[c] - 1) * s_.cap;
      queued_[root][at].push_back(static_cast<int32_t>(c));
      e.wake(root, at);
    }
  }

  void step(Engine& e, Vertex v, std::span<const Message> inbox) override {
    if (dead_[v]) return;
    const int64_t r = e.round();
    const int64_t L = s_.cap;
    for (const Message& m : inbox) {
      const int32_t c = static_cast<int32_t>(m.a);
      res_.received[v].push_back(c);
      const int64_t next = (r + L - 1) / L * L;
      queued_[v][next].push_back(c);
      if (next > r) e.wake(v, next);
    }
    auto it = queued_[v].find(r);
    if (it == queued_[v].end()) return;
    std::vector<int32_t> batch = std::move(it->second);
    queued_[v].erase(it);
    std::sort(batch.begin(), batch.end());
    const int n = e.n();
    std::map<int32_t, int64_t> load;
    for (int32_t c : batch) {
      const int32_t tr = s_.cascades[c].tree;
      const int32_t* off = off_.data() + static_cast<size_t>(tr) * (n + 1);
      for (int32_t i = off[v]; i < off[v + 1]; ++i) ++load[e.net().link_between(v, kids_[tr][i])];
    }
    for (auto [link, words] : load) {
      if (words <= L) continue;
      auto [a, b] = e.net().link(link);
      if (s_.strict) throw CongestionViolation(v, a == v ? b : a, r + L);
      res_.overflow[v] = 1;
      dead_[v] = 1;
      queued_[v].clear();
      return;
    }
    std::map<int32_t, int64_t> used;
    for (int32_t c : batch) {
      const int32_t tr = s_.cascades[c].tree;
      const int32_t* off = off_.data() + static_cast<size_t>(tr) * (n + 1);
      for (int32_t i = off[v]; i < off[v + 1]; ++i) {
        const int32_t link = e.net().link_between(v, kids_[tr][i]);
        Message m;
        m.a = c;
        m.b = s_.cascades[c].a;
        m.c = s_.cascades[c].b;
        e.send(v, link, m, 0, r + used[link]++);
      }
    }
  }

  DelayResult res_;

 private:
  const DelaySpec& s_;
  std::vector<int64_t> delay_;
  std::vector<int32_t> off_;
  std::vector<std::vector<Vertex>> kids_;
  std::vector<char> dead_;
  std::vector<std::map<int64_t, std::vector<int32_t>>> queued_;
};

}  // namespace

DelayResult random_delay_schedule(Engine& e, const Graph& g, const DelaySpec& spec, const std::string& name) {
  (void)g;
  if (!spec.trees) throw Error(ErrorCode::kInvalidArgument, "random_delay_schedule needs trees");
  if (spec.rho < 1 || spec.cap < 1) throw Error(ErrorCode::kInvalidArgument, "rho and cap must be positive");
  std::vector<int64_t> delay(spec.cascades.size());
  for (size_t c = 0; c < delay.size(); ++c) {
    if (spec.forced_delay) {
      delay[c] = (*spec.forced_delay)[c];
      if (delay[c] < 1 || delay[c] > spec.rho) throw Error(ErrorCode::kInvalidArgument, "forced delay out of range");
    } else {
      Rng rng(derive_seed(e.seed(), 0x726473, e.stage(), c));
      delay[c] = uniform_int(rng, 1, spec.rho);
    }
  }
  DelayWaves prog(spec, std::move(delay));
  const int64_t phases = spec.rho + spec.depth;
  e.run(name, prog, Engine::kNoLimit, phases * spec.cap);
  prog.res_.phases = phases;
  for (auto& r : prog.res_.received) std::sort(r.begin(), r.end());
  return std::move(prog.res_);
}

}  // namespace mwc
