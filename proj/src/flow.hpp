#ifndef HYPERFACTOR_SRC_FLOW_HPP
#define HYPERFACTOR_SRC_FLOW_HPP

// Feasible circulation with lower bounds, shared by the laminar solver and
// the detachment step. Internal to the library.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace hyperfactor::detail {

// Dinic max-flow. Arcs are explored per node in insertion order, which makes
// the chosen flow a deterministic function of the construction order.
class FlowNetwork {
 public:
  void reset(std::size_t nodes) {
    nodes_ = nodes;
    arcs_.clear();
  }

  // `back` is the residual capacity of the reverse arc, i.e. flow that may
  // be cancelled.
  std::size_t add_arc(std::size_t u, std::size_t v, std::int64_t cap, std::int64_t back = 0) {
    arcs_.push_back({static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v), cap});
    arcs_.push_back({static_cast<std::uint32_t>(v), static_cast<std::uint32_t>(u), back});
    return arcs_.size() - 2;
  }

  std::int64_t flow_on(std::size_t arc) const { return arcs_[arc ^ 1].cap; }

  std::int64_t max_flow(std::size_t s, std::size_t t) {
    finalize();
    std::int64_t total = 0;
    iter_.resize(nodes_);
    while (bfs(s, t)) {
      std::copy(start_.begin(), start_.end() - 1, iter_.begin());
      total += dfs(s, t, std::numeric_limits<std::int64_t>::max());
    }
    return total;
  }

 private:
  struct Arc {
    std::uint32_t from, to;
    std::int64_t cap;
  };

  void finalize() {
    start_.assign(nodes_ + 1, 0);
    for (const Arc& a : arcs_) ++start_[a.from + 1];
    for (std::size_t v = 0; v < nodes_; ++v) start_[v + 1] += start_[v];
    order_.resize(arcs_.size());
    iter_.assign(start_.begin(), start_.end() - 1);
    for (std::uint32_t a = 0; a < arcs_.size(); ++a) order_[iter_[arcs_[a].from]++] = a;
  }

  bool bfs(std::size_t s, std::size_t t) {
    level_.assign(nodes_, -1);
    queue_.resize(nodes_);
    std::size_t tail = 0;
    level_[s] = 0;
    queue_[tail++] = static_cast<std::uint32_t>(s);
    for (std::size_t head = 0; head < tail; ++head) {
      const std::uint32_t u = queue_[head];
      for (std::uint32_t i = start_[u]; i < start_[u + 1]; ++i) {
        const Arc& a = arcs_[order_[i]];
        if (a.cap > 0 && level_[a.to] < 0) {
          level_[a.to] = level_[u] + 1;
          queue_[tail++] = a.to;
        }
      }
    }
    return level_[t] >= 0;
  }

  // Pushes up to `limit` units from u towards t along the level graph,
  // continuing past the first augmenting path.
  std::int64_t dfs(std::size_t u, std::size_t t, std::int64_t limit) {
    if (u == t) return limit;
    std::int64_t pushed = 0;
    for (std::uint32_t& i = iter_[u]; i < start_[u + 1]; ++i) {
      const std::uint32_t id = order_[i];
      Arc& a = arcs_[id];
      if (a.cap <= 0 || level_[a.to] != level_[u] + 1) continue;
      if (std::int64_t d = dfs(a.to, t, std::min(limit - pushed, a.cap))) {
        a.cap -= d;
        arcs_[id ^ 1].cap += d;
        pushed += d;
        if (pushed == limit) return pushed;
      }
    }
    return pushed;
  }

  std::size_t nodes_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::uint32_t> start_, order_, iter_, queue_;
  std::vector<int> level_;
};

// Integral circulation with arc bounds [lo, hi], found by the usual
// reduction to max-flow from a super source to a super sink. Each arc starts
// at a caller-chosen flow within its bounds; starting close to a fractional
// circulation leaves only small imbalances for the max-flow to repair.
class Circulation {
 public:
  static constexpr std::int64_t kUnbounded = std::numeric_limits<std::int32_t>::max();

  void reset(std::size_t nodes) {
    nodes_ = nodes;
    excess_.assign(nodes, 0);
    net_.reset(nodes + 2);
  }

  std::size_t add_arc(std::size_t from, std::size_t to, std::int64_t lo, std::int64_t hi, std::int64_t start) {
    excess_[to] += start;
    excess_[from] -= start;
    return net_.add_arc(from, to, hi - start, start - lo);
  }

  std::size_t add_arc(std::size_t from, std::size_t to, std::int64_t lo, std::int64_t hi) {
    return add_arc(from, to, lo, hi, lo);
  }

  // False when no circulation meets every bound.
  bool solve() {
    const std::size_t source = nodes_;
    const std::size_t sink = nodes_ + 1;
    std::int64_t required = 0;
    for (std::size_t v = 0; v < nodes_; ++v) {
      if (excess_[v] > 0) {
        net_.add_arc(source, v, excess_[v]);
        required += excess_[v];
      } else if (excess_[v] < 0) {
        net_.add_arc(v, sink, -excess_[v]);
      }
    }
    return required == 0 || net_.max_flow(source, sink) == required;
  }

  // Flow on an arc returned by add_arc, including its lower bound.
  std::int64_t flow(std::size_t arc, std::int64_t lo) const { return lo + net_.flow_on(arc); }

 private:
  std::size_t nodes_ = 0;
  std::vector<std::int64_t> excess_;
  FlowNetwork net_;
};

}  // namespace hyperfactor::detail

#endif  // HYPERFACTOR_SRC_FLOW_HPP
