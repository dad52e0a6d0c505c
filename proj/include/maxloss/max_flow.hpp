#pragma once

#include <cstddef>
#include <deque>
#include <limits>
#include <vector>

namespace maxloss {

// Dinic's blocking-flow max-flow. Arcs are explored in insertion order, so
// the resulting cut is a deterministic function of the construction order.
template <typename Capacity>
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t nodes) : adjacency_(nodes) {}

  std::size_t node_count() const noexcept { return adjacency_.size(); }

  void add_arc(std::size_t from, std::size_t to, Capacity capacity) {
    adjacency_[from].push_back(arcs_.size());
    arcs_.push_back({to, capacity});
    adjacency_[to].push_back(arcs_.size());
    arcs_.push_back({from, Capacity{0}});
  }

  Capacity max_flow(std::size_t source, std::size_t sink) {
    Capacity total{0};
    while (build_levels(source, sink)) {
      cursor_.assign(adjacency_.size(), 0);
      for (;;) {
        Capacity pushed = augment(source, sink);
        if (pushed == 0) break;
        total += pushed;
      }
    }
    return total;
  }

  /// After max_flow: nodes reachable from `source` in the residual graph,
  /// i.e. the source side of a minimum cut.
  std::vector<bool> source_side(std::size_t source) const {
    std::vector<bool> seen(adjacency_.size(), false);
    std::deque<std::size_t> queue{source};
    seen[source] = true;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t a : adjacency_[u]) {
        const Arc& arc = arcs_[a];
        if (arc.residual > 0 && !seen[arc.to]) {
          seen[arc.to] = true;
          queue.push_back(arc.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    std::size_t to;
    Capacity residual;
  };

  bool build_levels(std::size_t source, std::size_t sink) {
    level_.assign(adjacency_.size(), -1);
    std::deque<std::size_t> queue{source};
    level_[source] = 0;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t a : adjacency_[u]) {
        const Arc& arc = arcs_[a];
        if (arc.residual > 0 && level_[arc.to] < 0) {
          level_[arc.to] = level_[u] + 1;
          queue.push_back(arc.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  // One augmenting path in the level graph, iteratively to keep the stack
  // flat on long paths.
  Capacity augment(std::size_t source, std::size_t sink) {
    std::vector<std::size_t> path;  // arc indices
    std::size_t u = source;
    for (;;) {
      if (u == sink) {
        Capacity bottleneck = arcs_[path.front()].residual;
        for (std::size_t a : path)
          if (arcs_[a].residual < bottleneck) bottleneck = arcs_[a].residual;
        for (std::size_t a : path) {
          arcs_[a].residual -= bottleneck;
          arcs_[a ^ 1].residual += bottleneck;
        }
        return bottleneck;
      }
      bool advanced = false;
      for (auto& i = cursor_[u]; i < adjacency_[u].size(); ++i) {
        std::size_t a = adjacency_[u][i];
        const Arc& arc = arcs_[a];
        if (arc.residual > 0 && level_[arc.to] == level_[u] + 1) {
          path.push_back(a);
          u = arc.to;
          advanced = true;
          break;
        }
      }
      if (advanced) continue;
      // Dead end: prune u from the level graph and retreat.
      level_[u] = -1;
      if (path.empty()) return Capacity{0};
      std::size_t back = path.back();
      path.pop_back();
      u = arcs_[back ^ 1].to;
      ++cursor_[u];
    }
  }

  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<Arc> arcs_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
};

}  // namespace maxloss
