#include "beliefs/chain_structure.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <string>

#include "beliefs/error.hpp"

namespace beliefs {

bool TransitionGraph::has_edge(std::size_t i, std::size_t j) const {
  const auto& s = successors.at(i);
  return std::binary_search(s.begin(), s.end(), j);
}

std::vector<std::pair<std::size_t, std::size_t>> TransitionGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < vertex_count; ++i) {
    for (std::size_t j : successors[i]) out.emplace_back(i, j);
  }
  return out;
}

bool Condensation::is_leaf(std::size_t cls) const {
  return std::find(leaf_classes.begin(), leaf_classes.end(), cls) != leaf_classes.end();
}

bool Condensation::is_connected() const {
  const std::size_t n = classes.size();
  std::vector<std::vector<std::size_t>> undirected(n);
  for (auto [a, b] : dag_edges) {
    undirected[a].push_back(b);
    undirected[b].push_back(a);
  }
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t c = stack.back();
    stack.pop_back();
    for (std::size_t d : undirected[c]) {
      if (!seen[d]) {
        seen[d] = true;
        ++reached;
        stack.push_back(d);
      }
    }
  }
  return reached == n;
}

bool ChainStructure::is_aperiodic() const {
  for (std::size_t s = 0; s < states.kind.size(); ++s) {
    if (states.kind[s] == StateKind::Recurrent && states.period[s] != std::size_t{1}) return false;
  }
  return true;
}

std::size_t ChainStructure::class_period(std::size_t cls) const {
  const auto& p = states.period.at(condensation.classes.at(cls).front());
  return p.value_or(0);
}

TransitionGraph graph_of(const Matrix& p, double zero_threshold) {
  if (!p.is_square()) {
    throw Error(ErrorCode::NotSquare, std::to_string(p.rows()) + "x" + std::to_string(p.cols()));
  }
  if (!(zero_threshold >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "zero threshold must be nonnegative");
  }
  TransitionGraph g(p.rows());
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < p.cols(); ++j) {
      if (p(i, j) > zero_threshold) g.successors[i].push_back(j);
    }
  }
  return g;
}

TransitionGraph graph_of(const StochMatrix& p, double zero_threshold) {
  return graph_of(p.matrix(), zero_threshold);
}

// Iterative Tarjan; component ids are renumbered afterwards so the output
// does not depend on discovery order.
Condensation condense(const TransitionGraph& g) {
  const std::size_t n = g.vertex_count;
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited);
  std::vector<std::size_t> low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::size_t> component(n, kUnvisited);
  std::size_t next_index = 0;
  std::size_t component_count = 0;

  struct Frame {
    std::size_t vertex;
    std::size_t edge;
  };
  std::vector<Frame> call_stack;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call_stack.push_back({root, 0});
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call_stack.empty()) {
      Frame& f = call_stack.back();
      const auto& succ = g.successors[f.vertex];
      if (f.edge < succ.size()) {
        const std::size_t w = succ[f.edge++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call_stack.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.vertex] = std::min(low[f.vertex], index[w]);
        }
        continue;
      }
      const std::size_t v = f.vertex;
      call_stack.pop_back();
      if (!call_stack.empty()) {
        const std::size_t parent = call_stack.back().vertex;
        low[parent] = std::min(low[parent], low[v]);
      }
      if (low[v] == index[v]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component[w] = component_count;
        } while (w != v);
        ++component_count;
      }
    }
  }

  // Canonical ordering: classes sorted by smallest member state.
  std::vector<std::size_t> first_member(component_count, n);
  for (std::size_t v = 0; v < n; ++v) {
    first_member[component[v]] = std::min(first_member[component[v]], v);
  }
  std::vector<std::size_t> order(component_count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return first_member[a] < first_member[b]; });
  std::vector<std::size_t> rename(component_count);
  for (std::size_t k = 0; k < component_count; ++k) rename[order[k]] = k;

  Condensation c;
  c.classes.assign(component_count, {});
  c.class_of.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    c.class_of[v] = rename[component[v]];
    c.classes[c.class_of[v]].push_back(v);
  }
  std::vector<bool> has_exit(component_count, false);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w : g.successors[v]) {
      const std::size_t a = c.class_of[v];
      const std::size_t b = c.class_of[w];
      if (a != b) {
        c.dag_edges.emplace_back(a, b);
        has_exit[a] = true;
      }
    }
  }
  std::sort(c.dag_edges.begin(), c.dag_edges.end());
  c.dag_edges.erase(std::unique(c.dag_edges.begin(), c.dag_edges.end()), c.dag_edges.end());
  for (std::size_t k = 0; k < component_count; ++k) {
    if (!has_exit[k]) c.leaf_classes.push_back(k);
  }
  return c;
}

ChainStructure analyze(const TransitionGraph& g) {
  ChainStructure out;
  out.condensation = condense(g);
  const auto& cond = out.condensation;
  const std::size_t n = g.vertex_count;
  out.states.kind.assign(n, StateKind::Transient);
  out.states.period.assign(n, std::nullopt);

  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> level(n, kUnset);
  for (std::size_t cls = 0; cls < cond.classes.size(); ++cls) {
    const auto& members = cond.classes[cls];
    const bool leaf = cond.is_leaf(cls);

    // BFS levels inside the class; the period is the gcd of
    // level(u) + 1 - level(v) over the class's internal edges.
    std::queue<std::size_t> frontier;
    level[members.front()] = 0;
    frontier.push(members.front());
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop();
      for (std::size_t v : g.successors[u]) {
        if (cond.class_of[v] == cls && level[v] == kUnset) {
          level[v] = level[u] + 1;
          frontier.push(v);
        }
      }
    }
    std::size_t g_cd = 0;
    for (std::size_t u : members) {
      for (std::size_t v : g.successors[u]) {
        if (cond.class_of[v] != cls) continue;
        const long long diff = static_cast<long long>(level[u]) + 1 - static_cast<long long>(level[v]);
        g_cd = std::gcd(g_cd, static_cast<std::size_t>(diff < 0 ? -diff : diff));
      }
    }
    for (std::size_t u : members) {
      out.states.kind[u] = leaf ? StateKind::Recurrent : StateKind::Transient;
      if (g_cd > 0) out.states.period[u] = g_cd;
    }
  }
  return out;
}

ChainStructure analyze(const StochMatrix& p, double zero_threshold) {
  return analyze(graph_of(p, zero_threshold));
}

TransitionGraph union_graph(const MatrixFamily& family, double zero_threshold) {
  if (!family.is_square()) {
    throw Error(ErrorCode::ShapeMismatch, "family members are not square");
  }
  TransitionGraph g(family.rows());
  for (const auto& m : family.members()) {
    const TransitionGraph mg = graph_of(m, zero_threshold);
    for (std::size_t i = 0; i < g.vertex_count; ++i) {
      auto& s = g.successors[i];
      s.insert(s.end(), mg.successors[i].begin(), mg.successors[i].end());
    }
  }
  for (auto& s : g.successors) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return g;
}

bool one_leaf_connected(const MatrixFamily& family, double zero_threshold) {
  const Condensation c = condense(union_graph(family, zero_threshold));
  return c.leaf_classes.size() == 1 && c.is_connected();
}

}  // namespace beliefs
