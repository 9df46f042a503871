#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "beliefs/family.hpp"
#include "beliefs/stochastic.hpp"

namespace beliefs {

// Directed graph on states; edge (i,j) iff the matrix entry exceeds the
// zero threshold. Adjacency lists are sorted.
struct TransitionGraph {
  std::size_t vertex_count = 0;
  std::vector<std::vector<std::size_t>> successors;

  explicit TransitionGraph(std::size_t n) : vertex_count(n), successors(n) {}

  bool has_edge(std::size_t i, std::size_t j) const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
};

// Strongly connected components collapsed into an acyclic graph.
// Classes are listed by their smallest state; members are sorted.
struct Condensation {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> class_of;
  std::vector<std::pair<std::size_t, std::size_t>> dag_edges;  // between distinct classes
  std::vector<std::size_t> leaf_classes;                       // no outgoing dag edge

  bool is_leaf(std::size_t cls) const;
  // Weak connectivity of the condensed graph.
  bool is_connected() const;
};

enum class StateKind { Recurrent, Transient };

struct StateClassification {
  std::vector<StateKind> kind;
  // Empty when the state has no return path (infinite period).
  std::vector<std::optional<std::size_t>> period;
};

struct ChainStructure {
  Condensation condensation;
  StateClassification states;

  // A single class covering every state.
  bool is_irreducible() const { return condensation.classes.size() == 1; }
  // At most one closed class.
  bool is_indecomposable() const { return condensation.leaf_classes.size() <= 1; }
  // Every recurrent state has period one. Transient states are ignored:
  // their mass vanishes regardless of cycling.
  bool is_aperiodic() const;
  // Period of a leaf class (all its states share it).
  std::size_t class_period(std::size_t cls) const;
};

TransitionGraph graph_of(const StochMatrix& p, double zero_threshold = 0.0);
TransitionGraph graph_of(const Matrix& p, double zero_threshold = 0.0);

Condensation condense(const TransitionGraph& g);

ChainStructure analyze(const TransitionGraph& g);
ChainStructure analyze(const StochMatrix& p, double zero_threshold = 0.0);

// Edge (i,j) present when any member has it.
TransitionGraph union_graph(const MatrixFamily& family, double zero_threshold = 0.0);

// The condensed union graph is weakly connected with exactly one leaf.
bool one_leaf_connected(const MatrixFamily& family, double zero_threshold = 0.0);

}  // namespace beliefs
