#pragma once

// Maps from finite graphs to the circle. The solver works in the canonical
// form where vertices land on distinct points (a cyclic layout) and every
// edge runs homeomorphically along one of the two arcs joining its
// endpoints.

#include <chrono>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "multicat/category.hpp"

namespace multicat {

struct Edge {
  std::uint32_t u;
  std::uint32_t v;  // u < v after normalization

  bool operator==(const Edge&) const = default;
  auto operator<=>(const Edge&) const = default;
};

/// Finite simple graph: no loops, no parallel edges. Edges keep their input
/// order (the arc assignment is indexed by it) with endpoints normalized so
/// that u < v.
class SimpleGraph {
 public:
  /// Throws DomainError on loops, duplicate edges, out-of-range endpoints or
  /// vertex_count == 0.
  SimpleGraph(std::uint32_t vertex_count, std::vector<Edge> edges);

  /// Accepts loops and parallel edges and subdivides them away: each loop
  /// u-u becomes a triangle through two new vertices, each repeated edge
  /// gets one new midpoint vertex.
  static SimpleGraph from_multigraph(std::uint32_t vertex_count,
                                     const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);

  static SimpleGraph complete(std::uint32_t n);
  static SimpleGraph cycle(std::uint32_t n);
  static SimpleGraph path(std::uint32_t n);

  std::uint32_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::uint32_t degree(std::uint32_t v) const { return degree_.at(v); }

  /// Vertex v becomes perm[v]; edge order is preserved.
  SimpleGraph relabeled(const std::vector<std::uint32_t>& perm) const;
  /// Subgraph on all vertices keeping the edges whose flag is set.
  SimpleGraph edge_subgraph(const std::vector<bool>& keep) const;

 private:
  std::uint32_t vertex_count_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> degree_;
};

/// Text format: first line "V E", then E lines "u v"; '#' starts a comment.
/// Loops and repeated edges are subdivided (see from_multigraph).
SimpleGraph parse_graph(std::istream& in);
SimpleGraph parse_graph_text(const std::string& text);

struct Betti {
  std::uint32_t b0;  ///< connected components
  std::uint32_t b1;  ///< independent cycles, |E| - |V| + b0

  bool operator==(const Betti&) const = default;
};

Betti betti_numbers(const SimpleGraph& g);

/// Connected component id for each vertex (ids in order of first vertex).
std::vector<std::uint32_t> connected_components(const SimpleGraph& g);

/// No vertex of degree exactly one; sufficient for the graph to admit no
/// self-embedding onto a proper subspace.
bool is_self_closed_sufficient(const SimpleGraph& g);

/// No isolated vertex and no component that is a simple path (homeomorphic
/// to a closed interval).
bool is_classed_eligible(const SimpleGraph& g);

/// order[p] is the vertex placed at position p; positions run clockwise.
struct CircularLayout {
  std::vector<std::uint32_t> order;

  bool operator==(const CircularLayout&) const = default;
  auto operator<=>(const CircularLayout&) const = default;
};

/// For an edge {u, v} with u < v, Clockwise runs from u's position forward
/// (increasing position index, wrapping) to v's position.
enum class ArcDirection : std::uint8_t { Clockwise = 0, CounterClockwise = 1 };

using ArcAssignment = std::vector<ArcDirection>;

/// Gap p is the open arc between positions p and p+1 (mod n).
struct FiberProfile {
  std::vector<std::uint32_t> gap_counts;
  std::vector<std::uint32_t> vertex_counts;
  std::uint32_t max_fiber = 0;
};

/// Exact fibers of the canonical map given by (layout, arcs). Throws
/// std::invalid_argument if layout or arcs do not fit the graph.
FiberProfile evaluate(const SimpleGraph& g, const CircularLayout& layout, const ArcAssignment& arcs);

/// max(1, ceil(|E| / |V|)): every edge covers at least one of the |V| gaps.
std::uint32_t pigeonhole_lower_bound(const SimpleGraph& g);

enum class Strategy { Exhaustive, BranchAndBound };

struct CircleWitness {
  CircularLayout layout;
  ArcAssignment arcs;

  bool operator==(const CircleWitness&) const = default;
};

struct SolveOptions {
  Strategy strategy = Strategy::BranchAndBound;
  std::optional<std::chrono::duration<double>> time_limit;
  unsigned threads = 1;
};

/// m_map(G : S^1) over canonical maps, with vertex 0 pinned to position 0
/// and reflections identified. Returns the lexicographically least optimal
/// (layout, arcs) as witness. If the time limit cuts the search short the
/// best map found so far is returned with an UpperBound certificate.
WitnessedMultiplicity<CircleWitness> solve_exact(const SimpleGraph& g, const SolveOptions& options = {});

std::string to_string(ArcDirection d);

}  // namespace multicat
