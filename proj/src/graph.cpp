#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "multicat/graph_circle.hpp"

namespace multicat {

SimpleGraph::SimpleGraph(std::uint32_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)), degree_(vertex_count, 0) {
  if (vertex_count_ == 0) throw DomainError("graph must have at least one vertex");
  std::set<Edge> seen;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    Edge& e = edges_[i];
    if (e.u >= vertex_count_ || e.v >= vertex_count_)
      throw DomainError("edge " + std::to_string(i) + " (" + std::to_string(e.u) + ", " +
                        std::to_string(e.v) + ") references a vertex outside 0.." +
                        std::to_string(vertex_count_ - 1));
    if (e.u == e.v) throw DomainError("edge " + std::to_string(i) + " is a loop at vertex " +
                                      std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
    if (!seen.insert(e).second)
      throw DomainError("edge " + std::to_string(i) + " (" + std::to_string(e.u) + ", " +
                        std::to_string(e.v) + ") is a duplicate");
    ++degree_[e.u];
    ++degree_[e.v];
  }
}

SimpleGraph SimpleGraph::from_multigraph(
    std::uint32_t vertex_count, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  std::uint32_t next = vertex_count;
  std::vector<Edge> out;
  std::set<Edge> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    if (u >= vertex_count || v >= vertex_count)
      throw DomainError("edge " + std::to_string(i) + " references a vertex outside 0.." +
                        std::to_string(vertex_count - 1));
    if (u == v) {
      const std::uint32_t a = next++;
      const std::uint32_t b = next++;
      out.push_back({u, a});
      out.push_back({a, b});
      out.push_back({u, b});
      continue;
    }
    Edge e{std::min(u, v), std::max(u, v)};
    if (seen.insert(e).second) {
      out.push_back(e);
    } else {
      const std::uint32_t m = next++;
      out.push_back({e.u, m});
      out.push_back({e.v, m});
    }
  }
  return SimpleGraph(next, std::move(out));
}

SimpleGraph SimpleGraph::complete(std::uint32_t n) {
  std::vector<Edge> edges;
  for (std::uint32_t u = 0; u < n; ++u)
    for (std::uint32_t v = u + 1; v < n; ++v) edges.push_back({u, v});
  return SimpleGraph(n, std::move(edges));
}

SimpleGraph SimpleGraph::cycle(std::uint32_t n) {
  if (n < 3) throw DomainError("a simple cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  for (std::uint32_t u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
  edges.push_back({0, n - 1});
  return SimpleGraph(n, std::move(edges));
}

SimpleGraph SimpleGraph::path(std::uint32_t n) {
  std::vector<Edge> edges;
  for (std::uint32_t u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
  return SimpleGraph(n, std::move(edges));
}

SimpleGraph SimpleGraph::relabeled(const std::vector<std::uint32_t>& perm) const {
  if (perm.size() != vertex_count_) throw std::invalid_argument("permutation size mismatch");
  std::vector<Edge> edges;
  edges.reserve(edges_.size());
  for (const Edge& e : edges_) edges.push_back({perm[e.u], perm[e.v]});
  return SimpleGraph(vertex_count_, std::move(edges));
}

SimpleGraph SimpleGraph::edge_subgraph(const std::vector<bool>& keep) const {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (keep.at(i)) edges.push_back(edges_[i]);
  return SimpleGraph(vertex_count_, std::move(edges));
}

SimpleGraph parse_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::pair<std::uint32_t, std::size_t>> header;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::vector<long long> values;
    std::string tok;
    while (tokens >> tok) {
      try {
        std::size_t used = 0;
        const long long value = std::stoll(tok, &used);
        if (used != tok.size() || value < 0) throw std::invalid_argument(tok);
        values.push_back(value);
      } catch (const std::exception&) {
        throw ParseError("expected a non-negative integer, got '" + tok + "'", line_no);
      }
    }
    if (values.empty()) continue;
    if (values.size() != 2) throw ParseError("expected exactly two integers", line_no);
    if (!header) {
      if (values[0] == 0) throw ParseError("vertex count must be positive", line_no);
      header.emplace(static_cast<std::uint32_t>(values[0]), static_cast<std::size_t>(values[1]));
      continue;
    }
    if (edges.size() == header->second)
      throw ParseError("more edge lines than the declared " + std::to_string(header->second), line_no);
    if (values[0] >= header->first || values[1] >= header->first)
      throw ParseError("edge endpoint outside 0.." + std::to_string(header->first - 1), line_no);
    edges.emplace_back(static_cast<std::uint32_t>(values[0]), static_cast<std::uint32_t>(values[1]));
  }
  if (!header) throw ParseError("missing 'V E' header", line_no);
  if (edges.size() != header->second)
    throw ParseError("declared " + std::to_string(header->second) + " edges but found " +
                         std::to_string(edges.size()),
                     line_no);
  return SimpleGraph::from_multigraph(header->first, edges);
}

SimpleGraph parse_graph_text(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

std::vector<std::uint32_t> connected_components(const SimpleGraph& g) {
  // Union-find with path halving.
  std::vector<std::uint32_t> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : g.edges()) parent[find(e.u)] = find(e.v);

  std::vector<std::uint32_t> label(g.vertex_count());
  std::vector<std::int64_t> root_label(g.vertex_count(), -1);
  std::uint32_t next = 0;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    const std::uint32_t r = find(v);
    if (root_label[r] < 0) root_label[r] = next++;
    label[v] = static_cast<std::uint32_t>(root_label[r]);
  }
  return label;
}

Betti betti_numbers(const SimpleGraph& g) {
  const auto comp = connected_components(g);
  const std::uint32_t b0 = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
  const std::uint32_t b1 =
      static_cast<std::uint32_t>(g.edge_count() + b0 - g.vertex_count());
  return {b0, b1};
}

bool is_self_closed_sufficient(const SimpleGraph& g) {
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == 1) return false;
  return true;
}

bool is_classed_eligible(const SimpleGraph& g) {
  const auto comp = connected_components(g);
  const std::uint32_t count = *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<std::uint32_t> vertices(count, 0), edges(count, 0), leaves(count, 0), branch(count, 0);
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) == 0) return false;
    ++vertices[comp[v]];
    if (g.degree(v) == 1) ++leaves[comp[v]];
    if (g.degree(v) > 2) ++branch[comp[v]];
  }
  for (const Edge& e : g.edges()) ++edges[comp[e.u]];
  for (std::uint32_t c = 0; c < count; ++c) {
    const bool tree = edges[c] + 1 == vertices[c];
    if (tree && leaves[c] == 2 && branch[c] == 0) return false;
  }
  return true;
}

}  // namespace multicat
