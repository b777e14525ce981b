#include <algorithm>
#include <array>
#include <atomic>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "multicat/graph_circle.hpp"

namespace multicat {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<std::uint32_t> positions_of(const CircularLayout& layout, std::uint32_t n) {
  if (layout.order.size() != n)
    throw std::invalid_argument("layout has " + std::to_string(layout.order.size()) +
                                " positions for " + std::to_string(n) + " vertices");
  std::vector<std::uint32_t> pos(n, n);
  for (std::uint32_t p = 0; p < n; ++p) {
    const std::uint32_t v = layout.order[p];
    if (v >= n || pos[v] != n) throw std::invalid_argument("layout is not a permutation");
    pos[v] = p;
  }
  return pos;
}

// Walks the gaps covered by an arc from position `from` to `to` (clockwise),
// reporting each gap and each position strictly inside the arc.
template <class GapFn, class PosFn>
void walk_arc(std::uint32_t from, std::uint32_t to, std::uint32_t n, GapFn&& on_gap, PosFn&& on_pos) {
  std::uint32_t g = from;
  while (true) {
    on_gap(g);
    const std::uint32_t next = (g + 1) % n;
    if (next == to) break;
    on_pos(next);
    g = next;
  }
}

std::pair<std::uint32_t, std::uint32_t> arc_endpoints(const Edge& e, ArcDirection d,
                                                      const std::vector<std::uint32_t>& pos) {
  return d == ArcDirection::Clockwise ? std::pair{pos[e.u], pos[e.v]} : std::pair{pos[e.v], pos[e.u]};
}

std::uint64_t factorial(std::uint32_t k) {
  std::uint64_t out = 1;
  for (std::uint32_t i = 2; i <= k; ++i) out *= i;
  return out;
}

// The index-th permutation (lexicographic) of 1..n-1, with vertex 0 in front.
CircularLayout decode_layout(std::uint64_t index, std::uint32_t n) {
  std::vector<std::uint32_t> pool;
  for (std::uint32_t v = 1; v < n; ++v) pool.push_back(v);
  CircularLayout layout{{0}};
  for (std::uint32_t remaining = n - 1; remaining > 0; --remaining) {
    const std::uint64_t f = factorial(remaining - 1);
    const auto digit = static_cast<std::size_t>(index / f);
    index %= f;
    layout.order.push_back(pool[digit]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return layout;
}

// Reflection maps order[1..n-1] to its reverse; keep the smaller of the two.
bool reflection_canonical(const CircularLayout& layout) {
  const auto n = layout.order.size();
  return n < 3 || layout.order[1] < layout.order[n - 1];
}

ArcAssignment short_arcs(const SimpleGraph& g, const CircularLayout& layout) {
  const std::uint32_t n = g.vertex_count();
  const auto pos = positions_of(layout, n);
  ArcAssignment arcs;
  for (const Edge& e : g.edges()) {
    const std::uint32_t cw = (pos[e.v] + n - pos[e.u]) % n;
    arcs.push_back(2 * cw <= n ? ArcDirection::Clockwise : ArcDirection::CounterClockwise);
  }
  return arcs;
}

class Deadline {
 public:
  explicit Deadline(std::optional<std::chrono::duration<double>> limit)
      : end_(limit ? std::optional(Clock::now() + std::chrono::duration_cast<Clock::duration>(*limit))
                   : std::nullopt) {}

  bool passed() const { return end_ && Clock::now() >= *end_; }

 private:
  std::optional<Clock::time_point> end_;
};

struct SharedBest {
  std::atomic<std::uint32_t> value;
  std::atomic<bool> stop{false};
  std::mutex mutex;
  CircleWitness witness;

  void offer(std::uint32_t v, const CircularLayout& layout, const ArcAssignment& arcs) {
    std::lock_guard lock(mutex);
    if (v < value.load()) {
      value.store(v);
      witness = {layout, arcs};
    }
  }
};

// Incremental fiber bookkeeping for one fixed layout.
class LayoutSearch {
 public:
  LayoutSearch(const SimpleGraph& g, const CircularLayout& layout)
      : g_(g), n_(g.vertex_count()), layout_(layout), gaps_(g.edge_count()),
        interior_(g.edge_count()), suffix_min_(g.edge_count() + 1, 0),
        gap_(n_, 0), vert_(n_, 1), arcs_(g.edge_count(), ArcDirection::Clockwise) {
    const auto pos = positions_of(layout, n_);
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      for (ArcDirection d : {ArcDirection::Clockwise, ArcDirection::CounterClockwise}) {
        const auto [from, to] = arc_endpoints(g.edges()[i], d, pos);
        auto& gl = gaps_[i][static_cast<int>(d)];
        auto& pl = interior_[i][static_cast<int>(d)];
        walk_arc(from, to, n_, [&](std::uint32_t gap) { gl.push_back(gap); },
                 [&](std::uint32_t p) { pl.push_back(p); });
      }
    }
    for (std::size_t i = g.edge_count(); i-- > 0;)
      suffix_min_[i] = suffix_min_[i + 1] +
                       static_cast<std::uint32_t>(std::min(gaps_[i][0].size(), gaps_[i][1].size()));
    cur_max_ = 1;
  }

  // Branch and bound: look for assignments strictly below shared.value.
  void improve(SharedBest& shared, const Deadline& deadline, std::uint32_t floor) {
    shared_ = &shared;
    deadline_ = &deadline;
    floor_ = floor;
    improve_from(0);
  }

  // Lexicographically first assignment with max fiber <= target.
  std::optional<ArcAssignment> first_within(std::uint32_t target) {
    if (first_from(0, target)) return arcs_;
    return std::nullopt;
  }

 private:
  std::uint32_t bound_from(std::size_t i) const {
    return (sum_cov_ + suffix_min_[i] + n_ - 1) / n_;
  }

  std::uint32_t apply(std::size_t i, ArcDirection d) {
    const std::uint32_t saved = cur_max_;
    arcs_[i] = d;
    for (std::uint32_t gap : gaps_[i][static_cast<int>(d)]) cur_max_ = std::max(cur_max_, ++gap_[gap]);
    for (std::uint32_t p : interior_[i][static_cast<int>(d)]) cur_max_ = std::max(cur_max_, ++vert_[p]);
    sum_cov_ += static_cast<std::uint32_t>(gaps_[i][static_cast<int>(d)].size());
    return saved;
  }

  void undo(std::size_t i, ArcDirection d, std::uint32_t saved) {
    for (std::uint32_t gap : gaps_[i][static_cast<int>(d)]) --gap_[gap];
    for (std::uint32_t p : interior_[i][static_cast<int>(d)]) --vert_[p];
    sum_cov_ -= static_cast<std::uint32_t>(gaps_[i][static_cast<int>(d)].size());
    cur_max_ = saved;
  }

  void improve_from(std::size_t i) {
    if ((++nodes_ & 0xFFF) == 0 && deadline_->passed()) shared_->stop.store(true);
    if (shared_->stop.load(std::memory_order_relaxed)) return;
    const std::uint32_t best = shared_->value.load(std::memory_order_relaxed);
    if (best <= floor_ || cur_max_ >= best || bound_from(i) >= best) return;
    if (i == g_.edge_count()) {
      shared_->offer(cur_max_, layout_, arcs_);
      return;
    }
    for (ArcDirection d : {ArcDirection::Clockwise, ArcDirection::CounterClockwise}) {
      const std::uint32_t saved = apply(i, d);
      improve_from(i + 1);
      undo(i, d, saved);
    }
  }

  bool first_from(std::size_t i, std::uint32_t target) {
    if (cur_max_ > target || bound_from(i) > target) return false;
    if (i == g_.edge_count()) return true;
    for (ArcDirection d : {ArcDirection::Clockwise, ArcDirection::CounterClockwise}) {
      const std::uint32_t saved = apply(i, d);
      const bool found = first_from(i + 1, target);
      undo(i, d, saved);
      if (found) {
        arcs_[i] = d;
        return true;
      }
    }
    return false;
  }

  const SimpleGraph& g_;
  std::uint32_t n_;
  CircularLayout layout_;
  std::vector<std::array<std::vector<std::uint32_t>, 2>> gaps_;
  std::vector<std::array<std::vector<std::uint32_t>, 2>> interior_;
  std::vector<std::uint32_t> suffix_min_;
  std::vector<std::uint32_t> gap_;
  std::vector<std::uint32_t> vert_;
  ArcAssignment arcs_;
  std::uint32_t cur_max_ = 1;
  std::uint32_t sum_cov_ = 0;
  std::uint64_t nodes_ = 0;
  SharedBest* shared_ = nullptr;
  const Deadline* deadline_ = nullptr;
  std::uint32_t floor_ = 1;
};

void check_solvable(const SimpleGraph& g) {
  if (g.vertex_count() > 20)
    throw DomainError("exact circle solver supports at most 20 vertices (got " +
                      std::to_string(g.vertex_count()) + ")");
}

WitnessedMultiplicity<CircleWitness> solve_exhaustive(const SimpleGraph& g, const Deadline& deadline) {
  const std::uint32_t n = g.vertex_count();
  const std::uint64_t layouts = factorial(n - 1);
  std::optional<std::uint32_t> best;
  CircleWitness witness;
  bool complete = true;
  for (std::uint64_t index = 0; index < layouts && complete; ++index) {
    const CircularLayout layout = decode_layout(index, n);
    if (!reflection_canonical(layout)) continue;
    ArcAssignment arcs(g.edge_count(), ArcDirection::Clockwise);
    std::uint64_t visited = 0;
    while (true) {
      const std::uint32_t value = evaluate(g, layout, arcs).max_fiber;
      if (!best || value < *best) {
        best = value;
        witness = {layout, arcs};
      }
      if ((++visited & 0x3FF) == 0 && deadline.passed()) {
        complete = false;
        break;
      }
      // Odometer, last edge fastest, Clockwise before CounterClockwise.
      std::size_t i = arcs.size();
      while (i > 0 && arcs[i - 1] == ArcDirection::CounterClockwise) arcs[--i] = ArcDirection::Clockwise;
      if (i == 0) break;
      arcs[i - 1] = ArcDirection::CounterClockwise;
    }
  }
  return {MultValue::count(*best), std::move(witness),
          complete ? Certificate::Exact : Certificate::UpperBound};
}

WitnessedMultiplicity<CircleWitness> solve_branch_and_bound(const SimpleGraph& g,
                                                            const Deadline& deadline,
                                                            unsigned threads) {
  const std::uint32_t n = g.vertex_count();
  const std::uint64_t layouts = factorial(n - 1);
  const std::uint32_t floor = pigeonhole_lower_bound(g);

  SharedBest shared;
  {
    const CircularLayout first = decode_layout(0, n);
    const ArcAssignment arcs = short_arcs(g, first);
    shared.value.store(evaluate(g, first, arcs).max_fiber);
    shared.witness = {first, arcs};
  }

  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    while (!shared.stop.load()) {
      const std::uint64_t index = next.fetch_add(1);
      if (index >= layouts || shared.value.load() <= floor) return;
      const CircularLayout layout = decode_layout(index, n);
      if (!reflection_canonical(layout)) continue;
      LayoutSearch(g, layout).improve(shared, deadline, floor);
    }
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < std::max(1u, threads); ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  if (shared.stop.load())
    return {MultValue::count(shared.value.load()), shared.witness, Certificate::UpperBound};

  // The optimum is known; the first layout in lexicographic order that
  // attains it, with its first assignment, is the canonical witness.
  const std::uint32_t optimum = shared.value.load();
  for (std::uint64_t index = 0; index < layouts; ++index) {
    const CircularLayout layout = decode_layout(index, n);
    if (!reflection_canonical(layout)) continue;
    if (auto arcs = LayoutSearch(g, layout).first_within(optimum))
      return {MultValue::count(optimum), CircleWitness{layout, std::move(*arcs)}, Certificate::Exact};
  }
  throw std::logic_error("branch and bound optimum has no witness");
}

}  // namespace

FiberProfile evaluate(const SimpleGraph& g, const CircularLayout& layout, const ArcAssignment& arcs) {
  const std::uint32_t n = g.vertex_count();
  const auto pos = positions_of(layout, n);
  if (arcs.size() != g.edge_count())
    throw std::invalid_argument("arc assignment has " + std::to_string(arcs.size()) +
                                " entries for " + std::to_string(g.edge_count()) + " edges");
  FiberProfile profile{std::vector<std::uint32_t>(n, 0), std::vector<std::uint32_t>(n, 1), 0};
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto [from, to] = arc_endpoints(g.edges()[i], arcs[i], pos);
    walk_arc(from, to, n, [&](std::uint32_t gap) { ++profile.gap_counts[gap]; },
             [&](std::uint32_t p) { ++profile.vertex_counts[p]; });
  }
  for (std::uint32_t c : profile.gap_counts) profile.max_fiber = std::max(profile.max_fiber, c);
  for (std::uint32_t c : profile.vertex_counts) profile.max_fiber = std::max(profile.max_fiber, c);
  return profile;
}

std::uint32_t pigeonhole_lower_bound(const SimpleGraph& g) {
  const auto e = static_cast<std::uint32_t>(g.edge_count());
  const std::uint32_t v = g.vertex_count();
  return std::max<std::uint32_t>(1, (e + v - 1) / v);
}

WitnessedMultiplicity<CircleWitness> solve_exact(const SimpleGraph& g, const SolveOptions& options) {
  check_solvable(g);
  const Deadline deadline(options.time_limit);
  return options.strategy == Strategy::Exhaustive
             ? solve_exhaustive(g, deadline)
             : solve_branch_and_bound(g, deadline, options.threads);
}

std::string to_string(ArcDirection d) { return d == ArcDirection::Clockwise ? "cw" : "ccw"; }

}  // namespace multicat
