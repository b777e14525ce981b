#include "multicat/fingroup.hpp"

#include <algorithm>
#include <numeric>

namespace multicat {

namespace {

std::string triple(Element a, Element b, Element c) {
  return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ")";
}

}  // namespace

std::vector<std::vector<Element>> FiniteGroup::table() const {
  std::vector<std::vector<Element>> out(order_, std::vector<Element>(order_));
  for (Element a = 0; a < order_; ++a)
    for (Element b = 0; b < order_; ++b) out[a][b] = mul(a, b);
  return out;
}

FiniteGroup validate_group(std::size_t order, const std::vector<std::vector<Element>>& table) {
  if (order == 0) throw GroupAxiomError("group order must be at least 1");
  if (table.size() != order)
    throw GroupAxiomError("table has " + std::to_string(table.size()) + " rows, expected " +
                          std::to_string(order));
  for (std::size_t i = 0; i < order; ++i) {
    if (table[i].size() != order)
      throw GroupAxiomError("row " + std::to_string(i) + " has " + std::to_string(table[i].size()) +
                            " entries, expected " + std::to_string(order));
    for (std::size_t j = 0; j < order; ++j)
      if (table[i][j] >= order)
        throw GroupAxiomError("closure: " + std::to_string(i) + "*" + std::to_string(j) + " = " +
                              std::to_string(table[i][j]) + " is not an element");
  }

  std::optional<Element> e;
  for (Element c = 0; c < order && !e; ++c) {
    bool ok = true;
    for (Element x = 0; x < order && ok; ++x) ok = table[c][x] == x && table[x][c] == x;
    if (ok) e = c;
  }
  if (!e) throw GroupAxiomError("identity: no element acts as a two-sided identity");

  for (Element a = 0; a < order; ++a) {
    bool found = false;
    for (Element b = 0; b < order && !found; ++b) found = table[a][b] == *e && table[b][a] == *e;
    if (!found) throw GroupAxiomError("inverse: element " + std::to_string(a) + " has no inverse");
  }

  for (Element a = 0; a < order; ++a)
    for (Element b = 0; b < order; ++b)
      for (Element c = 0; c < order; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw GroupAxiomError("associativity fails for the triple " + triple(a, b, c));

  // Swap the identity into slot 0.
  std::vector<Element> relabel(order);
  std::iota(relabel.begin(), relabel.end(), 0u);
  std::swap(relabel[0], relabel[*e]);

  FiniteGroup g;
  g.order_ = order;
  g.table_.resize(order * order);
  for (Element a = 0; a < order; ++a)
    for (Element b = 0; b < order; ++b)
      g.table_[relabel[a] * order + relabel[b]] = relabel[table[a][b]];
  g.inverse_.resize(order);
  g.element_order_.resize(order);
  for (Element a = 0; a < order; ++a) {
    for (Element b = 0; b < order; ++b)
      if (g.mul(a, b) == 0) g.inverse_[a] = b;
    std::uint32_t k = 1;
    for (Element p = a; p != 0; p = g.mul(p, a)) ++k;
    g.element_order_[a] = k;
  }
  return g;
}

GroupRef make_group(std::size_t order, const std::vector<std::vector<Element>>& table,
                    std::string name) {
  auto g = std::make_shared<FiniteGroup>(validate_group(order, table));
  g->set_name(std::move(name));
  return g;
}

std::vector<Element> generated_closure(const FiniteGroup& g, const std::vector<Element>& generators) {
  std::vector<bool> in(g.order(), false);
  std::vector<Element> frontier{FiniteGroup::identity()};
  in[0] = true;
  for (std::size_t i = 0; i < frontier.size(); ++i)
    for (Element s : generators) {
      const Element y = g.mul(frontier[i], s);
      if (!in[y]) {
        in[y] = true;
        frontier.push_back(y);
      }
    }
  std::sort(frontier.begin(), frontier.end());
  return frontier;
}

Subgroup::Subgroup(GroupRef parent, std::vector<Element> elements)
    : parent_(std::move(parent)), elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  const auto& g = *parent_;
  if (elements_.empty() || elements_.front() != 0)
    throw DomainError("subgroup must contain the identity");
  std::vector<bool> in(g.order(), false);
  for (Element x : elements_) {
    if (x >= g.order()) throw DomainError("subgroup element outside the group");
    in[x] = true;
  }
  for (Element x : elements_) {
    if (!in[g.inverse(x)]) throw DomainError("subset is not closed under inverses");
    for (Element y : elements_)
      if (!in[g.mul(x, y)]) throw DomainError("subset is not closed under products");
  }
  if (g.order() % elements_.size() != 0)
    throw DomainError("subgroup order does not divide the group order");
}

GroupHom::GroupHom(GroupRef source, GroupRef target, std::vector<Element> image)
    : source_(std::move(source)), target_(std::move(target)), image_(std::move(image)) {
  const auto& g = *source_;
  const auto& h = *target_;
  if (image_.size() != g.order()) throw DomainError("homomorphism image has the wrong length");
  for (Element y : image_)
    if (y >= h.order()) throw DomainError("homomorphism maps outside the target group");
  if (image_[0] != 0) throw DomainError("homomorphism must send identity to identity");
  for (Element x = 0; x < g.order(); ++x)
    for (Element y = 0; y < g.order(); ++y)
      if (image_[g.mul(x, y)] != h.mul(image_[x], image_[y]))
        throw DomainError("map is not a homomorphism at (" + std::to_string(x) + ", " +
                          std::to_string(y) + ")");
}

GroupHom GroupHom::identity(const GroupRef& g) {
  std::vector<Element> image(g->order());
  std::iota(image.begin(), image.end(), 0u);
  return GroupHom(g, g, std::move(image));
}

GroupHom GroupHom::trivial(const GroupRef& source, const GroupRef& target) {
  return GroupHom(source, target, std::vector<Element>(source->order(), 0));
}

Subgroup GroupHom::kernel() const {
  std::vector<Element> k;
  for (Element x = 0; x < image_.size(); ++x)
    if (image_[x] == 0) k.push_back(x);
  return Subgroup(source_, std::move(k));
}

Subgroup GroupHom::image_subgroup() const { return Subgroup(target_, image_); }

bool GroupHom::is_injective() const {
  return std::count(image_.begin(), image_.end(), Element{0}) == 1;
}

bool GroupHom::is_surjective() const {
  std::vector<bool> hit(target_->order(), false);
  for (Element y : image_) hit[y] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

std::optional<GroupHom> compose(const GroupHom& f, const GroupHom& g) {
  if (f.target() != g.source()) return std::nullopt;
  std::vector<Element> image(f.image().size());
  for (Element x = 0; x < image.size(); ++x) image[x] = g(f(x));
  return GroupHom(f.source(), g.target(), std::move(image));
}

std::vector<Element> generating_set(const FiniteGroup& g) {
  std::vector<Element> gens;
  std::size_t covered = 1;
  while (covered < g.order()) {
    Element best = 0;
    std::size_t best_size = covered;
    for (Element x = 1; x < g.order(); ++x) {
      auto candidate = gens;
      candidate.push_back(x);
      const std::size_t size = generated_closure(g, candidate).size();
      if (size > best_size) {
        best = x;
        best_size = size;
      }
    }
    gens.push_back(best);
    covered = best_size;
  }
  return gens;
}

void for_each_hom(const GroupRef& source, const GroupRef& target,
                  const std::function<bool(const GroupHom&)>& visit) {
  const FiniteGroup& g = *source;
  const FiniteGroup& h = *target;
  auto gens = generating_set(g);
  std::stable_sort(gens.begin(), gens.end(), [&](Element a, Element b) {
    return g.element_order(a) > g.element_order(b);
  });

  // Candidate images: elements whose order divides the generator's order.
  std::vector<std::vector<Element>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (Element y = 0; y < h.order(); ++y)
      if (g.element_order(gens[i]) % h.element_order(y) == 0) candidates[i].push_back(y);

  constexpr Element kUnset = ~Element{0};
  std::vector<Element> chosen(gens.size());
  std::vector<Element> image(g.order(), kUnset);
  std::vector<Element> touched;
  bool keep_going = true;

  // Extends the partial map over words in the first `count` generators.
  auto close = [&](std::size_t count) {
    std::fill(image.begin(), image.end(), kUnset);
    image[0] = 0;
    touched.assign(1, 0);
    for (std::size_t i = 0; i < touched.size(); ++i) {
      const Element x = touched[i];
      for (std::size_t k = 0; k < count; ++k) {
        const Element xs = g.mul(x, gens[k]);
        const Element fx = h.mul(image[x], chosen[k]);
        if (image[xs] == kUnset) {
          image[xs] = fx;
          touched.push_back(xs);
        } else if (image[xs] != fx) {
          return false;
        }
      }
    }
    return true;
  };

  std::function<void(std::size_t)> assign = [&](std::size_t level) {
    if (!keep_going) return;
    if (level == gens.size()) {
      keep_going = visit(GroupHom(source, target, image));
      return;
    }
    for (Element y : candidates[level]) {
      chosen[level] = y;
      if (close(level + 1)) assign(level + 1);
      if (!keep_going) return;
    }
  };
  if (gens.empty()) {
    visit(GroupHom::trivial(source, target));
    return;
  }
  assign(0);
}

std::vector<GroupHom> enumerate_homs(const GroupRef& source, const GroupRef& target) {
  std::vector<GroupHom> out;
  for_each_hom(source, target, [&](const GroupHom& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

MultValue kernel_multiplicity(const GroupHom& f) { return MultValue::count(f.kernel().order()); }

MultValue cokernel_multiplicity(const GroupHom& f) {
  return MultValue::count(f.image_subgroup().index());
}

GroupMultiplicities group_multiplicities(const GroupRef& g, const GroupRef& h) {
  return {object_multiplicity(GroupInstance(GroupMultKind::Kernel), g, h),
          object_multiplicity(GroupInstance(GroupMultKind::Cokernel), g, h)};
}

namespace {

bool exists_hom(const GroupRef& g, const GroupRef& h, bool (GroupHom::*pred)() const) {
  bool found = false;
  for_each_hom(g, h, [&](const GroupHom& f) {
    found = (f.*pred)();
    return !found;
  });
  return found;
}

}  // namespace

bool is_isomorphic(const GroupRef& g, const GroupRef& h) {
  return g->order() == h->order() && exists_hom(g, h, &GroupHom::is_injective);
}

bool weakly_isomorphic(const GroupRef& g, const GroupRef& h) {
  return exists_hom(g, h, &GroupHom::is_injective) && exists_hom(h, g, &GroupHom::is_injective);
}

bool co_weakly_isomorphic(const GroupRef& g, const GroupRef& h) {
  return exists_hom(g, h, &GroupHom::is_surjective) && exists_hom(h, g, &GroupHom::is_surjective);
}

std::string GroupInstance::describe(const GroupHom& f) const {
  std::string out = f.source()->name() + "->" + f.target()->name() + "[";
  for (std::size_t i = 0; i < f.image().size(); ++i) {
    if (i) out += ',';
    out += std::to_string(f.image()[i]);
  }
  return out + "]";
}

}  // namespace multicat
