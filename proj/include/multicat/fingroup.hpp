#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "multicat/category.hpp"

namespace multicat {

using Element = std::uint32_t;

/// A finite group given by its Cayley table, with identity at index 0.
/// Construct through validate_group (or the catalog constructors).
class FiniteGroup {
 public:
  std::size_t order() const noexcept { return order_; }
  Element mul(Element a, Element b) const noexcept { return table_[a * order_ + b]; }
  Element inverse(Element a) const noexcept { return inverse_[a]; }
  std::uint32_t element_order(Element a) const noexcept { return element_order_[a]; }
  static constexpr Element identity() noexcept { return 0; }

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Row i holds i*j for every j.
  std::vector<std::vector<Element>> table() const;

 private:
  friend FiniteGroup validate_group(std::size_t, const std::vector<std::vector<Element>>&);
  FiniteGroup() = default;

  std::size_t order_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::vector<std::uint32_t> element_order_;
  std::string name_;
};

using GroupRef = std::shared_ptr<const FiniteGroup>;

/// Error naming the violated group axiom and the offending elements (in the
/// caller's original numbering).
class GroupAxiomError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Checks closure, identity, inverses and associativity; renumbers the
/// identity to index 0 by swapping it with element 0.
FiniteGroup validate_group(std::size_t order, const std::vector<std::vector<Element>>& table);

GroupRef make_group(std::size_t order, const std::vector<std::vector<Element>>& table,
                    std::string name = {});

/// Sorted, validated subset of a group closed under products and inverses.
class Subgroup {
 public:
  /// Throws DomainError if `elements` is not a subgroup.
  Subgroup(GroupRef parent, std::vector<Element> elements);

  const GroupRef& parent() const noexcept { return parent_; }
  const std::vector<Element>& elements() const noexcept { return elements_; }
  std::size_t order() const noexcept { return elements_.size(); }
  std::size_t index() const noexcept { return parent_->order() / elements_.size(); }

 private:
  GroupRef parent_;
  std::vector<Element> elements_;
};

/// Subgroup generated by `generators`.
std::vector<Element> generated_closure(const FiniteGroup& g, const std::vector<Element>& generators);

/// A homomorphism, fully verified on construction.
class GroupHom {
 public:
  /// Throws DomainError unless image[x*y] = image[x]*image[y] for all x, y.
  GroupHom(GroupRef source, GroupRef target, std::vector<Element> image);

  static GroupHom identity(const GroupRef& g);
  static GroupHom trivial(const GroupRef& source, const GroupRef& target);

  const GroupRef& source() const noexcept { return source_; }
  const GroupRef& target() const noexcept { return target_; }
  const std::vector<Element>& image() const noexcept { return image_; }
  Element operator()(Element x) const noexcept { return image_[x]; }

  Subgroup kernel() const;
  Subgroup image_subgroup() const;
  bool is_injective() const;
  bool is_surjective() const;

  bool operator==(const GroupHom& other) const {
    return source_ == other.source_ && target_ == other.target_ && image_ == other.image_;
  }

 private:
  GroupRef source_;
  GroupRef target_;
  std::vector<Element> image_;
};

/// g after f, or nullopt if f's target is not g's source.
std::optional<GroupHom> compose(const GroupHom& f, const GroupHom& g);

/// Greedy generating set: repeatedly adds the element whose inclusion grows
/// the generated subgroup the most (smallest index on ties).
std::vector<Element> generating_set(const FiniteGroup& g);

/// Calls `visit` once per homomorphism G -> H in a deterministic order;
/// stop early by returning false.
void for_each_hom(const GroupRef& source, const GroupRef& target,
                  const std::function<bool(const GroupHom&)>& visit);

std::vector<GroupHom> enumerate_homs(const GroupRef& source, const GroupRef& target);

/// Count(|Ker f|).
MultValue kernel_multiplicity(const GroupHom& f);
/// Count(|H| / |f(G)|), the number of cosets of the image.
MultValue cokernel_multiplicity(const GroupHom& f);

struct GroupMultiplicities {
  WitnessedMultiplicity<GroupHom> m_ker;
  WitnessedMultiplicity<GroupHom> m_coker;
};

GroupMultiplicities group_multiplicities(const GroupRef& g, const GroupRef& h);

bool is_isomorphic(const GroupRef& g, const GroupRef& h);
/// Injective homomorphisms exist in both directions.
bool weakly_isomorphic(const GroupRef& g, const GroupRef& h);
/// Surjective homomorphisms exist in both directions.
bool co_weakly_isomorphic(const GroupRef& g, const GroupRef& h);

enum class GroupMultKind { Kernel, Cokernel };

/// Finite groups with homomorphisms, measured by kernel- or
/// cokernel-multiplicity. Searches are exhaustive.
class GroupInstance {
 public:
  using Object = GroupRef;
  using Morphism = GroupHom;

  explicit GroupInstance(GroupMultKind kind) : kind_(kind) {}

  Family family() const { return Family::Count; }
  GroupHom identity(const GroupRef& g) const { return GroupHom::identity(g); }
  std::optional<GroupHom> compose(const GroupHom& f, const GroupHom& g) const {
    return multicat::compose(f, g);
  }
  MultValue multiplicity(const GroupHom& f) const {
    return kind_ == GroupMultKind::Kernel ? kernel_multiplicity(f) : cokernel_multiplicity(f);
  }
  /// |Ker f| >= |G|/|H| and |Coker f| >= |H|/|G|, rounded up.
  SearchInfo search_info(const GroupRef& g, const GroupRef& h) const {
    const std::size_t a = kind_ == GroupMultKind::Kernel ? g->order() : h->order();
    const std::size_t b = kind_ == GroupMultKind::Kernel ? h->order() : g->order();
    return {true, MultValue::count((a + b - 1) / b)};
  }
  void search(const GroupRef& g, const GroupRef& h, const MorphismSink<GroupHom>& sink) const {
    for_each_hom(g, h, [&](const GroupHom& f) { return sink(f, multiplicity(f)); });
  }
  std::string describe(const GroupHom& f) const;

 private:
  GroupMultKind kind_;
};

// Catalog of table constructors.
GroupRef cyclic_group(std::size_t n);
/// Symmetries of a regular n-gon, order 2n.
GroupRef dihedral_group(std::size_t n);
/// Dicyclic group of order 4n (n = 2 is the quaternion group).
GroupRef dicyclic_group(std::size_t n);
GroupRef klein_four_group();
GroupRef quaternion_group();
GroupRef alternating_group_4();
GroupRef direct_product(const GroupRef& a, const GroupRef& b);

/// Parses `cyclic:n`, `dihedral:n`, `dicyclic:n`, `klein4`, `q8`, `a4`,
/// `product:<spec>,<spec>` (nestable).
GroupRef group_from_spec(const std::string& spec);

/// File format: first line n, then n rows of n indices (row i = i*j).
GroupRef parse_group(std::istream& in, std::string name = {});

/// One representative per isomorphism type of every group of order
/// <= max_order (max_order <= 12), ordered by order.
std::vector<GroupRef> small_group_corpus(std::size_t max_order = 12);

}  // namespace multicat
