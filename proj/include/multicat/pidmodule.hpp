#pragma once

// Finitely generated Z-modules Z^r + Z/d1 + ... + Z/dk (d1 | d2 | ... | dk,
// every di >= 2) and the maps between them.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "multicat/category.hpp"
#include "multicat/int_matrix.hpp"

namespace multicat {

class FgZModule {
 public:
  /// The zero module.
  FgZModule() = default;
  /// Throws DomainError unless the factors form a divisibility chain of
  /// integers >= 2.
  FgZModule(std::size_t free_rank, std::vector<BigInt> invariant_factors);

  /// Normalizes an arbitrary direct sum of cyclic groups Z/n_i (n_i >= 1,
  /// Z/1 = 0) into invariant-factor form.
  static FgZModule from_cyclic_summands(std::size_t free_rank, std::vector<BigInt> orders);

  std::size_t free_rank() const noexcept { return free_rank_; }
  const std::vector<BigInt>& invariant_factors() const noexcept { return factors_; }
  std::size_t torsion_count() const noexcept { return factors_.size(); }
  /// Number of cyclic generators: free_rank + number of factors.
  std::size_t generator_count() const noexcept { return free_rank_ + factors_.size(); }

  bool is_zero() const noexcept { return generator_count() == 0; }
  bool is_free() const noexcept { return factors_.empty(); }
  bool is_torsion() const noexcept { return free_rank_ == 0; }
  /// Cardinality of a torsion module; throws for modules with free part.
  BigInt order() const;

  bool operator==(const FgZModule&) const = default;

  /// "Z^2 + Z/4", "0" for the zero module.
  std::string to_string() const;

 private:
  std::size_t free_rank_ = 0;
  std::vector<BigInt> factors_;
};

/// Grammar: expr ::= term ('+' term)* ; term ::= 'Z' | 'Z^'k | 'Z/'d | '0'
/// with k >= 1 and d >= 2. Whitespace is ignored.
FgZModule parse_module(std::string_view text);

/// r(M), the minimal number of generators.
std::size_t min_generators(const FgZModule& m);

/// tor(M) = (0, invariant factors of M).
FgZModule torsion_submodule(const FgZModule& m);

/// A Z-linear map M -> N. With M = Z^a + T and N = Z^b + T', row i of the
/// blocks is the image of the i-th generator of M:
///   A (a x b)  free -> free, arbitrary integers
///   C (a x t') free -> torsion, column j reduced mod d'_j
///   D (t x t') torsion -> torsion, entry (i, j) a multiple of
///              d'_j / gcd(d_i, d'_j), reduced mod d'_j
/// Torsion -> free is necessarily zero and is not stored.
class ZModuleHom {
 public:
  /// Reduces C and D into canonical residues; throws DomainError on shape
  /// mismatch or when D violates the divisibility constraint.
  ZModuleHom(FgZModule source, FgZModule target, IntMatrix a, IntMatrix c, IntMatrix d);

  static ZModuleHom zero(const FgZModule& source, const FgZModule& target);
  static ZModuleHom identity(const FgZModule& m);

  const FgZModule& source() const noexcept { return source_; }
  const FgZModule& target() const noexcept { return target_; }
  const IntMatrix& free_block() const noexcept { return a_; }
  const IntMatrix& free_to_torsion_block() const noexcept { return c_; }
  const IntMatrix& torsion_block() const noexcept { return d_; }

  /// All generator images as one (a+t) x (b+t') matrix.
  IntMatrix full_matrix() const;

  bool operator==(const ZModuleHom&) const = default;

 private:
  FgZModule source_;
  FgZModule target_;
  IntMatrix a_;
  IntMatrix c_;
  IntMatrix d_;
};

/// g after f; nullopt if f's target differs from g's source.
std::optional<ZModuleHom> compose(const ZModuleHom& f, const ZModuleHom& g);

/// Isomorphism types of Ker f and Coker f = N / f(M), computed from Smith
/// normal forms of presentation matrices.
FgZModule hom_kernel(const ZModuleHom& f);
FgZModule hom_cokernel(const ZModuleHom& f);

struct RankMultiplicities {
  WitnessedMultiplicity<ZModuleHom> m_rker;
  WitnessedMultiplicity<ZModuleHom> m_rcoker;
};

/// Proven floors for r(Ker f) and r(Coker f) over all maps M -> N.
struct RankLowerBounds {
  std::size_t kernel;
  std::size_t cokernel;
};

RankLowerBounds rank_lower_bounds(const FgZModule& m, const FgZModule& n);

/// Default free-block search radius: product of the distinct primes
/// dividing any invariant factor of either module, capped at 64 (1 if both
/// are free).
std::uint64_t default_search_bound(const FgZModule& m, const FgZModule& n);

struct RankSearchOptions {
  std::optional<std::uint64_t> bound;  ///< free-block entries in [-B, B]
  unsigned threads = 1;
  /// Give up (UpperBound) after this many candidate maps.
  std::uint64_t max_candidates = 1u << 20;
};

/// Minimal e^{r(Ker f)} and e^{r(Coker f)} over maps M -> N.
///  - both free: closed forms, Exact.
///  - no free -> free block (either side has free rank 0): the hom set is
///    finite and enumerated, Exact.
///  - otherwise free-block entries range over [-B, B]; a value is Exact
///    only when it meets rank_lower_bounds.
RankMultiplicities rank_multiplicities(const FgZModule& m, const FgZModule& n,
                                       const RankSearchOptions& options = {});

struct RankDistances {
  DistValue d_rker;
  DistValue d_rcoker;
};

RankDistances rank_distances(const FgZModule& m, const FgZModule& n,
                             const RankSearchOptions& options = {});

/// Enumerates the maps M -> N in the search order used by
/// rank_multiplicities (free-block entries drawn from 0, 1, -1, ..., B, -B).
/// Finite whenever either module has free rank 0.
class HomCandidateSpace {
 public:
  HomCandidateSpace(FgZModule source, FgZModule target, std::uint64_t bound);

  /// Number of candidates; nullopt if it exceeds 2^63.
  std::optional<std::uint64_t> size() const noexcept { return size_; }
  bool covers_all_homs() const noexcept { return covers_all_; }
  ZModuleHom at(std::uint64_t index) const;

 private:
  FgZModule source_;
  FgZModule target_;
  std::uint64_t bound_;
  std::vector<std::uint64_t> radices_;  // least significant first: D, C, then A
  std::optional<std::uint64_t> size_;
  bool covers_all_;
};

enum class RankMultKind { Kernel, Cokernel };

/// Finitely generated Z-modules with linear maps, measured by e^{r(Ker)} or
/// e^{r(Coker)}.
class ModuleInstance {
 public:
  using Object = FgZModule;
  using Morphism = ZModuleHom;

  explicit ModuleInstance(RankMultKind kind, std::optional<std::uint64_t> bound = std::nullopt)
      : kind_(kind), bound_(bound) {}

  Family family() const { return Family::Exp; }
  ZModuleHom identity(const FgZModule& m) const { return ZModuleHom::identity(m); }
  std::optional<ZModuleHom> compose(const ZModuleHom& f, const ZModuleHom& g) const {
    return multicat::compose(f, g);
  }
  MultValue multiplicity(const ZModuleHom& f) const;
  SearchInfo search_info(const FgZModule& m, const FgZModule& n) const;
  void search(const FgZModule& m, const FgZModule& n, const MorphismSink<ZModuleHom>& sink) const;
  std::string describe(const ZModuleHom& f) const;

 private:
  RankMultKind kind_;
  std::optional<std::uint64_t> bound_;
};

}  // namespace multicat
