#include <algorithm>
#include <atomic>
#include <cctype>
#include <limits>
#include <mutex>
#include <thread>

#include "multicat/errors.hpp"
#include "multicat/pidmodule.hpp"

namespace multicat {

namespace {

BigInt mod_nonneg(const BigInt& x, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// Isomorphism type of Z^cols / rowspace(relations).
FgZModule quotient_by_rows(const IntMatrix& relations) {
  const SnfResult snf = smith_normal_form(relations);
  const std::size_t rank = snf.rank();
  std::vector<BigInt> orders;
  for (std::size_t i = 0; i < rank; ++i) orders.push_back(snf.S(i, i));
  return FgZModule::from_cyclic_summands(relations.cols() - rank, std::move(orders));
}

}  // namespace

FgZModule::FgZModule(std::size_t free_rank, std::vector<BigInt> invariant_factors)
    : free_rank_(free_rank), factors_(std::move(invariant_factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2)
      throw DomainError("invariant factor " + factors_[i].get_str() + " is less than 2");
    if (i > 0 && mpz_divisible_p(factors_[i].get_mpz_t(), factors_[i - 1].get_mpz_t()) == 0)
      throw DomainError("invariant factors " + factors_[i - 1].get_str() + ", " +
                        factors_[i].get_str() + " do not form a divisibility chain");
  }
}

FgZModule FgZModule::from_cyclic_summands(std::size_t free_rank, std::vector<BigInt> orders) {
  std::vector<BigInt> kept;
  for (BigInt& n : orders) {
    if (n < 0) n = -n;
    if (n == 0) {
      ++free_rank;
    } else if (n != 1) {
      kept.push_back(std::move(n));
    }
  }
  // Pairwise (gcd, lcm) replacement until the list is a divisibility chain.
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t j = i + 1; j < kept.size(); ++j) {
      const BigInt g = gcd(kept[i], kept[j]);
      const BigInt l = kept[i] / g * kept[j];
      kept[i] = g;
      kept[j] = l;
    }
  kept.erase(std::remove(kept.begin(), kept.end(), BigInt(1)), kept.end());
  return FgZModule(free_rank, std::move(kept));
}

BigInt FgZModule::order() const {
  if (free_rank_ > 0) throw DomainError("module " + to_string() + " is infinite");
  BigInt n = 1;
  for (const BigInt& d : factors_) n *= d;
  return n;
}

std::string FgZModule::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  if (free_rank_ == 1) out = "Z";
  if (free_rank_ > 1) out = "Z^" + std::to_string(free_rank_);
  for (const BigInt& d : factors_) {
    if (!out.empty()) out += " + ";
    out += "Z/" + d.get_str();
  }
  return out;
}

namespace {

class ModuleParser {
 public:
  explicit ModuleParser(std::string_view text) : text_(text) {}

  FgZModule parse() {
    std::size_t free_rank = 0;
    std::vector<BigInt> orders;
    do {
      skip_space();
      if (pos_ >= text_.size()) fail("expected a summand");
      if (text_[pos_] == '0') {
        ++pos_;
      } else if (text_[pos_] == 'Z') {
        ++pos_;
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '^') {
          ++pos_;
          const std::size_t at = pos_;
          const BigInt k = number();
          if (k < 1 || k > 100000) fail("free rank must be in 1..100000", at);
          free_rank += k.get_ui();
        } else if (pos_ < text_.size() && text_[pos_] == '/') {
          ++pos_;
          const std::size_t at = pos_;
          BigInt d = number();
          if (d < 2) fail("cyclic order must be at least 2", at);
          orders.push_back(std::move(d));
        } else {
          ++free_rank;
        }
      } else {
        fail("expected 'Z' or '0'");
      }
      skip_space();
    } while (accept('+'));
    if (pos_ != text_.size()) fail("unexpected character");
    return FgZModule::from_cyclic_summands(free_rank, std::move(orders));
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { fail(what, pos_); }
  [[noreturn]] void fail(const std::string& what, std::size_t at) const {
    throw ParseError("module '" + std::string(text_) + "': " + what, at);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  BigInt number() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

FgZModule parse_module(std::string_view text) { return ModuleParser(text).parse(); }

std::size_t min_generators(const FgZModule& m) { return m.generator_count(); }

FgZModule torsion_submodule(const FgZModule& m) { return FgZModule(0, m.invariant_factors()); }

ZModuleHom::ZModuleHom(FgZModule source, FgZModule target, IntMatrix a, IntMatrix c, IntMatrix d)
    : source_(std::move(source)),
      target_(std::move(target)),
      a_(std::move(a)),
      c_(std::move(c)),
      d_(std::move(d)) {
  const std::size_t fa = source_.free_rank(), fb = target_.free_rank();
  const std::size_t t = source_.torsion_count(), tt = target_.torsion_count();
  auto check = [](const IntMatrix& m, std::size_t r, std::size_t c, const char* name) {
    if (m.rows() != r || m.cols() != c)
      throw DomainError(std::string("block ") + name + " is " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()) + ", expected " + std::to_string(r) + "x" +
                        std::to_string(c));
  };
  check(a_, fa, fb, "A");
  check(c_, fa, tt, "C");
  check(d_, t, tt, "D");
  const auto& dt = target_.invariant_factors();
  const auto& ds = source_.invariant_factors();
  for (std::size_t j = 0; j < tt; ++j) {
    for (std::size_t i = 0; i < fa; ++i) c_(i, j) = mod_nonneg(c_(i, j), dt[j]);
    for (std::size_t i = 0; i < t; ++i) {
      d_(i, j) = mod_nonneg(d_(i, j), dt[j]);
      const BigInt step = dt[j] / gcd(ds[i], dt[j]);
      if (mpz_divisible_p(d_(i, j).get_mpz_t(), step.get_mpz_t()) == 0)
        throw DomainError("generator of order " + ds[i].get_str() + " cannot map to " +
                          d_(i, j).get_str() + " in Z/" + dt[j].get_str());
    }
  }
}

ZModuleHom ZModuleHom::zero(const FgZModule& source, const FgZModule& target) {
  return ZModuleHom(source, target, IntMatrix(source.free_rank(), target.free_rank()),
                    IntMatrix(source.free_rank(), target.torsion_count()),
                    IntMatrix(source.torsion_count(), target.torsion_count()));
}

ZModuleHom ZModuleHom::identity(const FgZModule& m) {
  return ZModuleHom(m, m, IntMatrix::identity(m.free_rank()),
                    IntMatrix(m.free_rank(), m.torsion_count()),
                    IntMatrix::identity(m.torsion_count()));
}

IntMatrix ZModuleHom::full_matrix() const {
  const std::size_t fa = source_.free_rank(), fb = target_.free_rank();
  IntMatrix m(source_.generator_count(), target_.generator_count());
  for (std::size_t i = 0; i < fa; ++i) {
    for (std::size_t j = 0; j < fb; ++j) m(i, j) = a_(i, j);
    for (std::size_t j = 0; j < c_.cols(); ++j) m(i, fb + j) = c_(i, j);
  }
  for (std::size_t i = 0; i < d_.rows(); ++i)
    for (std::size_t j = 0; j < d_.cols(); ++j) m(fa + i, fb + j) = d_(i, j);
  return m;
}

std::optional<ZModuleHom> compose(const ZModuleHom& f, const ZModuleHom& g) {
  if (!(f.target() == g.source())) return std::nullopt;
  const IntMatrix p = f.full_matrix() * g.full_matrix();
  const FgZModule& m = f.source();
  const FgZModule& k = g.target();
  const std::size_t fa = m.free_rank(), fc = k.free_rank();
  IntMatrix a(fa, fc), c(fa, k.torsion_count()), d(m.torsion_count(), k.torsion_count());
  for (std::size_t i = 0; i < fa; ++i) {
    for (std::size_t j = 0; j < fc; ++j) a(i, j) = p(i, j);
    for (std::size_t j = 0; j < c.cols(); ++j) c(i, j) = p(i, fc + j);
  }
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) d(i, j) = p(fa + i, fc + j);
  return ZModuleHom(m, k, std::move(a), std::move(c), std::move(d));
}

FgZModule hom_cokernel(const ZModuleHom& f) {
  const FgZModule& n = f.target();
  const IntMatrix full = f.full_matrix();
  const std::size_t fb = n.free_rank();
  IntMatrix rel(full.rows() + n.torsion_count(), n.generator_count());
  for (std::size_t i = 0; i < full.rows(); ++i)
    for (std::size_t j = 0; j < full.cols(); ++j) rel(i, j) = full(i, j);
  for (std::size_t j = 0; j < n.torsion_count(); ++j)
    rel(full.rows() + j, fb + j) = n.invariant_factors()[j];
  return quotient_by_rows(rel);
}

FgZModule hom_kernel(const ZModuleHom& f) {
  const FgZModule& m = f.source();
  const FgZModule& n = f.target();
  const std::size_t src = m.generator_count();
  const std::size_t tt = n.torsion_count();
  const std::size_t fb = n.free_rank();

  // (u, w, k) with u*A = 0 and u*C + w*D - k*diag(d') = 0.
  const IntMatrix full = f.full_matrix();
  IntMatrix phi(src + tt, n.generator_count());
  for (std::size_t i = 0; i < src; ++i)
    for (std::size_t j = 0; j < full.cols(); ++j) phi(i, j) = full(i, j);
  for (std::size_t j = 0; j < tt; ++j) phi(src + j, fb + j) = -n.invariant_factors()[j];
  const SnfResult lattice = smith_normal_form(phi);

  // Rows of U past the rank span the left null lattice; keep the (u, w) part.
  const std::size_t null_rank = phi.rows() - lattice.rank();
  IntMatrix gens(null_rank, src);
  for (std::size_t r = 0; r < null_rank; ++r)
    for (std::size_t c = 0; c < src; ++c) gens(r, c) = lattice.U(lattice.rank() + r, c);

  // Basis b_i = s_i * (V^-1)_i of the lifted kernel; x has coordinates (xV)_i / s_i.
  const SnfResult span = smith_normal_form(gens);
  const std::size_t k = span.rank();
  const std::size_t fa = m.free_rank();
  IntMatrix rel(m.torsion_count(), k);
  for (std::size_t i = 0; i < m.torsion_count(); ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const BigInt v = m.invariant_factors()[i] * span.V(fa + i, j);
      rel(i, j) = v / span.S(j, j);
    }
  return quotient_by_rows(rel);
}

RankLowerBounds rank_lower_bounds(const FgZModule& m, const FgZModule& n) {
  auto gap = [](std::size_t x, std::size_t y) { return x > y ? x - y : std::size_t{0}; };
  const std::size_t ker = std::max({gap(min_generators(m), min_generators(n)),
                                    gap(m.free_rank(), n.free_rank()),
                                    gap(m.torsion_count(), n.torsion_count())});
  const std::size_t coker =
      std::max(gap(min_generators(n), min_generators(m)), gap(n.free_rank(), m.free_rank()));
  return {ker, coker};
}

std::uint64_t default_search_bound(const FgZModule& m, const FgZModule& n) {
  constexpr std::uint64_t kCap = 64;
  std::vector<BigInt> factors = m.invariant_factors();
  factors.insert(factors.end(), n.invariant_factors().begin(), n.invariant_factors().end());
  std::uint64_t product = 1;
  for (std::uint64_t p = 2; p <= kCap; ++p) {
    bool prime = true;
    for (std::uint64_t q = 2; q * q <= p; ++q) prime = prime && p % q != 0;
    if (!prime) continue;
    bool divides = false;
    for (BigInt& d : factors)
      while (mpz_divisible_ui_p(d.get_mpz_t(), p) != 0) {
        d /= p;
        divides = true;
      }
    if (divides) product *= p;
    if (product > kCap) return kCap;
  }
  for (const BigInt& d : factors)
    if (d > 1) return kCap;
  return product;
}

HomCandidateSpace::HomCandidateSpace(FgZModule source, FgZModule target, std::uint64_t bound)
    : source_(std::move(source)),
      target_(std::move(target)),
      bound_(bound),
      covers_all_(source_.free_rank() == 0 || target_.free_rank() == 0) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  auto radix = [&](const BigInt& r) { return r.fits_ulong_p() ? r.get_ui() : kMax; };
  const auto& ds = source_.invariant_factors();
  const auto& dt = target_.invariant_factors();
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t j = 0; j < dt.size(); ++j) radices_.push_back(radix(gcd(ds[i], dt[j])));
  for (std::size_t i = 0; i < source_.free_rank(); ++i)
    for (std::size_t j = 0; j < dt.size(); ++j) radices_.push_back(radix(dt[j]));
  const std::uint64_t a_radix = bound_ >= kMax / 2 ? kMax : 2 * bound_ + 1;
  for (std::size_t i = 0; i < source_.free_rank() * target_.free_rank(); ++i)
    radices_.push_back(a_radix);

  std::uint64_t total = 1;
  const std::uint64_t limit = std::uint64_t{1} << 63;
  for (std::uint64_t r : radices_) {
    if (r > limit / total) return;
    total *= r;
  }
  size_ = total;
}

ZModuleHom HomCandidateSpace::at(std::uint64_t index) const {
  const auto& ds = source_.invariant_factors();
  const auto& dt = target_.invariant_factors();
  const std::size_t fa = source_.free_rank(), fb = target_.free_rank();
  IntMatrix a(fa, fb), c(fa, dt.size()), d(ds.size(), dt.size());
  std::size_t slot = 0;
  auto digit = [&]() {
    const std::uint64_t r = radices_[slot++];
    const std::uint64_t v = index % r;
    index /= r;
    return v;
  };
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t j = 0; j < dt.size(); ++j) {
      const BigInt step = dt[j] / gcd(ds[i], dt[j]);
      d(i, j) = step * BigInt(static_cast<unsigned long>(digit()));
    }
  for (std::size_t i = 0; i < fa; ++i)
    for (std::size_t j = 0; j < dt.size(); ++j) c(i, j) = static_cast<unsigned long>(digit());
  for (std::size_t i = 0; i < fa; ++i)
    for (std::size_t j = 0; j < fb; ++j) {
      const std::uint64_t v = digit();
      const long magnitude = static_cast<long>((v + 1) / 2);
      a(i, j) = (v % 2 == 1) ? magnitude : -magnitude;
    }
  return ZModuleHom(source_, target_, std::move(a), std::move(c), std::move(d));
}

namespace {

ZModuleHom free_closed_form(const FgZModule& m, const FgZModule& n) {
  IntMatrix a(m.free_rank(), n.free_rank());
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) a(i, i) = 1;
  return ZModuleHom(m, n, std::move(a), IntMatrix(m.free_rank(), 0), IntMatrix(0, 0));
}

struct SearchPlan {
  HomCandidateSpace space;
  std::uint64_t count;  // candidates actually visited at most
  bool exhaustive;
};

SearchPlan plan_search(const FgZModule& m, const FgZModule& n, const RankSearchOptions& options) {
  const std::uint64_t bound = options.bound.value_or(default_search_bound(m, n));
  HomCandidateSpace space(m, n, bound);
  const auto size = space.size();
  const bool fits = size && *size <= options.max_candidates;
  const std::uint64_t count = fits ? *size : options.max_candidates;
  const bool exhaustive = fits && space.covers_all_homs();
  return {std::move(space), count, exhaustive};
}

// Best (value, index) found so far for one of the two rank functions.
struct Track {
  explicit Track(std::size_t f) : floor(f) {}

  std::size_t floor;
  std::atomic<std::uint64_t> hit{std::numeric_limits<std::uint64_t>::max()};
  std::mutex lock;
  std::optional<std::pair<std::size_t, std::uint64_t>> best;

  void offer(std::size_t rank, std::uint64_t index) {
    {
      std::lock_guard guard(lock);
      if (!best || std::make_pair(rank, index) < *best) best = {{rank, index}};
    }
    if (rank == floor) {
      std::uint64_t cur = hit.load();
      while (index < cur && !hit.compare_exchange_weak(cur, index)) {
      }
    }
  }
  bool settled_before(std::uint64_t index) const { return hit.load() < index; }
};

}  // namespace

RankMultiplicities rank_multiplicities(const FgZModule& m, const FgZModule& n,
                                       const RankSearchOptions& options) {
  const RankLowerBounds floors = rank_lower_bounds(m, n);
  if (m.is_free() && n.is_free()) {
    const ZModuleHom f = free_closed_form(m, n);
    return {{MultValue::exp(floors.kernel), f, Certificate::Exact},
            {MultValue::exp(floors.cokernel), f, Certificate::Exact}};
  }

  const SearchPlan plan = plan_search(m, n, options);
  Track ker(floors.kernel), coker(floors.cokernel);
  constexpr std::uint64_t kChunk = 256;
  std::atomic<std::uint64_t> next{0};

  auto work = [&] {
    for (;;) {
      const std::uint64_t start = next.fetch_add(kChunk);
      if (start >= plan.count) return;
      const std::uint64_t end = std::min(plan.count, start + kChunk);
      for (std::uint64_t idx = start; idx < end; ++idx) {
        const bool need_ker = !ker.settled_before(idx);
        const bool need_coker = !coker.settled_before(idx);
        if (!need_ker && !need_coker) return;
        const ZModuleHom f = plan.space.at(idx);
        if (need_ker) ker.offer(min_generators(hom_kernel(f)), idx);
        if (need_coker) coker.offer(min_generators(hom_cokernel(f)), idx);
      }
    }
  };

  const unsigned threads = std::max(1u, options.threads);
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }

  auto finish = [&](const Track& track) {
    WitnessedMultiplicity<ZModuleHom> out;
    if (!track.best) {
      out.certificate = Certificate::UpperBound;
      return out;
    }
    out.value = MultValue::exp(track.best->first);
    out.witness = plan.space.at(track.best->second);
    out.certificate = (plan.exhaustive || track.best->first == track.floor)
                          ? Certificate::Exact
                          : Certificate::UpperBound;
    return out;
  };
  return {finish(ker), finish(coker)};
}

RankDistances rank_distances(const FgZModule& m, const FgZModule& n,
                             const RankSearchOptions& options) {
  const RankMultiplicities mn = rank_multiplicities(m, n, options);
  const RankMultiplicities nm = rank_multiplicities(n, m, options);
  auto dist = [](const WitnessedMultiplicity<ZModuleHom>& x,
                 const WitnessedMultiplicity<ZModuleHom>& y) {
    return DistValue::from_product(mult_product(x.value, y.value),
                                   weaker(x.certificate, y.certificate));
  };
  return {dist(mn.m_rker, nm.m_rker), dist(mn.m_rcoker, nm.m_rcoker)};
}

MultValue ModuleInstance::multiplicity(const ZModuleHom& f) const {
  const FgZModule k = kind_ == RankMultKind::Kernel ? hom_kernel(f) : hom_cokernel(f);
  return MultValue::exp(min_generators(k));
}

SearchInfo ModuleInstance::search_info(const FgZModule& m, const FgZModule& n) const {
  const RankLowerBounds floors = rank_lower_bounds(m, n);
  const std::size_t floor = kind_ == RankMultKind::Kernel ? floors.kernel : floors.cokernel;
  if (m.is_free() && n.is_free()) return {true, MultValue::exp(floor)};
  RankSearchOptions options;
  options.bound = bound_;
  return {plan_search(m, n, options).exhaustive, MultValue::exp(floor)};
}

void ModuleInstance::search(const FgZModule& m, const FgZModule& n,
                            const MorphismSink<ZModuleHom>& sink) const {
  if (m.is_free() && n.is_free()) {
    const ZModuleHom f = free_closed_form(m, n);
    sink(f, multiplicity(f));
    return;
  }
  RankSearchOptions options;
  options.bound = bound_;
  const SearchPlan plan = plan_search(m, n, options);
  for (std::uint64_t idx = 0; idx < plan.count; ++idx) {
    const ZModuleHom f = plan.space.at(idx);
    if (!sink(f, multiplicity(f))) return;
  }
}

std::string ModuleInstance::describe(const ZModuleHom& f) const {
  return f.source().to_string() + " -> " + f.target().to_string() +
         " A=" + f.free_block().to_string() + " C=" + f.free_to_torsion_block().to_string() +
         " D=" + f.torsion_block().to_string();
}

}  // namespace multicat
