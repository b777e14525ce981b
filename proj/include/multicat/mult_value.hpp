#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <variant>

namespace multicat {

/// Which discrete value set a multiplicity lives in: positive integers
/// (cardinalities) or integer powers of e (ranks).
enum class Family { Count, Exp };

/// An exact multiplicity value: Count(k) with k >= 1, Exp(n) = e^n with
/// n >= 0, or Infinity. Immutable.
class MultValue {
 public:
  struct Count {
    std::uint64_t k;
    bool operator==(const Count&) const = default;
  };
  struct Exp {
    std::uint64_t n;
    bool operator==(const Exp&) const = default;
  };
  struct Infinity {
    bool operator==(const Infinity&) const = default;
  };

  /// Throws std::invalid_argument for k == 0.
  static MultValue count(std::uint64_t k);
  static MultValue exp(std::uint64_t n);
  static MultValue infinity();
  /// Count(1) or Exp(0).
  static MultValue one(Family family);

  bool is_infinite() const noexcept { return std::holds_alternative<Infinity>(v_); }
  bool is_count() const noexcept { return std::holds_alternative<Count>(v_); }
  bool is_exp() const noexcept { return std::holds_alternative<Exp>(v_); }
  /// True for Count(1) and Exp(0).
  bool is_one() const noexcept;

  /// Throws std::logic_error when the value is not of the requested kind.
  std::uint64_t count_value() const;
  std::uint64_t exponent() const;

  /// Natural logarithm of the numeric value; +inf for Infinity.
  double log_value() const noexcept;

  const std::variant<Count, Exp, Infinity>& raw() const noexcept { return v_; }

  bool operator==(const MultValue&) const = default;

  /// Total order within a family, Infinity above everything. Comparing a
  /// finite Count with a finite Exp throws FamilyMismatchError.
  std::strong_ordering operator<=>(const MultValue& other) const;

 private:
  explicit MultValue(std::variant<Count, Exp, Infinity> v) : v_(v) {}

  std::variant<Count, Exp, Infinity> v_;
};

/// Count(j)*Count(k) = Count(jk), Exp(m)*Exp(n) = Exp(m+n), anything times
/// Infinity is Infinity. Throws FamilyMismatchError on Count x Exp and
/// std::overflow_error if the exact result does not fit in 64 bits.
MultValue mult_product(const MultValue& a, const MultValue& b);

/// "3", "e^2", "inf".
std::string to_string(const MultValue& v);

enum class Certificate { Exact, UpperBound };

/// Exact is stronger than UpperBound; combining keeps the weaker one.
constexpr Certificate weaker(Certificate a, Certificate b) noexcept {
  return (a == Certificate::Exact && b == Certificate::Exact) ? Certificate::Exact
                                                              : Certificate::UpperBound;
}

std::string to_string(Certificate c);

/// The multiplicity distance, kept as the exact product m(X:Y)*m(Y:X).
/// `display_ln` is derived from `product` and only meant for presentation.
struct DistValue {
  MultValue product;
  double display_ln;
  Certificate certificate = Certificate::Exact;

  static DistValue from_product(const MultValue& product,
                                Certificate certificate = Certificate::Exact);

  bool is_zero() const noexcept { return product.is_one(); }
};

}  // namespace multicat
