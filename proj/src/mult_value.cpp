#include "multicat/mult_value.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "multicat/errors.hpp"

namespace multicat {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

MultValue MultValue::count(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("Count multiplicity must be >= 1");
  return MultValue(Count{k});
}

MultValue MultValue::exp(std::uint64_t n) { return MultValue(Exp{n}); }

MultValue MultValue::infinity() { return MultValue(Infinity{}); }

MultValue MultValue::one(Family family) {
  return family == Family::Count ? count(1) : exp(0);
}

bool MultValue::is_one() const noexcept {
  return std::visit(Overloaded{[](const Count& c) { return c.k == 1; },
                               [](const Exp& e) { return e.n == 0; },
                               [](const Infinity&) { return false; }},
                    v_);
}

std::uint64_t MultValue::count_value() const {
  if (const auto* c = std::get_if<Count>(&v_)) return c->k;
  throw std::logic_error("multiplicity is not a finite count: " + to_string(*this));
}

std::uint64_t MultValue::exponent() const {
  if (const auto* e = std::get_if<Exp>(&v_)) return e->n;
  throw std::logic_error("multiplicity is not a finite power of e: " + to_string(*this));
}

double MultValue::log_value() const noexcept {
  return std::visit(
      Overloaded{[](const Count& c) { return std::log(static_cast<double>(c.k)); },
                 [](const Exp& e) { return static_cast<double>(e.n); },
                 [](const Infinity&) { return std::numeric_limits<double>::infinity(); }},
      v_);
}

std::strong_ordering MultValue::operator<=>(const MultValue& other) const {
  const bool a_inf = is_infinite();
  const bool b_inf = other.is_infinite();
  if (a_inf || b_inf) {
    if (a_inf && b_inf) return std::strong_ordering::equal;
    return a_inf ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  if (is_count() && other.is_count()) return count_value() <=> other.count_value();
  if (is_exp() && other.is_exp()) return exponent() <=> other.exponent();
  throw FamilyMismatchError("cannot compare " + to_string(*this) + " with " + to_string(other));
}

MultValue mult_product(const MultValue& a, const MultValue& b) {
  if (a.is_infinite() || b.is_infinite()) return MultValue::infinity();
  if (a.is_count() && b.is_count()) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a.count_value(), b.count_value(), &out))
      throw std::overflow_error("multiplicity product overflows 64 bits");
    return MultValue::count(out);
  }
  if (a.is_exp() && b.is_exp()) {
    std::uint64_t out = 0;
    if (__builtin_add_overflow(a.exponent(), b.exponent(), &out))
      throw std::overflow_error("multiplicity exponent overflows 64 bits");
    return MultValue::exp(out);
  }
  throw FamilyMismatchError("cannot multiply " + to_string(a) + " by " + to_string(b));
}

std::string to_string(const MultValue& v) {
  return std::visit(
      Overloaded{[](const MultValue::Count& c) { return std::to_string(c.k); },
                 [](const MultValue::Exp& e) { return "e^" + std::to_string(e.n); },
                 [](const MultValue::Infinity&) { return std::string("inf"); }},
      v.raw());
}

std::string to_string(Certificate c) {
  return c == Certificate::Exact ? "exact" : "upper_bound";
}

DistValue DistValue::from_product(const MultValue& product, Certificate certificate) {
  return DistValue{product, product.log_value(), certificate};
}

}  // namespace multicat
