#pragma once

// Exact scalars: the rationals (GMP), prime fields GF(p) and the integers.

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace preproj {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Malformed user input: bad files, bad flags, values outside a contract.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

struct FieldSpec {
  enum class Kind { Rationals, PrimeField };

  Kind kind = Kind::Rationals;
  std::uint64_t p = 0;

  static FieldSpec rationals() { return {}; }

  // p must fit in 31 bits so products of residues fit in 64 bits.
  static FieldSpec prime(std::uint64_t p) {
    if (!is_prime(p)) throw InputError("field characteristic " + std::to_string(p) + " is not prime");
    if (p >= (std::uint64_t{1} << 31)) throw InputError("prime " + std::to_string(p) + " exceeds 2^31");
    return {Kind::PrimeField, p};
  }

  /// "q" or "Q" for the rationals, "f<p>" for GF(p).
  static FieldSpec parse(std::string_view text) {
    if (text == "q" || text == "Q") return rationals();
    if (text.size() >= 2 && (text[0] == 'f' || text[0] == 'F')) {
      std::uint64_t p = 0;
      for (char c : text.substr(1)) {
        if (c < '0' || c > '9') throw InputError("bad field '" + std::string(text) + "'");
        p = p * 10 + static_cast<std::uint64_t>(c - '0');
        if (p > (std::uint64_t{1} << 40)) throw InputError("bad field '" + std::string(text) + "'");
      }
      return prime(p);
    }
    throw InputError("bad field '" + std::string(text) + "' (expected q or f<p>)");
  }

  bool is_rational() const { return kind == Kind::Rationals; }

  std::string to_string() const { return is_rational() ? "q" : "f" + std::to_string(p); }

  bool operator==(const FieldSpec&) const = default;
};

class RationalField {
 public:
  using value_type = Rational;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(const value_type& x) const { return sgn(x) == 0; }
  value_type from_rational(const Rational& x) const { return x; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const { return 1 / a; }
  // acc -= f * x
  void sub_mul(value_type& acc, const value_type& f, const value_type& x) const {
    tmp_ = f * x;
    acc -= tmp_;
  }
  FieldSpec spec() const { return FieldSpec::rationals(); }

 private:
  mutable Rational tmp_;
};

class PrimeField {
 public:
  using value_type = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(FieldSpec::prime(p).p) {}

  std::uint64_t characteristic() const { return p_; }
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  bool is_zero(value_type x) const { return x == 0; }

  value_type from_integer(const BigInt& z) const {
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p_);
    return r.get_ui();
  }

  /// Throws InputError when the denominator vanishes mod p.
  value_type from_rational(const Rational& x) const {
    value_type den = from_integer(x.get_den());
    if (den == 0) throw InputError("denominator of " + x.get_str() + " vanishes mod " + std::to_string(p_));
    return mul(from_integer(x.get_num()), inv(den));
  }

  value_type add(value_type a, value_type b) const { return (a + b) % p_; }
  value_type sub(value_type a, value_type b) const { return (a + p_ - b) % p_; }
  value_type mul(value_type a, value_type b) const { return (a * b) % p_; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const {
    if (a == 0) throw std::domain_error("inverse of zero in GF(p)");
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p_), new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p_);
    return static_cast<value_type>(t);
  }
  void sub_mul(value_type& acc, value_type f, value_type x) const { acc = sub(acc, mul(f, x)); }
  FieldSpec spec() const { return FieldSpec{FieldSpec::Kind::PrimeField, p_}; }

 private:
  std::uint64_t p_;
};

template <class F>
concept ExactField = requires(const F& f, typename F::value_type a, const Rational& q) {
  { f.zero() } -> std::convertible_to<typename F::value_type>;
  { f.one() } -> std::convertible_to<typename F::value_type>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.from_rational(q) } -> std::convertible_to<typename F::value_type>;
  { f.mul(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.inv(a) } -> std::convertible_to<typename F::value_type>;
  { f.spec() } -> std::same_as<FieldSpec>;
  f.sub_mul(a, a, a);
};

/// Calls fn with a concrete field object for spec.
template <class Fn>
decltype(auto) visit_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.is_rational()) return fn(RationalField{});
  return fn(PrimeField{spec.p});
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(std::uint64_t x) { return std::to_string(x); }

}  // namespace preproj
