#pragma once

// Exact scalar fields: the rationals (arbitrary precision, via GMP) and prime
// fields F_p with p < 2^31.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "incalg/error.hpp"

namespace incalg {

// ---------------------------------------------------------------------------
// Rationals

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator. Wraps mpq_class so that arithmetic yields values rather than
/// GMP expression templates.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : q_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) {
    if (den == 0) throw Error(ErrorKind::DivisionByZero, "rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  const mpq_class& get() const { return q_; }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  friend Rational operator+(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ + b.q_)); }
  friend Rational operator-(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ - b.q_)); }
  friend Rational operator*(const Rational& a, const Rational& b) { return Rational(mpq_class(a.q_ * b.q_)); }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational division by zero");
    return Rational(mpq_class(a.q_ / b.q_));
  }
  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }

  std::string str() const { return q_.get_str(); }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

class RationalField {
 public:
  using value_type = Rational;

  value_type zero() const { return Rational(); }
  value_type one() const { return Rational(1); }
  value_type from_int(long n) const { return Rational(n); }
  bool is_zero(const value_type& a) const { return a.is_zero(); }
  value_type inv(const value_type& a) const {
    if (a.is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    return Rational(1) / a;
  }
  /// Number of elements; nullopt for an infinite field.
  std::optional<std::uint64_t> size() const { return std::nullopt; }
  std::uint64_t characteristic() const { return 0; }
  std::string name() const { return "Q"; }
  std::string format(const value_type& a) const { return a.str(); }

  /// Accepts "n" or "n/d" with arbitrary-size integers.
  value_type parse(std::string_view text) const {
    std::string s(text);
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(mpq_class(mpz_class(s)));
      mpz_class num(s.substr(0, slash));
      mpz_class den(s.substr(slash + 1));
      if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + s + "'");
      return Rational(mpq_class(num, den));
    } catch (const std::invalid_argument&) {
      throw Error(ErrorKind::ParseError, "not a rational: '" + s + "'");
    }
  }

  friend bool operator==(const RationalField&, const RationalField&) { return true; }
};

// ---------------------------------------------------------------------------
// Prime fields

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Residue modulo a prime. The modulus travels with the value; a
/// default-constructed residue is an unbound zero that adopts the modulus of
/// whatever it is combined with.
class Residue {
 public:
  Residue() = default;
  Residue(std::uint32_t value, std::uint32_t modulus) : v_(value % modulus), p_(modulus) {}

  std::uint32_t value() const { return v_; }
  std::uint32_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }

  friend Residue operator+(const Residue& a, const Residue& b) {
    auto p = common(a, b);
    if (p == 0) return {};
    return Residue(static_cast<std::uint32_t>((std::uint64_t{a.v_} + b.v_) % p), p);
  }
  friend Residue operator-(const Residue& a, const Residue& b) {
    auto p = common(a, b);
    if (p == 0) return {};
    return Residue(static_cast<std::uint32_t>((std::uint64_t{a.v_} + p - b.v_) % p), p);
  }
  friend Residue operator*(const Residue& a, const Residue& b) {
    auto p = common(a, b);
    if (p == 0) return {};
    return Residue(static_cast<std::uint32_t>((std::uint64_t{a.v_} * b.v_) % p), p);
  }
  friend Residue operator/(const Residue& a, const Residue& b) { return a * b.inverse(); }
  Residue operator-() const { return p_ == 0 ? Residue{} : Residue((p_ - v_) % p_, p_); }
  Residue& operator+=(const Residue& o) { return *this = *this + o; }
  Residue& operator-=(const Residue& o) { return *this = *this - o; }
  Residue& operator*=(const Residue& o) { return *this = *this * o; }

  Residue inverse() const {
    if (v_ == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero residue");
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = v_, e = p_ - 2;
    while (e) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return Residue(static_cast<std::uint32_t>(result), p_);
  }

  friend bool operator==(const Residue& a, const Residue& b) { return a.v_ == b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Residue& r) { return os << r.v_; }

 private:
  static std::uint32_t common(const Residue& a, const Residue& b) {
    if (a.p_ != 0 && b.p_ != 0 && a.p_ != b.p_)
      throw Error(ErrorKind::MismatchedContext, "residues with different moduli");
    return a.p_ != 0 ? a.p_ : b.p_;
  }

  std::uint32_t v_ = 0;
  std::uint32_t p_ = 0;
};

class PrimeField {
 public:
  using value_type = Residue;

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime(p) || p >= (1u << 31))
      throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not a supported prime");
  }

  std::uint32_t modulus() const { return p_; }
  value_type zero() const { return Residue(0, p_); }
  value_type one() const { return Residue(1, p_); }
  value_type from_int(long n) const {
    long r = n % static_cast<long>(p_);
    if (r < 0) r += p_;
    return Residue(static_cast<std::uint32_t>(r), p_);
  }
  bool is_zero(const value_type& a) const { return a.is_zero(); }
  value_type inv(const value_type& a) const { return bind(a).inverse(); }
  std::optional<std::uint64_t> size() const { return p_; }
  std::uint64_t characteristic() const { return p_; }
  std::string name() const { return "Fp:" + std::to_string(p_); }
  std::string format(const value_type& a) const { return std::to_string(a.value()); }

  /// Accepts an integer (any sign, reduced mod p) or "n/d".
  value_type parse(std::string_view text) const {
    RationalField q;
    Rational r = q.parse(text);
    mpz_class num = r.get().get_num() % p_;
    mpz_class den = r.get().get_den() % p_;
    if (num < 0) num += p_;
    if (den == 0) throw Error(ErrorKind::ParseError, "denominator vanishes mod p in '" + std::string(text) + "'");
    return Residue(static_cast<std::uint32_t>(num.get_ui()), p_) /
           Residue(static_cast<std::uint32_t>(den.get_ui()), p_);
  }

  /// Gives an unbound zero this field's modulus.
  value_type bind(const value_type& a) const { return Residue(a.value(), p_); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

// ---------------------------------------------------------------------------

template <class F>
concept ExactField = requires(const F& f, const typename F::value_type& a, long n, std::string_view s) {
  typename F::value_type;
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.from_int(n) } -> std::same_as<typename F::value_type>;
  { f.inv(a) } -> std::same_as<typename F::value_type>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.size() } -> std::same_as<std::optional<std::uint64_t>>;
  { f.name() } -> std::same_as<std::string>;
  { f.format(a) } -> std::same_as<std::string>;
  { f.parse(s) } -> std::same_as<typename F::value_type>;
  { a + a } -> std::same_as<typename F::value_type>;
  { a - a } -> std::same_as<typename F::value_type>;
  { a * a } -> std::same_as<typename F::value_type>;
  { -a } -> std::same_as<typename F::value_type>;
  { a == a } -> std::same_as<bool>;
  { f == f } -> std::same_as<bool>;
};

/// Run-time choice of field, as given on the command line.
struct FieldSpec {
  enum class Kind { Rationals, Prime };
  Kind kind = Kind::Rationals;
  std::uint32_t modulus = 0;

  /// Parses "Q" or "Fp:<p>".
  static FieldSpec parse(std::string_view text) {
    if (text == "Q") return {};
    if (text.substr(0, 3) == "Fp:") {
      std::string digits(text.substr(3));
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 10)
        throw Error(ErrorKind::ParseError, "bad field '" + std::string(text) + "'");
      auto p = std::stoull(digits);
      if (!is_prime(p) || p >= (1ull << 31))
        throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not a supported prime");
      return {Kind::Prime, static_cast<std::uint32_t>(p)};
    }
    throw Error(ErrorKind::ParseError, "field must be 'Q' or 'Fp:<p>', got '" + std::string(text) + "'");
  }

  std::string str() const { return kind == Kind::Rationals ? "Q" : "Fp:" + std::to_string(modulus); }
};

/// Invokes `fn` with the concrete field object selected by `spec`.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.kind == FieldSpec::Kind::Rationals) return std::forward<Fn>(fn)(RationalField{});
  return std::forward<Fn>(fn)(PrimeField{spec.modulus});
}

}  // namespace incalg
