#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace nullcone {

enum class FieldKind { rational, prime };

/// Coefficient field descriptor: the rationals or a prime field F_p with p < 2^64.
class Field {
 public:
  Field() = default;

  static Field rational() { return Field{}; }
  /// Throws std::invalid_argument unless p is prime.
  static Field prime(std::uint64_t p);
  /// Accepts "rational", "Q" or "p=<prime>".
  static Field parse(std::string_view spec);

  FieldKind kind() const { return kind_; }
  bool is_rational() const { return kind_ == FieldKind::rational; }
  bool is_prime() const { return kind_ == FieldKind::prime; }
  /// 0 for the rationals.
  std::uint64_t characteristic() const { return p_; }
  std::string spec() const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

 private:
  FieldKind kind_ = FieldKind::rational;
  std::uint64_t p_ = 0;
};

bool is_prime_u64(std::uint64_t n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);
/// Tonelli-Shanks; nullopt when a is a quadratic nonresidue mod p.
std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p);

/// An element of a Field. Rationals are kept in lowest terms with positive
/// denominator; residues are kept in [0, p).
class FieldScalar {
 public:
  FieldScalar() : v_(mpq_class(0)) {}
  FieldScalar(const Field& f, long value);
  FieldScalar(const Field& f, const mpq_class& value);

  static FieldScalar zero(const Field& f) { return FieldScalar(f, 0L); }
  static FieldScalar one(const Field& f) { return FieldScalar(f, 1L); }

  Field field() const;
  bool is_zero() const;
  bool is_one() const;

  FieldScalar operator-() const;
  FieldScalar& operator+=(const FieldScalar& o);
  FieldScalar& operator-=(const FieldScalar& o);
  FieldScalar& operator*=(const FieldScalar& o);
  FieldScalar& operator/=(const FieldScalar& o);
  friend FieldScalar operator+(FieldScalar a, const FieldScalar& b) { return a += b; }
  friend FieldScalar operator-(FieldScalar a, const FieldScalar& b) { return a -= b; }
  friend FieldScalar operator*(FieldScalar a, const FieldScalar& b) { return a *= b; }
  friend FieldScalar operator/(FieldScalar a, const FieldScalar& b) { return a /= b; }
  friend bool operator==(const FieldScalar& a, const FieldScalar& b);
  friend bool operator!=(const FieldScalar& a, const FieldScalar& b) { return !(a == b); }

  /// Throws std::domain_error on zero.
  FieldScalar inverse() const;
  /// Square root inside the field, if one exists (rational squares over Q).
  std::optional<FieldScalar> sqrt() const;

  /// "a" or "a/b"; residues print in the symmetric range (-p/2, p/2].
  std::string to_string() const;

  /// Residue in [0, p); only valid for prime fields.
  std::uint64_t residue() const;
  /// Only valid for the rationals.
  const mpq_class& rational() const;

 private:
  struct Residue {
    std::uint64_t value;
    std::uint64_t p;
  };
  std::variant<Residue, mpq_class> v_;
};

}  // namespace nullcone
