#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "nullcone/field.hpp"

namespace nullcone {

inline constexpr int kMaxVars = 32;

/// Exponent vector with cached total degree and support bitmask.
class Monomial {
 public:
  Monomial() = default;

  std::uint16_t operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
  void set(int i, unsigned exponent);
  std::uint32_t degree() const { return deg_; }
  /// Bit i set iff variable i occurs.
  std::uint32_t support() const { return mask_; }
  bool is_one() const { return deg_ == 0; }

  bool divides(const Monomial& other) const;
  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// a / b; requires b | a.
  friend Monomial quotient(const Monomial& a, const Monomial& b);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend bool coprime(const Monomial& a, const Monomial& b) { return (a.mask_ & b.mask_) == 0; }
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.mask_ == b.mask_ && a.deg_ == b.deg_ && a.e_ == b.e_;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

 private:
  std::array<std::uint16_t, kMaxVars> e_{};
  std::uint32_t deg_ = 0;
  std::uint32_t mask_ = 0;
};

enum class OrderKind { grevlex, lex, block };

/// Multiplicative well-order on monomials. The block order compares the
/// first `block` variables by grevlex and breaks ties by grevlex on the rest.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  static MonomialOrder grevlex() { return {}; }
  static MonomialOrder lex() { return MonomialOrder(OrderKind::lex, 0); }
  static MonomialOrder block(int front) { return MonomialOrder(OrderKind::block, front); }

  OrderKind kind() const { return kind_; }
  int front() const { return front_; }
  std::string name() const;

  /// Negative, zero or positive as a is smaller, equal or larger than b.
  int compare(const Monomial& a, const Monomial& b, int nvars) const;

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind_ == b.kind_ && a.front_ == b.front_;
  }
  friend bool operator!=(const MonomialOrder& a, const MonomialOrder& b) { return !(a == b); }

 private:
  MonomialOrder(OrderKind k, int front) : kind_(k), front_(front) {}
  OrderKind kind_ = OrderKind::grevlex;
  int front_ = 0;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Variables, coefficient field and monomial order of a polynomial ring.
class Ring {
 public:
  Ring(std::vector<std::string> names, Field field, MonomialOrder order);

  int nvars() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int i) const { return names_[static_cast<std::size_t>(i)]; }
  const Field& field() const { return field_; }
  const MonomialOrder& order() const { return order_; }
  /// -1 when absent.
  int index_of(std::string_view name) const;

  int compare(const Monomial& a, const Monomial& b) const { return order_.compare(a, b, nvars()); }

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.names_ == b.names_ && a.field_ == b.field_ && a.order_ == b.order_;
  }

 private:
  std::vector<std::string> names_;
  Field field_;
  MonomialOrder order_;
};

RingPtr make_ring(std::vector<std::string> names, Field field,
                  MonomialOrder order = MonomialOrder::grevlex());
/// Same variables and field under a different order.
RingPtr with_order(const RingPtr& ring, MonomialOrder order);
bool same_ring(const RingPtr& a, const RingPtr& b);

struct Term {
  Monomial mono;
  FieldScalar coef;
};

/// Sparse polynomial; terms are kept strictly descending in the ring order
/// with no zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, const FieldScalar& c);
  static Polynomial constant(RingPtr ring, long c);
  static Polynomial variable(RingPtr ring, int index);
  static Polynomial variable(RingPtr ring, std::string_view name);
  /// Sorts, merges equal monomials and drops zeros.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);
  /// Parses the text format produced by to_string(); also accepts parentheses.
  static Polynomial parse(RingPtr ring, std::string_view text);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Term& leading() const { return terms_.front(); }
  const Monomial& lm() const { return terms_.front().mono; }
  const FieldScalar& lc() const { return terms_.front().coef; }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  int total_degree() const;
  bool is_homogeneous() const;
  /// Bitmask of variables that occur.
  std::uint32_t support() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const FieldScalar& c, const Polynomial& p);
  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial mul_term(const Monomial& m, const FieldScalar& c) const;
  Polynomial pow(unsigned e) const;
  Polynomial monic() const;

  FieldScalar evaluate(const std::vector<FieldScalar>& point) const;
  Polynomial derivative(int var) const;
  /// Replaces variable i by images[i]; all images share the target ring.
  Polynomial substitute(const std::vector<Polynomial>& images) const;
  /// Moves into `target`, sending variable i to target variable var_map[i].
  Polynomial to_ring(const RingPtr& target, const std::vector<int>& var_map) const;
  /// Same variables, different order: re-sorts the terms.
  Polynomial reorder(const RingPtr& target) const;

  std::string to_string() const;

 private:
  void check_ring(const Polynomial& o) const;
  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Merges two descending term lists, a + c*m*b.
std::vector<Term> add_scaled(const Ring& ring, const std::vector<Term>& a, const FieldScalar& c,
                             const Monomial& m, const std::vector<Term>& b, std::size_t a_from = 0);

}  // namespace nullcone
