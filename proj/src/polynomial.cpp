#include "nullcone/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace nullcone {

void Monomial::set(int i, unsigned exponent) {
  if (i < 0 || i >= kMaxVars) throw std::out_of_range("monomial variable index");
  if (exponent > 0xFFFF) throw std::overflow_error("monomial exponent overflow");
  auto& slot = e_[static_cast<std::size_t>(i)];
  deg_ = deg_ - slot + exponent;
  slot = static_cast<std::uint16_t>(exponent);
  if (exponent) {
    mask_ |= (1u << i);
  } else {
    mask_ &= ~(1u << i);
  }
}

bool Monomial::divides(const Monomial& other) const {
  if ((mask_ & ~other.mask_) != 0 || deg_ > other.deg_) return false;
  for (std::uint32_t m = mask_; m; m &= m - 1) {
    int i = __builtin_ctz(m);
    if (e_[i] > other.e_[i]) return false;
  }
  return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::uint32_t m = b.mask_; m; m &= m - 1) {
    int i = __builtin_ctz(m);
    unsigned e = static_cast<unsigned>(a.e_[i]) + b.e_[i];
    if (e > 0xFFFF) throw std::overflow_error("monomial exponent overflow");
    r.e_[i] = static_cast<std::uint16_t>(e);
  }
  r.deg_ = a.deg_ + b.deg_;
  r.mask_ = a.mask_ | b.mask_;
  return r;
}

Monomial quotient(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::uint32_t m = b.mask_; m; m &= m - 1) {
    int i = __builtin_ctz(m);
    r.e_[i] = static_cast<std::uint16_t>(a.e_[i] - b.e_[i]);
    if (r.e_[i] == 0) r.mask_ &= ~(1u << i);
  }
  r.deg_ = a.deg_ - b.deg_;
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r = a;
  for (std::uint32_t m = b.mask_; m; m &= m - 1) {
    int i = __builtin_ctz(m);
    if (b.e_[i] > r.e_[i]) {
      r.deg_ += b.e_[i] - r.e_[i];
      r.e_[i] = b.e_[i];
    }
  }
  r.mask_ = a.mask_ | b.mask_;
  return r;
}

std::string MonomialOrder::name() const {
  switch (kind_) {
    case OrderKind::grevlex: return "grevlex";
    case OrderKind::lex: return "lex";
    case OrderKind::block: return "block(" + std::to_string(front_) + ")";
  }
  return "?";
}

namespace {

int grevlex_range(const Monomial& a, const Monomial& b, int lo, int hi) {
  unsigned da = 0, db = 0;
  for (int i = lo; i < hi; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (int i = hi - 1; i >= lo; --i) {
    if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace

int MonomialOrder::compare(const Monomial& a, const Monomial& b, int nvars) const {
  switch (kind_) {
    case OrderKind::grevlex:
      if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
      for (int i = nvars - 1; i >= 0; --i) {
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
      }
      return 0;
    case OrderKind::lex:
      for (int i = 0; i < nvars; ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      }
      return 0;
    case OrderKind::block: {
      int c = grevlex_range(a, b, 0, front_);
      if (c != 0) return c;
      return grevlex_range(a, b, front_, nvars);
    }
  }
  return 0;
}

Ring::Ring(std::vector<std::string> names, Field field, MonomialOrder order)
    : names_(std::move(names)), field_(field), order_(order) {
  if (names_.size() > static_cast<std::size_t>(kMaxVars))
    throw std::invalid_argument("too many variables (limit " + std::to_string(kMaxVars) + ")");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (names_[i] == names_[j]) throw std::invalid_argument("duplicate variable name " + names_[i]);
    }
  }
  if (order_.kind() == OrderKind::block && (order_.front() < 0 || order_.front() > nvars()))
    throw std::invalid_argument("block order front size out of range");
}

int Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

RingPtr make_ring(std::vector<std::string> names, Field field, MonomialOrder order) {
  return std::make_shared<const Ring>(std::move(names), field, order);
}

RingPtr with_order(const RingPtr& ring, MonomialOrder order) {
  if (ring->order() == order) return ring;
  return make_ring(ring->names(), ring->field(), order);
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || (a && b && *a == *b); }

Polynomial Polynomial::constant(RingPtr ring, const FieldScalar& c) {
  Polynomial p(std::move(ring));
  if (!c.is_zero()) p.terms_.push_back({Monomial{}, c});
  return p;
}

Polynomial Polynomial::constant(RingPtr ring, long c) {
  FieldScalar s(ring->field(), c);
  return constant(std::move(ring), s);
}

Polynomial Polynomial::variable(RingPtr ring, int index) {
  if (index < 0 || index >= ring->nvars()) throw std::out_of_range("variable index");
  Monomial m;
  m.set(index, 1);
  Polynomial p(ring);
  p.terms_.push_back({m, FieldScalar::one(ring->field())});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::string_view name) {
  int i = ring->index_of(name);
  if (i < 0) throw std::invalid_argument("unknown variable " + std::string(name));
  return variable(std::move(ring), i);
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  const Ring& r = *ring;
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return r.compare(a.mono, b.mono) > 0; });
  Polynomial p(std::move(ring));
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coef += t.coef;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coef.is_zero()) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coef.is_zero()) p.terms_.pop_back();
  return p;
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono.degree()));
  return d;
}

bool Polynomial::is_homogeneous() const {
  for (const auto& t : terms_) {
    if (t.mono.degree() != terms_.front().mono.degree()) return false;
  }
  return true;
}

std::uint32_t Polynomial::support() const {
  std::uint32_t s = 0;
  for (const auto& t : terms_) s |= t.mono.support();
  return s;
}

void Polynomial::check_ring(const Polynomial& o) const {
  if (!same_ring(ring_, o.ring_)) throw std::invalid_argument("polynomial ring mismatch");
}

std::vector<Term> add_scaled(const Ring& ring, const std::vector<Term>& a, const FieldScalar& c,
                             const Monomial& m, const std::vector<Term>& b, std::size_t a_from) {
  std::vector<Term> out;
  out.reserve(a.size() - a_from + b.size());
  std::size_t i = a_from;
  const bool unit_mono = m.is_one();
  const bool unit_coef = c.is_one();
  for (const auto& bt : b) {
    Monomial bm = unit_mono ? bt.mono : m * bt.mono;
    int cmp = -1;
    while (i < a.size() && (cmp = ring.compare(a[i].mono, bm)) > 0) out.push_back(a[i++]);
    if (i < a.size() && cmp == 0) {
      FieldScalar s = a[i].coef;
      if (unit_coef) {
        s += bt.coef;
      } else {
        s += c * bt.coef;
      }
      if (!s.is_zero()) out.push_back({bm, std::move(s)});
      ++i;
    } else {
      out.push_back({bm, unit_coef ? bt.coef : c * bt.coef});
    }
  }
  out.insert(out.end(), a.begin() + static_cast<std::ptrdiff_t>(i), a.end());
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coef = -t.coef;
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (!ring_) return *this = o;
  if (o.is_zero()) return *this;
  check_ring(o);
  terms_ = add_scaled(*ring_, terms_, FieldScalar::one(ring_->field()), Monomial{}, o.terms_);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (!ring_) return *this = -o;
  if (o.is_zero()) return *this;
  check_ring(o);
  terms_ = add_scaled(*ring_, terms_, -FieldScalar::one(ring_->field()), Monomial{}, o.terms_);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_ring(b);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
  // accumulate the shorter factor's rows into the result
  const Polynomial& small = a.size() <= b.size() ? a : b;
  const Polynomial& big = a.size() <= b.size() ? b : a;
  std::vector<Term> acc;
  for (const auto& t : small.terms_) acc = add_scaled(*a.ring_, acc, t.coef, t.mono, big.terms_);
  Polynomial p(a.ring_);
  p.terms_ = std::move(acc);
  return p;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial operator*(const FieldScalar& c, const Polynomial& p) {
  if (c.is_zero()) return Polynomial(p.ring_);
  Polynomial out = p;
  for (auto& t : out.terms_) t.coef *= c;
  return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coef != b.terms_[i].coef) return false;
  }
  return true;
}

Polynomial Polynomial::mul_term(const Monomial& m, const FieldScalar& c) const {
  Polynomial out(ring_);
  if (c.is_zero()) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& t : terms_) out.terms_.push_back({m * t.mono, c * t.coef});
  return out;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial r = constant(ring_, 1L);
  Polynomial b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

Polynomial Polynomial::monic() const {
  if (is_zero() || lc().is_one()) return *this;
  return lc().inverse() * *this;
}

FieldScalar Polynomial::evaluate(const std::vector<FieldScalar>& point) const {
  if (point.size() != static_cast<std::size_t>(ring_->nvars()))
    throw std::invalid_argument("evaluation point has wrong arity");
  FieldScalar sum = FieldScalar::zero(ring_->field());
  for (const auto& t : terms_) {
    FieldScalar v = t.coef;
    for (std::uint32_t m = t.mono.support(); m; m &= m - 1) {
      int i = __builtin_ctz(m);
      for (unsigned k = 0; k < t.mono[i]; ++k) v *= point[static_cast<std::size_t>(i)];
    }
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::derivative(int var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    unsigned e = t.mono[var];
    if (e == 0) continue;
    FieldScalar c = t.coef * FieldScalar(ring_->field(), static_cast<long>(e));
    if (c.is_zero()) continue;
    Monomial m = t.mono;
    m.set(var, e - 1);
    out.push_back({m, c});
  }
  return from_terms(ring_, std::move(out));
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
  if (images.size() != static_cast<std::size_t>(ring_->nvars()))
    throw std::invalid_argument("substitute needs one image per variable");
  if (images.empty()) throw std::invalid_argument("substitute into an empty ring");
  RingPtr target = images.front().ring();
  Polynomial sum(target);
  for (const auto& t : terms_) {
    Polynomial term = constant(target, t.coef);
    for (std::uint32_t m = t.mono.support(); m; m &= m - 1) {
      int i = __builtin_ctz(m);
      term *= images[static_cast<std::size_t>(i)].pow(t.mono[i]);
    }
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::to_ring(const RingPtr& target, const std::vector<int>& var_map) const {
  if (var_map.size() != static_cast<std::size_t>(ring_->nvars()))
    throw std::invalid_argument("variable map has wrong arity");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (std::uint32_t s = t.mono.support(); s; s &= s - 1) {
      int i = __builtin_ctz(s);
      int j = var_map[static_cast<std::size_t>(i)];
      if (j < 0) throw std::invalid_argument("variable " + ring_->name(i) + " has no image");
      m.set(j, m[j] + t.mono[i]);
    }
    FieldScalar c = t.coef;
    if (target->field() != ring_->field()) {
      if (!ring_->field().is_rational()) throw std::invalid_argument("cannot move out of a prime field");
      c = FieldScalar(target->field(), t.coef.rational());
    }
    out.push_back({m, c});
  }
  return from_terms(target, std::move(out));
}

Polynomial Polynomial::reorder(const RingPtr& target) const {
  if (target->names() != ring_->names() || target->field() != ring_->field())
    throw std::invalid_argument("reorder needs identical variables and field");
  Polynomial p(target);
  p.terms_ = terms_;
  const Ring& r = *target;
  std::sort(p.terms_.begin(), p.terms_.end(),
            [&](const Term& a, const Term& b) { return r.compare(a.mono, b.mono) > 0; });
  return p;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    std::string c = t.coef.to_string();
    bool neg = !c.empty() && c[0] == '-';
    if (neg) c.erase(0, 1);
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (int i = 0; i < ring_->nvars(); ++i) {
      unsigned e = t.mono[i];
      if (!e) continue;
      if (!mono.empty()) mono += "*";
      mono += ring_->name(i);
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += c;
    } else if (c == "1") {
      out += mono;
    } else {
      out += c + "*" + mono;
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(RingPtr ring, std::string_view text) : ring_(std::move(ring)), s_(text) {}

  Polynomial run() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("polynomial parse error at offset " + std::to_string(pos_) + ": " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    skip();
    Polynomial p(ring_);
    bool neg = eat('-');
    if (!neg) eat('+');
    Polynomial t = term();
    p = neg ? -t : t;
    while (true) {
      if (eat('+')) {
        p += term();
      } else if (eat('-')) {
        p -= term();
      } else {
        break;
      }
    }
    return p;
  }

  Polynomial term() {
    Polynomial p = factor();
    while (true) {
      if (eat('*')) {
        p *= factor();
      } else if (eat('/')) {
        Polynomial d = factor();
        if (!d.is_constant() || d.is_zero()) fail("division by non-constant or zero");
        p = d.lc().inverse() * p;
      } else {
        break;
      }
    }
    return p;
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return base;
  }

  Polynomial atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpq_class q(mpz_class(std::string(s_.substr(start, pos_ - start))));
      return Polynomial::constant(ring_, FieldScalar(ring_->field(), q));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      auto name = s_.substr(start, pos_ - start);
      int idx = ring_->index_of(name);
      if (idx < 0) fail("unknown variable '" + std::string(name) + "'");
      return Polynomial::variable(ring_, idx);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  RingPtr ring_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(RingPtr ring, std::string_view text) { return Parser(std::move(ring), text).run(); }

}  // namespace nullcone
