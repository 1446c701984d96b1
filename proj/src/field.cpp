#include "nullcone/field.hpp"

#include <array>
#include <charconv>

namespace nullcone {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  // extended Euclid on signed 128-bit to avoid overflow for 64-bit moduli
  __int128 t = 0, new_t = 1;
  __int128 r = p, new_r = a % p;
  while (new_r != 0) {
    __int128 q = r / new_r;
    __int128 tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (r != 1) throw std::domain_error("inverse of zero residue");
  if (t < 0) t += p;
  return static_cast<std::uint64_t>(t);
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto b : kBases) {
    if (n % b == 0) return n == b;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto a : kBases) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0 || p == 2) return a;
  if (pow_mod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  if (p % 4 == 3) return pow_mod(a, (p + 1) / 4, p);

  // p - 1 = q * 2^s with q odd
  std::uint64_t q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;

  int m = s;
  std::uint64_t c = pow_mod(z, q, p);
  std::uint64_t t = pow_mod(a, q, p);
  std::uint64_t r = pow_mod(a, (q + 1) / 2, p);
  while (t != 1) {
    int i = 0;
    std::uint64_t tt = t;
    while (tt != 1) {
      tt = mul_mod(tt, tt, p);
      ++i;
    }
    std::uint64_t b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mul_mod(b, b, p);
    m = i;
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    r = mul_mod(r, b, p);
  }
  return r;
}

Field Field::prime(std::uint64_t p) {
  if (!is_prime_u64(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
  Field f;
  f.kind_ = FieldKind::prime;
  f.p_ = p;
  return f;
}

Field Field::parse(std::string_view spec) {
  if (spec == "rational" || spec == "Q" || spec == "QQ") return rational();
  if (spec.size() > 2 && spec.substr(0, 2) == "p=") {
    std::uint64_t p = 0;
    auto body = spec.substr(2);
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), p);
    if (ec != std::errc() || ptr != body.data() + body.size())
      throw std::invalid_argument("malformed field spec '" + std::string(spec) + "'");
    return prime(p);
  }
  throw std::invalid_argument("unknown field spec '" + std::string(spec) + "' (expected 'rational' or 'p=<prime>')");
}

std::string Field::spec() const {
  return is_rational() ? std::string("rational") : "p=" + std::to_string(p_);
}

namespace {

std::uint64_t reduce_signed(long value, std::uint64_t p) {
  if (value >= 0) return static_cast<std::uint64_t>(value) % p;
  auto mag = static_cast<std::uint64_t>(-(value + 1)) + 1;
  std::uint64_t r = mag % p;
  return r == 0 ? 0 : p - r;
}

std::uint64_t reduce_mpz(const mpz_class& z, std::uint64_t p) {
  mpz_class pz;
  mpz_import(pz.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), pz.get_mpz_t());
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, r.get_mpz_t());
  return out;
}

}  // namespace

FieldScalar::FieldScalar(const Field& f, long value) {
  if (f.is_rational()) {
    v_ = mpq_class(value);
  } else {
    v_ = Residue{reduce_signed(value, f.characteristic()), f.characteristic()};
  }
}

FieldScalar::FieldScalar(const Field& f, const mpq_class& value) {
  if (f.is_rational()) {
    mpq_class q = value;
    q.canonicalize();
    v_ = std::move(q);
    return;
  }
  const auto p = f.characteristic();
  std::uint64_t den = reduce_mpz(value.get_den(), p);
  if (den == 0) throw std::domain_error("denominator vanishes modulo " + std::to_string(p));
  std::uint64_t num = reduce_mpz(value.get_num(), p);
  v_ = Residue{mul_mod(num, inv_mod(den, p), p), p};
}

Field FieldScalar::field() const {
  if (auto* r = std::get_if<Residue>(&v_)) return Field::prime(r->p);
  return Field::rational();
}

bool FieldScalar::is_zero() const {
  if (auto* r = std::get_if<Residue>(&v_)) return r->value == 0;
  return sgn(std::get<mpq_class>(v_)) == 0;
}

bool FieldScalar::is_one() const {
  if (auto* r = std::get_if<Residue>(&v_)) return r->value == 1 % r->p;
  return std::get<mpq_class>(v_) == 1;
}

FieldScalar FieldScalar::operator-() const {
  FieldScalar out = *this;
  if (auto* r = std::get_if<Residue>(&out.v_)) {
    if (r->value != 0) r->value = r->p - r->value;
  } else {
    auto& q = std::get<mpq_class>(out.v_);
    q = -q;
  }
  return out;
}

FieldScalar& FieldScalar::operator+=(const FieldScalar& o) {
  if (auto* r = std::get_if<Residue>(&v_)) {
    const auto& s = std::get<Residue>(o.v_);
    std::uint64_t sum = r->value + s.value;
    if (sum >= r->p || sum < r->value) sum -= r->p;
    r->value = sum;
  } else {
    std::get<mpq_class>(v_) += std::get<mpq_class>(o.v_);
  }
  return *this;
}

FieldScalar& FieldScalar::operator-=(const FieldScalar& o) {
  if (auto* r = std::get_if<Residue>(&v_)) {
    const auto& s = std::get<Residue>(o.v_);
    r->value = r->value >= s.value ? r->value - s.value : r->value + (r->p - s.value);
  } else {
    std::get<mpq_class>(v_) -= std::get<mpq_class>(o.v_);
  }
  return *this;
}

FieldScalar& FieldScalar::operator*=(const FieldScalar& o) {
  if (auto* r = std::get_if<Residue>(&v_)) {
    r->value = mul_mod(r->value, std::get<Residue>(o.v_).value, r->p);
  } else {
    std::get<mpq_class>(v_) *= std::get<mpq_class>(o.v_);
  }
  return *this;
}

FieldScalar& FieldScalar::operator/=(const FieldScalar& o) { return *this *= o.inverse(); }

bool operator==(const FieldScalar& a, const FieldScalar& b) {
  if (a.v_.index() != b.v_.index()) return false;
  if (auto* r = std::get_if<FieldScalar::Residue>(&a.v_)) {
    const auto& s = std::get<FieldScalar::Residue>(b.v_);
    return r->p == s.p && r->value == s.value;
  }
  return std::get<mpq_class>(a.v_) == std::get<mpq_class>(b.v_);
}

FieldScalar FieldScalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in field");
  FieldScalar out = *this;
  if (auto* r = std::get_if<Residue>(&out.v_)) {
    r->value = inv_mod(r->value, r->p);
  } else {
    auto& q = std::get<mpq_class>(out.v_);
    q = 1 / q;
  }
  return out;
}

std::optional<FieldScalar> FieldScalar::sqrt() const {
  if (auto* r = std::get_if<Residue>(&v_)) {
    auto s = sqrt_mod(r->value, r->p);
    if (!s) return std::nullopt;
    FieldScalar out = *this;
    std::get<Residue>(out.v_).value = *s;
    return out;
  }
  const auto& q = std::get<mpq_class>(v_);
  if (sgn(q) < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return std::nullopt;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  FieldScalar out;
  out.v_ = mpq_class(n, d);
  return out;
}

std::string FieldScalar::to_string() const {
  if (auto* r = std::get_if<Residue>(&v_)) {
    if (r->value > r->p / 2) return "-" + std::to_string(r->p - r->value);
    return std::to_string(r->value);
  }
  return std::get<mpq_class>(v_).get_str();
}

std::uint64_t FieldScalar::residue() const {
  auto* r = std::get_if<Residue>(&v_);
  if (!r) throw std::logic_error("residue() on a rational scalar");
  return r->value;
}

const mpq_class& FieldScalar::rational() const {
  auto* q = std::get_if<mpq_class>(&v_);
  if (!q) throw std::logic_error("rational() on a prime-field scalar");
  return *q;
}

}  // namespace nullcone
