#include "nullcone/pointcount.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <thread>

#include "nullcone/field.hpp"

namespace nullcone {

namespace {

const std::map<Space, std::string>& space_names() {
  static const std::map<Space, std::string> names = {
      {Space::X_alt, "X_alt"}, {Space::G_alt, "G_alt"}, {Space::F_alt, "F_alt"}, {Space::X_gen, "X_gen"},
      {Space::G_gen, "G_gen"}, {Space::F_gen, "F_gen"}, {Space::X_sym, "X_sym"}, {Space::G_sym, "G_sym"},
      {Space::F_sym, "F_sym"}, {Space::Sp, "Sp"},       {Space::GL, "GL"},       {Space::P, "P"},
      {Space::O, "O"},         {Space::Sym, "Sym"},     {Space::Alt, "Alt"},     {Space::Gr, "Gr"},
  };
  return names;
}

bool is_gen(Space s) { return s == Space::X_gen || s == Space::G_gen || s == Space::F_gen; }

// Small dense matrices over F_p with entries in [0, p).
class Arith {
 public:
  explicit Arith(std::int64_t p) : p_(p) {}

  std::int64_t red(std::int64_t x) const {
    x %= p_;
    return x < 0 ? x + p_ : x;
  }

  // out (r x c) = a (r x inner) * b (inner x c)
  void mul(const std::int64_t* a, int r, int inner, const std::int64_t* b, int c, std::int64_t* out) const {
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < c; ++j) {
        std::int64_t s = 0;
        for (int l = 0; l < inner; ++l) s += a[i * inner + l] * b[l * c + j];
        out[i * c + j] = s % p_;
      }
    }
  }

  // out (c x c) = m^t Omega m for m of shape r x c, r even
  void gram_alt(const std::int64_t* m, int r, int c, std::int64_t* out) const {
    for (int a = 0; a < c; ++a) {
      for (int b = 0; b < c; ++b) {
        std::int64_t s = 0;
        for (int i = 0; i + 1 < r; i += 2) s += m[i * c + a] * m[(i + 1) * c + b] - m[(i + 1) * c + a] * m[i * c + b];
        out[a * c + b] = red(s);
      }
    }
  }

  // out (c x c) = m^t m
  void gram_sym(const std::int64_t* m, int r, int c, std::int64_t* out) const {
    for (int a = 0; a < c; ++a) {
      for (int b = 0; b < c; ++b) {
        std::int64_t s = 0;
        for (int i = 0; i < r; ++i) s += m[i * c + a] * m[i * c + b];
        out[a * c + b] = s % p_;
      }
    }
  }

  std::int64_t inverse(std::int64_t a) const {
    std::int64_t result = 1, base = a, e = p_ - 2;
    while (e > 0) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return result;
  }

  // Rank of the leading r x c block of a matrix with row stride `stride`; copies into scratch.
  int rank(const std::int64_t* m, int r, int c, int stride, std::vector<std::int64_t>& scratch) const {
    scratch.resize(static_cast<std::size_t>(r * c));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) scratch[static_cast<std::size_t>(i * c + j)] = m[i * stride + j];
    std::int64_t* a = scratch.data();
    int row = 0;
    for (int col = 0; col < c && row < r; ++col) {
      int piv = -1;
      for (int i = row; i < r; ++i) {
        if (a[i * c + col] != 0) {
          piv = i;
          break;
        }
      }
      if (piv < 0) continue;
      if (piv != row)
        for (int j = 0; j < c; ++j) std::swap(a[piv * c + j], a[row * c + j]);
      std::int64_t inv = inverse(a[row * c + col]);
      for (int i = row + 1; i < r; ++i) {
        if (a[i * c + col] == 0) continue;
        std::int64_t f = a[i * c + col] * inv % p_;
        for (int j = col; j < c; ++j) a[i * c + j] = red(a[i * c + j] - f * a[row * c + j]);
      }
      ++row;
    }
    return row;
  }

 private:
  std::int64_t p_;
};

// Tests whether an entry vector lies in the stratum.
class Tester {
 public:
  explicit Tester(const StratumSpec& s) : s_(s), ar_(static_cast<std::int64_t>(s.q)) {}

  bool operator()(const std::vector<std::int64_t>& e) {
    const int t = s_.t, n = s_.n, m = s_.m, k = s_.k;
    switch (s_.space) {
      case Space::Sp:
        gram_.resize(static_cast<std::size_t>(4 * k * k));
        ar_.gram_alt(e.data(), 2 * t, 2 * k, gram_.data());
        return is_block_form(gram_.data(), 2 * k, 2 * k, 2 * k, true);
      case Space::GL:
        return ar_.rank(e.data(), m, k, k, scratch_) == k;
      case Space::P:
        prod_.resize(static_cast<std::size_t>(k * k));
        ar_.mul(e.data(), k, t, e.data() + k * t, k, prod_.data());
        return is_block_form(prod_.data(), k, k, k, false);
      case Space::O:
        gram_.resize(static_cast<std::size_t>(k * k));
        ar_.gram_sym(e.data(), t, k, gram_.data());
        return is_block_form(gram_.data(), k, k, k, false);
      case Space::Sym: {
        full_.assign(static_cast<std::size_t>(k * k), 0);
        std::size_t idx = 0;
        for (int i = 0; i < k; ++i)
          for (int j = i; j < k; ++j) full_[static_cast<std::size_t>(i * k + j)] = full_[static_cast<std::size_t>(j * k + i)] = e[idx++];
        return ar_.rank(full_.data(), k, k, k, scratch_) == k;
      }
      case Space::Alt: {
        const int d = 2 * k;
        full_.assign(static_cast<std::size_t>(d * d), 0);
        std::size_t idx = 0;
        for (int i = 0; i < d; ++i) {
          for (int j = i + 1; j < d; ++j) {
            full_[static_cast<std::size_t>(i * d + j)] = e[idx];
            full_[static_cast<std::size_t>(j * d + i)] = ar_.red(-e[idx]);
            ++idx;
          }
        }
        return ar_.rank(full_.data(), d, d, d, scratch_) == d;
      }
      case Space::Gr:
        return is_rref(e.data(), k, n);
      case Space::X_alt:
      case Space::G_alt:
      case Space::F_alt:
        gram_.resize(static_cast<std::size_t>(n * n));
        ar_.gram_alt(e.data(), 2 * t, n, gram_.data());
        return classify(gram_.data(), n, n, 2 * k, true);
      case Space::X_gen:
      case Space::G_gen:
      case Space::F_gen:
        prod_.resize(static_cast<std::size_t>(m * n));
        ar_.mul(e.data(), m, t, e.data() + m * t, n, prod_.data());
        return classify(prod_.data(), m, n, k, false);
      case Space::X_sym:
      case Space::G_sym:
      case Space::F_sym:
        gram_.resize(static_cast<std::size_t>(n * n));
        ar_.gram_sym(e.data(), t, n, gram_.data());
        return classify(gram_.data(), n, n, k, false);
    }
    return false;
  }

 private:
  // a (r x c) equals diag(Omega or 1 of size d, 0)
  bool is_block_form(const std::int64_t* a, int r, int c, int d, bool omega) const {
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < c; ++j) {
        std::int64_t want = 0;
        if (i < d && j < d) {
          if (omega) {
            if (i % 2 == 0 && j == i + 1) want = 1;
            if (i % 2 == 1 && j == i - 1) want = static_cast<std::int64_t>(s_.q) - 1;
          } else if (i == j) {
            want = 1;
          }
        }
        if (a[i * c + j] != want) return false;
      }
    }
    return true;
  }

  bool classify(const std::int64_t* a, int r, int c, int d, bool omega) {
    switch (s_.space) {
      case Space::X_alt:
      case Space::X_gen:
      case Space::X_sym:
        return ar_.rank(a, r, c, c, scratch_) == d;
      case Space::G_alt:
      case Space::G_gen:
      case Space::G_sym:
        for (int i = 0; i < r; ++i)
          for (int j = d; j < c; ++j)
            if (a[i * c + j] != 0) return false;
        return ar_.rank(a, r, d, c, scratch_) == d;
      default:
        return is_block_form(a, r, c, d, omega);
    }
  }

  static bool is_rref(const std::int64_t* a, int d, int n) {
    int prev = -1;
    for (int i = 0; i < d; ++i) {
      int lead = -1;
      for (int j = 0; j < n && lead < 0; ++j)
        if (a[i * n + j] != 0) lead = j;
      if (lead <= prev || a[i * n + lead] != 1) return false;
      for (int r = 0; r < d; ++r)
        if (r != i && a[r * n + lead] != 0) return false;
      prev = lead;
    }
    return true;
  }

  StratumSpec s_;
  Arith ar_;
  std::vector<std::int64_t> gram_, prod_, full_, scratch_;
};

std::uint64_t count_range(const StratumSpec& s, int entries, std::uint64_t start, std::uint64_t steps) {
  Tester test(s);
  std::vector<std::int64_t> e(static_cast<std::size_t>(entries), 0);
  std::uint64_t idx = start;
  for (int i = entries - 1; i >= 0; --i) {
    e[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(idx % s.q);
    idx /= s.q;
  }
  const auto q = static_cast<std::int64_t>(s.q);
  std::uint64_t hits = 0;
  for (std::uint64_t step = 0; step < steps; ++step) {
    if (test(e)) ++hits;
    for (int i = entries - 1; i >= 0; --i) {
      if (++e[static_cast<std::size_t>(i)] < q) break;
      e[static_cast<std::size_t>(i)] = 0;
    }
  }
  return hits;
}

mpz_class power(std::uint64_t q, long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), q, static_cast<unsigned long>(e));
  return r;
}

mpz_class sp_vector_count(std::uint64_t q, int t) { return (power(q, 2 * t) - 1) * power(q, 2 * t - 1); }
mpz_class pairs_vector_count(std::uint64_t q, int t) { return (power(q, t) - 1) * power(q, t - 1); }

StratumSpec make(Space space, std::uint64_t q, int t, int n, int m, int k) {
  StratumSpec s;
  s.space = space;
  s.q = q;
  s.t = t;
  s.n = n;
  s.m = m;
  s.k = k;
  return s;
}

std::string describe(const StratumSpec& s) {
  std::string out = space_name(s.space) + "(";
  Json j = to_json(s);
  bool first = true;
  for (auto& [key, val] : j.items()) {
    if (key == "space" || key == "q") continue;
    out += (first ? "" : ",") + key + "=" + val.dump();
    first = false;
  }
  return out + ")";
}

struct Identity {
  std::string name;
  mpz_class lhs, rhs;
  bool asserted = true;
};

CheckReport identities_report(const std::string& name, const StratumSpec& base, const std::vector<std::pair<std::string, mpz_class>>& counts,
                              const std::vector<Identity>& ids, double elapsed) {
  CheckReport r;
  r.name = name;
  r.pass = true;
  r.details["q"] = base.q;
  Json cj = Json::object();
  for (const auto& [label, v] : counts) cj[label] = to_json(v);
  r.details["counts"] = cj;
  Json ij = Json::array();
  for (const auto& id : ids) {
    bool holds = id.lhs == id.rhs;
    ij.push_back({{"name", id.name}, {"lhs", to_json(id.lhs)}, {"rhs", to_json(id.rhs)}, {"holds", holds}, {"asserted", id.asserted}});
    if (id.asserted && !holds) {
      r.pass = false;
      if (!r.witness) r.witness = id.name + ": " + id.lhs.get_str() + " != " + id.rhs.get_str();
    }
  }
  r.details["identities"] = ij;
  r.elapsed_ms = elapsed;
  return r;
}

}  // namespace

std::string space_name(Space s) { return space_names().at(s); }

Space parse_space(const std::string& name) {
  for (const auto& [s, n] : space_names()) {
    if (n == name) return s;
  }
  throw std::invalid_argument("unknown space: " + name);
}

void validate(const StratumSpec& s) {
  if (s.q < 2 || s.q > (1ULL << 31) || !is_prime_u64(s.q)) throw std::invalid_argument("q must be a prime below 2^31");
  if (s.t < 0 || s.n < 0 || s.m < 0 || s.k < 0) throw std::invalid_argument("parameters must be non-negative");
  auto need = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  switch (s.space) {
    case Space::Sp:
      need(s.k <= s.t, "Sp(2t, 2k) needs k <= t");
      break;
    case Space::GL:
      need(s.k <= s.m, "GL(m, k) needs k <= m");
      break;
    case Space::P:
    case Space::O:
      need(s.k <= s.t, "need k <= t");
      break;
    case Space::Sym:
    case Space::Alt:
      break;
    case Space::Gr:
      need(s.k <= s.n, "Gr(k, n) needs k <= n");
      break;
    case Space::X_alt:
    case Space::G_alt:
    case Space::F_alt:
      need(2 * s.k <= 2 * s.t && 2 * s.k <= s.n, "alternating strata need 2k <= min(2t, n)");
      break;
    case Space::X_gen:
    case Space::G_gen:
    case Space::F_gen:
      need(s.k <= std::min({s.m, s.t, s.n}), "generic strata need k <= min(m, t, n)");
      break;
    case Space::X_sym:
    case Space::G_sym:
    case Space::F_sym:
      need(s.k <= std::min(s.t, s.n), "symmetric strata need k <= min(t, n)");
      break;
  }
}

int ambient_entries(const StratumSpec& s) {
  switch (s.space) {
    case Space::Sp: return 4 * s.t * s.k;
    case Space::GL: return s.m * s.k;
    case Space::P: return 2 * s.t * s.k;
    case Space::O: return s.t * s.k;
    case Space::Sym: return s.k * (s.k + 1) / 2;
    case Space::Alt: return s.k * (2 * s.k - 1);
    case Space::Gr: return s.k * s.n;
    case Space::X_alt:
    case Space::G_alt:
    case Space::F_alt: return 2 * s.t * s.n;
    case Space::X_gen:
    case Space::G_gen:
    case Space::F_gen: return s.m * s.t + s.t * s.n;
    case Space::X_sym:
    case Space::G_sym:
    case Space::F_sym: return s.t * s.n;
  }
  return 0;
}

Json to_json(const StratumSpec& s) {
  Json j;
  j["space"] = space_name(s.space);
  switch (s.space) {
    case Space::Sp:
    case Space::P:
    case Space::O:
      j["t"] = s.t;
      j["k"] = s.k;
      break;
    case Space::GL:
      j["m"] = s.m;
      j["k"] = s.k;
      break;
    case Space::Sym:
    case Space::Alt:
      j["k"] = s.k;
      break;
    case Space::Gr:
      j["k"] = s.k;
      j["n"] = s.n;
      break;
    default:
      if (is_gen(s.space)) j["m"] = s.m;
      j["t"] = s.t;
      j["n"] = s.n;
      j["k"] = s.k;
  }
  j["q"] = s.q;
  return j;
}

Json to_json(const mpz_class& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

Json to_json(const CountReport& r, bool timing) {
  Json j;
  j["spec"] = to_json(r.spec);
  j["count"] = to_json(r.count);
  j["enumerated_total"] = to_json(r.enumerated_total);
  if (timing) j["elapsed_ms"] = std::round(r.elapsed_ms * 1000.0) / 1000.0;
  return j;
}

int default_threads() {
  if (const char* env = std::getenv("NULLCONE_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

CountReport enumerate(const StratumSpec& s, int threads, std::uint64_t budget) {
  validate(s);
  Stopwatch watch;
  const int entries = ambient_entries(s);
  std::uint64_t total = 1;
  for (int i = 0; i < entries; ++i) {
    if (total > budget / s.q) throw BudgetExceeded(describe(s) + " over F_" + std::to_string(s.q) + " exceeds the enumeration budget");
    total *= s.q;
  }
  if (total > budget) throw BudgetExceeded(describe(s) + " exceeds the enumeration budget");
  if (threads <= 0) threads = default_threads();
  const std::uint64_t shards = std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), std::max<std::uint64_t>(1, total / 4096));
  std::vector<std::uint64_t> hits(shards, 0);
  auto range = [&](std::uint64_t i) {
    std::uint64_t lo = total * i / shards, hi = total * (i + 1) / shards;
    hits[i] = count_range(s, entries, lo, hi - lo);
  };
  if (shards == 1) {
    range(0);
  } else {
    std::vector<std::thread> pool;
    for (std::uint64_t i = 0; i < shards; ++i) pool.emplace_back(range, i);
    for (auto& th : pool) th.join();
  }
  CountReport r;
  r.spec = s;
  std::uint64_t sum = 0;
  for (auto h : hits) sum += h;
  r.count = mpz_class(std::to_string(sum));
  r.enumerated_total = mpz_class(std::to_string(total));
  r.elapsed_ms = watch.elapsed_ms();
  return r;
}

bool has_closed_count(Space s) {
  return s == Space::Sp || s == Space::Alt || s == Space::GL || s == Space::P || s == Space::Gr;
}

mpz_class closed_count(const StratumSpec& s) {
  validate(s);
  const std::uint64_t q = s.q;
  mpz_class c = 1;
  switch (s.space) {
    case Space::Sp:
      for (int j = 0; j < s.k; ++j) c *= sp_vector_count(q, s.t - j);
      return c;
    case Space::Alt:
      for (int j = 1; j <= s.k; ++j) c *= (power(q, 2 * j - 1) - 1) * power(q, 2 * j - 2);
      return c;
    case Space::GL:
      for (int i = 0; i < s.k; ++i) c *= power(q, s.m) - power(q, i);
      return c;
    case Space::P:
      for (int j = 0; j < s.k; ++j) c *= pairs_vector_count(q, s.t - j);
      return c;
    case Space::Gr: {
      mpz_class num = 1, den = 1;
      for (int i = 0; i < s.k; ++i) {
        num *= power(q, s.n - i) - 1;
        den *= power(q, i + 1) - 1;
      }
      return num / den;
    }
    default:
      throw std::invalid_argument("no closed formula for " + space_name(s.space));
  }
}

CheckReport check_closed_count(const StratumSpec& s, int threads) {
  Stopwatch watch;
  mpz_class closed = closed_count(s);
  mpz_class counted = enumerate(s, threads).count;
  CheckReport r;
  r.name = "closed-count";
  r.pass = closed == counted;
  if (!r.pass) r.witness = describe(s) + ": enumerate " + counted.get_str() + " != closed " + closed.get_str();
  r.details["spec"] = to_json(s);
  r.details["enumerate"] = to_json(counted);
  r.details["closed"] = to_json(closed);
  r.elapsed_ms = watch.elapsed_ms();
  return r;
}

std::string chain_name(Chain c) {
  switch (c) {
    case Chain::alternating: return "alternating";
    case Chain::generic: return "generic";
    case Chain::symmetric: return "symmetric";
  }
  return "";
}

Chain parse_chain(const std::string& name) {
  if (name == "alternating" || name == "alt" || name == "pfaffian") return Chain::alternating;
  if (name == "generic" || name == "gen") return Chain::generic;
  if (name == "symmetric" || name == "sym") return Chain::symmetric;
  throw std::invalid_argument("unknown family: " + name);
}

CheckReport check_chain(Chain family, const StratumSpec& s, int threads) {
  Stopwatch watch;
  const std::uint64_t q = s.q;
  const int t = s.t, n = s.n, m = s.m, k = s.k;
  std::vector<std::pair<std::string, mpz_class>> counts;
  auto count = [&](const StratumSpec& sp) {
    mpz_class c = enumerate(sp, threads).count;
    counts.emplace_back(describe(sp), c);
    return c;
  };
  std::vector<Identity> ids;
  if (family == Chain::alternating) {
    validate(make(Space::X_alt, q, t, n, 0, k));
    mpz_class x = count(make(Space::X_alt, q, t, n, 0, k));
    mpz_class g = count(make(Space::G_alt, q, t, n, 0, k));
    mpz_class f = count(make(Space::F_alt, q, t, n, 0, k));
    mpz_class x0 = count(make(Space::X_alt, q, t - k, n - 2 * k, 0, 0));
    mpz_class sp = count(make(Space::Sp, q, t, 0, 0, k));
    mpz_class alt = count(make(Space::Alt, q, 0, 0, 0, k));
    mpz_class gr = count(make(Space::Gr, q, 0, n, 0, n - 2 * k));
    ids = {{"alt:1 X = G * Gr", x, g * gr},
           {"alt:2 G = F * Alt", g, f * alt},
           {"alt:3 F = Sp * X0", f, sp * x0},
           {"chain X = X0 * Sp * Alt * Gr", x, x0 * sp * alt * gr}};
  } else if (family == Chain::generic) {
    validate(make(Space::X_gen, q, t, n, m, k));
    mpz_class x = count(make(Space::X_gen, q, t, n, m, k));
    mpz_class g = count(make(Space::G_gen, q, t, n, m, k));
    mpz_class f = count(make(Space::F_gen, q, t, n, m, k));
    mpz_class x0 = count(make(Space::X_gen, q, t - k, n - k, m - k, 0));
    mpz_class p = count(make(Space::P, q, t, 0, 0, k));
    mpz_class gl = count(make(Space::GL, q, 0, 0, m, k));
    mpz_class gr = count(make(Space::Gr, q, 0, n, 0, n - k));
    ids = {{"gen:1 X = G * Gr", x, g * gr},
           {"gen:2 G = F * GL", g, f * gl},
           {"gen:3 F = P * X0", f, p * x0},
           {"chain X = X0 * P * GL * Gr", x, x0 * p * gl * gr}};
  } else {
    validate(make(Space::X_sym, q, t, n, 0, k));
    mpz_class x = count(make(Space::X_sym, q, t, n, 0, k));
    mpz_class g = count(make(Space::G_sym, q, t, n, 0, k));
    mpz_class f = count(make(Space::F_sym, q, t, n, 0, k));
    mpz_class x0 = count(make(Space::X_sym, q, t - k, n - k, 0, 0));
    mpz_class o = count(make(Space::O, q, t, 0, 0, k));
    mpz_class sym = count(make(Space::Sym, q, 0, 0, 0, k));
    mpz_class gr = count(make(Space::Gr, q, 0, n, 0, n - k));
    // only the kernel chart is Zariski locally trivial; the other two are logged
    ids = {{"sym:1 X = G * Gr", x, g * gr},
           {"sym:2 G = F * Sym", g, f * sym, false},
           {"sym:3 F = O * X0", f, o * x0, false},
           {"chain X = X0 * O * Sym * Gr", x, x0 * o * sym * gr, false}};
  }
  CheckReport r = identities_report("chain-" + chain_name(family), s, counts, ids, watch.elapsed_ms());
  r.details["family"] = chain_name(family);
  return r;
}

CheckReport check_partition(Chain family, const StratumSpec& s, int threads) {
  Stopwatch watch;
  std::vector<std::pair<std::string, mpz_class>> counts;
  mpz_class sum = 0;
  int ambient = 0;
  auto add = [&](const StratumSpec& sp) {
    mpz_class c = enumerate(sp, threads).count;
    counts.emplace_back(describe(sp), c);
    sum += c;
    ambient = ambient_entries(sp);
  };
  if (family == Chain::alternating) {
    for (int k = 0; 2 * k <= std::min(2 * s.t, s.n); ++k) add(make(Space::X_alt, s.q, s.t, s.n, 0, k));
  } else if (family == Chain::generic) {
    for (int k = 0; k <= std::min({s.m, s.t, s.n}); ++k) add(make(Space::X_gen, s.q, s.t, s.n, s.m, k));
  } else {
    for (int k = 0; k <= std::min(s.t, s.n); ++k) add(make(Space::X_sym, s.q, s.t, s.n, 0, k));
  }
  std::vector<Identity> ids = {{"sum of strata = q^" + std::to_string(ambient), sum, power(s.q, ambient)}};
  CheckReport r = identities_report("partition-" + chain_name(family), s, counts, ids, watch.elapsed_ms());
  r.details["family"] = chain_name(family);
  return r;
}

std::string PolyFit::polynomial() const {
  if (!fitted) return "no-fit";
  std::string out;
  for (int d = static_cast<int>(coefficients.size()) - 1; d >= 0; --d) {
    mpz_class c = coefficients[static_cast<std::size_t>(d)];
    if (c == 0) continue;
    bool neg = c < 0;
    mpz_class a = abs(c);
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    if (a != 1 || d == 0) out += a.get_str();
    if (d > 0) out += (a != 1 ? "*" : "") + std::string("q") + (d > 1 ? "^" + std::to_string(d) : "");
  }
  return out.empty() ? "0" : out;
}

mpz_class PolyFit::evaluate(std::uint64_t q) const {
  mpz_class v = 0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) v = v * mpz_class(std::to_string(q)) + *it;
  return v;
}

PolyFit poly_fit(const StratumSpec& s, const std::vector<std::uint64_t>& primes, int degree_bound, int threads) {
  PolyFit fit;
  fit.spec = s;
  if (primes.empty()) throw std::invalid_argument("poly_fit needs sample primes");
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (primes[i] == 2) throw std::invalid_argument("poly_fit samples odd primes");
    for (std::size_t j = 0; j < i; ++j)
      if (primes[i] == primes[j]) throw std::invalid_argument("sample primes must be distinct");
  }
  fit.degree_bound = degree_bound < 0 ? std::max(0, static_cast<int>(primes.size()) - 2) : degree_bound;
  if (static_cast<int>(primes.size()) < fit.degree_bound + 1)
    throw std::invalid_argument("need at least degree_bound + 1 sample primes");
  for (auto q : primes) {
    StratumSpec sq = s;
    sq.q = q;
    validate(sq);
    try {
      fit.samples.emplace_back(q, enumerate(sq, threads).count);
      fit.sources.emplace_back("enumerate");
    } catch (const BudgetExceeded&) {
      if (!has_closed_count(sq.space)) throw;
      fit.samples.emplace_back(q, closed_count(sq));
      fit.sources.emplace_back("closed");
    }
  }
  // Lagrange interpolation over Q through the first degree_bound + 1 samples
  const int npts = fit.degree_bound + 1;
  std::vector<mpq_class> poly(static_cast<std::size_t>(npts), mpq_class(0));
  for (int i = 0; i < npts; ++i) {
    std::vector<mpq_class> basis{mpq_class(1)};
    mpq_class den = 1;
    const mpq_class qi(fit.samples[static_cast<std::size_t>(i)].first);
    for (int j = 0; j < npts; ++j) {
      if (j == i) continue;
      const mpq_class qj(fit.samples[static_cast<std::size_t>(j)].first);
      std::vector<mpq_class> next(basis.size() + 1, mpq_class(0));
      for (std::size_t d = 0; d < basis.size(); ++d) {
        next[d + 1] += basis[d];
        next[d] -= qj * basis[d];
      }
      basis = next;
      den *= qi - qj;
    }
    mpq_class scale = mpq_class(fit.samples[static_cast<std::size_t>(i)].second) / den;
    for (std::size_t d = 0; d < basis.size(); ++d) poly[d] += scale * basis[d];
  }
  fit.fitted = true;
  for (auto& c : poly) {
    c.canonicalize();
    if (c.get_den() != 1) fit.fitted = false;
    fit.coefficients.push_back(c.get_num());
  }
  while (fit.coefficients.size() > 1 && fit.coefficients.back() == 0) fit.coefficients.pop_back();
  if (fit.fitted) {
    for (const auto& [q, c] : fit.samples)
      if (fit.evaluate(q) != c) fit.fitted = false;
  }
  if (!fit.fitted) fit.coefficients.clear();
  return fit;
}

Json to_json(const PolyFit& f) {
  Json j;
  j["spec"] = to_json(f.spec);
  j["spec"].erase("q");
  Json samples = Json::array();
  for (std::size_t i = 0; i < f.samples.size(); ++i)
    samples.push_back({{"q", f.samples[i].first}, {"count", to_json(f.samples[i].second)}, {"source", f.sources[i]}});
  j["samples"] = samples;
  j["degree_bound"] = f.degree_bound;
  j["fitted"] = f.fitted;
  j["polynomial"] = f.polynomial();
  Json coeffs = Json::array();
  for (const auto& c : f.coefficients) coeffs.push_back(to_json(c));
  j["coefficients"] = coeffs;
  return j;
}

}  // namespace nullcone
