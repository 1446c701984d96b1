#include <algorithm>
#include <map>
#include <mutex>

#include "nullcone/ideal.hpp"

namespace nullcone {

struct Ideal::Cache {
  std::mutex mu;
  std::map<std::pair<int, int>, std::vector<Polynomial>> bases;
};

namespace {

std::pair<int, int> order_key(const MonomialOrder& o) { return {static_cast<int>(o.kind()), o.front()}; }

}  // namespace

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> gens)
    : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  for (auto& g : gens) {
    if (!same_ring(ring_, g.ring())) throw std::invalid_argument("ideal generator lives in a different ring");
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

Ideal Ideal::unit(RingPtr ring) {
  auto one = Polynomial::constant(ring, 1L);
  return Ideal(std::move(ring), {one});
}

const std::vector<Polynomial>& Ideal::groebner_basis() const { return groebner_basis(ring_->order()); }

const std::vector<Polynomial>& Ideal::groebner_basis(const MonomialOrder& order) const {
  std::lock_guard lock(cache_->mu);
  auto key = order_key(order);
  auto it = cache_->bases.find(key);
  if (it != cache_->bases.end()) return it->second;
  RingPtr target = with_order(ring_, order);
  std::vector<Polynomial> gens;
  gens.reserve(gens_.size());
  for (const auto& g : gens_) gens.push_back(target == ring_ ? g : g.reorder(target));
  auto basis = buchberger(gens);
  return cache_->bases.emplace(key, std::move(basis)).first->second;
}

bool Ideal::has_cached_basis() const {
  std::lock_guard lock(cache_->mu);
  return cache_->bases.count(order_key(ring_->order())) > 0;
}

bool Ideal::contains(const Polynomial& f) const {
  if (!same_ring(ring_, f.ring())) throw std::invalid_argument("membership test across rings");
  if (f.is_zero()) return true;
  return normal_form(f, groebner_basis()).is_zero();
}

bool Ideal::is_unit() const {
  const auto& gb = groebner_basis();
  return gb.size() == 1 && gb[0].is_constant();
}

bool Ideal::is_zero() const { return gens_.empty(); }

Ideal operator+(const Ideal& a, const Ideal& b) {
  if (!same_ring(a.ring_, b.ring_)) throw std::invalid_argument("ideal sum across rings");
  auto gens = a.gens_;
  gens.insert(gens.end(), b.gens_.begin(), b.gens_.end());
  return Ideal(a.ring_, std::move(gens));
}

std::string fresh_name(const Ring& ring, const std::string& base) {
  std::string name = base;
  while (ring.index_of(name) >= 0) name += "_";
  return name;
}

namespace {

// Ring with `aux` prepended to the variables of `ring`, under `order`.
RingPtr prepend(const Ring& ring, const std::vector<std::string>& aux, MonomialOrder order) {
  std::vector<std::string> names = aux;
  names.insert(names.end(), ring.names().begin(), ring.names().end());
  return make_ring(std::move(names), ring.field(), order);
}

std::vector<int> shift_map(int n, int by) {
  std::vector<int> m(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = i + by;
  return m;
}

// Basis elements free of the first `front` variables, moved back to `home`
// where variable front+i becomes variable i.
std::vector<Polynomial> drop_front(const std::vector<Polynomial>& basis, int front, const RingPtr& home) {
  const std::uint32_t front_mask = front >= 32 ? ~0u : ((1u << front) - 1u);
  std::vector<int> back(static_cast<std::size_t>(home->nvars() + front), -1);
  for (int i = 0; i < home->nvars(); ++i) back[static_cast<std::size_t>(i + front)] = i;
  std::vector<Polynomial> out;
  for (const auto& g : basis) {
    if ((g.support() & front_mask) == 0) out.push_back(g.to_ring(home, back));
  }
  return out;
}

}  // namespace

Ideal eliminate(const Ideal& ideal, const std::vector<int>& front_vars) {
  const Ring& r = *ideal.ring();
  std::vector<bool> is_front(static_cast<std::size_t>(r.nvars()), false);
  for (int v : front_vars) {
    if (v < 0 || v >= r.nvars()) throw std::invalid_argument("eliminate: variable index out of range");
    is_front[static_cast<std::size_t>(v)] = true;
  }
  std::vector<std::string> names;
  std::vector<int> to_new(static_cast<std::size_t>(r.nvars()));
  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 0; i < r.nvars(); ++i) {
      if (is_front[static_cast<std::size_t>(i)] == (pass == 0)) {
        to_new[static_cast<std::size_t>(i)] = static_cast<int>(names.size());
        names.push_back(r.name(i));
      }
    }
  }
  int front = 0;
  for (bool b : is_front) front += b ? 1 : 0;
  RingPtr elim = make_ring(std::move(names), r.field(), MonomialOrder::block(front));
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.to_ring(elim, to_new));
  auto basis = buchberger(gens);
  std::vector<int> back(static_cast<std::size_t>(r.nvars()));
  for (int i = 0; i < r.nvars(); ++i) back[static_cast<std::size_t>(to_new[static_cast<std::size_t>(i)])] = i;
  const std::uint32_t front_mask = front >= 32 ? ~0u : ((1u << front) - 1u);
  std::vector<Polynomial> out;
  for (const auto& g : basis) {
    if ((g.support() & front_mask) == 0) out.push_back(g.to_ring(ideal.ring(), back));
  }
  return Ideal(ideal.ring(), std::move(out));
}

Ideal intersect(const Ideal& a, const Ideal& b) {
  if (!same_ring(a.ring(), b.ring())) throw std::invalid_argument("intersect across rings");
  const Ring& r = *a.ring();
  RingPtr ext = prepend(r, {fresh_name(r, "s")}, MonomialOrder::block(1));
  auto up = shift_map(r.nvars(), 1);
  Polynomial s = Polynomial::variable(ext, 0);
  Polynomial one_minus_s = Polynomial::constant(ext, 1L) - s;
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators()) gens.push_back(s * f.to_ring(ext, up));
  for (const auto& g : b.generators()) gens.push_back(one_minus_s * g.to_ring(ext, up));
  return Ideal(a.ring(), drop_front(buchberger(gens), 1, a.ring()));
}

Ideal intersect(const std::vector<Ideal>& ideals) {
  if (ideals.empty()) throw std::invalid_argument("intersect of no ideals");
  Ideal acc = ideals.front();
  for (std::size_t k = 1; k < ideals.size(); ++k) acc = intersect(acc, ideals[k]);
  return acc;
}

Ideal saturate(const Ideal& ideal, const Polynomial& f) {
  if (f.is_zero()) throw std::invalid_argument("saturation by zero");
  if (!same_ring(ideal.ring(), f.ring())) throw std::invalid_argument("saturate across rings");
  const Ring& r = *ideal.ring();
  RingPtr ext = prepend(r, {fresh_name(r, "w")}, MonomialOrder::block(1));
  auto up = shift_map(r.nvars(), 1);
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.to_ring(ext, up));
  gens.push_back(Polynomial::constant(ext, 1L) - Polynomial::variable(ext, 0) * f.to_ring(ext, up));
  return Ideal(ideal.ring(), drop_front(buchberger(gens), 1, ideal.ring()));
}

bool radical_member(const Polynomial& f, const Ideal& ideal) {
  if (!same_ring(ideal.ring(), f.ring())) throw std::invalid_argument("radical membership across rings");
  if (f.is_zero()) return true;
  if (ideal.contains(f)) return true;
  const Ring& r = *ideal.ring();
  RingPtr ext = prepend(r, {fresh_name(r, "w")}, MonomialOrder::grevlex());
  auto up = shift_map(r.nvars(), 1);
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.to_ring(ext, up));
  gens.push_back(Polynomial::constant(ext, 1L) - Polynomial::variable(ext, 0) * f.to_ring(ext, up));
  auto basis = buchberger(gens);
  return basis.size() == 1 && basis[0].is_constant();
}

RadicalComparison radical_equal(const Ideal& a, const Ideal& b) {
  if (!same_ring(a.ring(), b.ring())) throw std::invalid_argument("radical comparison across rings");
  RadicalComparison out;
  for (const auto& g : b.generators()) {
    if (!radical_member(g, a)) {
      out.equal = false;
      out.witness = g;
      out.direction = "second-in-first";
      return out;
    }
  }
  for (const auto& g : a.generators()) {
    if (!radical_member(g, b)) {
      out.equal = false;
      out.witness = g;
      out.direction = "first-in-second";
      return out;
    }
  }
  return out;
}

bool ideal_contains(const Ideal& a, const Ideal& b) {
  for (const auto& g : b.generators()) {
    if (!a.contains(g)) return false;
  }
  return true;
}

bool ideal_equal(const Ideal& a, const Ideal& b) { return ideal_contains(a, b) && ideal_contains(b, a); }

namespace {

// Smallest number of variables meeting every support set.
int min_hitting_set(const std::vector<std::uint32_t>& sets, std::uint32_t chosen, int size, int best) {
  if (size >= best) return best;
  const std::uint32_t* open = nullptr;
  for (const auto& s : sets) {
    if ((s & chosen) == 0 && (!open || __builtin_popcount(s) < __builtin_popcount(*open))) open = &s;
  }
  if (!open) return size;
  for (std::uint32_t m = *open; m; m &= m - 1) {
    best = min_hitting_set(sets, chosen | (m & (~m + 1)), size + 1, best);
  }
  return best;
}

}  // namespace

int monomial_dimension(const std::vector<Monomial>& leading, int nvars) {
  std::vector<std::uint32_t> sets;
  for (const auto& m : leading) {
    if (m.is_one()) return -1;
    sets.push_back(m.support());
  }
  // supersets never matter for a hitting set
  std::sort(sets.begin(), sets.end(),
            [](std::uint32_t a, std::uint32_t b) { return __builtin_popcount(a) < __builtin_popcount(b); });
  std::vector<std::uint32_t> minimal;
  for (auto s : sets) {
    bool redundant = false;
    for (auto t : minimal) {
      if ((t & s) == t) {
        redundant = true;
        break;
      }
    }
    if (!redundant) minimal.push_back(s);
  }
  return nvars - min_hitting_set(minimal, 0, 0, nvars + 1);
}

int krull_dimension(const Ideal& ideal) {
  const auto& gb = ideal.groebner_basis();
  std::vector<Monomial> leading;
  for (const auto& g : gb) leading.push_back(g.lm());
  return monomial_dimension(leading, ideal.ring()->nvars());
}

int height(const Ideal& ideal) {
  int d = krull_dimension(ideal);
  if (d < 0) throw std::domain_error("height of the unit ideal is undefined");
  return ideal.ring()->nvars() - d;
}

}  // namespace nullcone
