#include <algorithm>
#include <chrono>
#include <mutex>

#include "nullcone/ideal.hpp"

namespace nullcone {

namespace {

std::mutex g_budget_mutex;
GbBudget g_budget;

using Clock = std::chrono::steady_clock;

struct Deadline {
  Clock::time_point end;
  explicit Deadline(double seconds)
      : end(Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds))) {}
  void check() const {
    if (Clock::now() > end) throw ResourceLimit("groebner computation exceeded its time budget");
  }
};

const Polynomial* find_reducer(const Monomial& m, const std::vector<const Polynomial*>& reducers) {
  for (const Polynomial* g : reducers) {
    if (g->lm().divides(m)) return g;
  }
  return nullptr;
}

// Full reduction; reducers need not be monic.
std::vector<Term> reduce(const Ring& ring, std::vector<Term> p, const std::vector<const Polynomial*>& reducers,
                         const GbBudget& budget, const Deadline* deadline) {
  std::vector<Term> rem;
  std::size_t pos = 0;
  std::size_t steps = 0;
  while (pos < p.size()) {
    const Term& lt = p[pos];
    const Polynomial* g = find_reducer(lt.mono, reducers);
    if (!g) {
      rem.push_back(lt);
      ++pos;
      continue;
    }
    FieldScalar c = g->lc().is_one() ? -lt.coef : -(lt.coef / g->lc());
    Monomial m = quotient(lt.mono, g->lm());
    p = add_scaled(ring, p, c, m, g->terms(), pos);
    pos = 0;
    if (p.size() + rem.size() > budget.max_terms)
      throw ResourceLimit("polynomial reduction exceeded the term budget");
    if (deadline && (++steps & 63) == 0) deadline->check();
  }
  return rem;
}

struct Pair {
  int i;
  int j;
  Monomial lcm;
  unsigned sugar;
};

class Engine {
 public:
  Engine(RingPtr ring, const GbOptions& opts)
      : ring_(std::move(ring)), r_(*ring_), opts_(opts), deadline_(opts.budget.max_seconds) {}

  std::vector<Polynomial> run(std::vector<Polynomial> input) {
    std::sort(input.begin(), input.end(),
              [&](const Polynomial& a, const Polynomial& b) { return r_.compare(a.lm(), b.lm()) < 0; });
    for (auto& f : input) {
      if (insert(f.terms(), static_cast<unsigned>(f.total_degree()))) return unit();
    }
    while (!pairs_.empty()) {
      deadline_.check();
      Pair p = pairs_.back();
      pairs_.pop_back();
      const Polynomial& a = basis_[static_cast<std::size_t>(p.i)];
      const Polynomial& b = basis_[static_cast<std::size_t>(p.j)];
      std::vector<Term> s = a.mul_term(quotient(p.lcm, a.lm()), FieldScalar::one(r_.field())).terms();
      s = add_scaled(r_, s, -FieldScalar::one(r_.field()), quotient(p.lcm, b.lm()), b.terms());
      if (insert(std::move(s), p.sugar)) return unit();
    }
    return finish();
  }

 private:
  std::vector<Polynomial> unit() const { return {Polynomial::constant(ring_, 1L)}; }

  // Returns true once the unit ideal is detected.
  bool insert(std::vector<Term> terms, unsigned sugar) {
    std::vector<const Polynomial*> reducers;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (active_[k]) reducers.push_back(&basis_[k]);
    }
    auto rem = reduce(r_, std::move(terms), reducers, opts_.budget, &deadline_);
    if (rem.empty()) return false;
    Polynomial h = Polynomial::from_terms(ring_, std::move(rem)).monic();
    if (h.lm().is_one()) return true;
    total_terms_ += h.size();
    if (total_terms_ > opts_.budget.max_terms) throw ResourceLimit("groebner basis exceeded the term budget");
    basis_.push_back(std::move(h));
    active_.push_back(true);
    sugar_.push_back(sugar);
    update(static_cast<int>(basis_.size()) - 1);
    return false;
  }

  Pair make_pair(int g, int h) const {
    const auto& lg = basis_[static_cast<std::size_t>(g)].lm();
    const auto& lh = basis_[static_cast<std::size_t>(h)].lm();
    Monomial l = lcm(lg, lh);
    unsigned s = std::max(sugar_[static_cast<std::size_t>(g)] + l.degree() - lg.degree(),
                          sugar_[static_cast<std::size_t>(h)] + l.degree() - lh.degree());
    return {g, h, l, s};
  }

  // Gebauer-Moeller installation of the pairs of a new element h.
  void update(int h) {
    const Monomial& lh = basis_[static_cast<std::size_t>(h)].lm();
    std::vector<Pair> c;
    for (int g = 0; g < h; ++g) {
      if (active_[static_cast<std::size_t>(g)]) c.push_back(make_pair(g, h));
    }
    std::vector<Pair> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Pair& p = c[k];
      bool keep = coprime(basis_[static_cast<std::size_t>(p.i)].lm(), lh);
      if (!keep) {
        keep = true;
        for (std::size_t q = k + 1; q < c.size() && keep; ++q) {
          if (c[q].lcm.divides(p.lcm)) keep = false;
        }
        for (const auto& q : d) {
          if (!keep) break;
          if (q.lcm.divides(p.lcm)) keep = false;
        }
      }
      if (keep) d.push_back(p);
    }
    std::vector<Pair> next;
    next.reserve(pairs_.size() + d.size());
    for (auto& p : pairs_) {
      bool drop = lh.divides(p.lcm) && make_lcm(p.i, h) != p.lcm && make_lcm(p.j, h) != p.lcm;
      if (!drop) next.push_back(std::move(p));
    }
    for (auto& p : d) {
      if (!coprime(basis_[static_cast<std::size_t>(p.i)].lm(), lh)) next.push_back(std::move(p));
    }
    pairs_ = std::move(next);
    if (pairs_.size() > opts_.budget.max_pairs) throw ResourceLimit("groebner pair queue exceeded its budget");
    for (int g = 0; g < h; ++g) {
      if (active_[static_cast<std::size_t>(g)] && lh.divides(basis_[static_cast<std::size_t>(g)].lm()))
        active_[static_cast<std::size_t>(g)] = false;
    }
    sort_pairs();
  }

  Monomial make_lcm(int a, int b) const {
    return lcm(basis_[static_cast<std::size_t>(a)].lm(), basis_[static_cast<std::size_t>(b)].lm());
  }

  // Smallest pair last, so selection is a pop_back.
  void sort_pairs() {
    const bool reversed = opts_.selection == PairSelection::reversed;
    std::sort(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
      if (a.sugar != b.sugar) return a.sugar > b.sugar;
      int c = r_.compare(a.lcm, b.lcm);
      if (c != 0) return c > 0;
      if (a.j != b.j) return reversed ? a.j < b.j : a.j > b.j;
      return reversed ? a.i < b.i : a.i > b.i;
    });
  }

  std::vector<Polynomial> finish() const {
    std::vector<const Polynomial*> kept;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      if (active_[k]) kept.push_back(&basis_[k]);
    }
    std::vector<Polynomial> out;
    for (const Polynomial* g : kept) {
      std::vector<const Polynomial*> others;
      for (const Polynomial* o : kept) {
        if (o != g) others.push_back(o);
      }
      std::vector<Term> tail(g->terms().begin() + 1, g->terms().end());
      auto rem = reduce(r_, std::move(tail), others, opts_.budget, &deadline_);
      rem.insert(rem.begin(), g->leading());
      out.push_back(Polynomial::from_terms(ring_, std::move(rem)).monic());
    }
    std::sort(out.begin(), out.end(),
              [&](const Polynomial& a, const Polynomial& b) { return r_.compare(a.lm(), b.lm()) < 0; });
    return out;
  }

  RingPtr ring_;
  const Ring& r_;
  GbOptions opts_;
  Deadline deadline_;
  std::vector<Polynomial> basis_;
  std::vector<bool> active_;
  std::vector<unsigned> sugar_;
  std::vector<Pair> pairs_;
  std::size_t total_terms_ = 0;
};

}  // namespace

GbBudget default_gb_budget() {
  std::lock_guard lock(g_budget_mutex);
  return g_budget;
}

void set_default_gb_budget(const GbBudget& budget) {
  std::lock_guard lock(g_budget_mutex);
  g_budget = budget;
}

std::vector<Polynomial> buchberger(const std::vector<Polynomial>& gens, const GbOptions& opts) {
  std::vector<Polynomial> input;
  RingPtr ring;
  for (const auto& g : gens) {
    if (!ring) ring = g.ring();
    if (!same_ring(ring, g.ring())) throw std::invalid_argument("buchberger: generators live in different rings");
    if (!g.is_zero()) input.push_back(g);
  }
  if (input.empty()) return {};
  return Engine(ring, opts).run(std::move(input));
}

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis, const GbBudget& budget) {
  std::vector<const Polynomial*> reducers;
  for (const auto& g : basis) {
    if (!same_ring(f.ring(), g.ring())) throw std::invalid_argument("normal_form: ring mismatch");
    if (!g.is_zero()) reducers.push_back(&g);
  }
  Deadline deadline(budget.max_seconds);
  auto rem = reduce(*f.ring(), f.terms(), reducers, budget, &deadline);
  return Polynomial::from_terms(f.ring(), std::move(rem));
}

bool is_reduced_groebner(const std::vector<Polynomial>& basis) {
  for (std::size_t a = 0; a < basis.size(); ++a) {
    if (basis[a].is_zero() || !basis[a].lc().is_one()) return false;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (a == b) continue;
      for (const auto& t : basis[a].terms()) {
        if (basis[b].lm().divides(t.mono)) return false;
      }
    }
  }
  return true;
}

}  // namespace nullcone
