#include "groupoidal/bisection.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "groupoidal/errors.hpp"

namespace groupoidal {

std::size_t BisectionHash::operator()(const Bisection& b) const {
  std::size_t h = b.assign.size();
  for (Arrow a : b.assign) h ^= std::hash<int>{}(a) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

bool validate_bisection(const FiniteGroupoid& g, const Bisection& b) {
  if (static_cast<int>(b.assign.size()) != g.num_objects()) return false;
  std::vector<char> hit(g.num_objects(), 0);
  for (Object m = 0; m < g.num_objects(); ++m) {
    Arrow a = b.assign[m];
    if (a < 0 || a >= g.num_arrows() || g.source(a) != m) return false;
    if (hit[g.target(a)]) return false;
    hit[g.target(a)] = 1;
  }
  return true;
}

Bisection identity_bisection(const FiniteGroupoid& g) {
  Bisection b;
  b.assign.resize(g.num_objects());
  for (Object m = 0; m < g.num_objects(); ++m) b.assign[m] = g.unit(m);
  return b;
}

ObjectMap shadow(const FiniteGroupoid& g, const Bisection& b) {
  ObjectMap f(b.assign.size());
  for (std::size_t m = 0; m < f.size(); ++m) f[m] = g.target(b.assign[m]);
  return f;
}

ObjectMap invert_map(const ObjectMap& f) {
  ObjectMap inv(f.size(), -1);
  for (std::size_t m = 0; m < f.size(); ++m) {
    if (f[m] < 0 || f[m] >= static_cast<int>(f.size()) || inv[f[m]] >= 0)
      throw DomainError("map is not a bijection");
    inv[f[m]] = static_cast<Object>(m);
  }
  return inv;
}

Bisection bisection_product(const FiniteGroupoid& g, const Bisection& b2, const Bisection& b1) {
  Bisection r;
  r.assign.resize(b1.assign.size());
  for (std::size_t m = 0; m < r.assign.size(); ++m) {
    Arrow a1 = b1.assign[m];
    r.assign[m] = g.compose(b2.assign[g.target(a1)], a1);
  }
  return r;
}

Bisection bisection_inverse(const FiniteGroupoid& g, const Bisection& b) {
  ObjectMap back = invert_map(shadow(g, b));
  Bisection r;
  r.assign.resize(b.assign.size());
  for (std::size_t m = 0; m < r.assign.size(); ++m) r.assign[m] = g.inverse(b.assign[back[m]]);
  return r;
}

Arrow left_mult(const FiniteGroupoid& g, const Bisection& b, Arrow a) {
  return g.compose(b(g.target(a)), a);
}

Arrow right_mult(const FiniteGroupoid& g, Arrow a, const Bisection& b) {
  ObjectMap back = invert_map(shadow(g, b));
  return g.compose(a, b(back[g.source(a)]));
}

Arrow conjugate(const FiniteGroupoid& g, const Bisection& b, Arrow a) {
  return g.compose(g.compose(b(g.target(a)), a), g.inverse(b(g.source(a))));
}

BisectionGroup::BisectionGroup(FiniteGroupoid g, std::vector<Bisection> elements)
    : g_(std::move(g)), elements_(std::move(elements)) {
  index_.reserve(elements_.size());
  for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);
  auto id = index_of(identity_bisection(g_));
  if (!id) throw DomainError("bisection group without identity");
  identity_ = *id;
}

std::optional<std::size_t> BisectionGroup::index_of(const Bisection& b) const {
  auto it = index_.find(b);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const BisectionGroup::Tables& BisectionGroup::tables() const {
  std::call_once(tables_->once, [this] {
    const std::size_t n = elements_.size();
    tables_->product.resize(n * n);
    tables_->inverse.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto inv = index_of(bisection_inverse(g_, elements_[i]));
      if (!inv) throw DomainError("bisection group not closed under inverse");
      tables_->inverse[i] = *inv;
      for (std::size_t j = 0; j < n; ++j) {
        auto p = index_of(bisection_product(g_, elements_[i], elements_[j]));
        if (!p) throw DomainError("bisection group not closed under product");
        tables_->product[i * n + j] = *p;
      }
    }
  });
  return *tables_;
}

std::size_t BisectionGroup::product(std::size_t i, std::size_t j) const {
  return tables().product[i * elements_.size() + j];
}

std::size_t BisectionGroup::inverse(std::size_t i) const { return tables().inverse[i]; }

BisectionGroup enumerate_bisections(const FiniteGroupoid& g, std::size_t cap) {
  const int n = g.num_objects();
  double space = 1.0;
  for (Object m = 0; m < n; ++m) space *= static_cast<double>(g.arrows_from(m).size());
  if (space > static_cast<double>(cap))
    throw EnumerationBoundError("bisection search space " + std::to_string(space) +
                                " exceeds cap " + std::to_string(cap));
  std::vector<Bisection> out;
  Bisection cur;
  cur.assign.assign(n, -1);
  std::vector<char> used(n, 0);
  std::function<void(Object)> rec = [&](Object m) {
    if (m == n) {
      out.push_back(cur);
      return;
    }
    for (Arrow a : g.arrows_from(m)) {
      Object t = g.target(a);
      if (used[t]) continue;
      used[t] = 1;
      cur.assign[m] = a;
      rec(m + 1);
      used[t] = 0;
    }
  };
  rec(0);
  return BisectionGroup(g, std::move(out));
}

std::optional<Bisection> bisection_through(const FiniteGroupoid& g, Arrow a,
                                           const std::vector<Bisection>* restrict) {
  const Object m0 = g.source(a);
  if (restrict) {
    for (const auto& b : *restrict)
      if (b.assign.size() == static_cast<std::size_t>(g.num_objects()) && b(m0) == a &&
          validate_bisection(g, b))
        return b;
    return std::nullopt;
  }
  const int n = g.num_objects();
  const Object t0 = g.target(a);
  // edge[m] lists (target, arrow) with the first arrow per target.
  std::vector<std::vector<std::pair<Object, Arrow>>> edge(n);
  for (Object m = 0; m < n; ++m) {
    if (m == m0) continue;
    for (Arrow c : g.arrows_from(m)) {
      Object t = g.target(c);
      if (t == t0) continue;
      if (std::none_of(edge[m].begin(), edge[m].end(), [t](const auto& e) { return e.first == t; }))
        edge[m].emplace_back(t, c);
    }
  }
  std::vector<Object> owner(n, -1);  // target -> object
  std::vector<Arrow> chosen(n, -1);
  std::vector<char> seen;
  std::function<bool(Object)> augment = [&](Object m) {
    for (const auto& [t, c] : edge[m]) {
      if (seen[t]) continue;
      seen[t] = 1;
      if (owner[t] < 0 || augment(owner[t])) {
        owner[t] = m;
        chosen[m] = c;
        return true;
      }
    }
    return false;
  };
  for (Object m = 0; m < n; ++m) {
    if (m == m0) continue;
    seen.assign(n, 0);
    if (!augment(m)) return std::nullopt;
  }
  Bisection b;
  b.assign.resize(n);
  b.assign[m0] = a;
  for (Object m = 0; m < n; ++m)
    if (m != m0) b.assign[m] = chosen[m];
  return b;
}

IdReducibility is_id_reducible(const FiniteGroupoid& g, const std::vector<Bisection>* restrict) {
  IdReducibility r;
  for (Arrow a = 0; a < g.num_arrows(); ++a) {
    auto b = bisection_through(g, a, restrict);
    if (!b) {
      r.witness.clear();
      r.counterexample = a;
      return r;
    }
    r.witness.push_back(std::move(*b));
  }
  r.reducible = true;
  return r;
}

ValidationReport check_structure_identities(const FiniteGroupoid& g, std::size_t cap) {
  BisectionGroup B = enumerate_bisections(g, cap);
  const auto& E = B.elements();
  const std::size_t nb = E.size();
  ValidationReport r;

  // Evaluates one identity instance; a composition failure counts as a violation.
  auto check = [&](const char* name, std::vector<long long> witness, auto&& holds) {
    r.record(name);
    try {
      if (!holds()) r.fail(name, "identity fails", std::move(witness));
    } catch (const Error& e) {
      r.fail(name, e.what(), std::move(witness));
    }
  };

  std::vector<Bisection> inv(nb);
  std::vector<ObjectMap> sh(nb), sh_inv(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    sh[i] = shadow(g, E[i]);
    sh_inv[i] = invert_map(sh[i]);
    check("bisection-inverse", {static_cast<long long>(i)}, [&] {
      inv[i] = bisection_inverse(g, E[i]);
      return validate_bisection(g, inv[i]) &&
             bisection_product(g, E[i], inv[i]) == identity_bisection(g) &&
             bisection_product(g, inv[i], E[i]) == identity_bisection(g);
    });
    if (inv[i].assign.empty()) inv[i] = identity_bisection(g);
  }

  const long long n_arrows = g.num_arrows();
  for (std::size_t bi = 0; bi < nb; ++bi) {
    const Bisection& b = E[bi];
    const Bisection& bv = inv[bi];
    const ObjectMap& f = sh[bi];
    const ObjectMap& finv = sh_inv[bi];
    const ObjectMap fv = shadow(g, bv);
    const long long w = static_cast<long long>(bi);

    for (Object m = 0; m < g.num_objects(); ++m) {
      check("left-mult-of-unit", {w, m}, [&] { return left_mult(g, b, g.unit(m)) == b(m); });
      check("right-mult-of-unit", {w, m},
            [&] { return right_mult(g, g.unit(m), b) == b(finv[m]); });
      check("conjugation-unit", {w, m},
            [&] { return conjugate(g, b, g.unit(m)) == g.unit(f[m]); });
    }

    for (Arrow h = 0; h < n_arrows; ++h) {
      check("source-of-left-mult", {w, h},
            [&] { return g.source(left_mult(g, b, h)) == g.source(h); });
      check("source-of-right-mult", {w, h},
            [&] { return g.source(right_mult(g, h, b)) == fv[g.source(h)]; });
      check("target-of-left-mult", {w, h},
            [&] { return g.target(left_mult(g, b, h)) == f[g.target(h)]; });
      check("target-of-right-mult", {w, h},
            [&] { return g.target(right_mult(g, h, b)) == g.target(h); });
      check("inverse-of-left-mult", {w, h}, [&] {
        return g.inverse(left_mult(g, b, h)) == right_mult(g, g.inverse(h), bv);
      });
      check("inverse-of-right-mult", {w, h}, [&] {
        return g.inverse(right_mult(g, h, b)) == left_mult(g, bv, g.inverse(h));
      });
      check("conjugation-source", {w, h},
            [&] { return g.source(conjugate(g, b, h)) == f[g.source(h)]; });
      check("conjugation-target", {w, h},
            [&] { return g.target(conjugate(g, b, h)) == f[g.target(h)]; });
      check("conjugation-inverse", {w, h}, [&] {
        return conjugate(g, b, g.inverse(h)) == g.inverse(conjugate(g, b, h));
      });
      check("conjugation-split", {w, h},
            [&] { return conjugate(g, b, h) == left_mult(g, b, right_mult(g, h, bv)); });

      // h plays g in the composition identities below.
      for (Arrow u : g.arrows_from(g.target(h))) {
        check("left-mult-composition", {w, u, h}, [&] {
          return left_mult(g, b, g.compose(u, h)) == g.compose(left_mult(g, b, u), h);
        });
        check("conjugation-multiplicative", {w, u, h}, [&] {
          return conjugate(g, b, g.compose(u, h)) ==
                 g.compose(conjugate(g, b, u), conjugate(g, b, h));
        });
      }
      for (Arrow v : g.arrows_to(g.source(h)))
        check("right-mult-composition", {w, h, v}, [&] {
          return right_mult(g, g.compose(h, v), b) == g.compose(h, right_mult(g, v, b));
        });
      for (Arrow x : g.arrows_from(f[g.target(h)]))
        check("right-left-exchange", {w, x, h}, [&] {
          return g.compose(right_mult(g, x, b), h) == g.compose(x, left_mult(g, b, h));
        });
      for (Arrow y : g.arrows_to(finv[g.source(h)]))
        check("left-right-exchange", {w, h, y}, [&] {
          return g.compose(h, left_mult(g, b, y)) == g.compose(right_mult(g, h, b), y);
        });

      if (b(g.source(h)) == h) {
        check("through-bisection-at-target", {w, h},
              [&] { return b(finv[g.target(h)]) == h; });
        for (Arrow k : g.arrows_from(g.target(h)))
          check("right-translation-is-right-mult", {w, h, k},
                [&] { return g.compose(k, h) == right_mult(g, k, b); });
      }
    }
  }

  const Bisection id = identity_bisection(g);
  std::vector<std::vector<Bisection>> prod(nb, std::vector<Bisection>(nb));
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      check("bisection-closure", {static_cast<long long>(i), static_cast<long long>(j)}, [&] {
        prod[i][j] = bisection_product(g, E[i], E[j]);
        return validate_bisection(g, prod[i][j]) && B.index_of(prod[i][j]).has_value();
      });
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      if (prod[i][j].assign.empty() || prod[j][i].assign.empty()) continue;
      const long long wi = static_cast<long long>(i), wj = static_cast<long long>(j);
      check("shadow-homomorphism", {wi, wj}, [&] {
        ObjectMap c(g.num_objects());
        for (Object m = 0; m < g.num_objects(); ++m) c[m] = sh[i][sh[j][m]];
        return shadow(g, prod[i][j]) == c;
      });
      for (Arrow h = 0; h < n_arrows; ++h) {
        check("left-action", {wi, wj, h}, [&] {
          return left_mult(g, E[i], left_mult(g, E[j], h)) == left_mult(g, prod[i][j], h);
        });
        check("right-action", {wi, wj, h}, [&] {
          return right_mult(g, right_mult(g, h, E[j]), E[i]) == right_mult(g, h, prod[j][i]);
        });
        check("conjugation-action", {wi, wj, h}, [&] {
          return conjugate(g, E[i], conjugate(g, E[j], h)) == conjugate(g, prod[i][j], h);
        });
        check("left-right-commute", {wi, wj, h}, [&] {
          return left_mult(g, E[i], right_mult(g, h, E[j])) ==
                 right_mult(g, left_mult(g, E[i], h), E[j]);
        });
      }
    }
  for (std::size_t i = 0; i < nb; ++i)
    check("bisection-unit", {static_cast<long long>(i)}, [&] {
      return bisection_product(g, E[i], id) == E[i] && bisection_product(g, id, E[i]) == E[i];
    });
  // Exhaustive on triples for small groups, otherwise on a diagonal band.
  const std::size_t band = nb <= 24 ? nb : 4;
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t dj = 0; dj < band; ++dj)
      for (std::size_t dk = 0; dk < band; ++dk) {
        std::size_t j = nb <= 24 ? dj : (i + dj) % nb;
        std::size_t k = nb <= 24 ? dk : (i + dk + 1) % nb;
        check("bisection-associativity",
              {static_cast<long long>(i), static_cast<long long>(j), static_cast<long long>(k)},
              [&] {
                return bisection_product(g, bisection_product(g, E[i], E[j]), E[k]) ==
                       bisection_product(g, E[i], bisection_product(g, E[j], E[k]));
              });
      }
  return r;
}

namespace {

// Backtracking search for arrow bijections F subject to rules that map a fixed
// pair (x, F(x)) to implied pairs. Candidates for x are filtered by allowed.
class ConstrainedBijectionSearch {
 public:
  using Rule = std::function<void(Arrow, Arrow, std::vector<std::pair<Arrow, Arrow>>&)>;
  using Allowed = std::function<bool(Arrow, Arrow)>;

  ConstrainedBijectionSearch(int n, Rule rule, Allowed allowed, std::size_t cap)
      : n_(n), rule_(std::move(rule)), allowed_(std::move(allowed)), cap_(cap),
        image_(n, -1), preimage_(n, -1) {}

  std::vector<ArrowMap> run() {
    search();
    return out_;
  }
  std::size_t nodes() const { return nodes_; }

 private:
  bool assign(Arrow x, Arrow y) {
    if (x < 0 || y < 0 || x >= n_ || y >= n_) return false;
    if (image_[x] >= 0) return image_[x] == y;
    if (preimage_[y] >= 0 || !allowed_(x, y)) return false;
    image_[x] = y;
    preimage_[y] = x;
    trail_.push_back(x);
    return true;
  }

  bool propagate(Arrow x, Arrow y) {
    std::deque<std::pair<Arrow, Arrow>> queue{{x, y}};
    if (!assign(x, y)) return false;
    std::vector<std::pair<Arrow, Arrow>> implied;
    while (!queue.empty()) {
      auto [a, b] = queue.front();
      queue.pop_front();
      implied.clear();
      rule_(a, b, implied);
      for (auto [c, d] : implied) {
        bool fresh = c >= 0 && c < n_ && image_[c] < 0;
        if (!assign(c, d)) return false;
        if (fresh) queue.emplace_back(c, d);
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      Arrow x = trail_.back();
      trail_.pop_back();
      preimage_[image_[x]] = -1;
      image_[x] = -1;
    }
  }

  void search() {
    if (++nodes_ > cap_)
      throw EnumerationBoundError("commutant search exceeded " + std::to_string(cap_) + " nodes");
    auto it = std::find(image_.begin(), image_.end(), -1);
    if (it == image_.end()) {
      out_.push_back(image_);
      return;
    }
    Arrow x = static_cast<Arrow>(it - image_.begin());
    for (Arrow y = 0; y < n_; ++y) {
      if (preimage_[y] >= 0 || !allowed_(x, y)) continue;
      std::size_t mark = trail_.size();
      if (propagate(x, y)) search();
      undo(mark);
    }
  }

  int n_;
  Rule rule_;
  Allowed allowed_;
  std::size_t cap_;
  std::size_t nodes_ = 0;
  std::vector<Arrow> image_, preimage_, trail_;
  std::vector<ArrowMap> out_;
};

}  // namespace

CommutantReport r_equivariant_commutant(const FiniteGroupoid& g, std::size_t cap) {
  CommutantReport rep;
  BisectionGroup B = enumerate_bisections(g, cap);
  const int n = g.num_arrows();

  std::set<ArrowMap> lm;
  for (const auto& b : B.elements()) {
    ArrowMap f(n);
    for (Arrow a = 0; a < n; ++a) f[a] = left_mult(g, b, a);
    lm.insert(std::move(f));
  }
  rep.left_mults.assign(lm.begin(), lm.end());

  ConstrainedBijectionSearch eq(
      n,
      [&](Arrow x, Arrow y, std::vector<std::pair<Arrow, Arrow>>& out) {
        for (Arrow h : g.arrows_to(g.source(x))) {
          auto yh = g.find_product(y, h);
          out.emplace_back(g.compose(x, h), yh ? *yh : -1);
        }
      },
      [&](Arrow x, Arrow y) { return g.source(x) == g.source(y); }, cap);
  rep.r_equivariant = eq.run();
  rep.nodes += eq.nodes();
  std::sort(rep.r_equivariant.begin(), rep.r_equivariant.end());
  rep.equivariant_equals_left_mults = rep.r_equivariant == rep.left_mults;

  std::vector<ArrowMap> rights;
  for (const auto& b : B.elements()) {
    ArrowMap f(n);
    for (Arrow a = 0; a < n; ++a) f[a] = right_mult(g, a, b);
    rights.push_back(std::move(f));
  }
  ConstrainedBijectionSearch rc(
      n,
      [&](Arrow x, Arrow y, std::vector<std::pair<Arrow, Arrow>>& out) {
        for (const auto& f : rights) out.emplace_back(f[x], f[y]);
      },
      [](Arrow, Arrow) { return true; }, cap);
  rep.r_bisection_commutant = rc.run();
  rep.nodes += rc.nodes();
  std::sort(rep.r_bisection_commutant.begin(), rep.r_bisection_commutant.end());
  rep.bisection_commutant_equals_left_mults = rep.r_bisection_commutant == rep.left_mults;
  return rep;
}

}  // namespace groupoidal
