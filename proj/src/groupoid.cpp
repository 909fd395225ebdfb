#include "groupoidal/groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "groupoidal/errors.hpp"

namespace groupoidal {

namespace {

std::string id_list(const std::string& what, long long id) {
  return what + " " + std::to_string(id) + " out of range";
}

}  // namespace

FiniteGroupoid::FiniteGroupoid(GroupoidTables t)
    : objects_(t.objects),
      src_(std::move(t.src)),
      tgt_(std::move(t.tgt)),
      unit_(std::move(t.unit)),
      inv_(std::move(t.inv)),
      arrow_labels_(std::move(t.arrow_labels)),
      object_labels_(std::move(t.object_labels)) {
  const int n = static_cast<int>(src_.size());
  if (objects_ < 0) throw StructuralError("negative object count");
  if (static_cast<int>(tgt_.size()) != n || static_cast<int>(inv_.size()) != n)
    throw StructuralError("src, tgt and inv must have one entry per arrow");
  if (static_cast<int>(unit_.size()) != objects_)
    throw StructuralError("units must have one entry per object");
  if (!arrow_labels_.empty() && static_cast<int>(arrow_labels_.size()) != n)
    throw StructuralError("arrow label count mismatch");
  if (!object_labels_.empty() && static_cast<int>(object_labels_.size()) != objects_)
    throw StructuralError("object label count mismatch");
  auto object_ok = [&](Object m) { return m >= 0 && m < objects_; };
  auto arrow_ok = [&](Arrow a) { return a >= 0 && a < n; };
  for (int a = 0; a < n; ++a) {
    if (!object_ok(src_[a])) throw StructuralError(id_list("src object", src_[a]));
    if (!object_ok(tgt_[a])) throw StructuralError(id_list("tgt object", tgt_[a]));
    if (!arrow_ok(inv_[a])) throw StructuralError(id_list("inv arrow", inv_[a]));
  }
  for (Arrow u : unit_)
    if (!arrow_ok(u)) throw StructuralError(id_list("unit arrow", u));

  from_.assign(objects_, {});
  to_.assign(objects_, {});
  for (int a = 0; a < n; ++a) {
    from_[src_[a]].push_back(a);
    to_[tgt_[a]].push_back(a);
  }

  std::size_t composable_pairs = 0;
  for (int a = 0; a < n; ++a) composable_pairs += to_[src_[a]].size();
  mul_.reserve(composable_pairs);
  for (const auto& [a, b, c] : t.mul) {
    if (!arrow_ok(a) || !arrow_ok(b) || !arrow_ok(c))
      throw StructuralError("mul entry (" + std::to_string(a) + "," + std::to_string(b) + "," +
                            std::to_string(c) + ") has an arrow out of range");
    if (src_[a] != tgt_[b])
      throw StructuralError("mul entry on non-composable pair (" + std::to_string(a) + "," +
                            std::to_string(b) + ")");
    auto [it, inserted] = mul_.emplace(key(a, b), c);
    if (!inserted && it->second != c)
      throw StructuralError("conflicting mul entries for (" + std::to_string(a) + "," +
                            std::to_string(b) + ")");
  }
  if (mul_.size() != composable_pairs)
    throw StructuralError("mul table is not total on composable pairs (" +
                          std::to_string(mul_.size()) + " of " +
                          std::to_string(composable_pairs) + ")");
}

Arrow FiniteGroupoid::compose(Arrow a, Arrow b) const {
  if (src_[a] != tgt_[b]) throw CompositionError(src_[a], tgt_[b]);
  return mul_.at(key(a, b));
}

std::optional<Arrow> FiniteGroupoid::find_product(Arrow a, Arrow b) const {
  if (a < 0 || b < 0 || a >= num_arrows() || b >= num_arrows()) return std::nullopt;
  auto it = mul_.find(key(a, b));
  if (it == mul_.end()) return std::nullopt;
  return it->second;
}

std::string FiniteGroupoid::arrow_label(Arrow a) const {
  return arrow_labels_.empty() ? std::to_string(a) : arrow_labels_[a];
}

std::string FiniteGroupoid::object_label(Object m) const {
  return object_labels_.empty() ? std::to_string(m) : object_labels_[m];
}

GroupoidTables FiniteGroupoid::tables() const {
  GroupoidTables t;
  t.objects = objects_;
  t.src = src_;
  t.tgt = tgt_;
  t.unit = unit_;
  t.inv = inv_;
  t.arrow_labels = arrow_labels_;
  t.object_labels = object_labels_;
  for (int a = 0; a < num_arrows(); ++a)
    for (Arrow b : to_[src_[a]]) t.mul.push_back({a, b, mul_.at(key(a, b))});
  return t;
}

ValidationReport validate_groupoid(const FiniteGroupoid& g, const ValidateOptions& options) {
  ValidationReport r;
  const int n = g.num_arrows();

  std::vector<char> hit_s(g.num_objects(), 0), hit_t(g.num_objects(), 0);
  for (int a = 0; a < n; ++a) {
    hit_s[g.source(a)] = 1;
    hit_t[g.target(a)] = 1;
  }
  for (Object m = 0; m < g.num_objects(); ++m) {
    r.record("surjectivity");
    if (!hit_s[m] || !hit_t[m]) r.fail("surjectivity", "object missed by s or t", {m});
  }

  for (Arrow a = 0; a < n; ++a) {
    for (Arrow b : g.arrows_to(g.source(a))) {
      r.record("axiom-i");
      Arrow ab = g.compose(a, b);
      if (g.source(ab) != g.source(b) || g.target(ab) != g.target(a))
        r.fail("axiom-i", "s(a.b)!=s(b) or t(a.b)!=t(a)", {a, b});
    }
  }

  auto check_triple = [&](Arrow a, Arrow b, Arrow c) {
    r.record("axiom-ii");
    Arrow ab = g.compose(a, b);
    Arrow bc = g.compose(b, c);
    auto left = g.find_product(ab, c);
    auto right = g.find_product(a, bc);
    if (!left || !right || *left != *right)
      r.fail("axiom-ii", "(a.b).c != a.(b.c)", {a, b, c});
  };
  std::size_t triples = 0;
  for (Arrow a = 0; a < n; ++a)
    for (Arrow b : g.arrows_to(g.source(a))) triples += g.arrows_to(g.source(b)).size();
  if (triples <= options.triple_budget) {
    for (Arrow a = 0; a < n; ++a)
      for (Arrow b : g.arrows_to(g.source(a)))
        for (Arrow c : g.arrows_to(g.source(b))) check_triple(a, b, c);
  } else {
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (std::size_t k = 0; k < options.triple_budget; ++k) {
      Arrow a = pick(rng);
      const auto& bs = g.arrows_to(g.source(a));
      Arrow b = bs[std::uniform_int_distribution<std::size_t>(0, bs.size() - 1)(rng)];
      const auto& cs = g.arrows_to(g.source(b));
      Arrow c = cs[std::uniform_int_distribution<std::size_t>(0, cs.size() - 1)(rng)];
      check_triple(a, b, c);
    }
  }

  for (Object m = 0; m < g.num_objects(); ++m) {
    r.record("axiom-iii");
    Arrow u = g.unit(m);
    if (g.source(u) != m || g.target(u) != m) r.fail("axiom-iii", "Id_m is not a loop at m", {m});
  }
  for (Arrow a = 0; a < n; ++a) {
    r.record("axiom-iii");
    auto left = g.find_product(g.unit(g.target(a)), a);
    auto right = g.find_product(a, g.unit(g.source(a)));
    if (!left || *left != a || !right || *right != a)
      r.fail("axiom-iii", "Id_t(g).g != g or g.Id_s(g) != g", {a});
  }

  for (Arrow a = 0; a < n; ++a) {
    r.record("axiom-iv");
    Arrow ai = g.inverse(a);
    if (g.source(ai) != g.target(a) || g.target(ai) != g.source(a)) {
      r.fail("axiom-iv", "s(g^-1)!=t(g) or t(g^-1)!=s(g)", {a});
      continue;
    }
    auto right = g.find_product(a, ai);
    auto left = g.find_product(ai, a);
    if (!right || *right != g.unit(g.target(a)) || !left || *left != g.unit(g.source(a)))
      r.fail("axiom-iv", "g.g^-1 != Id_t(g) or g^-1.g != Id_s(g)", {a});
  }
  return r;
}

FiniteGroupoid make_group(const std::vector<std::vector<int>>& table,
                          std::vector<std::string> labels) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw InputError("empty group table");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw InputError("group table is not square");
    for (int c : row)
      if (c < 0 || c >= n) throw InputError("group table entry out of range");
  }
  int e = -1;
  for (int x = 0; x < n && e < 0; ++x) {
    bool unit = true;
    for (int y = 0; y < n && unit; ++y) unit = table[x][y] == y && table[y][x] == y;
    if (unit) e = x;
  }
  if (e < 0) throw InputError("group table has no identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw InputError("group table is not associative");
  GroupoidTables t;
  t.objects = 1;
  t.src.assign(n, 0);
  t.tgt.assign(n, 0);
  t.unit = {e};
  t.inv.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table[a][b] == e && table[b][a] == e) t.inv[a] = b;
    if (t.inv[a] < 0) throw InputError("group element without inverse");
    for (int b = 0; b < n; ++b) t.mul.push_back({a, b, table[a][b]});
  }
  t.arrow_labels = std::move(labels);
  return FiniteGroupoid(std::move(t));
}

FiniteGroupoid make_cyclic_group(int n) {
  if (n < 1) throw InputError("cyclic group order must be positive");
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    labels[a] = a == 0 ? "e" : (a == 1 ? "r" : "r" + std::to_string(a));
  }
  return make_group(table, labels);
}

FiniteGroupoid make_symmetric_group(int n) {
  if (n < 1) throw InputError("symmetric group degree must be positive");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const int k = static_cast<int>(perms.size());
  auto index = [&](const std::vector<int>& q) {
    return static_cast<int>(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<std::vector<int>> table(k, std::vector<int>(k));
  std::vector<std::string> labels(k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      std::vector<int> c(n);
      for (int i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      table[a][b] = index(c);
    }
    std::string s = "[";
    for (int i = 0; i < n; ++i) s += (i ? " " : "") + std::to_string(perms[a][i]);
    labels[a] = s + "]";
  }
  return make_group(table, labels);
}

void check_action(const FiniteGroupAction& action) {
  const auto& G = action.group;
  if (G.num_objects() != 1) throw InputError("action group must have exactly one object");
  if (action.carrier < 0) throw InputError("negative carrier size");
  if (static_cast<int>(action.act.size()) != G.num_arrows())
    throw InputError("action table must have one row per group element");
  for (const auto& row : action.act) {
    if (static_cast<int>(row.size()) != action.carrier)
      throw InputError("action row must have one entry per carrier point");
    for (int x : row)
      if (x < 0 || x >= action.carrier) throw InputError("action value out of range");
  }
  for (int m = 0; m < action.carrier; ++m) {
    if (action.act[G.unit(0)][m] != m) throw InputError("identity does not act trivially");
    for (int g = 0; g < G.num_arrows(); ++g)
      for (int h = 0; h < G.num_arrows(); ++h)
        if (action.act[h][action.act[g][m]] != action.act[G.compose(h, g)][m])
          throw InputError("action table violates act(h, act(g, m)) = act(h.g, m)");
  }
}

FiniteGroupoid make_pair_groupoid(int n) {
  if (n < 0) throw InputError("negative pair groupoid size");
  GroupoidTables t;
  t.objects = n;
  auto id = [n](int m2, int m1) { return m2 * n + m1; };
  for (int m2 = 0; m2 < n; ++m2)
    for (int m1 = 0; m1 < n; ++m1) {
      t.src.push_back(m1);
      t.tgt.push_back(m2);
      t.inv.push_back(id(m1, m2));
      t.arrow_labels.push_back("(" + std::to_string(m2) + "," + std::to_string(m1) + ")");
      for (int m0 = 0; m0 < n; ++m0) t.mul.push_back({id(m2, m1), id(m1, m0), id(m2, m0)});
    }
  for (int m = 0; m < n; ++m) t.unit.push_back(id(m, m));
  return FiniteGroupoid(std::move(t));
}

FiniteGroupoid make_action_groupoid(const FiniteGroupAction& action) {
  check_action(action);
  const auto& G = action.group;
  const int M = action.carrier;
  const int k = G.num_arrows();
  GroupoidTables t;
  t.objects = M;
  auto id = [M](int g, int m) { return g * M + m; };
  for (int g = 0; g < k; ++g)
    for (int m = 0; m < M; ++m) {
      int gm = action.act[g][m];
      t.src.push_back(m);
      t.tgt.push_back(gm);
      t.inv.push_back(id(G.inverse(g), gm));
      t.arrow_labels.push_back("(" + G.arrow_label(g) + "," + std::to_string(m) + ")");
      for (int h = 0; h < k; ++h) t.mul.push_back({id(h, gm), id(g, m), id(G.compose(h, g), m)});
    }
  for (int m = 0; m < M; ++m) t.unit.push_back(id(G.unit(0), m));
  return FiniteGroupoid(std::move(t));
}

FiniteGroupoid make_fibred_pair_groupoid(const std::vector<int>& projection) {
  const int n = static_cast<int>(projection.size());
  GroupoidTables t;
  t.objects = n;
  std::vector<std::vector<int>> id(n, std::vector<int>(n, -1));
  for (int m2 = 0; m2 < n; ++m2)
    for (int m1 = 0; m1 < n; ++m1)
      if (projection[m1] == projection[m2]) {
        id[m2][m1] = static_cast<int>(t.src.size());
        t.src.push_back(m1);
        t.tgt.push_back(m2);
        t.arrow_labels.push_back("(" + std::to_string(m2) + "," + std::to_string(m1) + ")");
      }
  t.inv.resize(t.src.size());
  for (int m2 = 0; m2 < n; ++m2)
    for (int m1 = 0; m1 < n; ++m1) {
      if (id[m2][m1] < 0) continue;
      t.inv[id[m2][m1]] = id[m1][m2];
      for (int m0 = 0; m0 < n; ++m0)
        if (id[m1][m0] >= 0) t.mul.push_back({id[m2][m1], id[m1][m0], id[m2][m0]});
    }
  for (int m = 0; m < n; ++m) t.unit.push_back(id[m][m]);
  return FiniteGroupoid(std::move(t));
}

FiniteGroupoid make_product_groupoid(const FiniteGroupoid& g1, const FiniteGroupoid& g2) {
  const int A2 = g2.num_arrows();
  const int M2 = g2.num_objects();
  GroupoidTables t;
  t.objects = g1.num_objects() * M2;
  auto arrow = [A2](int a1, int a2) { return a1 * A2 + a2; };
  auto object = [M2](int m1, int m2) { return m1 * M2 + m2; };
  for (int a1 = 0; a1 < g1.num_arrows(); ++a1)
    for (int a2 = 0; a2 < A2; ++a2) {
      t.src.push_back(object(g1.source(a1), g2.source(a2)));
      t.tgt.push_back(object(g1.target(a1), g2.target(a2)));
      t.inv.push_back(arrow(g1.inverse(a1), g2.inverse(a2)));
      t.arrow_labels.push_back("(" + g1.arrow_label(a1) + "," + g2.arrow_label(a2) + ")");
      for (Arrow b1 : g1.arrows_to(g1.source(a1)))
        for (Arrow b2 : g2.arrows_to(g2.source(a2)))
          t.mul.push_back({arrow(a1, a2), arrow(b1, b2),
                           arrow(g1.compose(a1, b1), g2.compose(a2, b2))});
    }
  for (int m1 = 0; m1 < g1.num_objects(); ++m1)
    for (int m2 = 0; m2 < M2; ++m2) t.unit.push_back(arrow(g1.unit(m1), g2.unit(m2)));
  return FiniteGroupoid(std::move(t));
}

FiniteGroupAction z2_swap_action() {
  FiniteGroupAction a;
  a.group = make_cyclic_group(2);
  a.carrier = 2;
  a.act = {{0, 1}, {1, 0}};
  return a;
}

}  // namespace groupoidal
