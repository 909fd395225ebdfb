#ifndef GROUPOIDAL_GROUPOID_HPP
#define GROUPOIDAL_GROUPOID_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "groupoidal/report.hpp"

namespace groupoidal {

using Object = int;
using Arrow = int;

struct GroupoidTables {
  int objects = 0;
  std::vector<Object> src;
  std::vector<Object> tgt;
  std::vector<Arrow> unit;
  std::vector<Arrow> inv;
  std::vector<std::array<Arrow, 3>> mul;  // (a, b, a.b)
  std::vector<std::string> arrow_labels;
  std::vector<std::string> object_labels;
};

// Arrows and objects are dense ids. Immutable once built.
class FiniteGroupoid {
 public:
  FiniteGroupoid() = default;
  // Throws StructuralError on out-of-range ids or a mul table that is not
  // defined exactly on the composable pairs.
  explicit FiniteGroupoid(GroupoidTables tables);

  int num_objects() const { return objects_; }
  int num_arrows() const { return static_cast<int>(src_.size()); }

  Object source(Arrow a) const { return src_[a]; }
  Object target(Arrow a) const { return tgt_[a]; }
  Arrow unit(Object m) const { return unit_[m]; }
  Arrow inverse(Arrow a) const { return inv_[a]; }
  bool composable(Arrow a, Arrow b) const { return src_[a] == tgt_[b]; }

  // a.b, throws CompositionError unless s(a) == t(b).
  Arrow compose(Arrow a, Arrow b) const;
  std::optional<Arrow> find_product(Arrow a, Arrow b) const;

  const std::vector<Arrow>& arrows_from(Object m) const { return from_[m]; }  // s^{-1}(m)
  const std::vector<Arrow>& arrows_to(Object m) const { return to_[m]; }      // t^{-1}(m)

  std::string arrow_label(Arrow a) const;
  std::string object_label(Object m) const;
  GroupoidTables tables() const;

 private:
  std::uint64_t key(Arrow a, Arrow b) const {
    return static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(src_.size()) +
           static_cast<std::uint64_t>(b);
  }

  int objects_ = 0;
  std::vector<Object> src_, tgt_;
  std::vector<Arrow> unit_, inv_;
  std::unordered_map<std::uint64_t, Arrow> mul_;
  std::vector<std::vector<Arrow>> from_, to_;
  std::vector<std::string> arrow_labels_, object_labels_;
};

struct ValidateOptions {
  // Composable triples are checked exhaustively up to this many, sampled above.
  std::size_t triple_budget = 2'000'000;
  std::uint64_t seed = 0;
};

// Collects every violated groupoid axiom with a witness tuple of arrow/object ids.
// Check names: "surjectivity", "axiom-i", "axiom-ii", "axiom-iii", "axiom-iv".
ValidationReport validate_groupoid(const FiniteGroupoid& g, const ValidateOptions& options = {});

// One-object groupoid from a multiplication table table[a][b] = a*b.
FiniteGroupoid make_group(const std::vector<std::vector<int>>& table,
                          std::vector<std::string> labels = {});
FiniteGroupoid make_cyclic_group(int n);
FiniteGroupoid make_symmetric_group(int n);

struct FiniteGroupAction {
  FiniteGroupoid group;                // one object
  int carrier = 0;                     // |M|
  std::vector<std::vector<int>> act;   // act[g][m]
};

// Throws InputError if act is not a group action.
void check_action(const FiniteGroupAction& action);

// Pair(M): arrow (m2, m1) has id m2 * n + m1, s = m1, t = m2.
FiniteGroupoid make_pair_groupoid(int n);
// G x M with arrow (g, m) at id g * |M| + m, s = m, t = g.m.
FiniteGroupoid make_action_groupoid(const FiniteGroupAction& action);
// Pair groupoid restricted to pairs in a common fibre of the projection M -> Sigma.
FiniteGroupoid make_fibred_pair_groupoid(const std::vector<int>& projection);
// Componentwise; arrow (a1, a2) at id a1 * |G2| + a2, object (m1, m2) at m1 * |M2| + m2.
FiniteGroupoid make_product_groupoid(const FiniteGroupoid& g1, const FiniteGroupoid& g2);

// The swap action of Z2 on {0, 1}; arrows (e,0), (e,1), (r,0), (r,1).
FiniteGroupAction z2_swap_action();

}  // namespace groupoidal

#endif
