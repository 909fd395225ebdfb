#ifndef GROUPOIDAL_BISECTION_HPP
#define GROUPOIDAL_BISECTION_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "groupoidal/groupoid.hpp"
#include "groupoidal/report.hpp"

namespace groupoidal {

// A section of s with bijective shadow. Equality is pointwise.
struct Bisection {
  std::vector<Arrow> assign;

  Arrow operator()(Object m) const { return assign[m]; }
  bool operator==(const Bisection&) const = default;
  auto operator<=>(const Bisection&) const = default;
};

struct BisectionHash {
  std::size_t operator()(const Bisection& b) const;
};

using ObjectMap = std::vector<Object>;

bool validate_bisection(const FiniteGroupoid& g, const Bisection& b);
Bisection identity_bisection(const FiniteGroupoid& g);
// m -> t(b(m))
ObjectMap shadow(const FiniteGroupoid& g, const Bisection& b);
ObjectMap invert_map(const ObjectMap& f);

// (b2 . b1)(m) = b2(t(b1(m))) . b1(m)
Bisection bisection_product(const FiniteGroupoid& g, const Bisection& b2, const Bisection& b1);
// Inv o b o (t_* b)^{-1}
Bisection bisection_inverse(const FiniteGroupoid& g, const Bisection& b);

// L_b(a) = b(t(a)) . a
Arrow left_mult(const FiniteGroupoid& g, const Bisection& b, Arrow a);
// R_b(a) = a . b((t_* b)^{-1}(s(a)))
Arrow right_mult(const FiniteGroupoid& g, Arrow a, const Bisection& b);
// C_b(a) = b(t(a)) . a . b(s(a))^{-1}
Arrow conjugate(const FiniteGroupoid& g, const Bisection& b, Arrow a);

class BisectionGroup {
 public:
  // elements must be closed under product and inverse and contain the identity.
  BisectionGroup(FiniteGroupoid g, std::vector<Bisection> elements);

  const FiniteGroupoid& groupoid() const { return g_; }

  const std::vector<Bisection>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  const Bisection& operator[](std::size_t i) const { return elements_[i]; }
  std::optional<std::size_t> index_of(const Bisection& b) const;
  std::size_t identity_index() const { return identity_; }
  // Index of elements[i] . elements[j]; the table is filled on first use.
  std::size_t product(std::size_t i, std::size_t j) const;
  std::size_t inverse(std::size_t i) const;

 private:
  struct Tables {
    std::once_flag once;
    std::vector<std::size_t> product, inverse;
  };
  const Tables& tables() const;

  FiniteGroupoid g_;
  std::vector<Bisection> elements_;
  std::unordered_map<Bisection, std::size_t, BisectionHash> index_;
  std::size_t identity_ = 0;
  std::shared_ptr<Tables> tables_ = std::make_shared<Tables>();
};

// All bisections in lexicographic order of assign. Throws EnumerationBoundError
// when the product of s-fibre sizes exceeds cap.
BisectionGroup enumerate_bisections(const FiniteGroupoid& g, std::size_t cap);

// A bisection b with b(s(a)) = a, by augmenting-path matching when unrestricted,
// or the first element of restrict with that property.
std::optional<Bisection> bisection_through(const FiniteGroupoid& g, Arrow a,
                                           const std::vector<Bisection>* restrict = nullptr);

struct IdReducibility {
  bool reducible = false;
  std::vector<Bisection> witness;      // per arrow, when reducible
  std::optional<Arrow> counterexample; // when not
};
IdReducibility is_id_reducible(const FiniteGroupoid& g,
                               const std::vector<Bisection>* restrict = nullptr);

// Exhaustive evaluation of the structure-map identities of the bisection
// actions, the group laws of bisections, and the action laws of L, R, C.
ValidationReport check_structure_identities(const FiniteGroupoid& g, std::size_t cap);

using ArrowMap = std::vector<Arrow>;

struct CommutantReport {
  std::vector<ArrowMap> r_equivariant;  // bijections with F(g.h) = F(g).h
  std::vector<ArrowMap> left_mults;     // {L_b : b in bisections}
  bool equivariant_equals_left_mults = false;
  std::vector<ArrowMap> r_bisection_commutant;  // bijections commuting with every R_b
  bool bisection_commutant_equals_left_mults = false;
  std::size_t nodes = 0;
};

// Backtracking with constraint propagation; throws EnumerationBoundError when more
// than cap search nodes are visited.
CommutantReport r_equivariant_commutant(const FiniteGroupoid& g, std::size_t cap);

}  // namespace groupoidal

#endif
