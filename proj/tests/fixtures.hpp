#ifndef GROUPOIDAL_TESTS_FIXTURES_HPP
#define GROUPOIDAL_TESTS_FIXTURES_HPP

#include <stdexcept>
#include <string>

#include "groupoidal/groupoid.hpp"

namespace fixtures {

inline groupoidal::Arrow arrow(const groupoidal::FiniteGroupoid& g, const std::string& label) {
  for (int a = 0; a < g.num_arrows(); ++a)
    if (g.arrow_label(a) == label) return a;
  throw std::invalid_argument("no arrow labelled " + label);
}

inline groupoidal::FiniteGroupoid z2_swap() {
  return groupoidal::make_action_groupoid(groupoidal::z2_swap_action());
}

inline groupoidal::FiniteGroupoid with_tables(const groupoidal::FiniteGroupoid& g,
                                              auto&& edit) {
  auto t = g.tables();
  edit(t);
  return groupoidal::FiniteGroupoid(std::move(t));
}

}  // namespace fixtures

#endif
