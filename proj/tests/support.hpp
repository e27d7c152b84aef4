#pragma once

#include <doctest.h>

#include <algorithm>
#include <initializer_list>
#include <random>
#include <vector>

#include "tpl/error.hpp"
#include "tpl/residue.hpp"

namespace tpl::testing {

inline ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

inline int first_except(const std::vector<int>& xs, std::initializer_list<int> avoid) {
  for (int x : xs)
    if (std::find(avoid.begin(), avoid.end(), x) == avoid.end()) return x;
  return -1;
}

template <class Rng>
int random_except(const std::vector<int>& xs, std::initializer_list<int> avoid, Rng& rng) {
  std::vector<int> ok;
  for (int x : xs)
    if (std::find(avoid.begin(), avoid.end(), x) == avoid.end()) ok.push_back(x);
  return ok[std::uniform_int_distribution<std::size_t>(0, ok.size() - 1)(rng)];
}

/// Witness by the constructive recipe from a point and three of its lines.
template <class Rng>
BStarWitness random_witness(const ProjectivePlane& plane, Rng& rng) {
  const int d = std::uniform_int_distribution<int>(0, plane.size() - 1)(rng);
  const auto& pencil = plane.lines_through(d);
  const int l0 = random_except(pencil, {}, rng);
  const int l1 = random_except(pencil, {l0}, rng);
  const int l2 = random_except(pencil, {l0, l1}, rng);
  const int b = random_except(plane.points_on(l2), {d}, rng);
  const int c = random_except(plane.points_on(l1), {d}, rng);
  const int l3 = plane.join(b, c);
  const int e = plane.meet(l0, l3);
  const int a = random_except(plane.points_on(l3), {b, c, e}, rng);
  return {a, b, c, d, l0, l1, l2, l3};
}

/// Random nonzero residues off the incidences; generically of full rank.
template <class Rng>
ResidueModel random_model(const PlanePtr& plane, const Field& f, Rng& rng) {
  const auto v = static_cast<std::size_t>(plane->size());
  std::uniform_int_distribution<std::uint32_t> d(1, f.order() - 1);
  FieldMatrix u(f, v, v);
  for (std::size_t p = 0; p < v; ++p)
    for (std::size_t l = 0; l < v; ++l) u.raw(p, l) = plane->incident(static_cast<int>(p), static_cast<int>(l)) ? 0 : d(rng);
  return ResidueModel(plane, std::move(u));
}

/// u_{p,l} = alpha_p beta_l off the incidences.
template <class Rng>
ResidueModel pure_gauge_model(const PlanePtr& plane, const Field& f, Rng& rng, std::vector<FieldElement>* alpha = nullptr,
                              std::vector<FieldElement>* beta = nullptr) {
  const auto v = static_cast<std::size_t>(plane->size());
  std::uniform_int_distribution<std::uint32_t> d(1, f.order() - 1);
  std::vector<FieldElement> al, be;
  for (std::size_t i = 0; i < v; ++i) al.push_back(f.element(d(rng))), be.push_back(f.element(d(rng)));
  FieldMatrix u(f, v, v);
  for (std::size_t p = 0; p < v; ++p)
    for (std::size_t l = 0; l < v; ++l)
      if (!plane->incident(static_cast<int>(p), static_cast<int>(l))) u.set(p, l, al[p] * be[l]);
  if (alpha) *alpha = al;
  if (beta) *beta = be;
  return ResidueModel(plane, std::move(u));
}

}  // namespace tpl::testing
