#include <doctest.h>

#include <array>
#include <random>

#include "tpl/error.hpp"
#include "tpl/gf.hpp"

using namespace tpl;

namespace {

// Schoolbook product of two polynomials over GF(p), reduced by a monic modulus.
std::vector<std::uint32_t> reference_mul(std::vector<std::uint32_t> a, std::vector<std::uint32_t> b,
                                         const std::vector<std::uint32_t>& mod, std::uint32_t p) {
  const std::size_t k = mod.size() - 1;
  std::vector<std::uint32_t> prod(2 * k, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  for (std::size_t d = prod.size(); d-- > k;) {
    const std::uint32_t lead = prod[d];
    for (std::size_t i = 0; i <= k; ++i) prod[d - k + i] = (prod[d - k + i] + (p - lead) * mod[i]) % p;
  }
  prod.resize(k);
  return prod;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

Jet jet(const Field& f, std::initializer_list<int> coeffs, int order) {
  std::vector<FieldElement> c;
  for (int x : coeffs) c.push_back(f.from_integer(x));
  return Jet::from_coefficients(c, order);
}

}  // namespace

TEST_CASE("field arithmetic examples") {
  const Field& f3 = Field::prime(3);
  CHECK(f3.from_integer(2) + f3.from_integer(2) == f3.from_integer(1));

  const Field& f4 = Field::get({2, 2, {1, 1, 1}});
  const FieldElement x = f4.from_coefficients({0, 1});
  CHECK((x * x).coefficients() == std::vector<std::uint32_t>{1, 1});

  const Field& f7 = Field::prime(7);
  CHECK(f7.from_integer(3) / f7.from_integer(5) == f7.from_integer(2));
  CHECK(code_of([&] { (void)(f7.one() / f7.zero()); }) == ErrorCode::DivisionByZero);
  CHECK(code_of([&] { (void)(f7.one() + f3.one()); }) == ErrorCode::DescriptorMismatch);
}

TEST_CASE("descriptor validation") {
  CHECK(code_of([] { (void)Field::prime(9); }) == ErrorCode::InvalidDescriptor);
  // x^2+1 = (x+1)^2 over GF(2).
  CHECK(code_of([] { (void)Field::get({2, 2, {1, 0, 1}}); }) == ErrorCode::InvalidDescriptor);
  // x^4+x^2+1 = (x^2+x+1)^2 over GF(2): no roots, still reducible.
  CHECK(code_of([] { (void)Field::get({2, 4, {1, 0, 1, 0, 1}}); }) == ErrorCode::InvalidDescriptor);
  CHECK(code_of([] { (void)Field::of_order(6); }) == ErrorCode::UnsupportedOrder);
  for (std::uint32_t q : {4u, 8u, 9u, 16u, 25u, 27u, 49u}) CHECK(Field::of_order(q).order() == q);
}

TEST_CASE("extension multiplication matches schoolbook reduction") {
  for (std::uint32_t q : {4u, 8u, 9u, 16u, 25u, 27u, 49u}) {
    const Field& f = Field::of_order(q);
    const auto& mod = f.descriptor().modulus;
    for (std::uint32_t a = 0; a < q; ++a) {
      for (std::uint32_t b = 0; b < q; ++b) {
        const auto expect = reference_mul(f.coefficients(a), f.coefficients(b), mod, f.characteristic());
        REQUIRE((f.element(a) * f.element(b)).coefficients() == expect);
      }
    }
  }
}

TEST_CASE("field axioms hold exhaustively for orders up to 49") {
  for (std::uint32_t q = 2; q <= 49; ++q) {
    std::uint32_t p = 0, k = 0;
    if (!prime_power(q, p, k) || k > 4) continue;
    const Field& f = Field::of_order(q);
    CAPTURE(q);
    for (std::uint32_t a = 0; a < q; ++a) {
      const FieldElement x = f.element(a);
      REQUIRE(x + f.zero() == x);
      REQUIRE(x * f.one() == x);
      REQUIRE(x + (-x) == f.zero());
      if (a != 0) REQUIRE(x * x.inverse() == f.one());
      for (std::uint32_t b = 0; b < q; ++b) {
        const FieldElement y = f.element(b);
        REQUIRE(x + y == y + x);
        REQUIRE(x * y == y * x);
        for (std::uint32_t c = 0; c < q; ++c) {
          const FieldElement z = f.element(c);
          REQUIRE((x + y) + z == x + (y + z));
          REQUIRE((x * y) * z == x * (y * z));
          REQUIRE(x * (y + z) == x * y + x * z);
        }
      }
    }
  }
}

TEST_CASE("jet arithmetic examples") {
  const Field& f5 = Field::prime(5);
  const Jet d = jet(f5, {2, 3}, 3) - jet(f5, {2, 1}, 3);
  CHECK(d == jet(f5, {0, 2}, 3));
  CHECK(d.valuation() == Valuation::finite(1));

  const Jet s = jet(f5, {1, 1}, 3) + jet(f5, {2}, 3);
  CHECK(s == jet(f5, {3, 1}, 3));
  CHECK(s.valuation() == Valuation::finite(0));

  const Field& f2 = Field::prime(2);
  const Jet z = jet(f2, {1}, 2) + jet(f2, {1}, 2);
  CHECK(z.valuation() == Valuation::saturated(2));
  CHECK(Jet::exact_zero(f2, 2).valuation() == Valuation::infinite());

  CHECK(code_of([&] { (void)(jet(f5, {1}, 3) + jet(f5, {1}, 2)); }) == ErrorCode::DescriptorMismatch);
}

TEST_CASE("cancellation depth examples") {
  const Field& f5 = Field::prime(5);
  CHECK(cancellation_depth(jet(f5, {2, 3}, 3), jet(f5, {2, 1}, 3)) == Valuation::finite(1));
  CHECK(cancellation_depth(jet(f5, {2, 3}, 3), jet(f5, {1, 3}, 3)) == Valuation::finite(0));
  const Field& f3 = Field::prime(3);
  const Valuation sat = cancellation_depth(jet(f3, {1, 2, 1}, 3), jet(f3, {1, 2, 1}, 3));
  CHECK(sat.kind() == Valuation::Kind::Saturated);
  CHECK(sat.value() == 3);
  CHECK(code_of([&] { (void)cancellation_depth(jet(f5, {1}, 3), jet(f5, {0, 1}, 3)); }) ==
        ErrorCode::ValuationMismatch);
}

TEST_CASE("tie depth equals cross-ratio defect depth") {
  const Field& f5 = Field::prime(5);
  const Jet one = jet(f5, {1}, 3);
  const auto same = tie_depth_crossratio_check(one, one, one, one);
  CHECK(same.lhs.beyond_truncation());
  CHECK(same.rhs.beyond_truncation());
  CHECK(same.equal);

  const auto first = tie_depth_crossratio_check(one, one, one, jet(f5, {1, 1}, 3));
  CHECK(first.lhs == Valuation::finite(1));
  CHECK(first.rhs == Valuation::finite(1));
  CHECK(first.equal);

  const Field& f7 = Field::prime(7);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coeff(0, 6), unit(1, 6);
  for (int trial = 0; trial < 1000; ++trial) {
    std::array<Jet, 4> js = {one, one, one, one};
    for (auto& j : js) {
      // Small perturbations make ties and deep cancellations common.
      j = jet(f7, {unit(rng), coeff(rng) % 2 ? 0 : coeff(rng), coeff(rng), coeff(rng)}, 4);
    }
    if (trial % 3 == 0) js[3] = js[1] * js[2] / js[0] + jet(f7, {0, 0, 0, coeff(rng)}, 4);
    const auto r = tie_depth_crossratio_check(js[0], js[1], js[2], js[3]);
    REQUIRE(r.equal);
  }
}

TEST_CASE("jet valuation laws on random samples") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const Field& f = Field::prime(p);
    std::mt19937_64 rng(p);
    std::uniform_int_distribution<std::uint32_t> c(0, p - 1);
    constexpr int K = 5;
    for (int trial = 0; trial < 500; ++trial) {
      auto random_jet = [&] {
        std::vector<FieldElement> cs;
        const int start = static_cast<int>(c(rng) % 3);
        for (int i = 0; i < K; ++i) cs.push_back(i < start ? f.zero() : f.element(c(rng)));
        return Jet::from_coefficients(cs, K);
      };
      const Jet a = random_jet(), b = random_jet();
      const Valuation va = a.valuation(), vb = b.valuation();
      if (!va.is_finite() || !vb.is_finite()) continue;
      if (va.value() + vb.value() < K) REQUIRE((a * b).valuation() == Valuation::finite(va.value() + vb.value()));
      const Valuation vs = (a + b).valuation();
      const int floor = std::min(va.value(), vb.value());
      REQUIRE(vs.value() >= floor);
      const bool tie = va == vb && (a.leading_coefficient() + b.leading_coefficient()).is_zero();
      if (!tie) REQUIRE(vs == Valuation::finite(floor));
    }
  }
}

TEST_CASE("jet inverse") {
  const Field& f7 = Field::prime(7);
  const Jet a = jet(f7, {3, 5, 1, 6}, 4);
  CHECK(a * a.inverse() == jet(f7, {1}, 4));
  CHECK(code_of([&] { (void)jet(f7, {0, 1}, 4).inverse(); }) == ErrorCode::DivisionByZero);
}
