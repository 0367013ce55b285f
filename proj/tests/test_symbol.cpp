#include <doctest.h>

#include <cmath>

#include "test_util.hpp"

using namespace btq;

namespace {
const Symbol z = Symbol::variable(1, 1);
const Symbol zb = Symbol::conj_variable(1, 1);
}  // namespace

TEST_CASE("products and sums reach canonical form") {
  SUBCASE("z * conj(z) is the |z|^2 monomial") {
    const Symbol p = z * zb;
    REQUIRE(p.terms().size() == 1);
    const auto& [key, coef] = *p.terms().begin();
    CHECK(key.alpha == std::vector<int>{1});
    CHECK(key.beta == std::vector<int>{1});
    CHECK(key.rate.is_zero());
    CHECK(coef == cxd(1.0));
  }
  SUBCASE("Gaussian rates add under products") {
    const Symbol g = Symbol::gaussian(1, Rational(1));
    const Symbol p = g * g;
    REQUIRE(p.terms().size() == 1);
    CHECK(p.terms().begin()->first.rate == Rational(2));
  }
  SUBCASE("(z+1)(z-1) = z^2 - 1") {
    const Symbol one = Symbol::constant(1, 1.0);
    const Symbol p = (z + one) * (z - one);
    CHECK(p.identical(z * z - one));
  }
}

TEST_CASE("evaluation of products equals pointwise products") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const Symbol a = testing::random_symbol(rng, 2, 4, 4, true);
    const Symbol b = testing::random_symbol(rng, 2, 4, 4, true);
    const Symbol ab = a * b;
    for (int i = 0; i < 5; ++i) {
      const auto p = testing::random_point(rng, 2);
      const cxd lhs = ab.eval(p);
      const cxd rhs = a.eval(p) * b.eval(p);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("Wirtinger derivatives") {
  CHECK(d_z(z * z, 1).identical(2.0 * z));
  CHECK(d_zbar(z, 1).is_zero());

  const Symbol g = Symbol::gaussian(1, Rational(1));
  CHECK(d_z(g, 1).identical(-1.0 * (zb * g)));

  SUBCASE("Leibniz rule on random symbols") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
      const Symbol a = testing::random_symbol(rng, 2, 3, 4, true);
      const Symbol b = testing::random_symbol(rng, 2, 3, 4, true);
      for (int m = 1; m <= 2; ++m) {
        const Symbol lhs = d_z(a * b, m);
        const Symbol rhs = d_z(a, m) * b + a * d_z(b, m);
        CHECK(Symbol::max_coef_distance(lhs, rhs) <= 1e-11);
      }
    }
  }
}

TEST_CASE("Poisson bracket normalization") {
  const Symbol br = poisson(z, zb);
  REQUIRE(br.terms().size() == 1);
  CHECK(std::abs(br.terms().begin()->second - cxd(0.0, -2.0 * M_PI)) <= 1e-14);
  CHECK(poisson(z, z).is_zero());
}

TEST_CASE("cochains") {
  const Symbol one = Symbol::constant(1, 1.0);
  CHECK(cochain(1, z, zb, +1).identical(one));
  CHECK(cochain(1, z, zb, -1).identical(-one));

  SUBCASE("zeroth cochain is the product") {
    std::mt19937_64 rng(3);
    const Symbol a = testing::random_symbol(rng, 1, 3, 3, true);
    const Symbol b = testing::random_symbol(rng, 1, 3, 3, true);
    CHECK(cochain(0, a, b, -1).identical(a * b));
  }

  SUBCASE("C_2(z^2, zb^2) = 2 for either sign") {
    CHECK(cochain(2, z * z, zb * zb, +1).identical(2.0 * one));
    CHECK(cochain(2, z * z, zb * zb, -1).identical(2.0 * one));
  }

  SUBCASE("C_1 antisymmetry identity, both signs, random symbols") {
    std::mt19937_64 rng(5);
    for (int sign : {+1, -1}) {
      // the spec example pair
      const Symbol lhs0 = cochain(1, z * z, zb, sign) - cochain(1, zb, z * z, sign);
      const Symbol rhs0 = cxd(sign) * (cxd(0.0, 1.0) / (2.0 * M_PI)) * poisson(z * z, zb);
      CHECK(Symbol::max_coef_distance(lhs0, rhs0) <= 1e-12);
      for (int trial = 0; trial < 10; ++trial) {
        const Symbol a = testing::random_symbol(rng, 2, 3, 3, true);
        const Symbol b = testing::random_symbol(rng, 2, 3, 3, true);
        const Symbol lhs = cochain(1, a, b, sign) - cochain(1, b, a, sign);
        const Symbol rhs = cxd(sign) * (cxd(0.0, 1.0) / (2.0 * M_PI)) * poisson(a, b);
        CHECK(Symbol::max_coef_distance(lhs, rhs) <= 1e-10);
      }
    }
  }
}

TEST_CASE("flat restriction") {
  CHECK(flat(Symbol::monomial(2, {0, 1}, {0, 1})).is_zero());

  const Symbol s = Symbol::variable(2, 1) + Symbol::monomial(2, {1, 1}, {0, 1});
  CHECK(flat(s).identical(z));

  const Symbol damped = Symbol::monomial(2, {1, 1}, {1, 1}, 1.0, Rational(1));
  CHECK(flat(damped).is_zero());

  SUBCASE("rate survives on variable 1") {
    const Symbol g = Symbol::monomial(2, {2, 0}, {0, 0}, 1.0, Rational(1, 2));
    const Symbol f = flat(g);
    REQUIRE(f.terms().size() == 1);
    CHECK(f.num_vars() == 1);
    CHECK(f.terms().begin()->first.rate == Rational(1, 2));
    CHECK(f.terms().begin()->first.alpha == std::vector<int>{2});
  }
}

TEST_CASE("primed Laplacian") {
  const Symbol abs2_2 = Symbol::monomial(2, {0, 1}, {0, 1});
  CHECK(laplacian_prime(abs2_2).identical(Symbol::constant(2, 1.0)));
  CHECK(laplacian_prime(Symbol::variable(2, 1)).is_zero());

  const Symbol abs4_2 = abs2_2 * abs2_2;
  CHECK(laplacian_prime(abs4_2).identical(4.0 * abs2_2));

  CHECK_THROWS_AS(laplacian_prime(z), std::invalid_argument);
}

TEST_CASE("upsilon cochains") {
  SUBCASE("upsilon_0 is the product of flats") {
    std::mt19937_64 rng(9);
    const Symbol a = testing::random_symbol(rng, 2, 3, 3);
    const Symbol b = testing::random_symbol(rng, 2, 3, 3);
    CHECK(Symbol::max_coef_distance(upsilon(0, a, b, -1), flat(a) * flat(b)) <= 1e-12);
  }
  SUBCASE("upsilon_1(|z2|^2, 1) = 1: only the j=1 term survives") {
    const Symbol a = Symbol::monomial(2, {0, 1}, {0, 1});
    const Symbol one2 = Symbol::constant(2, 1.0);
    CHECK(upsilon(1, a, one2, -1).identical(Symbol::constant(1, 1.0)));
  }
  SUBCASE("upsilon_1(z1, zb1) = sign: only the l=1 term survives") {
    const Symbol a = Symbol::variable(2, 1);
    const Symbol b = Symbol::conj_variable(2, 1);
    CHECK(upsilon(1, a, b, +1).identical(Symbol::constant(1, 1.0)));
    CHECK(upsilon(1, a, b, -1).identical(Symbol::constant(1, -1.0)));
  }
  SUBCASE("one-variable input treats the tail as absent") {
    CHECK(upsilon(1, z, zb, +1).identical(cochain(1, z, zb, +1)));
  }
}

TEST_CASE("symmetric tail detection") {
  CHECK(check_symmetric_tail(Symbol::monomial(3, {0, 1, 0}, {0, 1, 0}) +
                             Symbol::monomial(3, {0, 0, 1}, {0, 0, 1})));
  CHECK_FALSE(check_symmetric_tail(Symbol::variable(3, 2)));
  CHECK(check_symmetric_tail(Symbol::monomial(3, {1, 1, 1}, {0, 1, 1})));
  // N = 2: single tail variable, trivially symmetric
  CHECK(check_symmetric_tail(Symbol::monomial(2, {1, 2}, {0, 1})));
}

TEST_CASE("pi_h on the plane") {
  const DomainSpec dom = DomainSpec::plane(0.3);
  const double h = 0.3;

  SUBCASE("pi_h(|z2|^2) = h") {
    const Symbol out = pi_h(Symbol::monomial(2, {0, 1}, {0, 1}), dom);
    CHECK(Symbol::max_coef_distance(out, Symbol::constant(1, h)) <= 1e-15);
  }
  SUBCASE("pi_h(|z1|^2 |z2|^2) = h |z|^2") {
    const Symbol out = pi_h(Symbol::monomial(2, {1, 1}, {1, 1}), dom);
    CHECK(Symbol::max_coef_distance(out, h * (z * zb)) <= 1e-15);
  }
  SUBCASE("pi_h of the determinant-Gaussian representative") {
    const Symbol phi = Symbol::monomial(2, {1, 1}, {1, 1}, 1.0, Rational(1));
    const Symbol out = pi_h(phi, dom);
    const Symbol expect = Symbol::monomial(1, {1}, {1}, h / ((1 + h) * (1 + h)), Rational(1));
    CHECK(Symbol::max_coef_distance(out, expect) <= 1e-15);
  }
  SUBCASE("normalization pi_h(1) = 1 for N <= 4, both domains") {
    for (int N = 1; N <= 4; ++N) {
      const Symbol one = Symbol::constant(N, 1.0);
      CHECK(pi_h(one, dom).identical(Symbol::constant(1, 1.0)));
      CHECK(pi_h(one, DomainSpec::disc(0.3)).identical(Symbol::constant(1, 1.0)));
    }
  }
  SUBCASE("spectral reduction: symbols in variable 1 are fixed points") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
      Symbol s1 = testing::random_symbol(rng, 1, 3, 4);
      Symbol s(3);
      for (const auto& [key, coef] : s1.terms())
        s.add_term(TermKey{{key.alpha[0], 0, 0}, {key.beta[0], 0, 0}, key.rate}, coef);
      CHECK(Symbol::max_coef_distance(pi_h(s, dom), s1) <= 1e-15);
    }
  }
  SUBCASE("disc rejects Gaussian rates") {
    const Symbol phi = Symbol::monomial(2, {1, 1}, {1, 1}, 1.0, Rational(1));
    CHECK_THROWS_AS(pi_h(phi, DomainSpec::disc(0.3)), std::invalid_argument);
  }
}

TEST_CASE("pi_h_series is the exact h-expansion of pi_h") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 15; ++trial) {
    const Symbol s = testing::random_symbol(rng, 3, 4, 4);
    const auto series = pi_h_series(s);
    for (double h : {0.7, 0.25, 0.04}) {
      const Symbol direct = pi_h(s, DomainSpec::plane(h));
      Symbol summed = Symbol::zero(1);
      double hp = 1.0;
      for (const auto& term : series) {
        summed = summed + cxd(hp) * term;
        hp *= h;
      }
      CHECK(Symbol::max_coef_distance(direct, summed) <= 1e-12);
    }
  }
  SUBCASE("validates the quarter-Laplacian convention") {
    const auto series = pi_h_series(Symbol::monomial(2, {0, 1}, {0, 1}));
    REQUIRE(series.size() == 2);
    CHECK(series[0].is_zero());
    CHECK(series[1].identical(Symbol::constant(1, 1.0)));
  }
  SUBCASE("rejects Gaussian-damped symbols") {
    CHECK_THROWS_AS(pi_h_series(Symbol::gaussian(2, Rational(1))), std::invalid_argument);
  }
}

TEST_CASE("upsilon consistency with the pi_h-cochain series") {
  // sum_{r+i+j=s} C_r(S_i, S_j) = upsilon_s through h^3 on random pairs
  std::mt19937_64 rng(41);
  for (int sign : {+1, -1}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Symbol a = testing::random_symbol(rng, 2, 3, 3);
      const Symbol b = testing::random_symbol(rng, 2, 3, 3);
      const auto sa = pi_h_series(a);
      const auto sb = pi_h_series(b);
      for (int s = 0; s <= 3; ++s) {
        Symbol lhs = Symbol::zero(1);
        for (int r = 0; r <= s; ++r)
          for (int i = 0; i + r <= s; ++i) {
            const int j = s - r - i;
            if (i < static_cast<int>(sa.size()) && j < static_cast<int>(sb.size()))
              lhs = lhs + cochain(r, sa[i], sb[j], sign);
          }
        CHECK(Symbol::max_coef_distance(lhs, upsilon(s, a, b, sign)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("variable count mismatches are rejected") {
  CHECK_THROWS_AS(z + Symbol::variable(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(z * Symbol::variable(2, 1), std::invalid_argument);
  CHECK_THROWS_AS(d_z(z, 2), std::invalid_argument);
}
