#include <catch2/catch_amalgamated.hpp>

#include "latcliff/multivector.hpp"
#include "latcliff/rng.hpp"
#include "oracles.hpp"

using namespace latcliff;

namespace {

double rel_err(const Multivector& x, const Multivector& y) {
  const double scale = std::max({1.0, max_abs(x), max_abs(y)});
  return max_abs_diff(x, y) / scale;
}

std::vector<Signature> small_signatures(int max_dim) {
  std::vector<Signature> sigs;
  for (int d = 1; d <= max_dim; ++d)
    for (int p = 0; p <= d; ++p) sigs.emplace_back(p, d - p);
  return sigs;
}

}  // namespace

TEST_CASE("generator squares follow the signature") {
  const Signature cl11(1, 1);  // e1^2 = -1, e2^2 = +1
  const auto e1 = Multivector::generator(cl11, 1);
  const auto e2 = Multivector::generator(cl11, 2);
  CHECK((e1 * e1)[0] == scalar_t{-1.0});
  CHECK((e2 * e2)[0] == scalar_t{1.0});
  const auto e12 = e1 * e2;
  CHECK((e12 * e12)[0] == scalar_t{1.0});
  CHECK(max_abs(e1 * e2 + e2 * e1) == 0.0);
}

TEST_CASE("blade product matches the naive permutation-sort oracle") {
  for (const auto& sig : small_signatures(6)) {
    for (mask_t a = 0; a < sig.blade_count(); ++a)
      for (mask_t b = 0; b < sig.blade_count(); ++b) {
        const auto fast = blade_product(sig, a, b);
        const auto slow = oracles::naive_blade_product(sig, a, b);
        REQUIRE(fast == slow);
      }
  }
}

TEST_CASE("geometric product matches the naive oracle on random inputs") {
  Rng rng(2024);
  for (const auto& sig : small_signatures(5)) {
    for (int t = 0; t < 5; ++t) {
      const auto a = random_multivector(rng, sig, true);
      const auto b = random_multivector(rng, sig, true);
      CHECK(rel_err(a * b, oracles::naive_product(a, b)) < 1e-14);
    }
  }
}

TEST_CASE("product rejects signature mismatch") {
  const auto a = Multivector::scalar(Signature(2, 0), 1.0);
  const auto b = Multivector::scalar(Signature(1, 1), 1.0);
  CHECK_THROWS_AS(a * b, std::invalid_argument);
}

TEST_CASE("associativity holds to 1e-12 relative") {
  Rng rng(7);
  for (const auto& sig : small_signatures(6)) {
    const int trials = 1000;
    for (int t = 0; t < trials; ++t) {
      const auto a = random_multivector(rng, sig);
      const auto b = random_multivector(rng, sig);
      const auto c = random_multivector(rng, sig);
      REQUIRE(rel_err((a * b) * c, a * (b * c)) < 1e-12);
    }
  }
}

TEST_CASE("grade projection") {
  const Signature sig(2, 0);  // Cl(0,2)
  auto a = Multivector::scalar(sig, 3.0);
  a += Multivector::generator(sig, 1) * scalar_t{2.0};
  CHECK(max_abs_diff(grade_project(a, 0), Multivector::scalar(sig, 3.0)) == 0.0);
  CHECK(max_abs_diff(grade_project(a, 1), Multivector::generator(sig, 1) * scalar_t{2.0}) == 0.0);
  CHECK_THROWS_AS(grade_project(a, 3), std::invalid_argument);
  CHECK_THROWS_AS(grade_project(a, -1), std::invalid_argument);

  Rng rng(11);
  const auto r = random_multivector(rng, sig, true);
  Multivector sum(sig);
  for (int g = 0; g <= sig.dim(); ++g) sum += grade_project(r, g);
  CHECK(max_abs_diff(sum, r) == 0.0);
}

TEST_CASE("main involution") {
  const Signature cl02(2, 0);
  // (2 + 3 e1 + 5 e1e2)' = 2 - 3 e1 + 5 e1e2
  Multivector a = Multivector::scalar(cl02, 2.0);
  a += Multivector::generator(cl02, 1) * scalar_t{3.0};
  a += Multivector::blade(cl02, 0b11, 5.0);
  Multivector expect = Multivector::scalar(cl02, 2.0);
  expect += Multivector::generator(cl02, 1) * scalar_t{-3.0};
  expect += Multivector::blade(cl02, 0b11, 5.0);
  CHECK(max_abs_diff(main_involution(a), expect) == 0.0);

  // second-block generators are fixed
  const Signature cl11(1, 1);
  CHECK(max_abs_diff(main_involution(Multivector::generator(cl11, 2)),
                     Multivector::generator(cl11, 2)) == 0.0);

  Rng rng(3);
  for (const auto& sig : small_signatures(5)) {
    for (int t = 0; t < 100; ++t) {
      const auto x = random_multivector(rng, sig);
      const auto y = random_multivector(rng, sig);
      CHECK(rel_err(main_involution(x * y), main_involution(x) * main_involution(y)) < 1e-12);
    }
  }
}

TEST_CASE("reversion") {
  const Signature cl02(2, 0);
  const auto e1 = Multivector::generator(cl02, 1);
  const auto e2 = Multivector::generator(cl02, 2);
  CHECK(max_abs_diff(reversion(e1 * e2), e2 * e1) == 0.0);
  CHECK(max_abs_diff(reversion(e1 * e2), -(e1 * e2)) == 0.0);
  CHECK(max_abs_diff(reversion(Multivector::scalar(cl02, 1.0)),
                     Multivector::scalar(cl02, 1.0)) == 0.0);

  Rng rng(5);
  for (const auto& sig : small_signatures(5)) {
    for (int t = 0; t < 100; ++t) {
      const auto x = random_multivector(rng, sig);
      const auto y = random_multivector(rng, sig);
      CHECK(rel_err(reversion(x * y), reversion(y) * reversion(x)) < 1e-12);
    }
  }
}

TEST_CASE("dagger conjugation") {
  const Signature cl03(3, 0);
  Rng rng(13);

  // vectors of Cl(0,n) flip sign
  Multivector x(cl03);
  for (int j = 1; j <= 3; ++j)
    x += Multivector::generator(cl03, j) * scalar_t{rng.normal()};
  CHECK(max_abs_diff(dagger(x), -x) == 0.0);
  CHECK(max_abs_diff(dagger(Multivector::scalar(cl03, 1.0)),
                     Multivector::scalar(cl03, 1.0)) == 0.0);

  for (const auto& sig : small_signatures(5)) {
    for (int t = 0; t < 100; ++t) {
      const auto a = random_multivector(rng, sig);
      const auto b = random_multivector(rng, sig);
      CHECK(rel_err(dagger(a * b), dagger(b) * dagger(a)) < 1e-12);
      CHECK(max_abs_diff(reversion(main_involution(a)), dagger(a)) == 0.0);
      CHECK(max_abs_diff(main_involution(reversion(a)), dagger(a)) == 0.0);
    }
  }
}

TEST_CASE("large algebras use the fallback product path") {
  // Cl(6,6) has 4096 blades, beyond the cached-sign-table range
  const Signature sig(6, 6);
  const auto e1 = Multivector::generator(sig, 1);
  const auto e7 = Multivector::generator(sig, 7);
  CHECK((e1 * e1)[0] == scalar_t{-1.0});
  CHECK((e7 * e7)[0] == scalar_t{1.0});
  CHECK(max_abs(e1 * e7 + e7 * e1) == 0.0);

  Rng rng(99);
  // sparse random blades, checked against the naive oracle
  for (int t = 0; t < 200; ++t) {
    const mask_t a = static_cast<mask_t>(rng.next_u64() & 0xFFF);
    const mask_t b = static_cast<mask_t>(rng.next_u64() & 0xFFF);
    const auto [m, s] = blade_product(sig, a, b);
    const auto x = Multivector::blade(sig, a, 2.0) * Multivector::blade(sig, b, 3.0);
    CHECK(x[m] == scalar_t{6.0 * s});
    CHECK(oracles::naive_blade_product(sig, a, b) == std::make_pair(m, s));
  }
}

TEST_CASE("signature cap enforced") {
  CHECK_THROWS_AS(Signature(7, 6), std::invalid_argument);
  CHECK_THROWS_AS(Signature(-1, 2), std::invalid_argument);
  CHECK_NOTHROW(Signature(6, 6));
}
