#include <doctest.h>

#include <random>

#include "grassact/grassmann.hpp"
#include "grassact/group_catalog.hpp"
#include "oracles.hpp"

using grassact::BigInt;
using grassact::Context;
using grassact::GeneratorIndex;
using grassact::HomologyClass;
using grassact::Monomial;

namespace {
using Cls = HomologyClass<BigInt>;

Cls gen(const Context& ctx, int k, int i) {
  return Cls::generator(ctx, GeneratorIndex{k, i});
}
}  // namespace

TEST_CASE("context validation") {
  CHECK_NOTHROW(Context({3}, 1));
  CHECK_NOTHROW(Context({3, 5, 7}, 4));
  CHECK_THROWS_AS(Context({}, 1), grassact::ValidationError);
  CHECK_THROWS_AS(Context({3}, 0), grassact::ValidationError);
  CHECK_THROWS_AS(Context({4}, 1), grassact::ValidationError);
  CHECK_THROWS_AS(Context({1}, 1), grassact::ValidationError);
  CHECK_THROWS_AS(Context({3, -5}, 1), grassact::ValidationError);

  // 63 generator slots is the limit of the bit-set representation
  CHECK_NOTHROW(Context(std::vector<int>(63, 3), 1));
  CHECK_THROWS_AS(Context(std::vector<int>(64, 3), 1), grassact::ValidationError);
  CHECK_THROWS_AS(Context(std::vector<int>(16, 3), 4), grassact::ValidationError);

  const Context ctx({3, 5}, 3);
  CHECK(ctx.n() == 2);
  CHECK(ctx.r() == 3);
  CHECK(ctx.slots() == 6);
  CHECK(ctx.block_mask(1) == 0b000111u);
  CHECK(ctx.block_mask(2) == 0b111000u);
  CHECK(ctx.all_mask() == 0b111111u);
  CHECK(ctx == Context({3, 5}, 3));
  CHECK_FALSE(ctx == Context({3, 5}, 2));
  CHECK_FALSE(ctx == Context({3, 7}, 3));
}

TEST_CASE("generator positions round trip") {
  const Context ctx({3, 5, 7}, 4);
  for (int p = 0; p < ctx.slots(); ++p) {
    const GeneratorIndex g = grassact::generator_at(p, ctx);
    CHECK(grassact::position_of(g, ctx) == p);
    CHECK(ctx.degree_of_position(p) == ctx.degrees()[static_cast<std::size_t>(g.k - 1)]);
  }
  CHECK(grassact::position_of({1, 1}, ctx) == 0);
  CHECK(grassact::position_of({2, 1}, ctx) == 4);
  CHECK(grassact::position_of({3, 4}, ctx) == 11);
  CHECK_THROWS_AS(grassact::position_of({0, 1}, ctx), grassact::ValidationError);
  CHECK_THROWS_AS(grassact::position_of({4, 1}, ctx), grassact::ValidationError);
  CHECK_THROWS_AS(grassact::position_of({1, 0}, ctx), grassact::ValidationError);
  CHECK_THROWS_AS(grassact::position_of({1, 5}, ctx), grassact::ValidationError);
}

TEST_CASE("canonicalize sorts generators and tracks the sign") {
  const Context ctx({3, 5}, 3);

  const GeneratorIndex swapped[] = {{2, 3}, {2, 2}};
  const auto [m1, s1] = grassact::canonicalize(swapped, ctx);
  CHECK(s1 == -1);
  CHECK(m1.bits == (1ULL << 4 | 1ULL << 5));

  const GeneratorIndex repeated[] = {{1, 1}, {2, 2}, {1, 1}};
  const auto [m2, s2] = grassact::canonicalize(repeated, ctx);
  CHECK(s2 == 0);

  const GeneratorIndex ordered[] = {{1, 1}, {1, 3}, {2, 2}};
  const auto [m3, s3] = grassact::canonicalize(ordered, ctx);
  CHECK(s3 == 1);
  CHECK(m3.bits == (1ULL << 0 | 1ULL << 2 | 1ULL << 4));

  const auto [m4, s4] = grassact::canonicalize(std::span<const GeneratorIndex>{}, ctx);
  CHECK(s4 == 1);
  CHECK(m4.bits == 0);

  const GeneratorIndex bad[] = {{3, 1}};
  CHECK_THROWS_AS(grassact::canonicalize(bad, ctx), grassact::ValidationError);
}

TEST_CASE("canonicalize agrees with a bubble-sort sign oracle") {
  const Context ctx({3, 5, 7}, 3);
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 2000; ++trial) {
    const int len = static_cast<int>(rng() % 7);
    std::vector<GeneratorIndex> gens;
    std::vector<int> positions;
    for (int t = 0; t < len; ++t) {
      const int p = static_cast<int>(rng() % static_cast<std::uint64_t>(ctx.slots()));
      gens.push_back(grassact::generator_at(p, ctx));
      positions.push_back(p);
    }
    const auto [m, s] = grassact::canonicalize(std::span<const GeneratorIndex>(gens), ctx);
    CHECK(s == oracles::bubble_sign(positions));
    if (s != 0) {
      std::uint64_t bits = 0;
      for (int p : positions) bits |= 1ULL << p;
      CHECK(m.bits == bits);
    }
  }
}

TEST_CASE("monomial products") {
  CHECK(grassact::monomial_product_sign(0b01, 0b10) == 1);
  CHECK(grassact::monomial_product_sign(0b10, 0b01) == -1);
  CHECK(grassact::monomial_product_sign(0b01, 0b01) == 0);
  CHECK(grassact::monomial_product_sign(0, 0b1011) == 1);
  CHECK(grassact::monomial_product_sign(0b1011, 0) == 1);
  // moving bit 0 of b past three bits of a costs three crossings
  CHECK(grassact::monomial_product_sign(0b1110, 0b0001) == -1);

  // stacking {0,2} before {1,3} gives 0 2 1 3: one crossing
  const auto [m, s] = grassact::monomial_product(Monomial{0b0101}, Monomial{0b1010});
  CHECK(s == -1);
  CHECK(m.bits == 0b1111);

  // product sign agrees with stacking the two position lists
  const Context ctx({3, 3}, 3);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const std::uint64_t a = rng() & ctx.all_mask();
    const std::uint64_t b = rng() & ctx.all_mask();
    std::vector<int> stacked;
    for (int p = 0; p < ctx.slots(); ++p)
      if (a & (1ULL << p)) stacked.push_back(p);
    for (int p = 0; p < ctx.slots(); ++p)
      if (b & (1ULL << p)) stacked.push_back(p);
    CHECK(grassact::monomial_product_sign(a, b) == oracles::bubble_sign(stacked));
  }
}

TEST_CASE("monomial degrees") {
  const Context ctx({3, 5}, 2);
  CHECK(grassact::degree_of(Monomial{0}, ctx) == 0);
  CHECK(grassact::degree_of(Monomial{0b0001}, ctx) == 3);
  CHECK(grassact::degree_of(Monomial{0b0100}, ctx) == 5);
  CHECK(grassact::degree_of(Monomial{0b1111}, ctx) == 16);
  // additivity on disjoint monomials
  for (std::uint64_t a = 0; a < 16; ++a)
    for (std::uint64_t b = 0; b < 16; ++b) {
      if (a & b) continue;
      CHECK(grassact::degree_of(Monomial{a | b}, ctx) ==
            grassact::degree_of(Monomial{a}, ctx) + grassact::degree_of(Monomial{b}, ctx));
    }
}

TEST_CASE("basis enumeration by degree") {
  const Context ctx({3, 5}, 3);

  const auto d0 = grassact::basis_of_degree(ctx, 0);
  REQUIRE(d0.size() == 1);
  CHECK(d0[0].bits == 0);

  const auto d3 = grassact::basis_of_degree(ctx, 3);
  REQUIRE(d3.size() == 3);
  CHECK(d3[0].bits == 0b001);
  CHECK(d3[1].bits == 0b010);
  CHECK(d3[2].bits == 0b100);

  const auto d8 = grassact::basis_of_degree(ctx, 8);
  const std::vector<std::uint64_t> expected = {9, 10, 12, 17, 18, 20, 33, 34, 36};
  REQUIRE(d8.size() == expected.size());
  for (std::size_t t = 0; t < expected.size(); ++t) CHECK(d8[t].bits == expected[t]);

  CHECK(grassact::basis_of_degree(ctx, -1).empty());
  CHECK(grassact::basis_of_degree(ctx, 1).empty());
  CHECK(grassact::basis_of_degree(ctx, 2).empty());
  const int top = 3 * (3 + 5);
  CHECK(grassact::basis_of_degree(ctx, top).size() == 1);
  CHECK(grassact::basis_of_degree(ctx, top).front().bits == ctx.all_mask());
  CHECK(grassact::basis_of_degree(ctx, top + 1).empty());
}

TEST_CASE("basis sizes match the exhaustive census and the Poincare coefficients") {
  const std::vector<std::pair<std::vector<int>, int>> shapes = {
      {{3}, 1}, {{3}, 4}, {{3, 5}, 2}, {{3, 5, 7}, 2}, {{3, 3, 3}, 2}, {{3, 7}, 3}};
  for (const auto& [degs, r] : shapes) {
    const Context ctx(degs, r);
    const auto census = oracles::degree_census(ctx);
    const auto coeffs = grassact::poincare_coefficients<BigInt>(
        grassact::GroupSpec::from_degrees(degs), r);
    long long total = 0;
    for (int d = 0; d < static_cast<int>(coeffs.size()); ++d) {
      const auto basis = grassact::basis_of_degree(ctx, d);
      const auto it = census.find(d);
      const long long expected = it == census.end() ? 0 : it->second;
      CHECK(static_cast<long long>(basis.size()) == expected);
      CHECK(BigInt(static_cast<long long>(basis.size())) == coeffs[static_cast<std::size_t>(d)]);
      // ascending and duplicate free
      for (std::size_t t = 1; t < basis.size(); ++t) CHECK(basis[t - 1] < basis[t]);
      total += static_cast<long long>(basis.size());
    }
    CHECK(total == (1LL << ctx.slots()));
  }
}

TEST_CASE("class construction and inspection") {
  const Context ctx({3, 5}, 2);
  const Cls zero = Cls::zero(ctx);
  CHECK(zero.is_zero());
  CHECK_FALSE(zero.is_homogeneous().has_value());

  const Cls one = Cls::unit(ctx);
  CHECK(one.terms().size() == 1);
  CHECK(one.is_homogeneous() == 0);

  const Cls x = gen(ctx, 1, 2);
  CHECK(x.is_homogeneous() == 3);
  CHECK(x.coefficient(Monomial{0b10}) == BigInt(1));
  CHECK(x.coefficient(Monomial{0b01}) == BigInt(0));

  const Cls mixed = x + gen(ctx, 2, 1);
  CHECK_FALSE(mixed.is_homogeneous().has_value());
  CHECK(mixed.terms().size() == 2);

  // duplicate and canceling terms collapse in from_terms
  const Cls collapsed = Cls::from_terms(
      ctx, {{Monomial{0b01}, BigInt(2)},
            {Monomial{0b10}, BigInt(5)},
            {Monomial{0b01}, BigInt(-2)}});
  CHECK(collapsed.terms().size() == 1);
  CHECK(collapsed.coefficient(Monomial{0b10}) == BigInt(5));
  for (const auto& [m, c] : collapsed.terms()) CHECK_FALSE(c.is_zero());
}

TEST_CASE("ring axioms on random classes") {
  const Context ctx({3, 5}, 2);
  std::mt19937_64 rng(99);
  const Cls one = Cls::unit(ctx);
  for (int trial = 0; trial < 300; ++trial) {
    const Cls a = oracles::random_class(rng, ctx, 4);
    const Cls b = oracles::random_class(rng, ctx, 4);
    const Cls c = oracles::random_class(rng, ctx, 4);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a + b == b + a);
    CHECK(one * a == a);
    CHECK(a * one == a);
    CHECK((a - a).is_zero());
    CHECK(a + (-a) == Cls::zero(ctx));
    CHECK(BigInt(2) * a == a + a);
    for (const auto& [m, coeff] : (a * b + c).terms()) CHECK_FALSE(coeff.is_zero());
  }
}

TEST_CASE("graded commutativity") {
  const Context ctx({3, 5, 7}, 2);
  std::mt19937_64 rng(123);
  const auto max_deg = 2 * (3 + 5 + 7);
  for (int trial = 0; trial < 200; ++trial) {
    const int p = static_cast<int>(rng() % static_cast<std::uint64_t>(max_deg + 1));
    const int q = static_cast<int>(rng() % static_cast<std::uint64_t>(max_deg + 1));
    const Cls x = oracles::random_homogeneous(rng, ctx, p, 3);
    const Cls y = oracles::random_homogeneous(rng, ctx, q, 3);
    if ((p * q) % 2 == 0) {
      CHECK(x * y == y * x);
    } else {
      CHECK(x * y == -(y * x));
    }
  }
  // odd generators square to zero
  const Cls t = gen(ctx, 2, 1);
  CHECK((t * t).is_zero());
}

TEST_CASE("operations reject mixed contexts") {
  const Context a({3, 5}, 2);
  const Context b({3, 5}, 3);
  const Cls xa = Cls::unit(a);
  const Cls xb = Cls::unit(b);
  CHECK_THROWS_AS(xa + xb, grassact::SemanticError);
  CHECK_THROWS_AS(xa - xb, grassact::SemanticError);
  CHECK_THROWS_AS(xa * xb, grassact::SemanticError);
  CHECK_FALSE(xa == xb);
}

TEST_CASE("class formatting") {
  const Context ctx({3, 5}, 3);
  CHECK(grassact::format_class(Cls::zero(ctx)) == "0");
  CHECK(grassact::format_class(Cls::unit(ctx)) == "1");
  CHECK(grassact::format_generator(GeneratorIndex{2, 3}) == "t2_3");
  CHECK(grassact::format_monomial(Monomial{0b011001}, ctx) == "t1_1 t2_1 t2_2");

  const Cls x = BigInt(3) * gen(ctx, 1, 1) - gen(ctx, 2, 1) * gen(ctx, 2, 2);
  CHECK(grassact::format_class(x) == "3*t1_1 - t2_1 t2_2");
  const Cls y = -gen(ctx, 1, 2) + Cls::unit(ctx);
  CHECK(grassact::format_class(y) == "1 - t1_2");
}

TEST_CASE("class parsing") {
  const Context ctx({3, 5}, 3);

  CHECK(grassact::parse_class("0", ctx).is_zero());
  CHECK(grassact::parse_class("1", ctx) == Cls::unit(ctx));
  CHECK(grassact::parse_class("t1_2", ctx) == gen(ctx, 1, 2));
  CHECK(grassact::parse_class("-t1_2", ctx) == -gen(ctx, 1, 2));
  CHECK(grassact::parse_class("2*1 + t1_1", ctx) ==
        BigInt(2) * Cls::unit(ctx) + gen(ctx, 1, 1));

  // out-of-order generators canonicalize with a sign
  CHECK(grassact::parse_class("t1_3 t1_1", ctx) == -(gen(ctx, 1, 1) * gen(ctx, 1, 3)));
  CHECK(grassact::parse_class("t2_2 t2_1 + 3*t1_1", ctx) ==
        BigInt(3) * gen(ctx, 1, 1) - gen(ctx, 2, 1) * gen(ctx, 2, 2));
  // a repeated generator kills the term
  CHECK(grassact::parse_class("t1_1 t1_1", ctx).is_zero());
  CHECK(grassact::parse_class("t1_1 t1_1 + t1_2", ctx) == gen(ctx, 1, 2));

  // round trip: format then parse
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Cls c = oracles::random_class(rng, ctx, 5);
    CHECK(grassact::parse_class(grassact::format_class(c), ctx) == c);
  }
}

TEST_CASE("class parse errors carry positions") {
  const Context ctx({3, 5}, 3);
  CHECK_THROWS_AS(grassact::parse_class("", ctx), grassact::ParseError);
  CHECK_THROWS_AS(grassact::parse_class("   ", ctx), grassact::ParseError);
  CHECK_THROWS_WITH_AS(grassact::parse_class("3*", ctx), doctest::Contains("monomial"),
                       grassact::ParseError);
  CHECK_THROWS_WITH_AS(grassact::parse_class("5", ctx), doctest::Contains("coefficient"),
                       grassact::ParseError);
  CHECK_THROWS_WITH_AS(grassact::parse_class("t1", ctx), doctest::Contains("t<k>_<i>"),
                       grassact::ParseError);
  CHECK_THROWS_WITH_AS(grassact::parse_class("t1_1 ?", ctx), doctest::Contains("position 5"),
                       grassact::ParseError);
  CHECK_THROWS_AS(grassact::parse_class("t1_1 t1_2 -", ctx), grassact::ParseError);
  CHECK_THROWS_AS(grassact::parse_class("t1_1 + + t1_2", ctx), grassact::ParseError);
  // syntactically fine but out of range for the context
  CHECK_THROWS_AS(grassact::parse_class("t3_1", ctx), grassact::ValidationError);
  CHECK_THROWS_AS(grassact::parse_class("t1_4", ctx), grassact::ValidationError);
}
