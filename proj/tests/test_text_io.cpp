#include <doctest.h>

#include "grassact/io_json.hpp"
#include "grassact/rep_action.hpp"

using grassact::AutMap;
using grassact::BigInt;
using grassact::Context;

TEST_CASE("big integers serialize as numbers while they fit") {
  CHECK(grassact::json_of_bigint(BigInt(5)).is_number_integer());
  CHECK(grassact::json_of_bigint(BigInt(5)) == 5);
  CHECK(grassact::json_of_bigint(BigInt(-7)) == -7);

  const BigInt big = grassact::ipow(BigInt(2), 100);
  const auto j = grassact::json_of_bigint(big);
  CHECK(j.is_string());
  CHECK(j == "1267650600228229401496703205376");

  CHECK(grassact::bigint_of_json(grassact::json_of_bigint(big)) == big);
  CHECK(grassact::bigint_of_json(nlohmann::json(12)) == BigInt(12));
  CHECK(grassact::bigint_of_json(nlohmann::json(-3)) == BigInt(-3));
  // values parsed as unsigned 64-bit still come through exactly
  const auto u = nlohmann::json::parse("18446744073709551615");
  CHECK(grassact::bigint_of_json(u) == grassact::bigint_from_decimal("18446744073709551615"));

  CHECK_THROWS_AS(grassact::bigint_of_json(nlohmann::json(1.5)), grassact::ParseError);
  CHECK_THROWS_AS(grassact::bigint_of_json(nlohmann::json(true)), grassact::ParseError);
  CHECK_THROWS_AS(grassact::bigint_of_json(nlohmann::json::array()), grassact::ParseError);
  CHECK_THROWS_AS(grassact::bigint_of_json(nlohmann::json("12x")), grassact::ParseError);
}

TEST_CASE("json text parsing wraps errors") {
  CHECK(grassact::parse_json_text("{\"a\": 1}", "test")["a"] == 1);
  CHECK_THROWS_WITH_AS(grassact::parse_json_text("{oops", "substitution"),
                       doctest::Contains("substitution"), grassact::ParseError);
}

TEST_CASE("substitution JSON round trip") {
  const AutMap f(3, {{1}, {2}, {3, 1}});
  const auto j = grassact::autmap_to_json(f);
  CHECK(j["schema"] == 1);
  CHECK(j["r"] == 3);
  REQUIRE(j["images"].size() == 3);
  CHECK(j["images"][2] == "a3 a1");
  CHECK(grassact::autmap_from_json(j) == f);

  // schema field is optional on input
  const auto loose = nlohmann::json{{"r", 2}, {"images", {"a2", "a1"}}};
  CHECK(grassact::autmap_from_json(loose) == AutMap(2, {{2}, {1}}));

  CHECK_THROWS_AS(grassact::autmap_from_json(nlohmann::json::array()), grassact::ParseError);
  CHECK_THROWS_AS(grassact::autmap_from_json(nlohmann::json{{"images", {"a1"}}}),
                  grassact::ParseError);
  CHECK_THROWS_AS(grassact::autmap_from_json(nlohmann::json{{"r", 1}}), grassact::ParseError);
  CHECK_THROWS_AS(
      grassact::autmap_from_json(nlohmann::json{{"r", 1}, {"images", {1}}}),
      grassact::ParseError);
  CHECK_THROWS_AS(
      grassact::autmap_from_json(nlohmann::json{{"r", 1}, {"images", {"b1"}}}),
      grassact::ParseError);
  // word grammar fine but not an automorphism candidate
  CHECK_THROWS_AS(
      grassact::autmap_from_json(nlohmann::json{{"r", 2}, {"images", {"a1", "a1"}}}),
      grassact::SemanticError);
}

TEST_CASE("context JSON round trip") {
  const Context ctx({3, 5}, 2);
  const auto j = grassact::context_to_json(ctx);
  CHECK(j["degrees"] == nlohmann::json::array({3, 5}));
  CHECK(j["r"] == 2);
  CHECK(grassact::context_from_json(j) == ctx);

  CHECK_THROWS_AS(grassact::context_from_json(nlohmann::json{{"r", 2}}), grassact::ParseError);
  CHECK_THROWS_AS(grassact::context_from_json(nlohmann::json{{"degrees", {3}}}),
                  grassact::ParseError);
  CHECK_THROWS_AS(
      grassact::context_from_json(nlohmann::json{{"degrees", "x"}, {"r", 2}}),
      grassact::ParseError);
  CHECK_THROWS_AS(
      grassact::context_from_json(nlohmann::json{{"degrees", {3.5}}, {"r", 2}}),
      grassact::ParseError);
  // parses fine, fails context validation
  CHECK_THROWS_AS(
      grassact::context_from_json(nlohmann::json{{"degrees", {4}}, {"r", 2}}),
      grassact::ValidationError);
}

TEST_CASE("matrix JSON round trip") {
  const Context ctx({3, 5}, 2);
  const grassact::GeneratorWord w = {{grassact::LetterKind::R, 1, 2},
                                     {grassact::LetterKind::Inv, 2, 0}};

  const auto by_degree = grassact::representation_matrix<BigInt>(w, 8, ctx);
  const auto j = grassact::matrix_to_json(by_degree);
  CHECK(j["schema"] == 1);
  CHECK(j["degree"] == 8);
  CHECK(j["basis"].size() == by_degree.basis.size());
  CHECK(grassact::rep_matrices_equal(grassact::matrix_from_json(j), by_degree));

  const auto full = grassact::full_matrix<BigInt>(w, ctx);
  const auto jf = grassact::matrix_to_json(full);
  CHECK(jf["degree"].is_null());
  const auto back = grassact::matrix_from_json(jf);
  CHECK(back.is_full());
  CHECK(grassact::rep_matrices_equal(back, full));
}

TEST_CASE("matrix JSON validation") {
  const Context ctx({3}, 2);
  const auto good = grassact::matrix_to_json(grassact::representation_matrix<BigInt>(
      grassact::GeneratorWord{}, 3, ctx));

  auto missing_ctx = good;
  missing_ctx.erase("context");
  CHECK_THROWS_AS(grassact::matrix_from_json(missing_ctx), grassact::ParseError);

  auto bad_degree = good;
  bad_degree["degree"] = "three";
  CHECK_THROWS_AS(grassact::matrix_from_json(bad_degree), grassact::ParseError);

  auto bad_basis = good;
  bad_basis["basis"][0] = "t1_1 + t1_2";
  CHECK_THROWS_AS(grassact::matrix_from_json(bad_basis), grassact::ParseError);
  bad_basis["basis"][0] = "2*t1_1";
  CHECK_THROWS_AS(grassact::matrix_from_json(bad_basis), grassact::ParseError);

  auto short_columns = good;
  short_columns["columns"].erase(0);
  CHECK_THROWS_AS(grassact::matrix_from_json(short_columns), grassact::ParseError);

  auto ragged = good;
  ragged["columns"][0].erase(0);
  CHECK_THROWS_AS(grassact::matrix_from_json(ragged), grassact::ParseError);

  auto not_array = good;
  not_array["columns"] = 7;
  CHECK_THROWS_AS(grassact::matrix_from_json(not_array), grassact::ParseError);

  CHECK_THROWS_AS(grassact::matrix_from_json(nlohmann::json("hi")), grassact::ParseError);
}

TEST_CASE("plain monomial text") {
  const Context ctx({3, 5}, 2);
  CHECK(grassact::monomial_from_text("1", ctx).bits == 0);
  CHECK(grassact::monomial_from_text("t1_1 t2_2", ctx).bits == 0b1001);
  // out-of-order input is accepted when the sign works out
  CHECK(grassact::monomial_from_text("t1_1", ctx).bits == 0b0001);
  CHECK_THROWS_AS(grassact::monomial_from_text("t1_1 + t1_2", ctx), grassact::ParseError);
  CHECK_THROWS_AS(grassact::monomial_from_text("-t1_1", ctx), grassact::ParseError);
  CHECK_THROWS_AS(grassact::monomial_from_text("t2_2 t2_1", ctx), grassact::ParseError);
  CHECK_THROWS_AS(grassact::monomial_from_text("0", ctx), grassact::ParseError);
}
