#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "grassact/errors.hpp"
#include "grassact/exact.hpp"
#include "grassact/free_group.hpp"
#include "grassact/grassmann.hpp"
#include "grassact/rep_action.hpp"
#include "grassact/verify.hpp"

namespace grassact {

/// Exact integers serialize as JSON numbers when they fit in 64 bits and
/// as decimal strings otherwise; readers accept both encodings.
inline nlohmann::json json_of_bigint(const BigInt& x) {
  if (x.fits_int64()) return x.to_int64();
  return x.to_string();
}

inline BigInt bigint_of_json(const nlohmann::json& j) {
  // is_number_integer() is also true for unsigned values, so test unsigned first
  // or 2^63..2^64-1 would wrap through the int64 path
  if (j.is_number_unsigned()) {
    const std::uint64_t u = j.get<std::uint64_t>();
    return bigint_from_decimal(std::to_string(u));
  }
  if (j.is_number_integer()) return BigInt(static_cast<long long>(j.get<std::int64_t>()));
  if (j.is_string()) return bigint_from_decimal(j.get<std::string>());
  throw ParseError("expected an integer entry (JSON number or decimal string), got " +
                   std::string(j.type_name()));
}

inline nlohmann::json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(what + ": invalid JSON: " + e.what());
  }
}

// ---------------------------------------------------------------------------
// AutMap <-> {"schema":1, "r":N, "images":["a2 a1 a2^-1", ...]}

inline nlohmann::json autmap_to_json(const AutMap& f) {
  nlohmann::json images = nlohmann::json::array();
  for (int g = 1; g <= f.r(); ++g) images.push_back(format_word(f.image(g)));
  return {{"schema", 1}, {"r", f.r()}, {"images", images}};
}

inline AutMap autmap_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("substitution JSON must be an object");
  if (!j.contains("r") || !j["r"].is_number_integer())
    throw ParseError("substitution JSON needs an integer field \"r\"");
  const int r = j["r"].get<int>();
  if (!j.contains("images") || !j["images"].is_array())
    throw ParseError("substitution JSON needs an array field \"images\"");
  std::vector<Word> images;
  for (const auto& e : j["images"]) {
    if (!e.is_string()) throw ParseError("substitution images must be word strings");
    images.push_back(parse_word(e.get<std::string>(), r));
  }
  return AutMap(r, std::move(images));
}

// ---------------------------------------------------------------------------
// RepMatrix <-> {"schema":1, "context":{...}, "degree":d|null, "basis":[...],
//                "columns":[[...], ...]}  (columns[c][row])

inline nlohmann::json context_to_json(const Context& ctx) {
  return {{"degrees", ctx.degrees()}, {"r", ctx.r()}};
}

inline Context context_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("degrees") || !j.contains("r"))
    throw ParseError("context JSON needs \"degrees\" and \"r\"");
  if (!j["degrees"].is_array()) throw ParseError("context \"degrees\" must be an array");
  std::vector<int> degrees;
  for (const auto& d : j["degrees"]) {
    if (!d.is_number_integer()) throw ParseError("context degrees must be integers");
    degrees.push_back(d.get<int>());
  }
  if (!j["r"].is_number_integer()) throw ParseError("context \"r\" must be an integer");
  return Context(std::move(degrees), j["r"].get<int>());
}

inline nlohmann::json matrix_to_json(const RepMatrix<BigInt>& m) {
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& mono : m.basis) basis.push_back(format_monomial(mono, m.context));
  nlohmann::json columns = nlohmann::json::array();
  for (Eigen::Index c = 0; c < m.matrix.cols(); ++c) {
    nlohmann::json col = nlohmann::json::array();
    for (Eigen::Index row = 0; row < m.matrix.rows(); ++row)
      col.push_back(json_of_bigint(m.matrix(row, c)));
    columns.push_back(std::move(col));
  }
  nlohmann::json out = {{"schema", 1},
                        {"context", context_to_json(m.context)},
                        {"basis", std::move(basis)},
                        {"columns", std::move(columns)}};
  if (m.is_full()) {
    out["degree"] = nullptr;
  } else {
    out["degree"] = m.degree;
  }
  return out;
}

inline Monomial monomial_from_text(const std::string& text, const Context& ctx) {
  const auto cls = parse_class(text, ctx);
  if (cls.terms().size() != 1 || !(cls.terms()[0].second == BigInt(1)))
    throw ParseError("'" + text + "' is not a plain basis monomial");
  return cls.terms()[0].first;
}

inline RepMatrix<BigInt> matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("matrix JSON must be an object");
  if (!j.contains("context")) throw ParseError("matrix JSON needs a \"context\"");
  const Context ctx = context_from_json(j["context"]);
  int degree = -1;
  if (j.contains("degree") && !j["degree"].is_null()) {
    if (!j["degree"].is_number_integer())
      throw ParseError("matrix \"degree\" must be an integer or null");
    degree = j["degree"].get<int>();
  }
  if (!j.contains("basis") || !j["basis"].is_array())
    throw ParseError("matrix JSON needs an array field \"basis\"");
  std::vector<Monomial> basis;
  for (const auto& b : j["basis"]) {
    if (!b.is_string()) throw ParseError("matrix basis entries must be monomial strings");
    basis.push_back(monomial_from_text(b.get<std::string>(), ctx));
  }
  if (!j.contains("columns") || !j["columns"].is_array())
    throw ParseError("matrix JSON needs an array field \"columns\"");
  const Eigen::Index dim = static_cast<Eigen::Index>(basis.size());
  if (static_cast<Eigen::Index>(j["columns"].size()) != dim)
    throw ParseError("matrix has " + std::to_string(j["columns"].size()) +
                     " columns but " + std::to_string(basis.size()) + " basis monomials");
  MatrixX<BigInt> m(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    const auto& col = j["columns"][static_cast<std::size_t>(c)];
    if (!col.is_array() || static_cast<Eigen::Index>(col.size()) != dim)
      throw ParseError("matrix column " + std::to_string(c) + " has the wrong length");
    for (Eigen::Index row = 0; row < dim; ++row)
      m(row, c) = bigint_of_json(col[static_cast<std::size_t>(row)]);
  }
  return RepMatrix<BigInt>{ctx, degree, std::move(basis), std::move(m)};
}

// ---------------------------------------------------------------------------
// Verification reports.

inline nlohmann::json report_to_json(const VerifyReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json e = {{"name", c.name},
                        {"passed", c.passed},
                        {"instances", c.instances},
                        {"detail", c.detail}};
    if (!c.counterexample_word.empty()) {
      e["counterexample"] = {{"word", c.counterexample_word}};
      if (!c.counterexample_class.empty())
        e["counterexample"]["class"] = c.counterexample_class;
    }
    checks.push_back(std::move(e));
  }
  return {{"schema", 1}, {"passed", report.passed}, {"checks", std::move(checks)}};
}

}  // namespace grassact
