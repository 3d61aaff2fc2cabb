#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "grassact/errors.hpp"
#include "grassact/exact.hpp"

namespace grassact {

/// Simple compact Lie group families.  Rationally, each simple factor is a
/// product of odd-dimensional spheres; the catalog records the sphere
/// degrees in a fixed order per family.
enum class Family { A, B, C, D, G2, F4, E6, E7, E8 };

inline const char* family_token(Family f) {
  switch (f) {
    case Family::A: return "A";
    case Family::B: return "B";
    case Family::C: return "C";
    case Family::D: return "D";
    case Family::G2: return "G2";
    case Family::F4: return "F4";
    case Family::E6: return "E6";
    case Family::E7: return "E7";
    case Family::E8: return "E8";
  }
  return "?";
}

struct SimpleFactor {
  Family family;
  int rank;
};

inline std::string format_factor(const SimpleFactor& f) {
  switch (f.family) {
    case Family::A:
    case Family::B:
    case Family::C:
    case Family::D:
      return family_token(f.family) + std::to_string(f.rank);
    default:
      return family_token(f.family);
  }
}

/// Validated factor constructor.  Classical families carry a free rank;
/// exceptional families have a fixed rank which may be omitted (pass -1).
/// Low-rank coincidences (B1, C1, D2) must be entered under their A-type
/// names, matching how their rational homology is catalogued.
inline SimpleFactor make_factor(Family f, int rank = -1) {
  auto reject = [&](int minimum, const char* alias) {
    std::string tok = family_token(f) + std::to_string(rank);
    std::string msg = "factor " + tok + ": rank " + std::to_string(rank) +
                      " is below the minimum " + std::to_string(minimum) + " for family " +
                      family_token(f);
    if (alias) msg += std::string("; enter this group as ") + alias;
    throw ValidationError(msg);
  };
  switch (f) {
    case Family::A:
      if (rank < 1) reject(1, nullptr);
      return {f, rank};
    case Family::B:
      if (rank < 2) reject(2, rank == 1 ? "A1" : nullptr);
      return {f, rank};
    case Family::C:
      if (rank < 2) reject(2, rank == 1 ? "A1" : nullptr);
      return {f, rank};
    case Family::D:
      if (rank < 3) reject(3, rank == 2 ? "A1xA1" : nullptr);
      return {f, rank};
    case Family::G2: rank = 2; break;
    case Family::F4: rank = 4; break;
    case Family::E6: rank = 6; break;
    case Family::E7: rank = 7; break;
    case Family::E8: rank = 8; break;
  }
  return {f, rank};
}

/// Sphere degrees of one simple factor, in catalog order.
///
/// A_n: 3, 5, ..., 2n+1.  B_n, C_n: 3, 7, ..., 4n-1.  D_n: 3, 7, ..., 4n-5
/// followed by 2n-1 (the half-spin degree is listed last).  Exceptional
/// degrees are 2m+1 over the classical exponents m; each list's sum equals
/// the manifold dimension of the group, which the tests assert.
inline std::vector<int> degrees_of_factor(const SimpleFactor& f) {
  std::vector<int> out;
  switch (f.family) {
    case Family::A:
      for (int k = 1; k <= f.rank; ++k) out.push_back(2 * k + 1);
      break;
    case Family::B:
    case Family::C:
      for (int k = 1; k <= f.rank; ++k) out.push_back(4 * k - 1);
      break;
    case Family::D:
      for (int k = 1; k <= f.rank - 1; ++k) out.push_back(4 * k - 1);
      out.push_back(2 * f.rank - 1);
      break;
    case Family::G2: out = {3, 11}; break;
    case Family::F4: out = {3, 11, 15, 23}; break;
    case Family::E6: out = {3, 9, 11, 15, 17, 23}; break;
    case Family::E7: out = {3, 11, 15, 19, 23, 27, 35}; break;
    case Family::E8: out = {3, 15, 23, 27, 35, 39, 47, 59}; break;
  }
  return out;
}

/// Manifold dimension of the compact group, by closed formula.
inline long long dimension_of(const SimpleFactor& f) {
  const long long n = f.rank;
  switch (f.family) {
    case Family::A: return n * (n + 2);
    case Family::B:
    case Family::C: return n * (2 * n + 1);
    case Family::D: return n * (2 * n - 1);
    case Family::G2: return 14;
    case Family::F4: return 52;
    case Family::E6: return 78;
    case Family::E7: return 133;
    case Family::E8: return 248;
  }
  return 0;
}

/// A compact semisimple group, given either as a product of simple factors
/// or directly as an explicit degree list (the escape hatch used by tests
/// and by the `deg[...]` spec syntax).
class GroupSpec {
 public:
  static GroupSpec from_factors(std::vector<SimpleFactor> factors) {
    if (factors.empty()) throw ValidationError("group spec needs at least one factor");
    GroupSpec g;
    g.factors_ = std::move(factors);
    for (auto& f : g.factors_) f = make_factor(f.family, f.rank);
    return g;
  }

  static GroupSpec from_degrees(std::vector<int> degrees) {
    if (degrees.empty()) throw ValidationError("explicit degree list must be nonempty");
    for (int d : degrees) {
      if (d < 3 || d % 2 == 0)
        throw ValidationError("degree " + std::to_string(d) +
                              " is invalid: sphere degrees must be odd and >= 3");
    }
    GroupSpec g;
    g.explicit_degrees_ = std::move(degrees);
    g.is_explicit_ = true;
    return g;
  }

  // Classical-name conveniences.  The catalog does not resolve isogeny:
  // SU, SO, Sp and Spin with the same root system map to the same entry.
  static GroupSpec SU(int m) {
    if (m < 2) throw ValidationError("SU(" + std::to_string(m) + "): need m >= 2");
    return from_factors({{Family::A, m - 1}});
  }
  static GroupSpec SO(int m) {
    if (m == 3) throw ValidationError("SO(3) has the rational homology of SU(2); enter it as A1");
    if (m == 4) throw ValidationError("SO(4) is rationally SU(2) x SU(2); enter it as A1xA1");
    if (m < 3) throw ValidationError("SO(" + std::to_string(m) + ") is not semisimple");
    if (m % 2 == 1) return from_factors({{Family::B, (m - 1) / 2}});
    return from_factors({{Family::D, m / 2}});
  }
  static GroupSpec Sp(int n) {
    if (n == 1) throw ValidationError("Sp(1) has the rational homology of SU(2); enter it as A1");
    if (n < 1) throw ValidationError("Sp(" + std::to_string(n) + "): need n >= 1");
    return from_factors({{Family::C, n}});
  }
  static GroupSpec Spin(int m) { return SO(m); }

  bool is_explicit() const { return is_explicit_; }
  const std::vector<SimpleFactor>& factors() const { return factors_; }

  /// Concatenated per-factor degree sequences (catalog order), or the
  /// explicit list verbatim.  Length equals the total rank.
  std::vector<int> degrees() const {
    if (is_explicit_) return explicit_degrees_;
    std::vector<int> out;
    for (const auto& f : factors_) {
      auto d = degrees_of_factor(f);
      out.insert(out.end(), d.begin(), d.end());
    }
    return out;
  }

  int rank() const { return static_cast<int>(degrees().size()); }

  long long dimension() const {
    long long s = 0;
    if (is_explicit_) {
      for (int d : explicit_degrees_) s += d;
    } else {
      for (const auto& f : factors_) s += dimension_of(f);
    }
    return s;
  }

  std::string to_string() const {
    if (is_explicit_) {
      std::string s = "deg[";
      for (std::size_t i = 0; i < explicit_degrees_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(explicit_degrees_[i]);
      }
      return s + "]";
    }
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) s += 'x';
      s += format_factor(factors_[i]);
    }
    return s;
  }

 private:
  GroupSpec() = default;
  std::vector<SimpleFactor> factors_;
  std::vector<int> explicit_degrees_;
  bool is_explicit_ = false;
};

/// Parses the group spec grammar: factor tokens A<k>, B<k>, C<k>, D<k>,
/// G2, F4, E6, E7, E8 joined by 'x' (e.g. "A2xA1"), or the explicit form
/// "deg[3,5,7]".
inline GroupSpec parse_group_spec(const std::string& text) {
  if (text.empty()) throw ParseError("empty group spec");

  if (text.rfind("deg[", 0) == 0) {
    if (text.back() != ']')
      throw ParseError("group spec '" + text + "': expected closing ']' at position " +
                       std::to_string(text.size()));
    std::string body = text.substr(4, text.size() - 5);
    std::vector<int> degrees;
    std::size_t pos = 0;
    while (pos < body.size()) {
      while (pos < body.size() && body[pos] == ' ') ++pos;
      std::size_t start = pos;
      if (pos < body.size() && (body[pos] == '+' || body[pos] == '-')) ++pos;
      while (pos < body.size() && std::isdigit(static_cast<unsigned char>(body[pos]))) ++pos;
      if (pos == start)
        throw ParseError("group spec '" + text + "': expected integer at position " +
                         std::to_string(4 + start));
      degrees.push_back(std::stoi(body.substr(start, pos - start)));
      while (pos < body.size() && body[pos] == ' ') ++pos;
      if (pos < body.size()) {
        if (body[pos] != ',')
          throw ParseError("group spec '" + text + "': expected ',' at position " +
                           std::to_string(4 + pos));
        ++pos;
        if (pos == body.size())
          throw ParseError("group spec '" + text + "': trailing ',' before ']'");
      }
    }
    return GroupSpec::from_degrees(degrees);
  }

  std::vector<SimpleFactor> factors;
  std::size_t pos = 0;
  while (true) {
    std::size_t end = text.find('x', pos);
    std::string tok =
        (end == std::string::npos) ? text.substr(pos) : text.substr(pos, end - pos);
    if (tok.empty())
      throw ParseError("group spec '" + text + "': empty factor token at position " +
                       std::to_string(pos));
    if (tok == "G2") {
      factors.push_back(make_factor(Family::G2));
    } else if (tok == "F4") {
      factors.push_back(make_factor(Family::F4));
    } else if (tok == "E6") {
      factors.push_back(make_factor(Family::E6));
    } else if (tok == "E7") {
      factors.push_back(make_factor(Family::E7));
    } else if (tok == "E8") {
      factors.push_back(make_factor(Family::E8));
    } else {
      Family fam;
      switch (tok[0]) {
        case 'A': fam = Family::A; break;
        case 'B': fam = Family::B; break;
        case 'C': fam = Family::C; break;
        case 'D': fam = Family::D; break;
        default:
          throw ParseError("group spec '" + text + "': unknown factor token '" + tok +
                           "' at position " + std::to_string(pos));
      }
      if (tok.size() == 1)
        throw ParseError("group spec '" + text + "': factor '" + tok + "' at position " +
                         std::to_string(pos) + " is missing its rank");
      for (std::size_t i = 1; i < tok.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(tok[i])))
          throw ParseError("group spec '" + text + "': malformed rank in '" + tok +
                           "' at position " + std::to_string(pos + i));
      factors.push_back(make_factor(fam, std::stoi(tok.substr(1))));
    }
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return GroupSpec::from_factors(std::move(factors));
}

/// Coefficients of prod_k (1 + x^{d_k})^r, indexed by homology degree.
/// This is the Poincare polynomial of G^r: rationally G is a product of
/// odd spheres, so homology is an exterior algebra and the generating
/// function factors completely.
template <typename Scalar>
std::vector<Scalar> poincare_coefficients(const GroupSpec& spec, int r) {
  if (r < 1) throw ValidationError("r must be >= 1, got " + std::to_string(r));
  const auto degrees = spec.degrees();
  long long top = 0;
  for (int d : degrees) top += d;
  top *= r;
  std::vector<Scalar> coeffs(static_cast<std::size_t>(top) + 1, Scalar(0));
  coeffs[0] = Scalar(1);
  long long reach = 0;
  for (int rep = 0; rep < r; ++rep) {
    for (int d : degrees) {
      // multiply in place by (1 + x^d), descending so updates do not feed
      // into themselves
      for (long long e = reach; e >= 0; --e) {
        if (!(coeffs[e] == Scalar(0))) coeffs[e + d] += coeffs[e];
      }
      reach += d;
    }
  }
  return coeffs;
}

/// Renders a coefficient list as "1 + 3x^3 + 3x^6 + x^9".
template <typename Scalar>
std::string format_polynomial(const std::vector<Scalar>& coeffs) {
  std::string out;
  for (std::size_t e = 0; e < coeffs.size(); ++e) {
    if (coeffs[e] == Scalar(0)) continue;
    if (!out.empty()) out += " + ";
    const bool unit_coeff = coeffs[e] == Scalar(1);
    if (e == 0) {
      out += scalar_to_string(coeffs[e]);
    } else {
      if (!unit_coeff) out += scalar_to_string(coeffs[e]);
      out += "x^" + std::to_string(e);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace grassact
