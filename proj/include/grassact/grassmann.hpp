#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "grassact/errors.hpp"
#include "grassact/exact.hpp"

namespace grassact {

/// Ambient algebra parameters: the degree sequence d_1..d_n of the group's
/// sphere decomposition and the number r of direct-product copies.  The
/// rational homology of G^r is the free graded-commutative algebra on
/// generators t^k_i, 1 <= k <= n, 1 <= i <= r, with deg t^k_i = d_k.
/// Every generator degree is odd, so generators pairwise anticommute and
/// square to zero; monomials are subsets of the n*r generator slots.
class Context {
 public:
  Context(std::vector<int> degrees, int r) : degrees_(std::move(degrees)), r_(r) {
    if (degrees_.empty()) throw ValidationError("degree sequence must be nonempty");
    if (r_ < 1) throw ValidationError("r must be >= 1, got " + std::to_string(r_));
    for (int d : degrees_) {
      if (d < 3 || d % 2 == 0)
        throw ValidationError("degree " + std::to_string(d) +
                              " is invalid: generator degrees must be odd and >= 3");
    }
    const std::size_t slots = degrees_.size() * static_cast<std::size_t>(r_);
    if (slots > 63)
      throw ValidationError("context has " + std::to_string(slots) +
                            " generator slots; at most 63 are supported");
    pos_degree_.resize(slots);
    for (std::size_t k = 0; k < degrees_.size(); ++k)
      for (int i = 0; i < r_; ++i) pos_degree_[k * r_ + i] = degrees_[k];
  }

  int n() const { return static_cast<int>(degrees_.size()); }
  int r() const { return r_; }
  int slots() const { return static_cast<int>(pos_degree_.size()); }
  const std::vector<int>& degrees() const { return degrees_; }
  int degree_of_position(int p) const { return pos_degree_[static_cast<std::size_t>(p)]; }

  /// Bit mask of block k (1-based): the r slots holding t^k_1..t^k_r.
  std::uint64_t block_mask(int k) const {
    const int w = (k - 1) * r_;
    return ((r_ == 64 ? ~0ULL : (1ULL << r_) - 1)) << w;
  }
  std::uint64_t all_mask() const {
    const int s = slots();
    return s == 64 ? ~0ULL : (1ULL << s) - 1;
  }

  friend bool operator==(const Context& a, const Context& b) {
    return a.r_ == b.r_ && a.degrees_ == b.degrees_;
  }

 private:
  std::vector<int> degrees_;
  int r_;
  std::vector<int> pos_degree_;
};

/// One generator t^k_i.  Indices are 1-based; the flattened slot position
/// is p = (k-1)*r + (i-1), so position order is lexicographic in (k, i).
struct GeneratorIndex {
  int k;
  int i;
  friend bool operator==(const GeneratorIndex&, const GeneratorIndex&) = default;
};

inline int position_of(GeneratorIndex g, const Context& ctx) {
  if (g.k < 1 || g.k > ctx.n())
    throw ValidationError("generator t" + std::to_string(g.k) + "_" + std::to_string(g.i) +
                          ": sphere index " + std::to_string(g.k) + " is out of range 1.." +
                          std::to_string(ctx.n()));
  if (g.i < 1 || g.i > ctx.r())
    throw ValidationError("generator t" + std::to_string(g.k) + "_" + std::to_string(g.i) +
                          ": coordinate " + std::to_string(g.i) + " is out of range 1.." +
                          std::to_string(ctx.r()));
  return (g.k - 1) * ctx.r() + (g.i - 1);
}

inline GeneratorIndex generator_at(int position, const Context& ctx) {
  return {position / ctx.r() + 1, position % ctx.r() + 1};
}

/// A square-free product of generators, stored as a bit set over slot
/// positions.  Bits read in ascending position order spell the canonical
/// form; the empty set is the unit of the ring.
struct Monomial {
  std::uint64_t bits = 0;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

inline int degree_of(Monomial m, const Context& ctx) {
  int d = 0;
  for (int k = 1; k <= ctx.n(); ++k)
    d += std::popcount(m.bits & ctx.block_mask(k)) * ctx.degrees()[k - 1];
  return d;
}

/// Sign of the product a*b of canonical monomials: 0 when they share a
/// generator, otherwise (-1)^c where c counts pairs (p in a, q in b) with
/// p > q.  Each such pair is one transposition needed to merge b's
/// generators past a's into ascending order; all generators are odd.
inline int monomial_product_sign(std::uint64_t a, std::uint64_t b) {
  if (a & b) return 0;
  int crossings = 0;
  while (b) {
    const int q = std::countr_zero(b);
    b &= b - 1;
    crossings += std::popcount(a >> (q + 1));
  }
  return (crossings & 1) ? -1 : 1;
}

inline std::pair<Monomial, int> monomial_product(Monomial a, Monomial b) {
  const int s = monomial_product_sign(a.bits, b.bits);
  return {Monomial{s == 0 ? 0 : (a.bits | b.bits)}, s};
}

/// Sorts a generator list into canonical order, returning the resulting
/// monomial and the sign of the permutation: 0 if any generator repeats,
/// else (-1)^{inversions}.  Validates every index against the context.
inline std::pair<Monomial, int> canonicalize(std::span<const GeneratorIndex> gens,
                                             const Context& ctx) {
  std::uint64_t bits = 0;
  int inversions = 0;
  int prev_positions[64];
  int count = 0;
  for (const auto& g : gens) {
    const int p = position_of(g, ctx);
    if (bits & (1ULL << p)) return {Monomial{}, 0};
    bits |= 1ULL << p;
    for (int t = 0; t < count; ++t)
      if (prev_positions[t] > p) ++inversions;
    prev_positions[count++] = p;
  }
  return {Monomial{bits}, (inversions & 1) ? -1 : 1};
}

/// All monomials of total degree d, sorted ascending by bit-set value.
inline std::vector<Monomial> basis_of_degree(const Context& ctx, int d) {
  if (d < 0) return {};
  const int n = ctx.n();
  const int r = ctx.r();
  // suffix_max[k] = largest degree blocks k..n-1 can still contribute
  std::vector<long long> suffix_max(static_cast<std::size_t>(n) + 1, 0);
  for (int k = n - 1; k >= 0; --k)
    suffix_max[k] = suffix_max[k + 1] + static_cast<long long>(ctx.degrees()[k]) * r;

  std::vector<Monomial> out;
  std::uint64_t bits = 0;

  auto choose = [&](auto&& self, auto&& next_block, int k, int remaining, int from,
                    int still) -> void {
    if (still == 0) {
      next_block(next_block, self, k + 1, remaining);
      return;
    }
    for (int i = from; i <= r - still; ++i) {
      bits |= 1ULL << (k * r + i);
      self(self, next_block, k, remaining, i + 1, still - 1);
      bits &= ~(1ULL << (k * r + i));
    }
  };
  auto block = [&](auto&& self, auto&& choose_fn, int k, int remaining) -> void {
    if (k == n) {
      if (remaining == 0) out.push_back(Monomial{bits});
      return;
    }
    const int dk = ctx.degrees()[k];
    for (int c = 0; c * dk <= remaining; ++c) {
      if (remaining - c * dk > suffix_max[k + 1]) continue;
      choose_fn(choose_fn, self, k, remaining - c * dk, 0, c);
    }
  };
  block(block, choose, 0, d);
  std::sort(out.begin(), out.end());
  return out;
}

/// An element of the homology ring: a finite integer combination of
/// canonical monomials.  Terms are kept sorted by monomial with no zero
/// coefficients; values are immutable once built.
template <typename Scalar = BigInt>
class HomologyClass {
 public:
  using Term = std::pair<Monomial, Scalar>;

  static HomologyClass zero(const Context& ctx) { return HomologyClass(ctx, {}); }
  static HomologyClass unit(const Context& ctx) {
    return HomologyClass(ctx, {{Monomial{}, Scalar(1)}});
  }
  static HomologyClass monomial(const Context& ctx, Monomial m, Scalar coeff = Scalar(1)) {
    if (m.bits & ~ctx.all_mask())
      throw ValidationError("monomial uses generator slots outside the context");
    if (coeff == Scalar(0)) return zero(ctx);
    return HomologyClass(ctx, {{m, std::move(coeff)}});
  }
  static HomologyClass generator(const Context& ctx, GeneratorIndex g) {
    return monomial(ctx, Monomial{1ULL << position_of(g, ctx)});
  }
  /// Builds from arbitrary (monomial, coefficient) pairs: sorts, merges,
  /// drops zeros, validates slots.
  static HomologyClass from_terms(const Context& ctx, std::vector<Term> terms) {
    for (const auto& [m, c] : terms)
      if (m.bits & ~ctx.all_mask())
        throw ValidationError("monomial uses generator slots outside the context");
    normalize(terms);
    return HomologyClass(ctx, std::move(terms));
  }

  const Context& context() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of a monomial (zero if absent).
  Scalar coefficient(Monomial m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term& t, Monomial key) { return t.first < key; });
    if (it != terms_.end() && it->first == m) return it->second;
    return Scalar(0);
  }

  /// Common degree of all terms, or nullopt when terms of different
  /// degrees mix.  The zero class has no distinguished degree and also
  /// reports nullopt; callers treat it as homogeneous of any degree.
  std::optional<int> is_homogeneous() const {
    if (terms_.empty()) return std::nullopt;
    const int d = degree_of(terms_.front().first, ctx_);
    for (const auto& [m, c] : terms_)
      if (degree_of(m, ctx_) != d) return std::nullopt;
    return d;
  }

  friend HomologyClass operator+(const HomologyClass& a, const HomologyClass& b) {
    require_same_context(a, b);
    std::vector<Term> merged;
    merged.reserve(a.terms_.size() + b.terms_.size());
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    while (ia != a.terms_.end() && ib != b.terms_.end()) {
      if (ia->first < ib->first) {
        merged.push_back(*ia++);
      } else if (ib->first < ia->first) {
        merged.push_back(*ib++);
      } else {
        Scalar c = ia->second + ib->second;
        if (!(c == Scalar(0))) merged.emplace_back(ia->first, std::move(c));
        ++ia;
        ++ib;
      }
    }
    merged.insert(merged.end(), ia, a.terms_.end());
    merged.insert(merged.end(), ib, b.terms_.end());
    return HomologyClass(a.ctx_, std::move(merged));
  }

  friend HomologyClass operator-(const HomologyClass& a) {
    std::vector<Term> t = a.terms_;
    for (auto& [m, c] : t) c = -c;
    return HomologyClass(a.ctx_, std::move(t));
  }

  friend HomologyClass operator-(const HomologyClass& a, const HomologyClass& b) {
    return a + (-b);
  }

  friend HomologyClass operator*(const Scalar& s, const HomologyClass& a) {
    if (s == Scalar(0)) return zero(a.ctx_);
    std::vector<Term> t = a.terms_;
    for (auto& [m, c] : t) c = s * c;
    return HomologyClass(a.ctx_, std::move(t));
  }

  friend HomologyClass operator*(const HomologyClass& a, const HomologyClass& b) {
    require_same_context(a, b);
    std::unordered_map<std::uint64_t, Scalar> acc;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        const int s = monomial_product_sign(ma.bits, mb.bits);
        if (s == 0) continue;
        Scalar v = ca * cb;
        if (s < 0) v = -v;
        auto [it, fresh] = acc.try_emplace(ma.bits | mb.bits, std::move(v));
        if (!fresh) it->second += v;
      }
    }
    std::vector<Term> t;
    t.reserve(acc.size());
    for (auto& [bits, c] : acc)
      if (!(c == Scalar(0))) t.emplace_back(Monomial{bits}, std::move(c));
    std::sort(t.begin(), t.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    return HomologyClass(a.ctx_, std::move(t));
  }

  friend bool operator==(const HomologyClass& a, const HomologyClass& b) {
    return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
  }

 private:
  HomologyClass(const Context& ctx, std::vector<Term> terms)
      : ctx_(ctx), terms_(std::move(terms)) {}

  static void require_same_context(const HomologyClass& a, const HomologyClass& b) {
    if (!(a.ctx_ == b.ctx_))
      throw SemanticError("context mismatch: operands live in different homology rings");
  }

  static void normalize(std::vector<Term>& terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& x, const Term& y) { return x.first < y.first; });
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
      if (!out.empty() && out.back().first == t.first) {
        out.back().second += t.second;
      } else {
        out.push_back(std::move(t));
      }
    }
    std::erase_if(out, [](const Term& t) { return t.second == Scalar(0); });
    terms = std::move(out);
  }

  Context ctx_;
  std::vector<Term> terms_;
};

template <typename Scalar>
HomologyClass<Scalar> multiply(const HomologyClass<Scalar>& a, const HomologyClass<Scalar>& b) {
  return a * b;
}

inline std::string format_generator(GeneratorIndex g) {
  return "t" + std::to_string(g.k) + "_" + std::to_string(g.i);
}

inline std::string format_monomial(Monomial m, const Context& ctx) {
  if (m.bits == 0) return "1";
  std::string out;
  std::uint64_t bits = m.bits;
  while (bits) {
    const int p = std::countr_zero(bits);
    bits &= bits - 1;
    if (!out.empty()) out += ' ';
    out += format_generator(generator_at(p, ctx));
  }
  return out;
}

/// Renders a class in the text grammar: terms in canonical order joined by
/// " + " / " - ", coefficients of magnitude 1 omitted, others written as
/// "c*monomial"; the zero class prints as "0".
template <typename Scalar>
std::string format_class(const HomologyClass<Scalar>& x) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : x.terms()) {
    const bool negative = c < Scalar(0);
    const Scalar mag = negative ? -c : c;
    if (first) {
      if (negative) out += '-';
      first = false;
    } else {
      out += negative ? " - " : " + ";
    }
    if (!(mag == Scalar(1))) out += scalar_to_string(mag) + "*";
    out += format_monomial(m, x.context());
  }
  return out;
}

namespace detail {

struct ClassToken {
  enum Type { Plus, Minus, Star, Int, Gen, End } type;
  std::string text;
  int k = 0;
  int i = 0;
  std::size_t pos = 0;
};

inline std::vector<ClassToken> lex_class(const std::string& s) {
  std::vector<ClassToken> out;
  std::size_t p = 0;
  auto read_digits = [&]() {
    std::string d;
    while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p]))) d += s[p++];
    return d;
  };
  while (p < s.size()) {
    const char c = s[p];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++p;
      continue;
    }
    const std::size_t start = p;
    if (c == '+') {
      out.push_back({ClassToken::Plus, "+", 0, 0, start});
      ++p;
    } else if (c == '-') {
      out.push_back({ClassToken::Minus, "-", 0, 0, start});
      ++p;
    } else if (c == '*') {
      out.push_back({ClassToken::Star, "*", 0, 0, start});
      ++p;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      out.push_back({ClassToken::Int, read_digits(), 0, 0, start});
    } else if (c == 't') {
      ++p;
      const std::string ks = read_digits();
      if (ks.empty() || p >= s.size() || s[p] != '_')
        throw ParseError("malformed generator at position " + std::to_string(start) +
                         ": expected t<k>_<i>");
      ++p;
      const std::string is = read_digits();
      if (is.empty())
        throw ParseError("malformed generator at position " + std::to_string(start) +
                         ": expected t<k>_<i>");
      ClassToken t{ClassToken::Gen, s.substr(start, p - start), 0, 0, start};
      t.k = std::stoi(ks);
      t.i = std::stoi(is);
      out.push_back(t);
    } else {
      throw ParseError("unexpected character '" + std::string(1, c) +
                       "' at position " + std::to_string(start));
    }
  }
  out.push_back({ClassToken::End, "", 0, 0, s.size()});
  return out;
}

}  // namespace detail

/// Parses the class grammar: term := [sign] [integer '*'] monomial with
/// monomial := generator list | '1'; terms joined by '+'/'-'.  Input
/// monomials may list generators in any order; they are canonicalized with
/// the appropriate sign.  "0" denotes the zero class.
inline HomologyClass<BigInt> parse_class(const std::string& text, const Context& ctx) {
  using detail::ClassToken;
  const auto tokens = detail::lex_class(text);
  std::size_t at = 0;
  auto peek = [&]() -> const ClassToken& { return tokens[at]; };

  std::vector<std::pair<Monomial, BigInt>> terms;
  if (peek().type == ClassToken::End) throw ParseError("empty class expression");

  bool first = true;
  while (peek().type != ClassToken::End) {
    BigInt sign(1);
    if (peek().type == ClassToken::Plus || peek().type == ClassToken::Minus) {
      if (peek().type == ClassToken::Minus) sign = BigInt(-1);
      ++at;
    } else if (!first) {
      throw ParseError("expected '+' or '-' before position " +
                       std::to_string(peek().pos));
    }
    first = false;

    BigInt coeff(1);
    bool saw_monomial = false;
    std::vector<GeneratorIndex> gens;

    if (peek().type == ClassToken::Int && tokens[at + 1].type == ClassToken::Star) {
      coeff = bigint_from_decimal(peek().text);
      at += 2;
    }
    while (peek().type == ClassToken::Gen || peek().type == ClassToken::Int) {
      if (peek().type == ClassToken::Int) {
        if (peek().text != "1" && peek().text != "0")
          throw ParseError("unexpected integer '" + peek().text + "' at position " +
                           std::to_string(peek().pos) +
                           ": a coefficient must be written <int>*<monomial>");
        if (peek().text == "0") coeff = BigInt(0);
      } else {
        gens.push_back({peek().k, peek().i});
      }
      saw_monomial = true;
      ++at;
    }
    if (!saw_monomial)
      throw ParseError("expected a monomial at position " + std::to_string(peek().pos));

    auto [m, s] = canonicalize(std::span<const GeneratorIndex>(gens), ctx);
    if (s == 0) continue;
    BigInt c = sign * coeff * BigInt(s);
    if (!c.is_zero()) terms.emplace_back(m, std::move(c));
  }
  return HomologyClass<BigInt>::from_terms(ctx, std::move(terms));
}

}  // namespace grassact
