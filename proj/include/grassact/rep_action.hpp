#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "grassact/errors.hpp"
#include "grassact/exact.hpp"
#include "grassact/free_group.hpp"
#include "grassact/grassmann.hpp"

namespace grassact {

/// A unital graded ring endomorphism of H_*(G^r), determined by the images
/// of the generators: each t^k_i maps to a homogeneous class of degree d_k
/// (the zero class is allowed).  Extension to products is well defined
/// because the algebra is free graded-commutative on odd generators.
template <typename Scalar = BigInt>
class RingEndomorphism {
 public:
  using Term = std::pair<std::uint64_t, Scalar>;

  RingEndomorphism(const Context& ctx, const std::vector<HomologyClass<Scalar>>& images)
      : ctx_(ctx) {
    if (static_cast<int>(images.size()) != ctx_.slots())
      throw ValidationError("expected " + std::to_string(ctx_.slots()) +
                            " generator images, got " + std::to_string(images.size()));
    images_.resize(images.size());
    for (std::size_t p = 0; p < images.size(); ++p) {
      const auto& img = images[p];
      if (!(img.context() == ctx_))
        throw SemanticError("generator image lives in a different context");
      if (!img.is_zero()) {
        const auto deg = img.is_homogeneous();
        const int want = ctx_.degree_of_position(static_cast<int>(p));
        if (!deg || *deg != want)
          throw ValidationError(
              "image of " + format_generator(generator_at(static_cast<int>(p), ctx_)) +
              " must be homogeneous of degree " + std::to_string(want));
      }
      for (const auto& [m, c] : img.terms()) images_[p].emplace_back(m.bits, c);
    }
  }

  static RingEndomorphism identity(const Context& ctx) {
    std::vector<HomologyClass<Scalar>> images;
    images.reserve(static_cast<std::size_t>(ctx.slots()));
    for (int p = 0; p < ctx.slots(); ++p)
      images.push_back(HomologyClass<Scalar>::monomial(ctx, Monomial{1ULL << p}));
    return RingEndomorphism(ctx, images);
  }

  const Context& context() const { return ctx_; }

  HomologyClass<Scalar> image(GeneratorIndex g) const {
    const int p = position_of(g, ctx_);
    std::vector<typename HomologyClass<Scalar>::Term> terms;
    for (const auto& [bits, c] : images_[static_cast<std::size_t>(p)])
      terms.emplace_back(Monomial{bits}, c);
    return HomologyClass<Scalar>::from_terms(ctx_, std::move(terms));
  }

  /// Applies the endomorphism: each monomial expands to the product of its
  /// generator images, accumulated with Koszul signs.
  HomologyClass<Scalar> operator()(const HomologyClass<Scalar>& x) const {
    if (!(x.context() == ctx_))
      throw SemanticError("context mismatch: class lives in a different homology ring");
    std::unordered_map<std::uint64_t, Scalar> acc;
    std::vector<Term> cur, next;
    for (const auto& [mono, coeff] : x.terms()) {
      cur.clear();
      cur.emplace_back(0ULL, coeff);
      std::uint64_t bits = mono.bits;
      while (bits && !cur.empty()) {
        const int p = std::countr_zero(bits);
        bits &= bits - 1;
        const auto& img = images_[static_cast<std::size_t>(p)];
        next.clear();
        for (const auto& [partial, c] : cur) {
          for (const auto& [factor, d] : img) {
            const int s = monomial_product_sign(partial, factor);
            if (s == 0) continue;
            Scalar v = c * d;
            if (s < 0) v = -v;
            next.emplace_back(partial | factor, std::move(v));
          }
        }
        cur.swap(next);
      }
      if (bits == 0) {
        for (auto& [m, c] : cur) {
          auto [it, fresh] = acc.try_emplace(m, std::move(c));
          if (!fresh) it->second += c;
        }
      }
    }
    std::vector<typename HomologyClass<Scalar>::Term> terms;
    terms.reserve(acc.size());
    for (auto& [bits, c] : acc)
      if (!(c == Scalar(0))) terms.emplace_back(Monomial{bits}, std::move(c));
    return HomologyClass<Scalar>::from_terms(ctx_, std::move(terms));
  }

 private:
  Context ctx_;
  std::vector<std::vector<Term>> images_;
};

/// Image of t^j under the diagonal inclusion hitting coordinates i and k:
/// t^j_i + t^j_k for i != k, t^j_i for i = k.  Coefficients are +1, +1.
template <typename Scalar = BigInt>
HomologyClass<Scalar> diagonal_class(const Context& ctx, int j, int i, int k) {
  auto a = HomologyClass<Scalar>::generator(ctx, {j, i});
  if (i == k) return a;
  return a + HomologyClass<Scalar>::generator(ctx, {j, k});
}

/// The ring endomorphism induced by one generator letter, acting the same
/// way on every sphere block:
///   R(i,j), L(i,j): t^k_i -> t^k_i + t^k_j
///   Ri(i,j), Li(i,j): t^k_i -> t^k_i - t^k_j
///   s(i,j): t^k_i <-> t^k_j        v(i): t^k_i -> -t^k_i
/// The left and right Nielsen moves induce the same map: homology cannot
/// see the side of the multiplication.
template <typename Scalar = BigInt>
RingEndomorphism<Scalar> endo_of_letter(const GeneratorLetter& l, const Context& ctx) {
  validate_letter(l, ctx.r());
  std::vector<HomologyClass<Scalar>> images;
  images.reserve(static_cast<std::size_t>(ctx.slots()));
  for (int p = 0; p < ctx.slots(); ++p) {
    const GeneratorIndex g = generator_at(p, ctx);
    switch (l.kind) {
      case LetterKind::R:
      case LetterKind::L:
        if (g.i == l.i) {
          images.push_back(HomologyClass<Scalar>::generator(ctx, g) +
                           HomologyClass<Scalar>::generator(ctx, {g.k, l.j}));
          continue;
        }
        break;
      case LetterKind::Rinv:
      case LetterKind::Linv:
        if (g.i == l.i) {
          images.push_back(HomologyClass<Scalar>::generator(ctx, g) -
                           HomologyClass<Scalar>::generator(ctx, {g.k, l.j}));
          continue;
        }
        break;
      case LetterKind::Swap:
        if (g.i == l.i) {
          images.push_back(HomologyClass<Scalar>::generator(ctx, {g.k, l.j}));
          continue;
        }
        if (g.i == l.j) {
          images.push_back(HomologyClass<Scalar>::generator(ctx, {g.k, l.i}));
          continue;
        }
        break;
      case LetterKind::Inv:
        if (g.i == l.i) {
          images.push_back(-HomologyClass<Scalar>::generator(ctx, g));
          continue;
        }
        break;
    }
    images.push_back(HomologyClass<Scalar>::generator(ctx, g));
  }
  return RingEndomorphism<Scalar>(ctx, images);
}

/// The ring endomorphism obtained by factoring through the abelianization:
/// t^k_i -> sum_m M[i][m] t^k_m where M[l][m] is the exponent sum of a_l
/// in f(a_m).  Requires det M = +-1.
template <typename Scalar = BigInt>
RingEndomorphism<Scalar> endo_of_autmap(const AutMap& f, const Context& ctx) {
  if (f.r() != ctx.r())
    throw SemanticError("substitution rank " + std::to_string(f.r()) +
                        " does not match context r = " + std::to_string(ctx.r()));
  const MatrixX<Scalar> m = abelianization_matrix<Scalar>(f);
  const Scalar det = exact_determinant(m);
  if (!(det == Scalar(1) || det == Scalar(-1)))
    throw SemanticError("substitution is not an automorphism candidate: abelianization "
                        "determinant is " + scalar_to_string(det) + ", expected +-1");
  const int r = ctx.r();
  std::vector<HomologyClass<Scalar>> images;
  images.reserve(static_cast<std::size_t>(ctx.slots()));
  for (int p = 0; p < ctx.slots(); ++p) {
    const GeneratorIndex g = generator_at(p, ctx);
    std::vector<typename HomologyClass<Scalar>::Term> terms;
    for (int mm = 1; mm <= r; ++mm) {
      const Scalar& c = m(g.i - 1, mm - 1);
      if (!(c == Scalar(0)))
        terms.emplace_back(Monomial{1ULL << ((g.k - 1) * r + (mm - 1))}, c);
    }
    images.push_back(HomologyClass<Scalar>::from_terms(ctx, std::move(terms)));
  }
  return RingEndomorphism<Scalar>(ctx, images);
}

/// Action of a letter word: the letters act on homology left to right (the
/// first-written letter transforms the class first).  Together with the
/// rightmost-first composition convention on words this makes the action a
/// right action: acting by u then v equals acting by the concatenation uv.
template <typename Scalar = BigInt>
HomologyClass<Scalar> act_via_word(const GeneratorWord& w, const HomologyClass<Scalar>& x) {
  HomologyClass<Scalar> cur = x;
  for (const auto& l : w) cur = endo_of_letter<Scalar>(l, x.context())(cur);
  return cur;
}

/// Action of an automorphism through its abelianization (the factored
/// route): one endomorphism application, no letter decomposition needed.
template <typename Scalar = BigInt>
HomologyClass<Scalar> act_via_abelianization(const AutMap& f, const HomologyClass<Scalar>& x) {
  return endo_of_autmap<Scalar>(f, x.context())(x);
}

/// A representation matrix over an ordered monomial basis: column c holds
/// the coordinates of the image of basis monomial c.  degree < 0 marks the
/// full matrix over all 2^{n r} monomials in bit-set order.
template <typename Scalar = BigInt>
struct RepMatrix {
  Context context;
  int degree;
  std::vector<Monomial> basis;
  MatrixX<Scalar> matrix;

  bool is_full() const { return degree < 0; }
};

template <typename Scalar>
bool rep_matrices_equal(const RepMatrix<Scalar>& a, const RepMatrix<Scalar>& b) {
  return a.context == b.context && a.degree == b.degree && a.basis == b.basis &&
         matrices_equal(a.matrix, b.matrix);
}

namespace detail {

template <typename Scalar, typename Act>
RepMatrix<Scalar> assemble_matrix(const Context& ctx, int degree, std::vector<Monomial> basis,
                                  Act&& act) {
  const Eigen::Index dim = static_cast<Eigen::Index>(basis.size());
  std::unordered_map<std::uint64_t, Eigen::Index> row_of;
  row_of.reserve(basis.size());
  for (Eigen::Index i = 0; i < dim; ++i) row_of.emplace(basis[static_cast<std::size_t>(i)].bits, i);

  MatrixX<Scalar> m(dim, dim);
  m.setConstant(Scalar(0));
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto image =
        act(HomologyClass<Scalar>::monomial(ctx, basis[static_cast<std::size_t>(col)]));
    for (const auto& [mono, c] : image.terms()) {
      const auto it = row_of.find(mono.bits);
      if (it == row_of.end())
        throw SemanticError("action left the span of the chosen basis; this cannot happen "
                            "for graded ring endomorphisms");
      m(it->second, col) = c;
    }
  }
  return RepMatrix<Scalar>{ctx, degree, std::move(basis), std::move(m)};
}

inline std::vector<Monomial> full_basis(const Context& ctx) {
  if (ctx.slots() > 12)
    throw SemanticError("full matrix over " + std::to_string(ctx.slots()) +
                        " generator slots would have 2^" + std::to_string(ctx.slots()) +
                        " columns; the supported limit is 12 slots (use per-degree "
                        "matrices instead)");
  std::vector<Monomial> basis;
  basis.reserve(1ULL << ctx.slots());
  for (std::uint64_t v = 0; v < (1ULL << ctx.slots()); ++v) basis.push_back(Monomial{v});
  return basis;
}

template <typename Scalar>
std::function<HomologyClass<Scalar>(const HomologyClass<Scalar>&)> word_action(
    const GeneratorWord& w, const Context& ctx) {
  auto endos = std::make_shared<std::vector<RingEndomorphism<Scalar>>>();
  endos->reserve(w.size());
  for (const auto& l : w) endos->push_back(endo_of_letter<Scalar>(l, ctx));
  return [endos](const HomologyClass<Scalar>& x) {
    HomologyClass<Scalar> cur = x;
    for (const auto& e : *endos) cur = e(cur);
    return cur;
  };
}

}  // namespace detail

template <typename Scalar = BigInt>
RepMatrix<Scalar> representation_matrix(const GeneratorWord& w, int degree, const Context& ctx) {
  return detail::assemble_matrix<Scalar>(ctx, degree, basis_of_degree(ctx, degree),
                                         detail::word_action<Scalar>(w, ctx));
}

template <typename Scalar = BigInt>
RepMatrix<Scalar> representation_matrix(const AutMap& f, int degree, const Context& ctx) {
  const auto endo = endo_of_autmap<Scalar>(f, ctx);
  return detail::assemble_matrix<Scalar>(
      ctx, degree, basis_of_degree(ctx, degree),
      [&endo](const HomologyClass<Scalar>& x) { return endo(x); });
}

template <typename Scalar = BigInt>
RepMatrix<Scalar> full_matrix(const GeneratorWord& w, const Context& ctx) {
  return detail::assemble_matrix<Scalar>(ctx, -1, detail::full_basis(ctx),
                                         detail::word_action<Scalar>(w, ctx));
}

template <typename Scalar = BigInt>
RepMatrix<Scalar> full_matrix(const AutMap& f, const Context& ctx) {
  const auto endo = endo_of_autmap<Scalar>(f, ctx);
  return detail::assemble_matrix<Scalar>(
      ctx, -1, detail::full_basis(ctx),
      [&endo](const HomologyClass<Scalar>& x) { return endo(x); });
}

/// True when the action fixes every monomial, checked column by column
/// with early exit; equivalent to full_matrix(...) being the identity but
/// without materializing it.
template <typename Scalar = BigInt>
bool word_acts_as_identity(const GeneratorWord& w, const Context& ctx) {
  const auto act = detail::word_action<Scalar>(w, ctx);
  const std::uint64_t total = 1ULL << ctx.slots();
  for (std::uint64_t v = 0; v < total; ++v) {
    const auto x = HomologyClass<Scalar>::monomial(ctx, Monomial{v});
    if (!(act(x) == x)) return false;
  }
  return true;
}

template <typename Scalar = BigInt>
bool autmap_acts_as_identity(const AutMap& f, const Context& ctx) {
  const auto endo = endo_of_autmap<Scalar>(f, ctx);
  const std::uint64_t total = 1ULL << ctx.slots();
  for (std::uint64_t v = 0; v < total; ++v) {
    const auto x = HomologyClass<Scalar>::monomial(ctx, Monomial{v});
    if (!(endo(x) == x)) return false;
  }
  return true;
}

/// Splits a monomial into its per-block coordinate sets: entry k-1 is the
/// bit mask over {1..r} of the coordinates i with t^k_i present.  Because
/// canonical order keeps blocks contiguous, this identification with the
/// tensor product of exterior algebras carries sign +1 on every canonical
/// basis monomial; es_compose is its two-sided inverse.
inline std::vector<std::uint64_t> es_decompose(Monomial m, const Context& ctx) {
  std::vector<std::uint64_t> out(static_cast<std::size_t>(ctx.n()));
  const std::uint64_t rmask = (ctx.r() == 64) ? ~0ULL : (1ULL << ctx.r()) - 1;
  for (int k = 0; k < ctx.n(); ++k) out[static_cast<std::size_t>(k)] = (m.bits >> (k * ctx.r())) & rmask;
  return out;
}

inline Monomial es_compose(const Context& ctx, const std::vector<std::uint64_t>& blocks) {
  if (static_cast<int>(blocks.size()) != ctx.n())
    throw ValidationError("expected " + std::to_string(ctx.n()) + " block masks, got " +
                          std::to_string(blocks.size()));
  std::vector<GeneratorIndex> gens;
  for (int k = 0; k < ctx.n(); ++k) {
    std::uint64_t mask = blocks[static_cast<std::size_t>(k)];
    if (ctx.r() < 64 && (mask >> ctx.r()) != 0)
      throw ValidationError("block mask " + std::to_string(mask) + " uses coordinates beyond r");
    while (mask) {
      const int i = std::countr_zero(mask);
      mask &= mask - 1;
      gens.push_back({k + 1, i + 1});
    }
  }
  const auto [m, sign] = canonicalize(std::span<const GeneratorIndex>(gens), ctx);
  if (sign != 1)
    throw SemanticError("block recomposition produced a nontrivial sign; canonical order "
                        "should make blocks contiguous");
  return m;
}

}  // namespace grassact
