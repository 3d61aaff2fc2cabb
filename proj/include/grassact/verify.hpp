#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "grassact/errors.hpp"
#include "grassact/exact.hpp"
#include "grassact/free_group.hpp"
#include "grassact/grassmann.hpp"
#include "grassact/rep_action.hpp"

namespace grassact {

struct VerifyOptions {
  long long trials = 50;
  int max_word_len = 20;
  std::uint64_t seed = 1;
};

struct CheckResult {
  std::string name;
  bool passed = true;
  long long instances = 0;
  std::string detail;
  std::string counterexample_word;
  std::string counterexample_class;
};

struct VerifyReport {
  bool passed = true;
  std::vector<CheckResult> checks;
};

enum class Suite { Paths, Ia, Faithful, RankInvariance, All };

inline const char* suite_name(Suite s) {
  switch (s) {
    case Suite::Paths: return "paths";
    case Suite::Ia: return "ia";
    case Suite::Faithful: return "faithful";
    case Suite::RankInvariance: return "rank-invariance";
    case Suite::All: return "all";
  }
  return "?";
}

inline Suite parse_suite(const std::string& s) {
  if (s == "paths") return Suite::Paths;
  if (s == "ia") return Suite::Ia;
  if (s == "faithful") return Suite::Faithful;
  if (s == "rank-invariance") return Suite::RankInvariance;
  if (s == "all") return Suite::All;
  throw ParseError("unknown suite '" + s +
                   "' (expected paths, ia, faithful, rank-invariance or all)");
}

// Deterministic across platforms: plain modulo on mt19937_64 output, no
// std distributions (their algorithms are implementation-defined).
inline std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

inline GeneratorLetter random_letter(std::mt19937_64& rng, int r) {
  if (r == 1) return {LetterKind::Inv, 1, 0};
  const int kind = static_cast<int>(rng_below(rng, 6));
  const int i = static_cast<int>(rng_below(rng, static_cast<std::uint64_t>(r))) + 1;
  int j = static_cast<int>(rng_below(rng, static_cast<std::uint64_t>(r) - 1)) + 1;
  if (j >= i) ++j;
  switch (kind) {
    case 0: return {LetterKind::R, i, j};
    case 1: return {LetterKind::Rinv, i, j};
    case 2: return {LetterKind::L, i, j};
    case 3: return {LetterKind::Linv, i, j};
    case 4: return {LetterKind::Swap, i, j};
    default: return {LetterKind::Inv, i, 0};
  }
}

inline GeneratorWord random_generator_word(std::mt19937_64& rng, int r, int max_len) {
  const int len = static_cast<int>(rng_below(rng, static_cast<std::uint64_t>(max_len))) + 1;
  GeneratorWord w;
  w.reserve(static_cast<std::size_t>(len));
  for (int t = 0; t < len; ++t) w.push_back(random_letter(rng, r));
  return w;
}

/// Route agreement: on random letter words, acting letter by letter equals
/// acting once through the abelianization, on every basis monomial.
inline CheckResult check_paths(const Context& ctx, const VerifyOptions& opts) {
  CheckResult res;
  res.name = "paths";
  res.detail = "letter route vs abelianization route on all 2^" +
               std::to_string(ctx.slots()) + " basis monomials per word";
  std::mt19937_64 rng(opts.seed ^ 0x70617468ULL);
  const std::uint64_t total = 1ULL << ctx.slots();
  for (long long t = 0; t < opts.trials; ++t) {
    const GeneratorWord w = random_generator_word(rng, ctx.r(), opts.max_word_len);
    const auto act_letters = detail::word_action<BigInt>(w, ctx);
    const auto endo = endo_of_autmap<BigInt>(word_to_autmap(w, ctx.r()), ctx);
    for (std::uint64_t v = 0; v < total; ++v) {
      const auto x = HomologyClass<BigInt>::monomial(ctx, Monomial{v});
      if (!(act_letters(x) == endo(x))) {
        res.passed = false;
        res.counterexample_word = format_generator_word(w);
        res.counterexample_class = format_monomial(Monomial{v}, ctx);
        return res;
      }
    }
    ++res.instances;
  }
  return res;
}

/// Kernel containment: every Magnus generator of IA_r acts as the identity
/// in every degree, through the abelianization route and through its
/// letter factorization.
inline CheckResult check_ia(const Context& ctx, const VerifyOptions& opts) {
  (void)opts;
  CheckResult res;
  res.name = "ia";
  res.detail = "Magnus generators act as identity in every degree, both routes";
  long long top = 0;
  for (int d : ctx.degrees()) top += d;
  top *= ctx.r();
  for (const auto& gen : magnus_ia_generator_details(ctx.r())) {
    for (int d = 0; d <= top; ++d) {
      const auto m = representation_matrix<BigInt>(gen.map, d, ctx);
      if (!is_identity_matrix(m.matrix)) {
        res.passed = false;
        res.counterexample_word = gen.name + " (abelianization route, degree " +
                                  std::to_string(d) + ")";
        return res;
      }
      ++res.instances;
    }
    if (!word_acts_as_identity<BigInt>(gen.word, ctx)) {
      res.passed = false;
      res.counterexample_word = gen.name + " = " + format_generator_word(gen.word) +
                                " (letter route)";
      return res;
    }
    ++res.instances;
  }
  return res;
}

/// Kernel exactness, sampled: random words that move the abelianization
/// move homology, and the minimal-degree block reconstructs the exponent
/// sum matrix (transposed) exactly.
inline CheckResult check_faithful(const Context& ctx, const VerifyOptions& opts) {
  CheckResult res;
  res.name = "faithful";
  std::mt19937_64 rng(opts.seed ^ 0x66616974ULL);

  int d1 = ctx.degrees()[0];
  for (int d : ctx.degrees()) d1 = std::min(d1, d);
  int mult = 0;
  for (int d : ctx.degrees())
    if (d == d1) ++mult;
  const bool reconstruct = (mult == 1);
  res.detail = reconstruct
                   ? "non-IA words act nontrivially; minimal-degree block equals the "
                     "transposed exponent-sum matrix"
                   : "non-IA words act nontrivially (minimal degree not unique; block "
                     "reconstruction skipped)";

  const std::uint64_t total = 1ULL << ctx.slots();
  for (long long t = 0; t < opts.trials; ++t) {
    GeneratorWord w;
    AutMap f = AutMap::identity(ctx.r());
    bool found = false;
    for (int attempt = 0; attempt < 1000; ++attempt) {
      w = random_generator_word(rng, ctx.r(), opts.max_word_len);
      f = word_to_autmap(w, ctx.r());
      if (!is_IA(f)) {
        found = true;
        break;
      }
    }
    if (!found) {
      res.passed = false;
      res.detail += "; could not sample a non-IA word";
      return res;
    }

    const auto act = detail::word_action<BigInt>(w, ctx);
    bool moved = false;
    for (std::uint64_t v = 0; v < total && !moved; ++v) {
      const auto x = HomologyClass<BigInt>::monomial(ctx, Monomial{v});
      if (!(act(x) == x)) moved = true;
    }
    if (!moved) {
      res.passed = false;
      res.counterexample_word = format_generator_word(w);
      res.detail += "; word is non-IA yet acts as identity";
      return res;
    }

    if (reconstruct) {
      const auto block = representation_matrix<BigInt>(w, d1, ctx);
      const MatrixX<BigInt> m = abelianization_matrix<BigInt>(f);
      const MatrixX<BigInt> mt = m.transpose();
      if (!matrices_equal(block.matrix, mt) || is_identity_matrix(block.matrix)) {
        res.passed = false;
        res.counterexample_word = format_generator_word(w);
        res.detail += "; minimal-degree block mismatch";
        return res;
      }
    }
    ++res.instances;
  }
  return res;
}

/// Rank-only dependence: the same word yields bit-identical full matrices
/// over contexts that share n and r but have different degree sequences.
inline CheckResult check_rank_invariance(const Context& ctx,
                                         const std::vector<std::vector<int>>& partner_degrees,
                                         const VerifyOptions& opts) {
  CheckResult res;
  res.name = "rank-invariance";
  std::mt19937_64 rng(opts.seed ^ 0x72616E6BULL);

  std::vector<Context> partners;
  std::string names;
  for (const auto& degs : partner_degrees) {
    if (static_cast<int>(degs.size()) != ctx.n())
      throw ValidationError("rank-invariance partner must have the same number of degrees");
    partners.emplace_back(degs, ctx.r());
    if (!names.empty()) names += ", ";
    names += "deg" + [&] {
      std::string s = "[";
      for (std::size_t i = 0; i < degs.size(); ++i)
        s += (i ? "," : "") + std::to_string(degs[i]);
      return s + "]";
    }();
  }
  res.detail = "full matrices bit-identical across partner degree lists " + names;

  for (long long t = 0; t < opts.trials; ++t) {
    const GeneratorWord w = random_generator_word(rng, ctx.r(), opts.max_word_len);
    const auto base = full_matrix<BigInt>(w, ctx);
    for (const auto& pctx : partners) {
      const auto other = full_matrix<BigInt>(w, pctx);
      if (!matrices_equal(base.matrix, other.matrix)) {
        res.passed = false;
        res.counterexample_word = format_generator_word(w);
        return res;
      }
    }
    ++res.instances;
  }
  return res;
}

/// Default partner degree lists for the rank-invariance suite: a shifted
/// sequence and the all-threes sequence, both sharing n with the input.
inline std::vector<std::vector<int>> default_rank_invariance_partners(const Context& ctx) {
  std::vector<int> shifted;
  std::vector<int> threes;
  for (int k = 0; k < ctx.n(); ++k) {
    shifted.push_back(ctx.degrees()[static_cast<std::size_t>(k)] + 2 * (k + 1));
    threes.push_back(3);
  }
  std::vector<std::vector<int>> out = {shifted};
  if (threes != ctx.degrees() && threes != shifted) out.push_back(threes);
  return out;
}

inline VerifyReport verify_theorems(const Context& ctx, const VerifyOptions& opts,
                                    Suite suite = Suite::All) {
  VerifyReport report;
  const bool all = suite == Suite::All;
  if (all || suite == Suite::Paths) report.checks.push_back(check_paths(ctx, opts));
  if (all || suite == Suite::Ia) report.checks.push_back(check_ia(ctx, opts));
  if (all || suite == Suite::Faithful) report.checks.push_back(check_faithful(ctx, opts));
  if (all || suite == Suite::RankInvariance)
    report.checks.push_back(
        check_rank_invariance(ctx, default_rank_invariance_partners(ctx), opts));
  for (const auto& c : report.checks) report.passed = report.passed && c.passed;
  return report;
}

}  // namespace grassact
