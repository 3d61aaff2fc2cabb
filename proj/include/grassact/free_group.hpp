#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grassact/errors.hpp"
#include "grassact/exact.hpp"

namespace grassact {

/// A word in the free group F_r: letters are nonzero integers, +g for the
/// generator a_g and -g for its inverse.  Functions in this module only
/// produce freely reduced words.
using Word = std::vector<int>;

inline void append_reduced(Word& acc, int letter) {
  if (!acc.empty() && acc.back() == -letter) {
    acc.pop_back();
  } else {
    acc.push_back(letter);
  }
}

/// Free reduction: removes all adjacent inverse pairs.  Idempotent.
inline Word reduce(const Word& raw) {
  Word out;
  out.reserve(raw.size());
  for (int l : raw) {
    if (l == 0) throw ValidationError("word letter 0 is invalid");
    append_reduced(out, l);
  }
  return out;
}

inline Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

inline Word concat(const Word& a, const Word& b) {
  Word out = a;
  for (int l : b) append_reduced(out, l);
  return out;
}

inline std::string format_word(const Word& w) {
  std::string out;
  for (int l : w) {
    if (!out.empty()) out += ' ';
    out += "a" + std::to_string(l > 0 ? l : -l);
    if (l < 0) out += "^-1";
  }
  return out;
}

/// Parses the word grammar: space-separated tokens `a<k>` or `a<k>^-1`.
/// The empty (or all-whitespace) string is the empty word.
inline Word parse_word(const std::string& text, int r) {
  Word raw;
  std::size_t p = 0;
  while (p < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[p]))) {
      ++p;
      continue;
    }
    const std::size_t start = p;
    if (text[p] != 'a')
      throw ParseError("word token at position " + std::to_string(start) +
                       ": expected a<k> or a<k>^-1");
    ++p;
    std::string digits;
    while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p])))
      digits += text[p++];
    if (digits.empty())
      throw ParseError("word token at position " + std::to_string(start) +
                       ": expected a generator index after 'a'");
    int g = std::stoi(digits);
    if (g < 1 || g > r)
      throw ValidationError("word token at position " + std::to_string(start) +
                            ": generator index " + digits + " out of range 1.." +
                            std::to_string(r));
    if (p < text.size() && text[p] == '^') {
      if (text.compare(p, 3, "^-1") != 0)
        throw ParseError("word token at position " + std::to_string(start) +
                         ": the only supported exponent is ^-1");
      g = -g;
      p += 3;
    }
    if (p < text.size() && !std::isspace(static_cast<unsigned char>(text[p])))
      throw ParseError("word token at position " + std::to_string(start) +
                       ": unexpected character '" + std::string(1, text[p]) + "'");
    raw.push_back(g);
  }
  return reduce(raw);
}

template <typename Scalar>
MatrixX<Scalar> abelianization_matrix_of_images(int r, const std::vector<Word>& images) {
  MatrixX<Scalar> m(r, r);
  m.setZero();
  for (int col = 0; col < r; ++col)
    for (int l : images[static_cast<std::size_t>(col)])
      m((l > 0 ? l : -l) - 1, col) += Scalar(l > 0 ? 1 : -1);
  return m;
}

/// An endomorphism of F_r given by the images of a_1..a_r.  Construction
/// reduces the images and checks the necessary invertibility condition
/// det(abelianization) = +-1; it does not run a full automorphism test, so
/// a non-surjective tuple that happens to pass the determinant check is
/// the caller's responsibility.
class AutMap {
 public:
  AutMap(int r, std::vector<Word> images) : r_(r), images_(std::move(images)) {
    if (r_ < 1) throw ValidationError("rank must be >= 1, got " + std::to_string(r_));
    if (static_cast<int>(images_.size()) != r_)
      throw ValidationError("expected " + std::to_string(r_) + " generator images, got " +
                            std::to_string(images_.size()));
    for (auto& w : images_) {
      for (int l : w) {
        const int g = l > 0 ? l : -l;
        if (g < 1 || g > r_)
          throw ValidationError("image letter a" + std::to_string(g) +
                                " out of range 1.." + std::to_string(r_));
      }
      w = reduce(w);
    }
    const BigInt det = exact_determinant(abelianization_matrix_of_images<BigInt>(r_, images_));
    if (!(det == BigInt(1) || det == BigInt(-1)))
      throw SemanticError("substitution is not an automorphism candidate: abelianization "
                          "determinant is " + det.to_string() + ", expected +-1");
  }

  static AutMap identity(int r) {
    std::vector<Word> images;
    images.reserve(static_cast<std::size_t>(r));
    for (int g = 1; g <= r; ++g) images.push_back({g});
    return AutMap(r, std::move(images));
  }

  int r() const { return r_; }
  const Word& image(int g) const { return images_[static_cast<std::size_t>(g - 1)]; }
  const std::vector<Word>& images() const { return images_; }

  friend bool operator==(const AutMap&, const AutMap&) = default;

 private:
  int r_;
  std::vector<Word> images_;
};

/// Applies f to w by substituting generator images, then reduces.
inline Word apply(const AutMap& f, const Word& w) {
  Word out;
  for (int l : w) {
    const Word& img = f.image(l > 0 ? l : -l);
    if (l > 0) {
      for (int x : img) append_reduced(out, x);
    } else {
      for (auto it = img.rbegin(); it != img.rend(); ++it) append_reduced(out, -*it);
    }
  }
  return out;
}

/// compose(f, g) = f after g: images are f applied to g's images.
inline AutMap compose(const AutMap& f, const AutMap& g) {
  if (f.r() != g.r()) throw SemanticError("cannot compose endomorphisms of different ranks");
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(g.r()));
  for (int m = 1; m <= g.r(); ++m) images.push_back(apply(f, g.image(m)));
  return AutMap(f.r(), std::move(images));
}

/// M[l][m] = exponent sum of a_l in f(a_m): columns are the abelianized
/// generator images, so M(compose(f, g)) = M(f) * M(g).
template <typename Scalar = BigInt>
MatrixX<Scalar> abelianization_matrix(const AutMap& f) {
  return abelianization_matrix_of_images<Scalar>(f.r(), f.images());
}

/// True when f acts trivially on the abelianization F_r / [F_r, F_r].
inline bool is_IA(const AutMap& f) {
  return is_identity_matrix(abelianization_matrix<BigInt>(f));
}

// ---------------------------------------------------------------------------
// Generator letters: elementary automorphisms used to build words.

enum class LetterKind { R, Rinv, L, Linv, Swap, Inv };

/// One elementary automorphism:
///   R(i,j):  a_j -> a_j a_i        Ri(i,j): a_j -> a_j a_i^-1
///   L(i,j):  a_j -> a_i a_j        Li(i,j): a_j -> a_i^-1 a_j
///   s(i,j):  a_i <-> a_j           v(i):    a_i -> a_i^-1
/// (two-index letters require i != j; all other generators are fixed).
/// The inverse letters and v are included so that inverses and all of
/// GL_r(Z) are reachable without quoting any generation theorem.
struct GeneratorLetter {
  LetterKind kind;
  int i = 0;
  int j = 0;
  friend bool operator==(const GeneratorLetter&, const GeneratorLetter&) = default;
};

/// A word of generator letters.  For w = l_1 l_2 ... l_m the automorphism
/// is phi_w = l_1 after l_2 after ... after l_m: the rightmost letter is
/// the innermost map.  The empty word is the identity.
using GeneratorWord = std::vector<GeneratorLetter>;

inline bool letter_has_two_indices(LetterKind k) { return k != LetterKind::Inv; }

inline std::string format_letter(const GeneratorLetter& l) {
  const char* name = nullptr;
  switch (l.kind) {
    case LetterKind::R: name = "R"; break;
    case LetterKind::Rinv: name = "Ri"; break;
    case LetterKind::L: name = "L"; break;
    case LetterKind::Linv: name = "Li"; break;
    case LetterKind::Swap: name = "s"; break;
    case LetterKind::Inv: name = "v"; break;
  }
  if (l.kind == LetterKind::Inv) return std::string(name) + "(" + std::to_string(l.i) + ")";
  return std::string(name) + "(" + std::to_string(l.i) + "," + std::to_string(l.j) + ")";
}

inline std::string format_generator_word(const GeneratorWord& w) {
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    out += format_letter(l);
  }
  return out;
}

inline void validate_letter(const GeneratorLetter& l, int r) {
  auto check = [&](int idx) {
    if (idx < 1 || idx > r)
      throw ValidationError("letter " + format_letter(l) + ": index " + std::to_string(idx) +
                            " out of range 1.." + std::to_string(r));
  };
  check(l.i);
  if (letter_has_two_indices(l.kind)) {
    check(l.j);
    if (l.i == l.j)
      throw ValidationError("letter " + format_letter(l) + ": indices must be distinct");
  }
}

/// Parses one letter token: R(i,j), Ri(i,j), L(i,j), Li(i,j), s(i,j), v(i).
inline GeneratorLetter parse_letter(const std::string& token, int r) {
  const std::size_t open = token.find('(');
  if (token.empty() || open == std::string::npos || token.back() != ')')
    throw ParseError("letter '" + token + "': expected name(indices)");
  const std::string name = token.substr(0, open);
  LetterKind kind;
  if (name == "R") {
    kind = LetterKind::R;
  } else if (name == "Ri") {
    kind = LetterKind::Rinv;
  } else if (name == "L") {
    kind = LetterKind::L;
  } else if (name == "Li") {
    kind = LetterKind::Linv;
  } else if (name == "s") {
    kind = LetterKind::Swap;
  } else if (name == "v") {
    kind = LetterKind::Inv;
  } else {
    throw ParseError("letter '" + token + "': unknown name '" + name +
                     "' (expected R, Ri, L, Li, s or v)");
  }
  const std::string body = token.substr(open + 1, token.size() - open - 2);
  std::vector<int> idx;
  std::size_t p = 0;
  while (p < body.size()) {
    while (p < body.size() && body[p] == ' ') ++p;
    std::size_t start = p;
    while (p < body.size() && std::isdigit(static_cast<unsigned char>(body[p]))) ++p;
    if (p == start) throw ParseError("letter '" + token + "': expected an index");
    idx.push_back(std::stoi(body.substr(start, p - start)));
    while (p < body.size() && body[p] == ' ') ++p;
    if (p < body.size()) {
      if (body[p] != ',') throw ParseError("letter '" + token + "': expected ','");
      ++p;
    }
  }
  const std::size_t want = letter_has_two_indices(kind) ? 2 : 1;
  if (idx.size() != want)
    throw ParseError("letter '" + token + "': expected " + std::to_string(want) +
                     (want == 1 ? " index" : " indices") + ", got " +
                     std::to_string(idx.size()));
  GeneratorLetter l{kind, idx[0], want == 2 ? idx[1] : 0};
  validate_letter(l, r);
  return l;
}

/// Parses a whitespace-separated letter word; empty input is the identity.
inline GeneratorWord parse_generator_word(const std::string& text, int r) {
  GeneratorWord out;
  std::size_t p = 0;
  while (p < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[p]))) {
      ++p;
      continue;
    }
    std::size_t end = p;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    out.push_back(parse_letter(text.substr(p, end - p), r));
    p = end;
  }
  return out;
}

inline AutMap letter_to_autmap(const GeneratorLetter& l, int r) {
  validate_letter(l, r);
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(r));
  for (int g = 1; g <= r; ++g) images.push_back({g});
  auto& target = [&]() -> Word& {
    switch (l.kind) {
      case LetterKind::R:
      case LetterKind::Rinv:
      case LetterKind::L:
      case LetterKind::Linv:
        return images[static_cast<std::size_t>(l.j - 1)];
      default:
        return images[static_cast<std::size_t>(l.i - 1)];
    }
  }();
  switch (l.kind) {
    case LetterKind::R: target = {l.j, l.i}; break;
    case LetterKind::Rinv: target = {l.j, -l.i}; break;
    case LetterKind::L: target = {l.i, l.j}; break;
    case LetterKind::Linv: target = {-l.i, l.j}; break;
    case LetterKind::Swap:
      images[static_cast<std::size_t>(l.i - 1)] = {l.j};
      images[static_cast<std::size_t>(l.j - 1)] = {l.i};
      break;
    case LetterKind::Inv: target = {-l.i}; break;
  }
  return AutMap(r, std::move(images));
}

/// phi_w for w = l_1 ... l_m under the rightmost-first convention.
inline AutMap word_to_autmap(const GeneratorWord& w, int r) {
  AutMap acc = AutMap::identity(r);
  for (const auto& l : w) acc = compose(acc, letter_to_autmap(l, r));
  return acc;
}

// ---------------------------------------------------------------------------
// Magnus generators of the IA subgroup (used as test vectors).

/// K_{ij}: a_i -> a_j a_i a_j^-1, all other generators fixed.
inline AutMap magnus_conjugation(int i, int j, int r) {
  if (i == j) throw ValidationError("magnus conjugation needs distinct indices");
  AutMap id = AutMap::identity(r);
  std::vector<Word> images = id.images();
  images[static_cast<std::size_t>(i - 1)] = {j, i, -j};
  return AutMap(r, std::move(images));
}

/// Letter factorization of K_{ij}: applying Ri(j,i) first sends a_i to
/// a_i a_j^-1, then L(j,i) left-multiplies by a_j.
inline GeneratorWord magnus_conjugation_word(int i, int j) {
  return {{LetterKind::L, j, i}, {LetterKind::Rinv, j, i}};
}

/// K_{ijk}: a_i -> a_i [a_j, a_k] = a_i a_j a_k a_j^-1 a_k^-1, j < k.
inline AutMap magnus_commutator(int i, int j, int k, int r) {
  if (i == j || i == k || j == k)
    throw ValidationError("magnus commutator needs three distinct indices");
  AutMap id = AutMap::identity(r);
  std::vector<Word> images = id.images();
  images[static_cast<std::size_t>(i - 1)] = {i, j, k, -j, -k};
  return AutMap(r, std::move(images));
}

/// Letter factorization of K_{ijk}: right-multiplications of a_i by a_j,
/// a_k, a_j^-1, a_k^-1 compose (rightmost first) to a_i a_j a_k a_j^-1 a_k^-1.
inline GeneratorWord magnus_commutator_word(int i, int j, int k) {
  return {{LetterKind::R, j, i},
          {LetterKind::R, k, i},
          {LetterKind::Rinv, j, i},
          {LetterKind::Rinv, k, i}};
}

struct IaGenerator {
  std::string name;
  AutMap map;
  GeneratorWord word;
};

/// The Magnus generating set of IA_r with letter factorizations: all
/// K_{ij} (i != j) followed by all K_{ijk} (i, j, k distinct, j < k).
/// Count: r(r-1) + r * C(r-1, 2).
inline std::vector<IaGenerator> magnus_ia_generator_details(int r) {
  std::vector<IaGenerator> out;
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= r; ++j) {
      if (i == j) continue;
      out.push_back({"K_" + std::to_string(i) + "," + std::to_string(j),
                     magnus_conjugation(i, j, r), magnus_conjugation_word(i, j)});
    }
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= r; ++j) {
      if (j == i) continue;
      for (int k = j + 1; k <= r; ++k) {
        if (k == i) continue;
        out.push_back(
            {"K_" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k),
             magnus_commutator(i, j, k, r), magnus_commutator_word(i, j, k)});
      }
    }
  return out;
}

inline std::vector<AutMap> magnus_ia_generators(int r) {
  std::vector<AutMap> out;
  for (auto& g : magnus_ia_generator_details(r)) out.push_back(std::move(g.map));
  return out;
}

}  // namespace grassact
