#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "binwords/signature.hpp"
#include "binwords/word.hpp"

namespace binwords {

class Morphism {
 public:
  /// One image per letter of `alphabet`, in letter order.
  Morphism(Alphabet alphabet, std::vector<Word> images);

  static Morphism identity(Alphabet alphabet);

  Alphabet alphabet() const noexcept { return alphabet_; }
  const Word& image(Letter a) const { return images_.at(a); }
  const std::vector<Word>& images() const noexcept { return images_; }
  bool erasing() const noexcept { return erasing_; }

  /// "0->012,1->02,2->1"
  std::string str() const;

  friend bool operator==(const Morphism&, const Morphism&) = default;

 private:
  Alphabet alphabet_;
  std::vector<Word> images_;
  bool erasing_ = false;
};

/// Parses "0->012,1->02,2->1". The alphabet is the set of rule letters, which
/// must be exactly 0..k-1; an empty right-hand side declares an erasing rule.
Morphism parse_morphism(std::string_view spec);

/// Named morphisms: g, g2, gtilde, gtilde2, h, e, plus the letter a fixed
/// point of the preset is usually seeded with.
Morphism preset_morphism(std::string_view name);
Letter preset_seed(std::string_view name);

Word apply(const Morphism& f, const Word& u);

/// (f ∘ g)(a) = f(g(a)).
Morphism compose(const Morphism& f, const Morphism& g);

/// Every image reversed.
Morphism mirror_morphism(const Morphism& f);

/// f(a) = a·w with w non-empty, and f erases no letter reachable from a.
bool is_prolongable(const Morphism& f, Letter a);

/// The first n letters of f^ω(a).
Word fixed_point_prefix(const Morphism& f, Letter a, std::size_t n);

/// True iff no image is a prefix of another (empty images disqualify).
bool is_prefix_code(const Morphism& f);

struct Decoding {
  Word preimage;
  std::size_t consumed = 0;

  bool complete(const Word& w) const noexcept { return consumed == w.size(); }
};

/// Factors the longest prefix of w that is a product of images of f. The
/// images must form a prefix code, which makes the factorisation unique.
Decoding decode(const Word& w, const Morphism& f);

/// Exact integer matrix acting on order-m signatures, rows and columns in
/// canonical layout order.
class LiftedMatrix {
 public:
  LiftedMatrix(SignatureLayout layout, std::vector<std::int64_t> entries);

  static LiftedMatrix identity(SignatureLayout layout);

  const SignatureLayout& layout() const noexcept { return layout_; }
  std::size_t dimension() const noexcept { return dim_; }
  std::int64_t at(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
  std::int64_t& at(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
  const std::vector<std::int64_t>& entries() const noexcept { return entries_; }
  std::vector<std::vector<std::int64_t>> rows() const;

  /// M · s, exact; throws on overflow or negative components.
  BinomialSignature operator*(const BinomialSignature& s) const;
  LiftedMatrix operator*(const LiftedMatrix& other) const;

  friend bool operator==(const LiftedMatrix& a, const LiftedMatrix& b) {
    return a.layout_ == b.layout_ && a.entries_ == b.entries_;
  }

 private:
  SignatureLayout layout_;
  std::size_t dim_;
  std::vector<std::int64_t> entries_;
};

/// The matrix M with signature(f(u), m) = M · signature(u, m) for every u.
/// Built column by column from the words of length <= m (whose signatures
/// form a unit triangular basis), then checked against further words;
/// ErrorCode::NoLinearAction if the check fails.
LiftedMatrix lift_matrix(const Morphism& f, int order, int max_order = kDefaultMaxOrder);

/// Exact determinant by fraction-free (Bareiss) elimination.
std::int64_t determinant(const LiftedMatrix& m);
bool is_invertible(const LiftedMatrix& m);

}  // namespace binwords
