#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "binwords/word.hpp"

namespace binwords {

/// Largest supported signature order unless a caller raises it explicitly.
inline constexpr int kDefaultMaxOrder = 4;

/// Position of each subword x (1 <= |x| <= m) in a signature vector. Words are
/// sorted by length, then lexicographically, so for a binary alphabet and
/// m = 2 the order is 0, 1, 00, 01, 10, 11.
class SignatureLayout {
 public:
  SignatureLayout(Alphabet alphabet, int order, int max_order = kDefaultMaxOrder);

  Alphabet alphabet() const noexcept { return alphabet_; }
  int order() const noexcept { return order_; }
  std::size_t dimension() const noexcept { return offsets_.back(); }

  /// First index of the block of words of length `len` (1-based length).
  std::size_t offset(int len) const { return offsets_[static_cast<std::size_t>(len - 1)]; }
  /// k^len
  std::size_t power(int len) const { return powers_[static_cast<std::size_t>(len)]; }

  std::size_t index_of(std::span<const Letter> x) const;
  Word word_at(std::size_t index) const;
  int length_at(std::size_t index) const;

  friend bool operator==(const SignatureLayout& a, const SignatureLayout& b) {
    return a.alphabet_ == b.alphabet_ && a.order_ == b.order_;
  }

 private:
  Alphabet alphabet_;
  int order_;
  std::vector<std::size_t> offsets_;  // size order + 1, offsets_[order] == dimension
  std::vector<std::size_t> powers_;   // k^0 .. k^order
};

/// binom(u, x) for every x with 1 <= |x| <= m, in canonical layout order.
class BinomialSignature {
 public:
  /// The signature of the empty word.
  explicit BinomialSignature(SignatureLayout layout);
  BinomialSignature(SignatureLayout layout, std::vector<std::uint64_t> counts);

  const SignatureLayout& layout() const noexcept { return layout_; }
  int order() const noexcept { return layout_.order(); }
  std::uint64_t length() const noexcept;

  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::span<std::uint64_t> mutable_counts() noexcept { return counts_; }
  std::uint64_t count(const Word& x) const;
  std::uint64_t operator[](std::size_t index) const { return counts_[index]; }

  friend bool operator==(const BinomialSignature&, const BinomialSignature&) = default;

 private:
  SignatureLayout layout_;
  std::vector<std::uint64_t> counts_;
};

BinomialSignature signature(const Word& u, int order, int max_order = kDefaultMaxOrder);

/// Signature of u·a from the signature of u.
BinomialSignature signature_extend(BinomialSignature s, Letter a);
void signature_extend_in_place(const SignatureLayout& layout, std::span<std::uint64_t> counts,
                               Letter a);

/// Signature of uv from the signatures of u and v.
BinomialSignature signature_concat(const BinomialSignature& s, const BinomialSignature& t);

/// Prefix signatures of a word, one per position, so that the signature of any
/// factor can be recovered without rescanning it.
class PrefixIndex {
 public:
  PrefixIndex(const Word& word, int order, int max_order = kDefaultMaxOrder);
  /// An index over the empty word, grown with push_back.
  PrefixIndex(Alphabet alphabet, int order, int max_order = kDefaultMaxOrder);

  const SignatureLayout& layout() const noexcept { return layout_; }
  std::size_t size() const noexcept { return letters_.size(); }
  Letter letter(std::size_t i) const { return letters_[i]; }

  void push_back(Letter a);
  void pop_back();

  /// Signature of word[0..pos).
  std::span<const std::uint64_t> prefix(std::size_t pos) const;

  /// Signature of word[i..j).
  BinomialSignature factor_signature(std::size_t i, std::size_t j) const;

  /// True iff word[i1..j1) and word[i2..j2) are m-binomially equivalent.
  /// Compares length by length and stops at the first difference.
  bool factors_equivalent(std::size_t i1, std::size_t j1, std::size_t i2, std::size_t j2) const;

 private:
  void factor_level(std::size_t i, std::size_t j, int len, std::span<std::uint64_t> out) const;
  void check_range(std::size_t i, std::size_t j) const;

  SignatureLayout layout_;
  std::size_t dim_;
  std::vector<Letter> letters_;
  std::vector<std::uint64_t> table_;  // (size + 1) * dim_
};

/// u ~_m v. Words over different alphabets are compared over the larger one.
bool equivalent(const Word& u, const Word& v, int order);

/// u ~_1 v.
bool abelian_equivalent(const Word& u, const Word& v);

/// binom(u, 01) - binom(u, 12) for a ternary word.
std::int64_t lambda(const Word& u);

}  // namespace binwords
