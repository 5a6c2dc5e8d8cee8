#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "binwords/error.hpp"

namespace binwords {

using Letter = std::uint8_t;

class Alphabet {
 public:
  static constexpr int kMaxSize = 8;

  explicit Alphabet(int size);

  int size() const noexcept { return size_; }
  bool contains(int letter) const noexcept { return letter >= 0 && letter < size_; }

  friend bool operator==(Alphabet, Alphabet) = default;

 private:
  int size_;
};

/// A finite word over {0, ..., k-1}. Letters are validated on construction,
/// so every Word in circulation is well formed for its alphabet.
class Word {
 public:
  explicit Word(Alphabet alphabet) : alphabet_(alphabet) {}
  Word(Alphabet alphabet, std::vector<Letter> letters);
  Word(Alphabet alphabet, std::initializer_list<int> letters);

  /// Parses an ASCII digit string. With `alphabet_size == 0` the alphabet is
  /// inferred as max(2, largest digit + 1).
  static Word parse(std::string_view text, int alphabet_size = 0);

  Alphabet alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  std::span<const Letter> letters() const noexcept { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Word slice(std::size_t begin, std::size_t end) const;
  void push_back(int letter);
  void pop_back() { letters_.pop_back(); }
  void append(const Word& other);
  void truncate(std::size_t n) {
    if (n < letters_.size()) letters_.resize(n);
  }

  bool starts_with(const Word& prefix) const;
  std::size_t count(Letter a) const;
  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  Alphabet alphabet_;
  std::vector<Letter> letters_;
};

Word operator+(Word lhs, const Word& rhs);

/// Letters reversed.
Word mirror(const Word& u);

/// Number of occurrences of `x` as a scattered subword of `u`. Exact; throws
/// ErrorCode::Overflow if the count leaves 64 bits.
std::uint64_t subword_count(const Word& u, const Word& x);

/// All words of length `n` over `alphabet` in lexicographic order, visited
/// through `visit` without materialising the whole set.
template <typename Visit>
void for_each_word(Alphabet alphabet, std::size_t n, Visit&& visit) {
  std::vector<Letter> digits(n, 0);
  const int k = alphabet.size();
  for (;;) {
    visit(Word(alphabet, digits));
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++digits[i] < k) break;
      digits[i] = 0;
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

}  // namespace binwords
