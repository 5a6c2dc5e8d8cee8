#include "binwords/word.hpp"

#include <algorithm>

#include "checked.hpp"

namespace binwords {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::UnsupportedOrder: return "unsupported-order";
    case ErrorCode::Overflow: return "overflow";
    case ErrorCode::Bounds: return "bounds";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::NoLinearAction: return "no-linear-action";
    case ErrorCode::Budget: return "budget";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

Alphabet::Alphabet(int size) : size_(size) {
  if (size < 1 || size > kMaxSize) {
    fail(ErrorCode::InvalidInput,
         "alphabet size must be in [1, " + std::to_string(kMaxSize) + "], got " +
             std::to_string(size));
  }
}

Word::Word(Alphabet alphabet, std::vector<Letter> letters)
    : alphabet_(alphabet), letters_(std::move(letters)) {
  for (Letter a : letters_) {
    if (!alphabet_.contains(a)) {
      fail(ErrorCode::InvalidInput, "letter " + std::to_string(a) +
                                        " outside alphabet of size " +
                                        std::to_string(alphabet_.size()));
    }
  }
}

Word::Word(Alphabet alphabet, std::initializer_list<int> letters) : alphabet_(alphabet) {
  letters_.reserve(letters.size());
  for (int a : letters) push_back(a);
}

Word Word::parse(std::string_view text, int alphabet_size) {
  std::vector<Letter> letters;
  letters.reserve(text.size());
  int largest = -1;
  for (char c : text) {
    if (c < '0' || c > '9') {
      fail(ErrorCode::Parse, "word must be an ASCII digit string, got '" +
                                 std::string(text) + "'");
    }
    letters.push_back(static_cast<Letter>(c - '0'));
    largest = std::max(largest, c - '0');
  }
  if (alphabet_size == 0) alphabet_size = std::max(2, largest + 1);
  if (largest >= alphabet_size) {
    fail(ErrorCode::InvalidInput, "letter " + std::to_string(largest) +
                                      " outside alphabet of size " +
                                      std::to_string(alphabet_size));
  }
  return Word(Alphabet(alphabet_size), std::move(letters));
}

Word Word::slice(std::size_t begin, std::size_t end) const {
  if (begin > end || end > letters_.size()) {
    fail(ErrorCode::Bounds, "slice [" + std::to_string(begin) + ", " + std::to_string(end) +
                                ") outside word of length " + std::to_string(letters_.size()));
  }
  return Word(alphabet_, std::vector<Letter>(letters_.begin() + static_cast<std::ptrdiff_t>(begin),
                                             letters_.begin() + static_cast<std::ptrdiff_t>(end)));
}

void Word::push_back(int letter) {
  if (!alphabet_.contains(letter)) {
    fail(ErrorCode::InvalidInput, "letter " + std::to_string(letter) +
                                      " outside alphabet of size " +
                                      std::to_string(alphabet_.size()));
  }
  letters_.push_back(static_cast<Letter>(letter));
}

void Word::append(const Word& other) {
  if (other.alphabet_.size() > alphabet_.size()) {
    for (Letter a : other.letters_) push_back(a);
    return;
  }
  letters_.insert(letters_.end(), other.letters_.begin(), other.letters_.end());
}

bool Word::starts_with(const Word& prefix) const {
  return prefix.size() <= size() &&
         std::equal(prefix.letters_.begin(), prefix.letters_.end(), letters_.begin());
}

std::size_t Word::count(Letter a) const {
  return static_cast<std::size_t>(std::count(letters_.begin(), letters_.end(), a));
}

std::string Word::str() const {
  std::string out(letters_.size(), '0');
  for (std::size_t i = 0; i < letters_.size(); ++i) out[i] = static_cast<char>('0' + letters_[i]);
  return out;
}

Word operator+(Word lhs, const Word& rhs) {
  lhs.append(rhs);
  return lhs;
}

Word mirror(const Word& u) {
  std::vector<Letter> reversed(u.letters().rbegin(), u.letters().rend());
  return Word(u.alphabet(), std::move(reversed));
}

std::uint64_t subword_count(const Word& u, const Word& x) {
  for (Letter a : x.letters()) {
    if (!u.alphabet().contains(a)) {
      fail(ErrorCode::InvalidInput, "subword letter " + std::to_string(a) +
                                        " outside alphabet of size " +
                                        std::to_string(u.alphabet().size()));
    }
  }
  // ways[j] = occurrences of x[0..j) in the prefix of u read so far.
  std::vector<std::uint64_t> ways(x.size() + 1, 0);
  ways[0] = 1;
  for (Letter c : u.letters()) {
    for (std::size_t j = x.size(); j > 0; --j) {
      if (x[j - 1] == c) ways[j] = checked_add(ways[j], ways[j - 1]);
    }
  }
  return ways[x.size()];
}

}  // namespace binwords
