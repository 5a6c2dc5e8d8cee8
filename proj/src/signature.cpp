#include "binwords/signature.hpp"

#include <algorithm>

#include "checked.hpp"

namespace binwords {

SignatureLayout::SignatureLayout(Alphabet alphabet, int order, int max_order)
    : alphabet_(alphabet), order_(order) {
  if (order < 1) fail(ErrorCode::InvalidInput, "signature order must be >= 1");
  if (order > max_order) {
    fail(ErrorCode::UnsupportedOrder, "signature order " + std::to_string(order) +
                                          " exceeds the configured cap " +
                                          std::to_string(max_order));
  }
  const auto k = static_cast<std::size_t>(alphabet.size());
  powers_.push_back(1);
  offsets_.push_back(0);
  for (int len = 1; len <= order; ++len) {
    powers_.push_back(powers_.back() * k);
    offsets_.push_back(offsets_.back() + powers_.back());
  }
}

std::size_t SignatureLayout::index_of(std::span<const Letter> x) const {
  if (x.empty() || x.size() > static_cast<std::size_t>(order_)) {
    fail(ErrorCode::InvalidInput, "subword length " + std::to_string(x.size()) +
                                      " not indexed by an order-" + std::to_string(order_) +
                                      " signature");
  }
  std::size_t value = 0;
  for (Letter a : x) {
    if (!alphabet_.contains(a)) fail(ErrorCode::InvalidInput, "subword letter outside alphabet");
    value = value * static_cast<std::size_t>(alphabet_.size()) + a;
  }
  return offset(static_cast<int>(x.size())) + value;
}

int SignatureLayout::length_at(std::size_t index) const {
  for (int len = 1; len <= order_; ++len) {
    if (index < offsets_[static_cast<std::size_t>(len)]) return len;
  }
  fail(ErrorCode::Bounds, "signature index out of range");
}

Word SignatureLayout::word_at(std::size_t index) const {
  const int len = length_at(index);
  std::size_t value = index - offset(len);
  std::vector<Letter> letters(static_cast<std::size_t>(len));
  const auto k = static_cast<std::size_t>(alphabet_.size());
  for (std::size_t i = letters.size(); i > 0; --i) {
    letters[i - 1] = static_cast<Letter>(value % k);
    value /= k;
  }
  return Word(alphabet_, std::move(letters));
}

BinomialSignature::BinomialSignature(SignatureLayout layout)
    : layout_(std::move(layout)), counts_(layout_.dimension(), 0) {}

BinomialSignature::BinomialSignature(SignatureLayout layout, std::vector<std::uint64_t> counts)
    : layout_(std::move(layout)), counts_(std::move(counts)) {
  if (counts_.size() != layout_.dimension()) {
    fail(ErrorCode::InvalidInput, "signature has " + std::to_string(counts_.size()) +
                                      " components, layout needs " +
                                      std::to_string(layout_.dimension()));
  }
}

std::uint64_t BinomialSignature::length() const noexcept {
  std::uint64_t n = 0;
  for (int a = 0; a < layout_.alphabet().size(); ++a) n += counts_[static_cast<std::size_t>(a)];
  return n;
}

std::uint64_t BinomialSignature::count(const Word& x) const {
  if (x.empty()) return 1;
  return counts_[layout_.index_of(x.letters())];
}

void signature_extend_in_place(const SignatureLayout& layout, std::span<std::uint64_t> counts,
                               Letter a) {
  if (!layout.alphabet().contains(a)) {
    fail(ErrorCode::InvalidInput, "letter " + std::to_string(a) + " outside alphabet");
  }
  const auto k = static_cast<std::size_t>(layout.alphabet().size());
  // Longest words first so that every update reads the pre-append counts.
  for (int len = layout.order(); len >= 2; --len) {
    const std::size_t base = layout.offset(len);
    const std::size_t shorter = layout.offset(len - 1);
    const std::size_t heads = layout.power(len - 1);
    for (std::size_t head = 0; head < heads; ++head) {
      std::uint64_t& slot = counts[base + head * k + a];
      slot = checked_add(slot, counts[shorter + head]);
    }
  }
  counts[a] = checked_add(counts[a], 1);
}

BinomialSignature signature_extend(BinomialSignature s, Letter a) {
  signature_extend_in_place(s.layout(), s.mutable_counts(), a);
  return s;
}

BinomialSignature signature(const Word& u, int order, int max_order) {
  BinomialSignature s(SignatureLayout(u.alphabet(), order, max_order));
  for (Letter a : u.letters()) signature_extend_in_place(s.layout(), s.mutable_counts(), a);
  return s;
}

namespace {

// binom(w, x) for a split x = x[0..c) x[c..len), with binom(w, eps) = 1.
inline std::uint64_t part(std::span<const std::uint64_t> counts, const SignatureLayout& layout,
                          int len, std::size_t value) {
  return len == 0 ? 1 : counts[layout.offset(len) + value];
}

}  // namespace

BinomialSignature signature_concat(const BinomialSignature& s, const BinomialSignature& t) {
  if (!(s.layout() == t.layout())) {
    fail(ErrorCode::InvalidInput, "signature_concat needs matching alphabet and order");
  }
  const SignatureLayout& layout = s.layout();
  std::vector<std::uint64_t> out(layout.dimension(), 0);
  for (int len = 1; len <= layout.order(); ++len) {
    for (std::size_t value = 0; value < layout.power(len); ++value) {
      std::uint64_t total = 0;
      for (int cut = 0; cut <= len; ++cut) {
        const std::size_t tail = layout.power(len - cut);
        const std::uint64_t left = part(s.counts(), layout, cut, value / tail);
        const std::uint64_t right = part(t.counts(), layout, len - cut, value % tail);
        total = checked_add(total, checked_mul(left, right));
      }
      out[layout.offset(len) + value] = total;
    }
  }
  return BinomialSignature(layout, std::move(out));
}

PrefixIndex::PrefixIndex(Alphabet alphabet, int order, int max_order)
    : layout_(alphabet, order, max_order), dim_(layout_.dimension()), table_(dim_, 0) {}

PrefixIndex::PrefixIndex(const Word& word, int order, int max_order)
    : PrefixIndex(word.alphabet(), order, max_order) {
  letters_.reserve(word.size());
  table_.reserve((word.size() + 1) * dim_);
  for (Letter a : word.letters()) push_back(a);
}

void PrefixIndex::push_back(Letter a) {
  const std::size_t last = table_.size() - dim_;
  table_.resize(table_.size() + dim_);
  std::copy_n(table_.begin() + static_cast<std::ptrdiff_t>(last), dim_,
              table_.begin() + static_cast<std::ptrdiff_t>(last + dim_));
  signature_extend_in_place(layout_,
                            std::span<std::uint64_t>(table_).subspan(table_.size() - dim_), a);
  letters_.push_back(a);
}

void PrefixIndex::pop_back() {
  if (letters_.empty()) fail(ErrorCode::Bounds, "pop_back on empty prefix index");
  letters_.pop_back();
  table_.resize(table_.size() - dim_);
}

std::span<const std::uint64_t> PrefixIndex::prefix(std::size_t pos) const {
  if (pos > letters_.size()) fail(ErrorCode::Bounds, "prefix position out of range");
  return std::span<const std::uint64_t>(table_).subspan(pos * dim_, dim_);
}

void PrefixIndex::check_range(std::size_t i, std::size_t j) const {
  if (i > j || j > letters_.size()) {
    fail(ErrorCode::Bounds, "factor [" + std::to_string(i) + ", " + std::to_string(j) +
                                ") outside word of length " + std::to_string(letters_.size()));
  }
}

// Fills the length-`len` block of `out` with the factor signature of [i, j),
// assuming the shorter blocks of `out` are already filled. Inverts
// P_j(x) = sum over splits x = yz of P_i(y) * F(z).
void PrefixIndex::factor_level(std::size_t i, std::size_t j, int len,
                               std::span<std::uint64_t> out) const {
  const auto lo = prefix(i);
  const auto hi = prefix(j);
  const std::size_t base = layout_.offset(len);
  for (std::size_t value = 0; value < layout_.power(len); ++value) {
    std::uint64_t cross = 0;
    for (int cut = 1; cut <= len; ++cut) {
      const std::size_t tail = layout_.power(len - cut);
      const std::uint64_t left = lo[layout_.offset(cut) + value / tail];
      if (left == 0) continue;
      const std::uint64_t right = part(out, layout_, len - cut, value % tail);
      cross = checked_add(cross, checked_mul(left, right));
    }
    out[base + value] = checked_sub(hi[base + value], cross);
  }
}

BinomialSignature PrefixIndex::factor_signature(std::size_t i, std::size_t j) const {
  check_range(i, j);
  std::vector<std::uint64_t> out(dim_, 0);
  for (int len = 1; len <= layout_.order(); ++len) factor_level(i, j, len, out);
  return BinomialSignature(layout_, std::move(out));
}

bool PrefixIndex::factors_equivalent(std::size_t i1, std::size_t j1, std::size_t i2,
                                     std::size_t j2) const {
  check_range(i1, j1);
  check_range(i2, j2);
  if (j1 - i1 != j2 - i2) return false;
  // Letter counts straight from prefix differences; most candidate pairs
  // differ here already.
  const auto a1 = prefix(i1), b1 = prefix(j1), a2 = prefix(i2), b2 = prefix(j2);
  const auto k = static_cast<std::size_t>(layout_.alphabet().size());
  for (std::size_t a = 0; a < k; ++a) {
    if (b1[a] - a1[a] != b2[a] - a2[a]) return false;
  }
  if (layout_.order() == 1) return true;

  thread_local std::vector<std::uint64_t> first, second;
  first.assign(dim_, 0);
  second.assign(dim_, 0);
  for (std::size_t a = 0; a < k; ++a) {
    first[a] = b1[a] - a1[a];
    second[a] = first[a];
  }
  for (int len = 2; len <= layout_.order(); ++len) {
    factor_level(i1, j1, len, first);
    factor_level(i2, j2, len, second);
    const std::size_t base = layout_.offset(len);
    if (!std::equal(first.begin() + static_cast<std::ptrdiff_t>(base),
                    first.begin() + static_cast<std::ptrdiff_t>(base + layout_.power(len)),
                    second.begin() + static_cast<std::ptrdiff_t>(base))) {
      return false;
    }
  }
  return true;
}

namespace {

Word widen(const Word& u, Alphabet alphabet) {
  return Word(alphabet, std::vector<Letter>(u.letters().begin(), u.letters().end()));
}

}  // namespace

bool equivalent(const Word& u, const Word& v, int order) {
  if (u.size() != v.size()) return false;
  const Alphabet alphabet(std::max(u.alphabet().size(), v.alphabet().size()));
  return signature(widen(u, alphabet), order) == signature(widen(v, alphabet), order);
}

bool abelian_equivalent(const Word& u, const Word& v) { return equivalent(u, v, 1); }

std::int64_t lambda(const Word& u) {
  if (u.alphabet().size() != 3) {
    fail(ErrorCode::InvalidInput, "lambda is defined on ternary words only");
  }
  const Alphabet ternary(3);
  const auto s = signature(u, 2);
  const auto c01 = static_cast<std::int64_t>(s.count(Word(ternary, {0, 1})));
  const auto c12 = static_cast<std::int64_t>(s.count(Word(ternary, {1, 2})));
  return c01 - c12;
}

}  // namespace binwords
