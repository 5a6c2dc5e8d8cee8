#include "binwords/morphism.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <random>

#include "checked.hpp"

namespace binwords {

namespace {

Word rebase(const Word& w, Alphabet alphabet) {
  return Word(alphabet, std::vector<Letter>(w.letters().begin(), w.letters().end()));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Morphism::Morphism(Alphabet alphabet, std::vector<Word> images) : alphabet_(alphabet) {
  if (images.size() != static_cast<std::size_t>(alphabet.size())) {
    fail(ErrorCode::InvalidInput, "morphism needs one image per letter: expected " +
                                      std::to_string(alphabet.size()) + ", got " +
                                      std::to_string(images.size()));
  }
  images_.reserve(images.size());
  for (const Word& w : images) {
    images_.push_back(rebase(w, alphabet));
    erasing_ = erasing_ || w.empty();
  }
}

Morphism Morphism::identity(Alphabet alphabet) {
  std::vector<Word> images;
  for (int a = 0; a < alphabet.size(); ++a) images.push_back(Word(alphabet, {a}));
  return Morphism(alphabet, std::move(images));
}

std::string Morphism::str() const {
  std::string out;
  for (std::size_t a = 0; a < images_.size(); ++a) {
    if (a > 0) out += ',';
    out += std::to_string(a) + "->" + images_[a].str();
  }
  return out;
}

Morphism parse_morphism(std::string_view spec) {
  std::vector<std::pair<int, std::string_view>> rules;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const std::size_t comma = std::min(spec.find(',', pos), spec.size());
    const std::string_view rule = trim(spec.substr(pos, comma - pos));
    pos = comma + 1;
    const std::size_t arrow = rule.find("->");
    if (arrow == std::string_view::npos) {
      fail(ErrorCode::Parse, "malformed rule '" + std::string(rule) + "', expected a->word");
    }
    const std::string_view lhs = trim(rule.substr(0, arrow));
    if (lhs.size() != 1 || !std::isdigit(static_cast<unsigned char>(lhs[0]))) {
      fail(ErrorCode::Parse, "rule source must be a single digit, got '" + std::string(lhs) + "'");
    }
    rules.emplace_back(lhs[0] - '0', trim(rule.substr(arrow + 2)));
  }

  const int k = static_cast<int>(rules.size());
  if (k > Alphabet::kMaxSize) fail(ErrorCode::Parse, "too many rules for the alphabet cap");
  std::vector<std::optional<Word>> images(static_cast<std::size_t>(k));
  for (const auto& [letter, rhs] : rules) {
    if (letter >= k) {
      fail(ErrorCode::Parse, "rules must cover exactly the letters 0.." + std::to_string(k - 1) +
                                 "; found rule for " + std::to_string(letter));
    }
    auto& slot = images[static_cast<std::size_t>(letter)];
    if (slot) fail(ErrorCode::Parse, "duplicate rule for letter " + std::to_string(letter));
    try {
      slot = Word::parse(rhs, k);
    } catch (const Error& e) {
      fail(ErrorCode::Parse, "bad image for letter " + std::to_string(letter) + ": " + e.what());
    }
  }
  std::vector<Word> out;
  for (int a = 0; a < k; ++a) {
    if (!images[static_cast<std::size_t>(a)]) {
      fail(ErrorCode::Parse, "missing rule for letter " + std::to_string(a));
    }
    out.push_back(*images[static_cast<std::size_t>(a)]);
  }
  return Morphism(Alphabet(k), std::move(out));
}

Morphism preset_morphism(std::string_view name) {
  const Morphism g = parse_morphism("0->012,1->02,2->1");
  if (name == "g") return g;
  if (name == "g2") return compose(g, g);
  if (name == "gtilde") return mirror_morphism(g);
  if (name == "gtilde2") {
    const Morphism gt = mirror_morphism(g);
    return compose(gt, gt);
  }
  if (name == "h") return parse_morphism("0->001,1->011");
  if (name == "e") return parse_morphism("0->0,1->,2->2");
  fail(ErrorCode::InvalidInput, "unknown preset '" + std::string(name) +
                                    "' (expected g, g2, gtilde, gtilde2, h or e)");
}

Letter preset_seed(std::string_view name) {
  preset_morphism(name);  // validates the name
  return name == "gtilde2" ? 1 : 0;
}

Word apply(const Morphism& f, const Word& u) {
  if (u.alphabet().size() > f.alphabet().size()) {
    for (Letter a : u.letters()) {
      if (!f.alphabet().contains(a)) {
        fail(ErrorCode::InvalidInput, "word letter outside the morphism's alphabet");
      }
    }
  }
  std::vector<Letter> out;
  for (Letter a : u.letters()) {
    const auto img = f.image(a).letters();
    out.insert(out.end(), img.begin(), img.end());
  }
  return Word(f.alphabet(), std::move(out));
}

Morphism compose(const Morphism& f, const Morphism& g) {
  if (!(f.alphabet() == g.alphabet())) {
    fail(ErrorCode::InvalidInput, "compose needs morphisms over the same alphabet");
  }
  std::vector<Word> images;
  for (const Word& w : g.images()) images.push_back(apply(f, w));
  return Morphism(f.alphabet(), std::move(images));
}

Morphism mirror_morphism(const Morphism& f) {
  std::vector<Word> images;
  for (const Word& w : f.images()) images.push_back(mirror(w));
  return Morphism(f.alphabet(), std::move(images));
}

bool is_prolongable(const Morphism& f, Letter a) {
  if (!f.alphabet().contains(a)) return false;
  const Word& img = f.image(a);
  if (img.size() < 2 || img[0] != a) return false;
  std::vector<bool> seen(static_cast<std::size_t>(f.alphabet().size()), false);
  std::vector<Letter> todo{a};
  seen[a] = true;
  while (!todo.empty()) {
    const Letter b = todo.back();
    todo.pop_back();
    if (f.image(b).empty()) return false;
    for (Letter c : f.image(b).letters()) {
      if (!seen[c]) {
        seen[c] = true;
        todo.push_back(c);
      }
    }
  }
  return true;
}

Word fixed_point_prefix(const Morphism& f, Letter a, std::size_t n) {
  if (!is_prolongable(f, a)) {
    fail(ErrorCode::InvalidInput, "morphism " + f.str() + " is not prolongable on " +
                                      std::to_string(a));
  }
  // x = f(a) f(x_1) f(x_2) ...: each emitted letter is expanded exactly once.
  std::vector<Letter> out(f.image(a).letters().begin(), f.image(a).letters().end());
  out.reserve(n + 8);
  for (std::size_t next = 1; out.size() < n; ++next) {
    const auto img = f.image(out[next]).letters();
    out.insert(out.end(), img.begin(), img.end());
  }
  out.resize(n);
  return Word(f.alphabet(), std::move(out));
}

bool is_prefix_code(const Morphism& f) {
  const auto& images = f.images();
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].empty()) return false;
    for (std::size_t j = 0; j < images.size(); ++j) {
      if (i != j && images[j].starts_with(images[i])) return false;
    }
  }
  return true;
}

Decoding decode(const Word& w, const Morphism& f) {
  if (!is_prefix_code(f)) {
    fail(ErrorCode::Unsupported, "images of " + f.str() + " do not form a prefix code");
  }
  Decoding result{Word(f.alphabet()), 0};
  const auto letters = w.letters();
  while (result.consumed < letters.size()) {
    const auto rest = letters.subspan(result.consumed);
    bool matched = false;
    for (std::size_t a = 0; a < f.images().size(); ++a) {
      const auto img = f.images()[a].letters();
      if (img.size() <= rest.size() && std::equal(img.begin(), img.end(), rest.begin())) {
        result.preimage.push_back(static_cast<int>(a));
        result.consumed += img.size();
        matched = true;
        break;
      }
    }
    if (!matched) break;
  }
  return result;
}

LiftedMatrix::LiftedMatrix(SignatureLayout layout, std::vector<std::int64_t> entries)
    : layout_(std::move(layout)), dim_(layout_.dimension()), entries_(std::move(entries)) {
  if (entries_.size() != dim_ * dim_) {
    fail(ErrorCode::InvalidInput, "matrix needs " + std::to_string(dim_ * dim_) + " entries");
  }
}

LiftedMatrix LiftedMatrix::identity(SignatureLayout layout) {
  const std::size_t d = layout.dimension();
  std::vector<std::int64_t> entries(d * d, 0);
  for (std::size_t i = 0; i < d; ++i) entries[i * d + i] = 1;
  return LiftedMatrix(std::move(layout), std::move(entries));
}

std::vector<std::vector<std::int64_t>> LiftedMatrix::rows() const {
  std::vector<std::vector<std::int64_t>> out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    out[r].assign(entries_.begin() + static_cast<std::ptrdiff_t>(r * dim_),
                  entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * dim_));
  }
  return out;
}

BinomialSignature LiftedMatrix::operator*(const BinomialSignature& s) const {
  if (!(s.layout() == layout_)) fail(ErrorCode::InvalidInput, "matrix/signature layout mismatch");
  std::vector<std::uint64_t> out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    std::int64_t acc = 0;
    for (std::size_t c = 0; c < dim_; ++c) {
      const std::int64_t entry = at(r, c);
      if (entry == 0 || s[c] == 0) continue;
      if (s[c] > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        fail(ErrorCode::Overflow, "signature component too large for matrix product");
      }
      acc = checked_add(acc, checked_mul(entry, static_cast<std::int64_t>(s[c])));
    }
    if (acc < 0) fail(ErrorCode::InvalidInput, "matrix product has a negative component");
    out[r] = static_cast<std::uint64_t>(acc);
  }
  return BinomialSignature(layout_, std::move(out));
}

LiftedMatrix LiftedMatrix::operator*(const LiftedMatrix& other) const {
  if (!(other.layout_ == layout_)) fail(ErrorCode::InvalidInput, "matrix layout mismatch");
  std::vector<std::int64_t> out(dim_ * dim_, 0);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t k = 0; k < dim_; ++k) {
      const std::int64_t lhs = at(r, k);
      if (lhs == 0) continue;
      for (std::size_t c = 0; c < dim_; ++c) {
        out[r * dim_ + c] = checked_add(out[r * dim_ + c], checked_mul(lhs, other.at(k, c)));
      }
    }
  }
  return LiftedMatrix(layout_, std::move(out));
}

LiftedMatrix lift_matrix(const Morphism& f, int order, int max_order) {
  if (f.erasing()) {
    fail(ErrorCode::Unsupported, "lift_matrix needs a non-erasing morphism; " + f.str() +
                                     " erases a letter");
  }
  const SignatureLayout layout(f.alphabet(), order, max_order);
  const std::size_t d = layout.dimension();
  std::vector<std::int64_t> m(d * d, 0);

  // The signature of basis word c is e_c plus contributions from strictly
  // shorter words, so columns resolve in index order.
  for (std::size_t c = 0; c < d; ++c) {
    const Word basis = layout.word_at(c);
    const auto source = signature(basis, order, max_order);
    const auto target = signature(apply(f, basis), order, max_order);
    for (std::size_t r = 0; r < d; ++r) {
      if (target[r] > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        fail(ErrorCode::Overflow, "image signature too large");
      }
      m[r * d + c] = static_cast<std::int64_t>(target[r]);
    }
    for (std::size_t prev = 0; prev < c; ++prev) {
      const auto weight = static_cast<std::int64_t>(source[prev]);
      if (weight == 0) continue;
      for (std::size_t r = 0; r < d; ++r) {
        m[r * d + c] = checked_sub(m[r * d + c], checked_mul(weight, m[r * d + prev]));
      }
    }
  }
  LiftedMatrix lifted(layout, std::move(m));

  // Spot-check the linear action beyond the basis.
  std::vector<Word> probes;
  int exhaustive_len = order + 2;
  while (exhaustive_len > order &&
         std::pow(static_cast<double>(f.alphabet().size()), exhaustive_len) > 4096.0) {
    --exhaustive_len;
  }
  for (int len = 0; len <= exhaustive_len; ++len) {
    for_each_word(f.alphabet(), static_cast<std::size_t>(len),
                  [&](const Word& w) { probes.push_back(w); });
  }
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<int> letter(0, f.alphabet().size() - 1);
  std::uniform_int_distribution<int> length(0, 24);
  for (int t = 0; t < 256; ++t) {
    Word w(f.alphabet());
    for (int i = length(rng); i > 0; --i) w.push_back(letter(rng));
    probes.push_back(std::move(w));
  }
  for (const Word& w : probes) {
    if (lifted * signature(w, order, max_order) != signature(apply(f, w), order, max_order)) {
      fail(ErrorCode::NoLinearAction, "no exact linear action of " + f.str() + " on order-" +
                                          std::to_string(order) + " signatures (fails on '" +
                                          w.str() + "')");
    }
  }
  return lifted;
}

std::int64_t determinant(const LiftedMatrix& m) {
  __extension__ typedef __int128 Wide;
  const std::size_t n = m.dimension();
  if (n == 0) return 1;
  std::vector<Wide> a(m.entries().begin(), m.entries().end());
  auto cell = [&](std::size_t r, std::size_t c) -> Wide& { return a[r * n + c]; };
  const Wide limit = static_cast<Wide>(1) << 62;
  Wide previous = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (cell(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && cell(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(cell(k, c), cell(swap, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        const Wide lhs = cell(i, j) * cell(k, k);
        const Wide rhs = cell(i, k) * cell(k, j);
        cell(i, j) = (lhs - rhs) / previous;
        if (cell(i, j) > limit || cell(i, j) < -limit) {
          fail(ErrorCode::Overflow, "determinant exceeds exact range");
        }
      }
      cell(i, k) = 0;
    }
    previous = cell(k, k);
  }
  const Wide det = sign * cell(n - 1, n - 1);
  if (det > std::numeric_limits<std::int64_t>::max() ||
      det < std::numeric_limits<std::int64_t>::min()) {
    fail(ErrorCode::Overflow, "determinant exceeds 64 bits");
  }
  return static_cast<std::int64_t>(det);
}

bool is_invertible(const LiftedMatrix& m) { return determinant(m) != 0; }

}  // namespace binwords
