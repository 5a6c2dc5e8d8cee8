#include "binwords/verify.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <thread>
#include <unordered_set>

#include "binwords/morphism.hpp"
#include "binwords/repetition.hpp"
#include "binwords/signature.hpp"

namespace binwords {

namespace {

constexpr std::size_t kKeptViolations = 20;

const Alphabet kBinary(2);
const Alphabet kTernary(3);

Word x_prefix(std::size_t n) { return fixed_point_prefix(preset_morphism("g"), 0, n); }

CheckReport start(std::string name, const CheckOptions& options) {
  CheckReport report;
  report.name = std::move(name);
  report.fault_injected = options.inject_fault;
  return report;
}

Word random_word(std::mt19937_64& rng, Alphabet alphabet, std::size_t min_len,
                 std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> length(min_len, max_len);
  std::uniform_int_distribution<int> letter(0, alphabet.size() - 1);
  Word w(alphabet);
  for (std::size_t i = length(rng); i > 0; --i) w.push_back(letter(rng));
  return w;
}

// Suffix automaton: factor membership in O(|query|).
class FactorAutomaton {
 public:
  explicit FactorAutomaton(const Word& text) : k_(static_cast<std::size_t>(text.alphabet().size())) {
    states_.reserve(2 * text.size() + 2);
    add_state(0);
    for (Letter a : text.letters()) extend(a);
  }

  bool contains(const Word& w) const {
    std::int32_t s = 0;
    for (Letter a : w.letters()) {
      if (a >= k_) return false;
      s = states_[static_cast<std::size_t>(s)].next[a];
      if (s < 0) return false;
    }
    return true;
  }

 private:
  struct State {
    std::size_t len;
    std::int32_t link = -1;
    std::array<std::int32_t, Alphabet::kMaxSize> next;
  };

  std::int32_t add_state(std::size_t len) {
    State s{len, -1, {}};
    s.next.fill(-1);
    states_.push_back(s);
    return static_cast<std::int32_t>(states_.size() - 1);
  }

  void extend(Letter a) {
    const std::int32_t cur = add_state(states_[static_cast<std::size_t>(last_)].len + 1);
    std::int32_t p = last_;
    while (p >= 0 && states_[static_cast<std::size_t>(p)].next[a] < 0) {
      states_[static_cast<std::size_t>(p)].next[a] = cur;
      p = states_[static_cast<std::size_t>(p)].link;
    }
    if (p < 0) {
      states_[static_cast<std::size_t>(cur)].link = 0;
    } else {
      const std::int32_t q = states_[static_cast<std::size_t>(p)].next[a];
      if (states_[static_cast<std::size_t>(p)].len + 1 == states_[static_cast<std::size_t>(q)].len) {
        states_[static_cast<std::size_t>(cur)].link = q;
      } else {
        const std::int32_t clone = add_state(states_[static_cast<std::size_t>(p)].len + 1);
        states_[static_cast<std::size_t>(clone)].next = states_[static_cast<std::size_t>(q)].next;
        states_[static_cast<std::size_t>(clone)].link = states_[static_cast<std::size_t>(q)].link;
        while (p >= 0 && states_[static_cast<std::size_t>(p)].next[a] == q) {
          states_[static_cast<std::size_t>(p)].next[a] = clone;
          p = states_[static_cast<std::size_t>(p)].link;
        }
        states_[static_cast<std::size_t>(q)].link = clone;
        states_[static_cast<std::size_t>(cur)].link = clone;
      }
    }
    last_ = cur;
  }

  std::size_t k_;
  std::vector<State> states_;
  std::int32_t last_ = 0;
};

// Factor lookup in a prefix of x, falling back to a prefix 100 times longer.
class FactorsOfX {
 public:
  explicit FactorsOfX(std::size_t margin) : margin_(margin), near_(x_prefix(margin)) {}

  bool contains(const Word& w) {
    if (near_.contains(w)) return true;
    if (!far_) far_ = std::make_unique<FactorAutomaton>(x_prefix(100 * margin_));
    ++rechecks_;
    return far_->contains(w);
  }

  std::uint64_t rechecks() const noexcept { return rechecks_; }

 private:
  std::size_t margin_;
  FactorAutomaton near_;
  std::unique_ptr<FactorAutomaton> far_;
  std::uint64_t rechecks_ = 0;
};

std::uint64_t choose2(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

// binom(u, x) by walking every strictly increasing index tuple.
std::uint64_t naive_subword_count(const Word& u, const Word& x, std::size_t from = 0,
                                  std::size_t matched = 0) {
  if (matched == x.size()) return 1;
  std::uint64_t total = 0;
  for (std::size_t i = from; i + (x.size() - matched) <= u.size(); ++i) {
    if (u[i] == x[matched]) total += naive_subword_count(u, x, i + 1, matched + 1);
  }
  return total;
}

std::string describe(const Word& w) { return w.empty() ? std::string("ε") : w.str(); }

}  // namespace

void CheckReport::violation(std::string what) {
  ++violation_count;
  if (violations.size() < kKeptViolations) violations.push_back(std::move(what));
}

CheckReport check_erasure(std::size_t n, const CheckOptions& options) {
  CheckReport report = start("erasure", options);
  report.parameters["n"] = n;

  Word x = x_prefix(n);
  if (options.inject_fault && x.size() > 2) {
    std::vector<Letter> letters(x.letters().begin(), x.letters().end());
    letters[2] = 0;
    x = Word(kTernary, std::move(letters));
  }
  const Word erased = apply(preset_morphism("e"), x);
  for (std::size_t i = 0; i < erased.size(); ++i) {
    ++report.instances;
    const Letter expected = i % 2 == 0 ? 0 : 2;
    if (erased[i] != expected) {
      report.violation("e(x)[" + std::to_string(i) + "] = " + std::to_string(erased[i]) +
                       ", expected " + std::to_string(expected));
    }
  }
  // Each gap between consecutive non-1 letters holds at most one 1.
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    if (x[i] == 1 && x[i + 1] == 1) report.violation("factor 11 at " + std::to_string(i));
  }
  if (!x.empty() && x[0] == 1) report.violation("x starts with 1");
  return report;
}

CheckReport check_mirror_closure(std::size_t scan_len, std::size_t max_factor, std::size_t margin,
                                 const CheckOptions& options) {
  CheckReport report = start("mirror", options);
  report.parameters["scan_len"] = scan_len;
  report.parameters["max_factor"] = max_factor;
  report.parameters["margin"] = margin;
  if (margin < scan_len) fail(ErrorCode::InvalidInput, "mirror margin must be >= scan_len");

  Word scanned = x_prefix(scan_len);
  if (options.inject_fault) scanned = Word(kTernary, {0, 0}) + scanned;

  FactorsOfX lookup(margin);
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < scanned.size(); ++i) {
    for (std::size_t len = 1; len <= max_factor && i + len <= scanned.size(); ++len) {
      const Word factor = scanned.slice(i, i + len);
      if (!seen.insert(factor.str()).second) continue;
      ++report.instances;
      if (!lookup.contains(mirror(factor))) {
        report.violation("mirror of " + factor.str() + " not found within " +
                         std::to_string(100 * margin) + " letters");
      }
    }
  }
  report.notes.push_back("rechecked_at_100x=" + std::to_string(lookup.rechecks()));
  return report;
}

CheckReport check_desubstitution(std::size_t scan_len, std::size_t max_len,
                                 const CheckOptions& options) {
  CheckReport report = start("desubstitution", options);
  report.parameters["scan_len"] = scan_len;
  report.parameters["max_len"] = max_len;

  const Morphism g = preset_morphism("g");
  const Morphism decoder = options.inject_fault ? preset_morphism("g2") : g;
  const Word x = x_prefix(scan_len);
  FactorsOfX lookup(std::max(10 * scan_len, scan_len + max_len));

  // Letter counts of x[0..i) for O(1) abelian tests.
  std::vector<std::array<std::size_t, 3>> parikh(x.size() + 1, {0, 0, 0});
  for (std::size_t i = 0; i < x.size(); ++i) {
    parikh[i + 1] = parikh[i];
    ++parikh[i + 1][x[i]];
  }
  auto abelian = [&](std::size_t i, std::size_t len) {
    for (int a = 0; a < 3; ++a) {
      if (parikh[i + len][a] - parikh[i][a] != parikh[i + 2 * len][a] - parikh[i + len][a]) {
        return false;
      }
    }
    return true;
  };

  std::uint64_t both_cases = 0, lambda_equal = 0, case_one = 0, case_two = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t len = 1; 2 * len <= max_len && i + 2 * len <= x.size(); ++len) {
      if (!abelian(i, len)) continue;
      ++report.instances;
      const Word u = x.slice(i, i + len);
      const Word v = x.slice(i + len, i + 2 * len);

      struct Pair {
        Word u1, v1;
      };
      std::vector<Pair> pairs;
      const auto du = decode(u, decoder), dv = decode(v, decoder);
      if (du.complete(u) && dv.complete(v) && lookup.contains(du.preimage + dv.preimage)) {
        pairs.push_back({du.preimage, dv.preimage});
        ++case_one;
      }
      const Word ru = mirror(u), rv = mirror(v);
      const auto dru = decode(ru, decoder), drv = decode(rv, decoder);
      if (dru.complete(ru) && drv.complete(rv) && lookup.contains(drv.preimage + dru.preimage)) {
        pairs.push_back({drv.preimage, dru.preimage});
        ++case_two;
      }
      const std::string where = "uv = " + u.str() + "|" + v.str() + " at " + std::to_string(i);
      if (pairs.empty()) {
        report.violation(where + ": no desubstitution");
        continue;
      }
      if (pairs.size() == 2) ++both_cases;
      if (lambda(u) != lambda(v)) continue;
      ++lambda_equal;
      for (const Pair& pair : pairs) {
        if (!abelian_equivalent(pair.u1, pair.v1) || lambda(pair.u1) != lambda(pair.v1)) {
          report.violation(where + ": preimages " + describe(pair.u1) + "|" + describe(pair.v1) +
                           " lose abelian equivalence or lambda");
        }
      }
    }
  }
  report.notes.push_back("case_one=" + std::to_string(case_one));
  report.notes.push_back("case_two=" + std::to_string(case_two));
  report.notes.push_back("both_cases=" + std::to_string(both_cases));
  report.notes.push_back("lambda_equal=" + std::to_string(lambda_equal));
  report.notes.push_back("rechecked_at_100x=" + std::to_string(lookup.rechecks()));
  return report;
}

CheckReport check_matrix_identity(std::size_t trials, std::size_t max_len,
                                  const CheckOptions& options) {
  CheckReport report = start("matrix", options);
  report.parameters["trials"] = trials;
  report.parameters["max_len"] = max_len;
  report.parameters["seed"] = options.seed;

  const Morphism h = preset_morphism("h");
  LiftedMatrix m = lift_matrix(h, 2);
  const std::vector<std::vector<std::int64_t>> published = {
      {2, 1, 0, 0, 0, 0}, {1, 2, 0, 0, 0, 0}, {1, 0, 4, 2, 2, 1},
      {2, 2, 2, 4, 1, 2}, {0, 0, 2, 1, 4, 2}, {0, 1, 1, 2, 2, 4}};
  if (m.rows() != published) report.violation("lifted matrix differs from M_h");
  if (!is_invertible(m)) report.violation("M_h is singular");
  if (options.inject_fault) m.at(2, 0) += 1;

  auto check = [&](const Word& u) {
    ++report.instances;
    if (m * signature(u, 2) != signature(apply(h, u), 2)) {
      report.violation("M_h * Psi2(" + describe(u) + ") != Psi2(h(" + describe(u) + "))");
    }
  };
  check(Word(kBinary));
  check(Word(kBinary, {0}));
  check(Word(kBinary, {1}));
  std::mt19937_64 rng(options.seed);
  for (std::size_t t = 0; t < trials; ++t) check(random_word(rng, kBinary, 0, max_len));
  return report;
}

CheckReport check_cyclic_shift(std::size_t trials, std::size_t max_len,
                               std::size_t exhaustive_len, const CheckOptions& options) {
  CheckReport report = start("cyclic", options);
  report.parameters["trials"] = trials;
  report.parameters["max_len"] = max_len;
  report.parameters["exhaustive_len"] = exhaustive_len;
  report.parameters["seed"] = options.seed;

  const Word one(kBinary, {1}), zero(kBinary, {0});
  const Word w00(kBinary, {0, 0}), w01(kBinary, {0, 1}), w10(kBinary, {1, 0}),
      w11(kBinary, {1, 1});
  // Moving the letter `moved` from the front of u to the back.
  auto rotate = [&](const Word& x, const Word& moved) {
    return options.inject_fault ? moved + x : x + moved;
  };
  auto relations = [&](const Word& x, const Word& moved) {
    ++report.instances;
    const Word u = moved + x;
    const Word shifted = rotate(x, moved);
    const auto s = signature(u, 2), t = signature(shifted, 2);
    const auto n0 = static_cast<std::int64_t>(s.count(zero));
    const auto n1 = static_cast<std::int64_t>(s.count(one));
    // Pairs (moved, y) with y != moved flip from (moved, y) to (y, moved).
    const std::int64_t flips = moved[0] == 1 ? n0 : n1;
    const std::int64_t d01 = static_cast<std::int64_t>(t.count(w01)) -
                             static_cast<std::int64_t>(s.count(w01));
    const std::int64_t d10 = static_cast<std::int64_t>(t.count(w10)) -
                             static_cast<std::int64_t>(s.count(w10));
    const bool ok = t.count(zero) == s.count(zero) && t.count(one) == s.count(one) &&
                    t.count(w00) == s.count(w00) && t.count(w11) == s.count(w11) &&
                    d01 == (moved[0] == 1 ? flips : -flips) &&
                    d10 == (moved[0] == 1 ? -flips : flips);
    if (!ok) {
      report.violation("shift relations fail for u = " + u.str() + ", u' = " + shifted.str());
    }
  };
  relations(Word(kBinary), one);
  relations(Word(kBinary), zero);
  std::mt19937_64 rng(options.seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const Word x = random_word(rng, kBinary, 0, max_len);
    relations(x, one);
    relations(x, zero);
  }

  // 1x ~2 1y  =>  x1 ~2 y1, and x0 ~2 y0  =>  0x ~2 0y, over every pair of
  // words up to exhaustive_len grouped by signature class.
  auto implication = [&](const Word& moved, bool front_to_back) {
    std::map<std::vector<std::uint64_t>, std::vector<std::uint64_t>> image_of_class;
    std::map<std::vector<std::uint64_t>, std::string> representative;
    for (std::size_t len = 0; len <= exhaustive_len; ++len) {
      for_each_word(kBinary, len, [&](const Word& x) {
        const Word before = front_to_back ? moved + x : x + moved;
        const Word after = front_to_back ? rotate(x, moved)
                                         : (options.inject_fault ? x + moved : moved + x);
        const auto sb = signature(before, 2), sa = signature(after, 2);
        std::vector<std::uint64_t> key(sb.counts().begin(), sb.counts().end());
        std::vector<std::uint64_t> value(sa.counts().begin(), sa.counts().end());
        auto [it, inserted] = image_of_class.emplace(key, value);
        if (inserted) {
          representative.emplace(key, x.str());
          return;
        }
        ++report.instances;
        if (it->second != value) {
          report.violation("implication fails for x = " + representative[key] +
                           ", y = " + x.str() + " (moved letter " + moved.str() + ")");
        }
      });
    }
  };
  implication(one, true);
  implication(zero, false);
  return report;
}

namespace {

struct Shaped {
  Word word;
  std::vector<std::uint64_t> psi;
};

Shaped shaped(Word w) {
  const auto s = signature(w, 2);
  return {std::move(w), std::vector<std::uint64_t>(s.counts().begin(), s.counts().end())};
}

std::vector<Word> binary_words(std::size_t n) {
  std::vector<Word> out;
  for_each_word(kBinary, n, [&](const Word& w) { out.push_back(w); });
  return out;
}

void check_triples(CheckReport& report, const std::vector<Shaped>& ps,
                   const std::vector<Shaped>& qs, const std::vector<Shaped>& rs) {
  report.instances += static_cast<std::uint64_t>(ps.size()) * qs.size() * rs.size();
  for (const auto& p : ps) {
    for (const auto& q : qs) {
      if (p.word.size() != q.word.size()) {
        report.violation("shape lengths differ: " + p.word.str() + " / " + q.word.str());
        continue;
      }
      if (p.psi != q.psi) continue;
      for (const auto& r : rs) {
        if (r.word.size() != p.word.size()) {
          report.violation("shape lengths differ: " + p.word.str() + " / " + r.word.str());
        } else if (r.psi == p.psi) {
          report.violation("p ~2 q ~2 r for p = " + p.word.str() + ", q = " + q.word.str() +
                           ", r = " + r.word.str());
        }
      }
    }
  }
}

}  // namespace

CheckReport check_cube_lemma_one(int n_max, const CheckOptions& options) {
  CheckReport report = start("cube-lemma-one", options);
  report.parameters["n_max"] = n_max;
  const Morphism h = preset_morphism("h");
  const Word zero(kBinary, {0}), one(kBinary, {1});
  for (int n = 1; n <= n_max; ++n) {
    const auto len = static_cast<std::size_t>(n);
    std::vector<Shaped> ps, qs, rs;
    for (const Word& p1 : binary_words(len)) {
      ps.push_back(shaped(options.inject_fault ? apply(h, p1) : apply(h, p1) + zero));
      rs.push_back(shaped(options.inject_fault ? apply(h, p1) : one + apply(h, p1)));
    }
    if (options.inject_fault) {
      for (const Word& q1 : binary_words(len)) qs.push_back(shaped(apply(h, q1)));
    } else {
      for (const Word& q1 : binary_words(len - 1)) {
        for (const Word& a : {zero, one}) {
          for (const Word& b : {zero, one}) {
            qs.push_back(shaped(a + one + apply(h, q1) + zero + b));
          }
        }
      }
    }
    check_triples(report, ps, qs, rs);
  }
  return report;
}

CheckReport check_cube_lemma_two(int n_max, const CheckOptions& options) {
  CheckReport report = start("cube-lemma-two", options);
  report.parameters["n_max"] = n_max;
  const Morphism h = preset_morphism("h");
  const Word zero(kBinary, {0}), one(kBinary, {1});
  for (int n = 0; n <= n_max; ++n) {
    std::vector<Shaped> ps, qs, rs;
    for (const Word& w : binary_words(static_cast<std::size_t>(n))) {
      const Word hw = apply(h, w);
      if (options.inject_fault) {
        ps.push_back(shaped(hw));
        qs.push_back(shaped(hw));
        rs.push_back(shaped(hw));
        continue;
      }
      qs.push_back(shaped(one + hw + zero));
      for (const Word& c : {zero, one}) {
        ps.push_back(shaped(hw + zero + c));
        rs.push_back(shaped(c + one + hw));
      }
    }
    check_triples(report, ps, qs, rs);
  }
  return report;
}

CheckReport check_morphism_cube_freeness(std::size_t trials, std::size_t max_len,
                                         std::size_t exhaustive_len,
                                         const CheckOptions& options) {
  CheckReport report = start("cube-free-morphism", options);
  report.parameters["trials"] = trials;
  report.parameters["max_len"] = max_len;
  report.parameters["exhaustive_len"] = exhaustive_len;
  report.parameters["seed"] = options.seed;

  const Morphism h =
      options.inject_fault ? parse_morphism("0->000,1->011") : preset_morphism("h");
  auto check = [&](const Word& w) {
    ++report.instances;
    if (auto occ = find_power(apply(h, w), 2, 3)) {
      report.violation("h(" + describe(w) + ") has a 2-binomial cube at " +
                       std::to_string(occ->start) + " with period " +
                       std::to_string(occ->period));
    }
  };
  std::uint64_t filtered = 0;
  for (std::size_t len = 0; len <= exhaustive_len; ++len) {
    for_each_word(kBinary, len, [&](const Word& w) {
      if (!is_power_free(w, 2, 3)) return;
      ++filtered;
      check(w);
    });
  }
  report.notes.push_back("exhaustive_cube_free_words=" + std::to_string(filtered));

  // Random cube-free words: randomised depth-first extension.
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> length(std::min(exhaustive_len + 1, max_len),
                                                    max_len);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t target = length(rng);
    PrefixIndex index(kBinary, 2);
    std::vector<std::array<Letter, 2>> order;
    std::vector<int> tried;
    while (index.size() < target) {
      if (tried.size() == index.size()) {
        const Letter first = static_cast<Letter>(rng() & 1u);
        order.push_back({first, static_cast<Letter>(1 - first)});
        tried.push_back(0);
      }
      const std::size_t depth = index.size();
      if (tried[depth] == 2) {
        order.pop_back();
        tried.pop_back();
        if (index.size() == 0) break;
        index.pop_back();
        continue;
      }
      index.push_back(order[depth][static_cast<std::size_t>(tried[depth]++)]);
      if (power_ending_at_end(index, 3)) index.pop_back();
    }
    std::vector<Letter> letters;
    for (std::size_t i = 0; i < index.size(); ++i) letters.push_back(index.letter(i));
    check(Word(kBinary, std::move(letters)));
  }
  return report;
}

CheckReport check_square_free_prefix(std::size_t n, const CheckOptions& options) {
  CheckReport report = start("square-free-x", options);
  report.parameters["n"] = n;
  Word x = x_prefix(n);
  if (options.inject_fault) x = apply(preset_morphism("g"), Word(kTernary, {0, 1, 0})) + x;
  report.instances = x.size();
  if (auto occ = find_power(x, 2, 2)) {
    report.violation("2-binomial square at " + std::to_string(occ->start) + " with period " +
                     std::to_string(occ->period));
  }
  return report;
}

CheckReport check_cube_free_prefix(std::size_t n, const CheckOptions& options) {
  CheckReport report = start("cube-free-z", options);
  report.parameters["n"] = n;
  Word z = fixed_point_prefix(preset_morphism("h"), 0, n);
  if (options.inject_fault) z = Word(kBinary, {0, 0, 0}) + z;
  report.instances = z.size();
  if (auto occ = find_power(z, 2, 3)) {
    report.violation("2-binomial cube at " + std::to_string(occ->start) + " with period " +
                     std::to_string(occ->period));
  }
  return report;
}

CheckReport check_subword_oracle(std::size_t trials, const CheckOptions& options) {
  CheckReport report = start("subword-oracle", options);
  report.parameters["trials"] = trials;
  report.parameters["seed"] = options.seed;
  auto check = [&](const Word& u, const Word& x) {
    ++report.instances;
    std::uint64_t fast = subword_count(u, x);
    if (options.inject_fault && !x.empty()) ++fast;
    const std::uint64_t slow = naive_subword_count(u, x);
    if (fast != slow) {
      report.violation("binom(" + describe(u) + ", " + describe(x) + ") = " +
                       std::to_string(fast) + ", enumeration gives " + std::to_string(slow));
    }
  };
  for (std::size_t n = 0; n <= 8; ++n) {
    for_each_word(kBinary, n, [&](const Word& u) {
      for (std::size_t m = 0; m <= 3; ++m) {
        for_each_word(kBinary, m, [&](const Word& x) { check(u, x); });
      }
    });
  }
  std::mt19937_64 rng(options.seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const Word u = random_word(rng, kTernary, 0, 12);
    check(u, random_word(rng, kTernary, 0, 4));
  }
  return report;
}

namespace {

Word random_mixed_word(std::mt19937_64& rng, int min_k, int max_k, std::size_t max_len) {
  std::uniform_int_distribution<int> k(min_k, max_k);
  return random_word(rng, Alphabet(k(rng)), 0, max_len);
}

}  // namespace

CheckReport check_pair_identity(std::size_t trials, const CheckOptions& options) {
  CheckReport report = start("pair-identity", options);
  report.parameters["trials"] = trials;
  report.parameters["seed"] = options.seed;
  std::mt19937_64 rng(options.seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const Word w = random_mixed_word(rng, 2, 4, 40);
    auto s = signature(w, 2);
    if (options.inject_fault) {
      const Word w01(w.alphabet(), {0, 1});
      s.mutable_counts()[s.layout().index_of(w01.letters())] += 1;
    }
    ++report.instances;
    const int k = w.alphabet().size();
    for (int a = 0; a < k; ++a) {
      for (int b = a + 1; b < k; ++b) {
        const Word ab(w.alphabet(), {a, b}), ba(w.alphabet(), {b, a});
        const Word wa(w.alphabet(), {a}), wb(w.alphabet(), {b});
        if (s.count(ab) + s.count(ba) != s.count(wa) * s.count(wb)) {
          report.violation("pair identity fails for " + describe(w) + " at (" +
                           std::to_string(a) + "," + std::to_string(b) + ")");
        }
      }
    }
  }
  return report;
}

CheckReport check_diagonal_identity(std::size_t trials, const CheckOptions& options) {
  CheckReport report = start("diagonal-identity", options);
  report.parameters["trials"] = trials;
  report.parameters["seed"] = options.seed;
  std::mt19937_64 rng(options.seed);
  for (std::size_t t = 0; t < trials; ++t) {
    const Word w = random_mixed_word(rng, 1, 4, 40);
    auto s = signature(w, 2);
    if (options.inject_fault) s.mutable_counts()[s.layout().offset(2)] += 1;
    ++report.instances;
    for (int a = 0; a < w.alphabet().size(); ++a) {
      if (s.count(Word(w.alphabet(), {a, a})) != choose2(s.count(Word(w.alphabet(), {a})))) {
        report.violation("diagonal identity fails for " + describe(w) + " at letter " +
                         std::to_string(a));
      }
    }
    if (s.length() != w.size()) report.violation("letter counts of " + describe(w) + " do not sum");
  }
  return report;
}

namespace {

// Every indexed component by direct DP, independent of signature().
std::vector<std::uint64_t> dp_signature(const Word& w, int order) {
  const SignatureLayout layout(w.alphabet(), order);
  std::vector<std::uint64_t> out(layout.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = subword_count(w, layout.word_at(i));
  return out;
}

bool same(const BinomialSignature& s, const std::vector<std::uint64_t>& v) {
  return std::equal(s.counts().begin(), s.counts().end(), v.begin(), v.end());
}

}  // namespace

CheckReport check_streaming(std::size_t trials, const CheckOptions& options) {
  CheckReport report = start("streaming", options);
  report.parameters["trials"] = trials;
  report.parameters["seed"] = options.seed;
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<int> order(1, 3);
  for (std::size_t t = 0; t < trials; ++t) {
    const Word w = random_mixed_word(rng, 1, 3, 12);
    const int m = order(rng);
    BinomialSignature s(SignatureLayout(w.alphabet(), m));
    for (Letter a : w.letters()) s = signature_extend(std::move(s), a);
    if (options.inject_fault) s.mutable_counts()[0] += 1;
    ++report.instances;
    if (!same(s, dp_signature(w, m))) {
      report.violation("streamed signature of " + describe(w) + " (m=" + std::to_string(m) +
                       ") differs from DP");
    }
  }
  return report;
}

CheckReport check_concat(std::size_t trials, const CheckOptions& options) {
  CheckReport report = start("concat", options);
  report.parameters["trials"] = trials;
  report.parameters["seed"] = options.seed;
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<int> order(1, 3);
  std::uniform_int_distribution<int> size(1, 3);
  for (std::size_t t = 0; t < trials; ++t) {
    const Alphabet alphabet(size(rng));
    const Word u = random_word(rng, alphabet, 0, 10);
    const Word v = random_word(rng, alphabet, 0, 10);
    const int m = order(rng);
    auto joined = signature_concat(signature(u, m), signature(v, m));
    if (options.inject_fault) joined.mutable_counts()[joined.counts().size() - 1] += 1;
    ++report.instances;
    if (!same(joined, dp_signature(u + v, m))) {
      report.violation("concat of " + describe(u) + " and " + describe(v) + " (m=" +
                       std::to_string(m) + ") differs from DP");
    }
  }
  return report;
}

CheckReport check_factor(std::size_t trials, const CheckOptions& options) {
  CheckReport report = start("factor", options);
  report.parameters["trials"] = trials;
  report.parameters["seed"] = options.seed;
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<int> order(1, 3);
  std::uint64_t words = 0;
  while (report.instances < trials) {
    const Word w = random_mixed_word(rng, 2, 3, 64);
    const int m = order(rng);
    const PrefixIndex index(w, m);
    ++words;
    for (std::size_t i = 0; i <= w.size(); ++i) {
      for (std::size_t j = i; j <= w.size(); ++j) {
        auto f = index.factor_signature(i, j);
        if (options.inject_fault) f.mutable_counts()[f.counts().size() - 1] += 1;
        ++report.instances;
        if (f != signature(w.slice(i, j), m)) {
          report.violation("factor [" + std::to_string(i) + "," + std::to_string(j) + ") of " +
                           describe(w) + " (m=" + std::to_string(m) + ")");
        }
      }
    }
  }
  report.notes.push_back("words=" + std::to_string(words));
  return report;
}

void VerifyConfig::scale_scan(std::size_t scan_len) {
  erasure_len = scan_len;
  mirror_scan = scan_len;
  mirror_margin = 10 * scan_len;
  desub_scan = scan_len;
  square_free_len = scan_len;
  cube_free_len = scan_len;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "erasure",        "mirror",          "desubstitution",     "matrix",
      "cyclic",         "cube-lemma-one",  "cube-lemma-two",     "cube-free-morphism",
      "square-free-x",  "cube-free-z",     "subword-oracle",     "pair-identity",
      "diagonal-identity", "streaming",    "concat",             "factor"};
  return names;
}

bool VerifySummary::passed() const noexcept {
  return std::all_of(reports.begin(), reports.end(),
                     [](const CheckReport& r) { return r.passed(); });
}

VerifySummary run_all(const VerifyConfig& config) {
  for (const auto& name : config.checks) {
    if (std::find(check_names().begin(), check_names().end(), name) == check_names().end()) {
      fail(ErrorCode::InvalidInput, "unknown check '" + name + "'");
    }
  }
  for (const auto& name : config.faults) {
    if (std::find(check_names().begin(), check_names().end(), name) == check_names().end()) {
      fail(ErrorCode::InvalidInput, "unknown check '" + name + "' for fault injection");
    }
  }

  const VerifyConfig& c = config;
  auto opts = [&](const std::string& name) {
    return CheckOptions{c.seed, c.faults.count(name) > 0};
  };
  const std::map<std::string, std::function<CheckReport()>> runners = {
      {"erasure", [&] { return check_erasure(c.erasure_len, opts("erasure")); }},
      {"mirror",
       [&] {
         return check_mirror_closure(c.mirror_scan, c.mirror_max_factor,
                                     std::max(c.mirror_margin, c.mirror_scan), opts("mirror"));
       }},
      {"desubstitution",
       [&] { return check_desubstitution(c.desub_scan, c.desub_max_len, opts("desubstitution")); }},
      {"matrix",
       [&] { return check_matrix_identity(c.matrix_trials, c.matrix_max_len, opts("matrix")); }},
      {"cyclic",
       [&] {
         return check_cyclic_shift(c.cyclic_trials, c.cyclic_max_len, c.cyclic_exhaustive_len,
                                   opts("cyclic"));
       }},
      {"cube-lemma-one", [&] { return check_cube_lemma_one(c.cube_lemma_n, opts("cube-lemma-one")); }},
      {"cube-lemma-two", [&] { return check_cube_lemma_two(c.cube_lemma_n, opts("cube-lemma-two")); }},
      {"cube-free-morphism",
       [&] {
         return check_morphism_cube_freeness(c.cube_free_trials, c.cube_free_max_len,
                                             c.cube_free_exhaustive_len,
                                             opts("cube-free-morphism"));
       }},
      {"square-free-x", [&] { return check_square_free_prefix(c.square_free_len, opts("square-free-x")); }},
      {"cube-free-z", [&] { return check_cube_free_prefix(c.cube_free_len, opts("cube-free-z")); }},
      {"subword-oracle", [&] { return check_subword_oracle(c.property_trials, opts("subword-oracle")); }},
      {"pair-identity", [&] { return check_pair_identity(c.property_trials, opts("pair-identity")); }},
      {"diagonal-identity",
       [&] { return check_diagonal_identity(c.property_trials, opts("diagonal-identity")); }},
      {"streaming", [&] { return check_streaming(c.property_trials, opts("streaming")); }},
      {"concat", [&] { return check_concat(c.property_trials, opts("concat")); }},
      {"factor", [&] { return check_factor(c.property_trials, opts("factor")); }},
  };

  std::vector<std::string> selected;
  for (const auto& name : check_names()) {
    if (config.checks.empty() || config.checks.count(name)) selected.push_back(name);
  }

  VerifySummary summary;
  summary.reports.resize(selected.size());
  const unsigned workers =
      std::max(1u, std::min<unsigned>(config.threads, static_cast<unsigned>(selected.size())));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(selected.size());
  auto work = [&] {
    for (std::size_t i = next++; i < selected.size(); i = next++) {
      try {
        const auto begin = std::chrono::steady_clock::now();
        summary.reports[i] = runners.at(selected[i])();
        summary.reports[i].elapsed_ms = std::chrono::duration<double, std::milli>(
                                            std::chrono::steady_clock::now() - begin)
                                            .count();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return summary;
}

}  // namespace binwords
