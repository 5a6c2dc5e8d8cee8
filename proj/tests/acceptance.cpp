// One line per acceptance criterion; exit status 1 if any line fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "binwords/morphism.hpp"
#include "binwords/repetition.hpp"
#include "binwords/search.hpp"
#include "binwords/signature.hpp"
#include "binwords/verify.hpp"
#include "oracles.hpp"

using namespace binwords;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double limit_ms, const std::function<Outcome()>& body) {
  const auto begin = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - begin).count();
  if (ms > limit_ms) {
    out.ok = false;
    if (!out.detail.empty()) out.detail += "; ";
    out.detail += "over time limit of " + std::to_string(static_cast<long>(limit_ms)) + " ms";
  }
  if (!out.ok) ++failures;
  std::printf("%s [%2d] %s (%.1f ms)%s%s\n", out.ok ? "PASS" : "FAIL", id, title, ms,
              out.detail.empty() ? "" : ": ", out.detail.c_str());
  std::fflush(stdout);
}

std::string report_line(const CheckReport& r) {
  return r.name + " " + std::to_string(r.instances) + " instances, " +
         std::to_string(r.violation_count) + " violations" +
         (r.violations.empty() ? "" : " (first: " + r.violations.front() + ")");
}

void require_clean(Outcome& out, const CheckReport& r, std::uint64_t min_instances = 1) {
  out.require(r.passed(), report_line(r));
  out.require(r.instances >= min_instances, r.name + " ran only " +
                                                std::to_string(r.instances) + " instances");
}

constexpr double kSecond = 1000.0;

}  // namespace

int main() {
  criterion(1, "worked example: counts, equivalences, 1- vs 2-equivalence", 1.0, [] {
    Outcome out;
    const Word u = Word::parse("0101110");
    const auto s = signature(u, 2);
    out.require(std::vector<std::uint64_t>(s.counts().begin(), s.counts().end()) ==
                    std::vector<std::uint64_t>{3, 4, 3, 7, 5, 6},
                "order-2 counts differ from (3,4,3,7,5,6)");
    const char* same[] = {"0101110", "0110101", "1001101", "1010011"};
    for (const char* a : same) {
      for (const char* b : same) {
        out.require(equivalent(Word::parse(a), Word::parse(b), 2),
                    std::string(a) + " !~2 " + b);
      }
    }
    const Word v = Word::parse("0001111");
    out.require(equivalent(v, u, 1), "0001111 not abelian equivalent to 0101110");
    out.require(!equivalent(v, u, 2), "0001111 ~2 0101110");
    return out;
  });

  criterion(2, "subword counts match naive enumeration", 60 * kSecond, [] {
    Outcome out;
    std::uint64_t cases = 0, mismatches = 0;
    for (std::size_t n = 0; n <= 8; ++n) {
      for (const auto& us : oracle::all_strings(2, n)) {
        const Word uw = Word::parse(us, 2);
        for (std::size_t len = 0; len <= 3; ++len) {
          for (const auto& xs : oracle::all_strings(2, len)) {
            ++cases;
            if (subword_count(uw, Word::parse(xs, 2)) != oracle::subsequences(us, xs)) ++mismatches;
          }
        }
      }
    }
    const std::uint64_t exhaustive = cases;
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 10000; ++t) {
      std::string us(rng() % 13, '0'), xs(rng() % 5, '0');
      for (char& c : us) c = static_cast<char>('0' + rng() % 3);
      for (char& c : xs) c = static_cast<char>('0' + rng() % 3);
      ++cases;
      if (subword_count(Word::parse(us, 3), Word::parse(xs, 3)) != oracle::subsequences(us, xs)) {
        ++mismatches;
      }
    }
    out.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
    out.detail = std::to_string(exhaustive) + " exhaustive + " +
                 std::to_string(cases - exhaustive) + " random cases" +
                 (out.detail.empty() ? "" : "; " + out.detail);
    return out;
  });

  criterion(3, "fixed-point prefixes match the displayed x, z, y", 1.0, [] {
    Outcome out;
    out.require(fixed_point_prefix(preset_morphism("g"), 0, 24).str() ==
                    "012021012102012021020121",
                "x prefix");
    out.require(fixed_point_prefix(preset_morphism("h"), 0, 27).str() ==
                    "001001011001001011001011011",
                "z prefix");
    out.require(fixed_point_prefix(preset_morphism("gtilde2"), 1, 26).str() ==
                    "12102012101202102012021012",
                "y prefix");
    return out;
  });

  criterion(4, "length-5000 prefix of x has no 2-binomial square", 60 * kSecond, [] {
    Outcome out;
    const Word x = fixed_point_prefix(preset_morphism("g"), 0, 5000);
    const auto occ = find_power(x, 2, 2);
    out.require(!occ, occ ? "square at " + std::to_string(occ->start) : "");
    return out;
  });

  criterion(5, "length-5000 prefix of z has no 2-binomial cube", 60 * kSecond, [] {
    Outcome out;
    const Word z = fixed_point_prefix(preset_morphism("h"), 0, 5000);
    const auto occ = find_power(z, 2, 3);
    out.require(!occ, occ ? "cube at " + std::to_string(occ->start) : "");
    return out;
  });

  criterion(6, "M_h acts on order-2 signatures, matches the display, invertible", 60 * kSecond,
            [] {
              Outcome out;
              const LiftedMatrix m = lift_matrix(preset_morphism("h"), 2);
              out.require(m.rows() == std::vector<std::vector<std::int64_t>>{
                                          {2, 1, 0, 0, 0, 0}, {1, 2, 0, 0, 0, 0},
                                          {1, 0, 4, 2, 2, 1}, {2, 2, 2, 4, 1, 2},
                                          {0, 0, 2, 1, 4, 2}, {0, 1, 1, 2, 2, 4}},
                          "lifted matrix differs from the display");
              out.require(is_invertible(m), "M_h singular");
              require_clean(out, check_matrix_identity(100000, 100), 100000);
              return out;
            });

  criterion(7, "cube lemmas hold exhaustively for n <= 6", 600 * kSecond, [] {
    Outcome out;
    require_clean(out, check_cube_lemma_one(6));
    require_clean(out, check_cube_lemma_two(6));
    return out;
  });

  criterion(8, "abelian squares of x desubstitute, lambda clause preserved", 300 * kSecond, [] {
    Outcome out;
    const auto r = check_desubstitution(3000, 40);
    require_clean(out, r);
    if (out.ok) {
      out.detail = std::to_string(r.instances) + " squares";
      for (const auto& n : r.notes) out.detail += ", " + n;
    }
    return out;
  });

  criterion(9, "search optimality and cap-reaching witnesses", 300 * kSecond, [] {
    Outcome out;
    const auto binary = longest_avoiding(2, 2, 2, 100);
    out.require(binary.outcome == SearchOutcome::Maximal && binary.length == 3 &&
                    is_power_free(binary.witness, 2, 2),
                "(2,2,2): expected maximal 3, got " + std::to_string(binary.length));
    const auto unary = longest_avoiding(1, 2, 3, 100);
    out.require(unary.outcome == SearchOutcome::Maximal && unary.length == 2 &&
                    is_power_free(unary.witness, 2, 3),
                "(1,2,3): expected maximal 2, got " + std::to_string(unary.length));
    for (auto [k, p] : {std::pair{3, 2}, std::pair{2, 3}}) {
      const auto cert = longest_avoiding(k, 2, p, 50);
      out.require(cert.outcome == SearchOutcome::CapReached && cert.witness.size() == 50 &&
                      is_power_free(cert.witness, 2, p),
                  "(" + std::to_string(k) + ",2," + std::to_string(p) + ",50) did not reach cap");
    }
    return out;
  });

  criterion(10, "h maps every cube-free binary word of length <= 10 to a cube-free word",
            600 * kSecond, [] {
              Outcome out;
              const auto r = check_morphism_cube_freeness(0, 0, 10);
              require_clean(out, r);
              if (out.ok) out.detail = std::to_string(r.instances) + " words";
              return out;
            });

  criterion(11, "property suites clean over 10^4 cases and flipped by fault injection",
            600 * kSecond, [] {
              Outcome out;
              CheckOptions fault;
              fault.inject_fault = true;
              using Suite = std::function<CheckReport(const CheckOptions&)>;
              const std::vector<Suite> suites = {
                  [](const CheckOptions& o) { return check_pair_identity(10000, o); },
                  [](const CheckOptions& o) { return check_diagonal_identity(10000, o); },
                  [](const CheckOptions& o) { return check_cyclic_shift(10000, 30, 10, o); },
                  [](const CheckOptions& o) { return check_concat(10000, o); },
                  [](const CheckOptions& o) { return check_factor(10000, o); },
                  [](const CheckOptions& o) { return check_streaming(10000, o); },
              };
              for (const auto& suite : suites) {
                const auto clean = suite(CheckOptions{});
                require_clean(out, clean, 10000);
                const auto broken = suite(fault);
                out.require(!broken.passed(), broken.name + " still passes with a fault injected");
              }
              return out;
            });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
