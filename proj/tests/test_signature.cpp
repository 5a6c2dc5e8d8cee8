#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "binwords/error.hpp"
#include "binwords/serialize.hpp"
#include "binwords/signature.hpp"
#include "oracles.hpp"

using namespace binwords;

namespace {

std::vector<std::uint64_t> counts_of(const BinomialSignature& s) {
  return {s.counts().begin(), s.counts().end()};
}

std::string random_string(std::mt19937_64& rng, int k, std::size_t max_len) {
  std::string s(rng() % (max_len + 1), '0');
  for (char& c : s) c = static_cast<char>('0' + rng() % static_cast<unsigned>(k));
  return s;
}

}  // namespace

TEST_SUITE("signature") {

TEST_CASE("layout order is by length then lexicographic") {
  const SignatureLayout layout(Alphabet(2), 2);
  CHECK(layout.dimension() == 6);
  std::vector<std::string> words;
  for (std::size_t i = 0; i < layout.dimension(); ++i) words.push_back(layout.word_at(i).str());
  CHECK(words == std::vector<std::string>{"0", "1", "00", "01", "10", "11"});
  CHECK(layout.index_of(Word::parse("10").letters()) == 4);
  CHECK(layout.length_at(1) == 1);
  CHECK(layout.length_at(5) == 2);
  CHECK(SignatureLayout(Alphabet(3), 3).dimension() == 3 + 9 + 27);
}

TEST_CASE("order limits") {
  CHECK_THROWS_AS(signature(Word::parse("01"), 0), Error);
  try {
    signature(Word::parse("01"), 5);
    FAIL("order 5 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedOrder);
  }
  CHECK(signature(Word::parse("01"), 5, 5).counts().size() == 62);
}

TEST_CASE("worked example signature") {
  const auto s = signature(Word::parse("0101110"), 2);
  CHECK(counts_of(s) == std::vector<std::uint64_t>{3, 4, 3, 7, 5, 6});
  CHECK(s.length() == 7);
  CHECK(s.count(Word::parse("")) == 1);
  CHECK(s.count(Word::parse("01")) == 7);
  CHECK(counts_of(signature(Word::parse(""), 2)) == std::vector<std::uint64_t>(6, 0));
  CHECK(signature(Word::parse(""), 2).length() == 0);
  CHECK(counts_of(signature(Word::parse("001"), 2)) ==
        std::vector<std::uint64_t>{2, 1, 1, 2, 0, 0});
}

TEST_CASE("signature matches the oracle") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    const int k = 2 + static_cast<int>(rng() % 2);
    const int m = 1 + static_cast<int>(rng() % 3);
    const std::string u = random_string(rng, k, 14);
    REQUIRE(counts_of(signature(Word::parse(u, k), m)) == oracle::psi(u, k, m));
  }
}

TEST_CASE("extend") {
  const auto s01 = signature(Word::parse("01"), 2);
  CHECK(signature_extend(s01, 0) == signature(Word::parse("010"), 2));
  const BinomialSignature zero(SignatureLayout(Alphabet(2), 2));
  CHECK(counts_of(signature_extend(zero, 1)) == std::vector<std::uint64_t>{0, 1, 0, 0, 0, 0});
  CHECK(counts_of(signature_extend(signature(Word::parse("010111"), 2), 0)) ==
        std::vector<std::uint64_t>{3, 4, 3, 7, 5, 6});
  std::mt19937_64 rng(3);
  for (int t = 0; t < 300; ++t) {
    const std::string u = random_string(rng, 3, 12);
    const int a = static_cast<int>(rng() % 3);
    auto s = signature_extend(signature(Word::parse(u, 3), 3), static_cast<Letter>(a));
    REQUIRE(counts_of(s) == oracle::psi(u + static_cast<char>('0' + a), 3, 3));
  }
}

TEST_CASE("concat") {
  const auto s = signature_concat(signature(Word::parse("01"), 2),
                                  signature(Word::parse("01110"), 2));
  CHECK(counts_of(s) == std::vector<std::uint64_t>{3, 4, 3, 7, 5, 6});
  const auto t = signature(Word::parse("0110"), 2);
  CHECK(signature_concat(t, signature(Word::parse(""), 2)) == t);
  CHECK_THROWS_AS(signature_concat(t, signature(Word::parse("01"), 3)), Error);
  std::mt19937_64 rng(5);
  for (int t2 = 0; t2 < 300; ++t2) {
    const std::string u = random_string(rng, 3, 10), v = random_string(rng, 3, 10);
    REQUIRE(counts_of(signature_concat(signature(Word::parse(u, 3), 3),
                                       signature(Word::parse(v, 3), 3))) ==
            oracle::psi(u + v, 3, 3));
  }
}

TEST_CASE("prefix index factors") {
  const Word w = Word::parse("01202012");
  const PrefixIndex idx(w, 2);
  CHECK(idx.factor_signature(2, 6) == signature(Word::parse("2020", 3), 2));
  CHECK(counts_of(idx.factor_signature(4, 4)) == std::vector<std::uint64_t>(12, 0));
  CHECK(idx.factor_signature(0, w.size()) == signature(w, 2));
  CHECK_THROWS_AS(idx.factor_signature(3, 9), Error);
  CHECK(idx.factors_equivalent(2, 4, 4, 6));
  CHECK_FALSE(idx.factors_equivalent(0, 2, 2, 4));
  CHECK_FALSE(idx.factors_equivalent(0, 2, 2, 5));

  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    const std::string s = random_string(rng, 3, 30);
    const PrefixIndex index(Word::parse(s, 3), 3);
    for (std::size_t i = 0; i <= s.size(); ++i) {
      for (std::size_t j = i; j <= s.size(); ++j) {
        REQUIRE(counts_of(index.factor_signature(i, j)) ==
                oracle::psi(s.substr(i, j - i), 3, 3));
      }
    }
  }
}

TEST_CASE("prefix index push and pop") {
  PrefixIndex idx(Alphabet(2), 2);
  for (int a : {0, 1, 1, 0}) idx.push_back(static_cast<Letter>(a));
  CHECK(idx.factor_signature(0, 4) == signature(Word::parse("0110"), 2));
  idx.pop_back();
  idx.push_back(1);
  CHECK(idx.factor_signature(0, 4) == signature(Word::parse("0111"), 2));
  CHECK(idx.size() == 4);
}

TEST_CASE("equivalence from the worked example") {
  const std::vector<std::string> same = {"0101110", "0110101", "1001101", "1010011"};
  for (const auto& a : same) {
    for (const auto& b : same) CHECK(equivalent(Word::parse(a), Word::parse(b), 2));
  }
  CHECK(equivalent(Word::parse("0001111"), Word::parse("0101110"), 1));
  CHECK_FALSE(equivalent(Word::parse("0001111"), Word::parse("0101110"), 2));
  CHECK_FALSE(equivalent(Word::parse("01"), Word::parse("010"), 1));
  CHECK(equivalent(Word::parse("01"), Word::parse("10", 3), 1));
  CHECK(abelian_equivalent(Word::parse("0112"), Word::parse("2110")));
}

TEST_CASE("equivalence agrees with the oracle") {
  for (std::size_t n = 0; n <= 6; ++n) {
    const auto words = oracle::all_strings(2, n);
    for (std::size_t i = 0; i < words.size(); i += 3) {
      for (std::size_t j = 0; j < words.size(); j += 5) {
        for (int m = 1; m <= 3; ++m) {
          REQUIRE(equivalent(Word::parse(words[i], 2), Word::parse(words[j], 2), m) ==
                  oracle::equivalent(words[i], words[j], 2, m));
        }
      }
    }
  }
}

TEST_CASE("lambda") {
  CHECK(lambda(Word::parse("012")) == 0);
  CHECK(lambda(Word::parse("01", 3)) == 1);
  const std::string u = "012021";
  CHECK(lambda(Word::parse(u)) ==
        static_cast<std::int64_t>(oracle::subsequences(u, "01")) -
            static_cast<std::int64_t>(oracle::subsequences(u, "12")));
  CHECK(lambda(Word::parse(u)) == 1);
  CHECK_THROWS_AS(lambda(Word::parse("01")), Error);
}

TEST_CASE("signature JSON round trip") {
  const auto s = signature(Word::parse("0101110"), 2);
  const Json j = to_json(s);
  CHECK(j.dump() ==
        R"({"m":2,"alphabet":2,"counts":{"0":3,"1":4,"00":3,"01":7,"10":5,"11":6}})");
  CHECK(signature_from_json(j) == s);
  CHECK_THROWS_AS(signature_from_json(Json::parse(R"({"m":2})")), Error);
}

}  // TEST_SUITE
