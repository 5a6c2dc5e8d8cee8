#include <doctest.h>

#include <random>
#include <string>

#include "binwords/error.hpp"
#include "binwords/morphism.hpp"
#include "binwords/signature.hpp"
#include "oracles.hpp"

using namespace binwords;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::Internal;
}

const std::string x_display = "012021012102012021020121";
const std::string z_display = "001001011001001011001011011";
const std::string y_display = "1210201210120210201202101210";

}  // namespace

TEST_SUITE("morphism") {

TEST_CASE("parse and presets") {
  const Morphism g = parse_morphism("0->012,1->02,2->1");
  CHECK(g == preset_morphism("g"));
  CHECK(g.str() == "0->012,1->02,2->1");
  CHECK(parse_morphism("0->001,1->011") == preset_morphism("h"));
  const Morphism e = parse_morphism("0->0,1->,2->2");
  CHECK(e == preset_morphism("e"));
  CHECK(e.erasing());
  CHECK_FALSE(g.erasing());
  CHECK(parse_morphism("1->02, 0->012 ,2->1") == g);
  CHECK(preset_seed("gtilde2") == 1);
  CHECK(preset_seed("g") == 0);

  CHECK(code_of([] { parse_morphism("0->01,0->1"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_morphism("0->01,2->1"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_morphism("0=01,1->1"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_morphism("0->0a,1->1"); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_morphism(""); }) == ErrorCode::Parse);
  CHECK(code_of([] { parse_morphism("0->2,1->1"); }) != ErrorCode::Internal);
  CHECK(code_of([] { preset_morphism("nope"); }) == ErrorCode::InvalidInput);
}

TEST_CASE("apply") {
  const Morphism g = preset_morphism("g"), h = preset_morphism("h");
  CHECK(apply(g, Word::parse("010")).str() == "01202012");
  CHECK(apply(g, Word::parse("", 3)).empty());
  CHECK(apply(h, Word::parse("001")).str() == "001001011");
  CHECK(code_of([&] { apply(h, Word::parse("012")); }) == ErrorCode::InvalidInput);
}

TEST_CASE("compose and mirror") {
  const Morphism g = preset_morphism("g");
  const Morphism g2 = compose(g, g);
  CHECK(g2 == preset_morphism("g2"));
  CHECK(g2.image(0).str() == "012021");
  CHECK(g2.image(1).str() == "0121");
  CHECK(compose(Morphism::identity(Alphabet(3)), g) == g);
  CHECK(compose(g, Morphism::identity(Alphabet(3))) == g);

  const Morphism gt = mirror_morphism(g);
  CHECK(gt == preset_morphism("gtilde"));
  CHECK(gt.image(0).str() == "210");
  CHECK(gt.image(1).str() == "20");
  CHECK(gt.image(2).str() == "1");
  CHECK(compose(gt, gt).image(0).str() == "120210");
  CHECK(compose(gt, gt) == preset_morphism("gtilde2"));
  CHECK(mirror_morphism(gt) == g);
}

TEST_CASE("prolongability") {
  const Morphism g = preset_morphism("g"), gt = preset_morphism("gtilde");
  CHECK(is_prolongable(g, 0));
  CHECK_FALSE(is_prolongable(g, 1));
  for (Letter a = 0; a < 3; ++a) CHECK_FALSE(is_prolongable(gt, a));
  CHECK(is_prolongable(compose(gt, gt), 1));
  CHECK(is_prolongable(preset_morphism("h"), 0));
  CHECK_FALSE(is_prolongable(preset_morphism("e"), 0));
  // 0 -> 01, 1 -> empty: the fixed point would stall after "0".
  CHECK_FALSE(is_prolongable(parse_morphism("0->01,1->"), 0));
}

TEST_CASE("fixed point prefixes") {
  CHECK(fixed_point_prefix(preset_morphism("g"), 0, 24).str() == x_display);
  CHECK(fixed_point_prefix(preset_morphism("h"), 0, 27).str() == z_display);
  CHECK(fixed_point_prefix(preset_morphism("gtilde2"), 1, y_display.size()).str() == y_display);
  CHECK(fixed_point_prefix(preset_morphism("g"), 0, 1).str() == "0");
  CHECK(fixed_point_prefix(preset_morphism("g"), 0, 0).empty());
  CHECK(code_of([] { fixed_point_prefix(preset_morphism("gtilde"), 0, 5); }) ==
        ErrorCode::InvalidInput);

  // x is a fixed point: g maps the prefix onto a longer prefix.
  const Morphism g = preset_morphism("g");
  const Word x = fixed_point_prefix(g, 0, 3000);
  const Word gx = apply(g, x.slice(0, 1000));
  CHECK(x.slice(0, gx.size()) == gx);
  // Prefixes of y are factors of x (checked on a short one).
  const std::string xs = fixed_point_prefix(g, 0, 5000).str();
  CHECK(xs.find(y_display.substr(0, 12)) != std::string::npos);
}

TEST_CASE("decode") {
  const Morphism g = preset_morphism("g");
  auto d = decode(Word::parse("01202"), g);
  CHECK(d.preimage.str() == "01");
  CHECK(d.consumed == 5);
  CHECK(d.complete(Word::parse("01202")));
  d = decode(Word::parse("2"), g);
  CHECK(d.preimage.empty());
  CHECK(d.consumed == 0);
  d = decode(Word::parse("02", 3), g);
  CHECK(d.preimage.str() == "1");
  CHECK(d.consumed == 2);
  CHECK(is_prefix_code(g));
  CHECK_FALSE(is_prefix_code(parse_morphism("0->0,1->01")));
  CHECK(code_of([] { decode(Word::parse("01"), parse_morphism("0->0,1->01")); }) ==
        ErrorCode::Unsupported);
  const Word w = apply(g, Word::parse("2101202"));
  CHECK(decode(w, g).preimage.str() == "2101202");
}

TEST_CASE("lifted matrix of h") {
  const LiftedMatrix m = lift_matrix(preset_morphism("h"), 2);
  const std::vector<std::vector<std::int64_t>> published = {
      {2, 1, 0, 0, 0, 0}, {1, 2, 0, 0, 0, 0}, {1, 0, 4, 2, 2, 1},
      {2, 2, 2, 4, 1, 2}, {0, 0, 2, 1, 4, 2}, {0, 1, 1, 2, 2, 4}};
  CHECK(m.rows() == published);
  std::vector<std::uint64_t> column0;
  for (std::size_t r = 0; r < 6; ++r) column0.push_back(static_cast<std::uint64_t>(m.at(r, 0)));
  const auto s001 = signature(Word::parse("001"), 2);
  CHECK(column0 == std::vector<std::uint64_t>(s001.counts().begin(), s001.counts().end()));
  CHECK(is_invertible(m));
  // Block lower triangular: 3 from the letter block times 81 from the pair block.
  CHECK(determinant(m) == 243);
}

TEST_CASE("lift_matrix general behaviour") {
  const SignatureLayout layout(Alphabet(2), 2);
  CHECK(lift_matrix(Morphism::identity(Alphabet(2)), 2) == LiftedMatrix::identity(layout));
  CHECK(code_of([] { lift_matrix(preset_morphism("e"), 2); }) == ErrorCode::Unsupported);
  CHECK_FALSE(is_invertible(LiftedMatrix(layout, std::vector<std::int64_t>(36, 0))));
  CHECK(determinant(LiftedMatrix::identity(layout)) == 1);

  std::mt19937_64 rng(21);
  for (const char* name : {"g", "g2", "gtilde", "h"}) {
    const Morphism f = preset_morphism(name);
    for (int m = 1; m <= 3; ++m) {
      const LiftedMatrix lifted = lift_matrix(f, m);
      for (int t = 0; t < 100; ++t) {
        std::string s(rng() % 9, '0');
        for (char& c : s) c = static_cast<char>('0' + rng() % f.alphabet().size());
        const Word u = Word::parse(s, f.alphabet().size());
        const auto lhs = lifted * signature(u, m);
        const auto rhs = oracle::psi(apply(f, u).str(), f.alphabet().size(), m);
        REQUIRE(std::vector<std::uint64_t>(lhs.counts().begin(), lhs.counts().end()) == rhs);
      }
    }
  }
  // The lifts compose like the morphisms.
  const Morphism g = preset_morphism("g");
  CHECK(lift_matrix(g, 2) * lift_matrix(g, 2) == lift_matrix(compose(g, g), 2));
}

}  // TEST_SUITE
