#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "foxcol/diagram.hpp"

using namespace foxcol;

namespace {

Crossing cr(int over, int in, int out, int sign) {
  return Crossing{over, in, out, sign};
}

std::size_t parse_position(const std::string& text) {
  try {
    braid_word_parse(text);
  } catch (const ParseError& e) {
    return e.position;
  }
  FAIL("expected ParseError for: " << text);
  return 0;
}

}  // namespace

TEST_CASE("braid word grammar") {
  BraidWord w = braid_word_parse("B2: s1^3");
  CHECK(w.strands == 2);
  REQUIRE(w.letters.size() == 3);
  for (const auto& letter : w.letters) {
    CHECK(letter.index == 1);
    CHECK(letter.sign == 1);
  }

  w = braid_word_parse("B3: s1 s2^-1");
  CHECK(w.strands == 3);
  REQUIRE(w.letters.size() == 2);
  CHECK(w.letters[0] == BraidLetter{1, 1});
  CHECK(w.letters[1] == BraidLetter{2, -1});

  w = braid_word_parse("B4: s3^-2 s1^0 s2");
  REQUIRE(w.letters.size() == 3);
  CHECK(w.letters[0] == BraidLetter{3, -1});
  CHECK(w.letters[1] == BraidLetter{3, -1});
  CHECK(w.letters[2] == BraidLetter{2, 1});

  CHECK(braid_word_parse("B3:").letters.empty());
  CHECK(braid_word_parse("  B2:   s1^2  ").letters.size() == 2);
}

TEST_CASE("braid word malformed text carries a position") {
  CHECK(parse_position("X2: s1") == 0);
  CHECK(parse_position("B2 s1") == 2);
  CHECK(parse_position("B2: t1") == 4);
  CHECK(parse_position("B2: s") == 5);
  CHECK(parse_position("B2: s1^") == 7);
  CHECK(parse_position("B2: s1 ^2") == 7);

  CHECK_THROWS_WITH_AS(braid_word_parse("B2: s"),
                       "expected generator index (at position 5)", ParseError);
}

TEST_CASE("braid word semantic violations") {
  CHECK_THROWS_AS(braid_word_parse("B1: s1"), DomainError);
  CHECK_THROWS_AS(braid_word_parse("B3: s3"), DomainError);
  CHECK_THROWS_AS(braid_word_parse("B2: s2^-1"), DomainError);
}

TEST_CASE("closure of s1^n reproduces the standard twist cycle") {
  Diagram d = braid_closure(braid_word_parse("B2: s1^3"));
  CHECK(d.arcs == std::vector<int>{0, 1, 2});
  REQUIRE(d.crossings.size() == 3);
  CHECK(d.crossings[0] == cr(1, 0, 2, 1));
  CHECK(d.crossings[1] == cr(2, 1, 0, 1));
  CHECK(d.crossings[2] == cr(0, 2, 1, 1));
  CHECK(d.components == 1);

  for (int n = 2; n <= 9; ++n) {
    Diagram t = torus_diagram(n);
    CHECK(static_cast<int>(t.arcs.size()) == n);
    REQUIRE(static_cast<int>(t.crossings.size()) == n);
    for (int k = 0; k < n; ++k) {
      CHECK(t.crossings[k] == cr((k + 1) % n, k, (k + 2) % n, 1));
    }
    CHECK(t.components == (n % 2 == 0 ? 2 : 1));
    CHECK(validate_diagram(t).valid);
  }

  CHECK(torus_diagram(3).provenance.at("torus") == json::array({2, 3}));
  CHECK_THROWS_AS(torus_diagram(1), DomainError);
}

TEST_CASE("closure corner cases") {
  Diagram kink = braid_closure(braid_word_parse("B2: s1^1"));
  CHECK(kink.arcs == std::vector<int>{0});
  REQUIRE(kink.crossings.size() == 1);
  CHECK(kink.crossings[0] == cr(0, 0, 0, 1));
  CHECK(kink.components == 1);

  Diagram unlink = braid_closure(braid_word_parse("B3:"));
  CHECK(unlink.arcs.size() == 3);
  CHECK(unlink.crossings.empty());
  CHECK(unlink.components == 3);
  CHECK(validate_diagram(unlink).valid);

  Diagram two = braid_closure(braid_word_parse("B3: s1 s2"));
  CHECK(two.arcs == std::vector<int>{0, 1});
  REQUIRE(two.crossings.size() == 2);
  CHECK(two.crossings[0] == cr(0, 0, 1, 1));
  CHECK(two.crossings[1] == cr(0, 1, 0, 1));
  CHECK(two.components == 1);

  Diagram mirror = braid_closure(braid_word_parse("B2: s1^-3"));
  REQUIRE(mirror.crossings.size() == 3);
  CHECK(mirror.crossings[0] == cr(0, 1, 2, -1));
  CHECK(mirror.crossings[1] == cr(2, 0, 1, -1));
  CHECK(mirror.crossings[2] == cr(1, 2, 0, -1));
  CHECK(mirror.components == 1);
  CHECK(validate_diagram(mirror).valid);
}

TEST_CASE("rational tangle closures") {
  Diagram one = rational_diagram({{1}});
  CHECK(one.arcs == std::vector<int>{0});
  REQUIRE(one.crossings.size() == 1);
  CHECK(one.crossings[0] == cr(0, 0, 0, 1));
  CHECK(one.components == 1);

  Diagram two = rational_diagram({{2}});
  CHECK(two.arcs == std::vector<int>{0, 1});
  REQUIRE(two.crossings.size() == 2);
  CHECK(two.crossings[0] == cr(1, 0, 0, 1));
  CHECK(two.crossings[1] == cr(0, 1, 1, 1));
  CHECK(two.components == 2);

  Diagram eight = rational_diagram({{2, -2}});
  CHECK(eight.arcs == std::vector<int>{0, 1, 2, 3});
  REQUIRE(eight.crossings.size() == 4);
  CHECK(eight.crossings[0] == cr(1, 0, 2, -1));
  CHECK(eight.crossings[1] == cr(2, 1, 3, -1));
  CHECK(eight.crossings[2] == cr(3, 1, 0, 1));
  CHECK(eight.crossings[3] == cr(0, 3, 2, 1));
  CHECK(eight.components == 1);
  CHECK(validate_diagram(eight).valid);

  Diagram big = rational_diagram({{8, -9}});
  CHECK(big.arcs.size() == 17);
  CHECK(big.crossings.size() == 17);
  CHECK(big.components == 1);
  CHECK(validate_diagram(big).valid);
  for (int k = 0; k < 9; ++k) CHECK(big.crossings[k].sign == -1);
  for (int k = 9; k < 17; ++k) CHECK(big.crossings[k].sign == 1);
  CHECK(big.crossings[0] == cr(1, 0, 2, -1));
  CHECK(big.crossings[9] == cr(10, 1, 11, 1));

  Diagram mid = rational_diagram({{8, -6}});
  CHECK(mid.arcs.size() == 14);
  CHECK(mid.crossings.size() == 14);
  CHECK(mid.components == 1);
  CHECK(validate_diagram(mid).valid);

  Diagram five = rational_diagram({{3, -2}});
  CHECK(five.arcs.size() == 5);
  CHECK(five.components == 1);
  CHECK(validate_diagram(five).valid);

  CHECK(rational_diagram({{8, -9}}).provenance.at("twist_vector") ==
        json::array({8, -9}));
  CHECK_THROWS_AS(rational_diagram({{}}), DomainError);
  CHECK_THROWS_AS(rational_diagram({{2, 0, 3}}), DomainError);
}

TEST_CASE("rational first crossings follow the twist recursion") {
  // Vertical region on [a, -b]: crossing j has the previous new arc over,
  // entering from the arc two steps back.
  Diagram big = rational_diagram({{8, -9}});
  CHECK(big.crossings[1] == cr(2, 1, 3, -1));
  CHECK(big.crossings[2] == cr(3, 2, 4, -1));
  // Horizontal region rides on the last vertical arc.
  CHECK(big.crossings[10] == cr(11, 10, 12, 1));
}

TEST_CASE("validator accepts constructor output and flags corruption") {
  for (const Diagram& d :
       {torus_diagram(5), rational_diagram({{8, -6}}),
        braid_closure(braid_word_parse("B3: s1 s2^-1")),
        braid_closure(braid_word_parse("B4:"))}) {
    ValidationReport report = validate_diagram(d);
    CHECK(report.valid);
    CHECK(report.violations.empty());
    CHECK(report.arc_count == static_cast<int>(d.arcs.size()));
    CHECK(report.components == d.components);
  }

  Diagram d = torus_diagram(3);
  d.crossings[0].over = 7;
  ValidationReport bad = validate_diagram(d);
  CHECK_FALSE(bad.valid);
  REQUIRE(bad.violations.size() == 1);
  CHECK(bad.violations[0] == "crossing 0 references unknown arc id 7");
  CHECK_THROWS_WITH_AS(
      require_valid(d),
      "invalid diagram: crossing 0 references unknown arc id 7", DomainError);

  d = torus_diagram(3);
  d.crossings[1].sign = 2;
  CHECK(validate_diagram(d).violations ==
        std::vector<std::string>{"crossing 1 has sign 2"});

  d = torus_diagram(3);
  d.components = 2;
  CHECK_FALSE(validate_diagram(d).valid);

  d = torus_diagram(3);
  d.arcs.push_back(1);
  CHECK_FALSE(validate_diagram(d).valid);

  d = torus_diagram(3);
  d.crossings[0].under_out = 1;  // arc 2 loses an end, arc 1 gains one
  bad = validate_diagram(d);
  CHECK_FALSE(bad.valid);
  CHECK(bad.violations.size() == 2);

  Diagram fine = torus_diagram(3);
  CHECK_NOTHROW(require_valid(fine));
}

TEST_CASE("component counting across split pieces") {
  // Hopf link plus a far-away unknotted circle.
  Diagram split;
  split.arcs = {0, 1, 2};
  split.crossings = {cr(1, 0, 0, 1), cr(0, 1, 1, 1)};
  split.components = component_count(split);
  CHECK(split.components == 3);
  CHECK(validate_diagram(split).valid);

  CHECK(component_count(torus_diagram(6)) == 2);
  CHECK(component_count(braid_closure(braid_word_parse("B5:"))) == 5);
}

TEST_CASE("diagram json round trip") {
  for (const Diagram& d :
       {torus_diagram(4), rational_diagram({{2, -2}}),
        braid_closure(braid_word_parse("B3: s1 s2^-1")),
        braid_closure(braid_word_parse("B2:"))}) {
    json j = diagram_to_json(d);
    Diagram back = diagram_from_json(j);
    CHECK(back == d);
    CHECK(back.provenance.dump() == d.provenance.dump());
    CHECK(diagram_to_json(back).dump() == j.dump());
  }
}

TEST_CASE("diagram json rejects schema violations") {
  json good = diagram_to_json(torus_diagram(3));

  json j = good;
  j["extra"] = 1;
  CHECK_THROWS_WITH_AS(diagram_from_json(j),
                       "unknown field \"extra\" in diagram", DomainError);

  j = good;
  j["crossings"][0]["twist"] = true;
  CHECK_THROWS_WITH_AS(diagram_from_json(j),
                       "unknown field \"twist\" in crossing", DomainError);

  j = good;
  j["crossings"][0].erase("sign");
  CHECK_THROWS_AS(diagram_from_json(j), DomainError);

  j = good;
  j["arcs"][1] = "one";
  CHECK_THROWS_AS(diagram_from_json(j), DomainError);

  j = good;
  j["arcs"] = json::array({0, 1, 1});
  CHECK_THROWS_AS(diagram_from_json(j), DomainError);

  j = good;
  j["provenance"] = "torus";
  CHECK_THROWS_AS(diagram_from_json(j), DomainError);

  j = good;
  j.erase("provenance");
  CHECK(diagram_from_json(j).provenance.at("kind") == "generic");

  j = good;
  j["provenance"] = json{{"kind", "generic"}, {"note", json{{"depth", 3}}}};
  CHECK(diagram_from_json(j).provenance.at("note").at("depth") == 3);

  CHECK_THROWS_AS(diagram_from_json(json::array()), DomainError);
}

TEST_CASE("hand built closures keep arcs in braid order") {
  BraidWord w;
  w.strands = 3;
  w.letters = {{1, 1}, {2, 1}, {1, 1}, {2, 1}};
  Diagram d = braid_closure(w);
  CHECK(validate_diagram(d).valid);
  CHECK(d.arcs.size() == 4);
  CHECK(d.crossings.size() == 4);

  BraidWord bad;
  bad.strands = 1;
  CHECK_THROWS_AS(braid_closure(bad), DomainError);
  bad.strands = 3;
  bad.letters = {{4, 1}};
  CHECK_THROWS_AS(braid_closure(bad), DomainError);
  bad.letters = {{1, 2}};
  CHECK_THROWS_AS(braid_closure(bad), DomainError);
}
