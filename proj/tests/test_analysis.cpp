#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <array>
#include <set>

#include "foxcol/analysis.hpp"

using namespace foxcol;

namespace {

i64 mod(i64 v, i64 r) { return ((v % r) + r) % r; }

bool closed_triple_exists(i64 r) {
  for (i64 a = 0; a < r; ++a)
    for (i64 b = a + 1; b < r; ++b)
      for (i64 c = b + 1; c < r; ++c)
        if (classify_triple(a, b, c, r).kind == TripleKind::ClosedCyclic)
          return true;
  return false;
}

}  // namespace

TEST_CASE("triple classification anchors") {
  TripleClass t = classify_triple(0, 1, 2, 3);
  CHECK(t.kind == TripleKind::ClosedCyclic);
  CHECK(t.requires_3_divides_r);
  CHECK_FALSE(t.blocked.has_value());

  t = classify_triple(0, 2, 4, 6);
  CHECK(t.kind == TripleKind::ClosedCyclic);

  t = classify_triple(0, 1, 2, 5);
  CHECK(t.kind == TripleKind::BlockedColor);
  REQUIRE(t.blocked.has_value());
  CHECK(*t.blocked == 1);  // the middle color cannot be produced
  CHECK_FALSE(t.requires_3_divides_r);

  t = classify_triple(0, 1, 3, 6);
  CHECK(t.kind == TripleKind::BlockedColor);
  REQUIRE(t.blocked.has_value());
  CHECK(*t.blocked == 0);

  CHECK_THROWS_AS(classify_triple(0, 0, 1, 5), DomainError);
  CHECK_THROWS_AS(classify_triple(0, 3, 6, 3), DomainError);
  CHECK_THROWS_AS(classify_triple(0, 1, 2, 2), DomainError);
  CHECK_THROWS_AS(classify_triple(0, 1, 2, 1), DomainError);
}

TEST_CASE("classification is labeling invariant and blocked colors hold") {
  for (i64 r = 3; r <= 12; ++r) {
    for (i64 a = 0; a < r; ++a)
      for (i64 b = a + 1; b < r; ++b)
        for (i64 c = b + 1; c < r; ++c) {
          TripleClass base = classify_triple(a, b, c, r);
          std::array<i64, 3> v{a, b, c};
          std::sort(v.begin(), v.end());
          do {
            TripleClass perm = classify_triple(v[0], v[1], v[2], r);
            CHECK(perm.kind == base.kind);
            CHECK(perm.blocked == base.blocked);
            CHECK(perm.requires_3_divides_r == base.requires_3_divides_r);
          } while (std::next_permutation(v.begin(), v.end()));

          for (i64 t : {i64{1}, r / 2, r - 1}) {
            TripleClass moved =
                classify_triple(mod(a + t, r), mod(b + t, r), mod(c + t, r), r);
            CHECK(moved.kind == base.kind);
          }

          if (base.kind == TripleKind::ClosedCyclic) {
            CHECK(r % 3 == 0);
          } else {
            REQUIRE(base.blocked.has_value());
            i64 x = *base.blocked;
            std::vector<i64> others;
            for (i64 y : {a, b, c})
              if (y != x) others.push_back(y);
            REQUIRE(others.size() == 2);
            CHECK(mod(2 * others[0] - others[1], r) != x);
            CHECK(mod(2 * others[1] - others[0], r) != x);
          }
        }
  }
}

TEST_CASE("three color feasibility matches the exhaustive scan") {
  for (i64 r = 2; r <= 30; ++r) {
    bool expected = r >= 3 && closed_triple_exists(r);
    CHECK(three_color_feasible(r) == expected);
    CHECK(three_color_feasible(r) == (r % 3 == 0));
  }
  CHECK_THROWS_AS(three_color_feasible(1), DomainError);
}

TEST_CASE("per diagram minimum palette anchors") {
  CHECK(min_colors_of_diagram(torus_diagram(4), 4) == 2);
  CHECK(min_colors_of_diagram(torus_diagram(6), 4) == 2);
  CHECK(min_colors_of_diagram(torus_diagram(2), 6) == 2);
  CHECK(min_colors_of_diagram(torus_diagram(3), 3) == 3);
  CHECK(min_colors_of_diagram(torus_diagram(9), 3) == 3);
  CHECK(min_colors_of_diagram(torus_diagram(3), 9) == 3);
  CHECK(min_colors_of_diagram(torus_diagram(6), 3) == 3);
  CHECK(min_colors_of_diagram(torus_diagram(5), 5) == 5);

  CHECK(min_colors_of_diagram(teneva_reduce(5, 5, 0, 1).first.diagram, 5) == 4);
  CHECK(min_colors_of_diagram(teneva_reduce(5, 10, 0, 2).first.diagram, 10) ==
        4);
  CHECK(min_colors_of_diagram(teneva_reduce(10, 5, 0, 1).first.diagram, 5) ==
        4);

  CHECK_FALSE(min_colors_of_diagram(torus_diagram(3), 5).has_value());
  CHECK_FALSE(min_colors_of_diagram(torus_diagram(2), 5).has_value());

  try {
    min_colors_of_diagram(torus_diagram(3), 9, 26);
    FAIL("expected a budget error");
  } catch (const BudgetExceeded& e) {
    CHECK(e.true_count == 27);
  }
}

TEST_CASE("odd modulus knots need more than two colors") {
  for (int n : {3, 5, 9}) {
    for (i64 r : {3, 5, 7, 9, 15}) {
      if (gcd_nonneg(n, r) == 1) continue;
      auto min = min_colors_of_diagram(torus_diagram(n), r);
      REQUIRE(min.has_value());
      CHECK(*min > 2);
    }
  }
}

TEST_CASE("bound reports follow the prime branches") {
  BoundReport rep = mincol_bounds(6, 4);
  CHECK(rep.branch == BoundBranch::Exact2);
  CHECK(rep.lcpd == 2);
  CHECK(rep.lower == 2);
  CHECK(rep.upper == 2);
  REQUIRE(rep.witnesses.size() == 1);
  CHECK(validate_coloring(rep.witnesses[0]));
  CHECK(palette_of(rep.witnesses[0]).size() == 2);

  rep = mincol_bounds(9, 15);
  CHECK(rep.branch == BoundBranch::Exact3);
  CHECK(rep.lower == 3);
  REQUIRE(rep.witnesses.size() == 1);
  CHECK(palette_of(rep.witnesses[0]) == std::set<i64>{0, 5, 10});

  rep = mincol_bounds(5, 25);
  CHECK(rep.branch == BoundBranch::Exact4);
  CHECK(rep.lcpd == 5);
  CHECK(rep.lower == 4);
  CHECK(rep.upper == 4);
  REQUIRE(rep.witnesses.size() == 1);
  CHECK(validate_coloring(rep.witnesses[0]));
  CHECK(palette_of(rep.witnesses[0]).size() == 4);

  rep = mincol_bounds(7, 7);
  CHECK(rep.branch == BoundBranch::Range);
  CHECK(rep.lower == 4);
  CHECK(rep.upper == 5);
  REQUIRE(rep.witnesses.size() == 1);
  CHECK(validate_coloring(rep.witnesses[0]));
  CHECK(palette_of(rep.witnesses[0]).size() == 5);

  rep = mincol_bounds(11, 11);
  CHECK(rep.branch == BoundBranch::Range);
  CHECK(rep.lower == 4);
  CHECK(rep.upper == 7);
  CHECK(palette_of(rep.witnesses.at(0)).size() == 7);

  rep = mincol_bounds(3, 7);
  CHECK(rep.branch == BoundBranch::NoNontrivial);
  CHECK(rep.lcpd == 1);
  CHECK(rep.lower == 0);
  CHECK(rep.upper == 0);
  CHECK(rep.witnesses.empty());

  CHECK_THROWS_AS(mincol_bounds(1, 5), DomainError);
  CHECK_THROWS_AS(mincol_bounds(5, 1), DomainError);
}

TEST_CASE("bound report serialization carries provenance") {
  json j = bound_report_to_json(mincol_bounds(7, 7));
  CHECK(j.at("branch") == "Range");
  CHECK(j.at("lower").at("value") == 4);
  CHECK(j.at("lower").at("provenance") == "theorem");
  CHECK(j.at("upper").at("value") == 5);
  CHECK(j.at("upper").at("provenance") == "witness");
  REQUIRE(j.at("witnesses").size() == 1);
  CHECK(j.at("witnesses")[0].at("palette_size") == 5);

  json none = bound_report_to_json(mincol_bounds(3, 7));
  CHECK(none.at("branch") == "NoNontrivial");
  CHECK(none.at("upper").at("provenance") == "theorem");
  CHECK(none.at("witnesses").empty());
}

TEST_CASE("injectivity checks on prime coloring counts") {
  CHECK(harary_check(torus_diagram(3), 3));
  CHECK(harary_check(torus_diagram(5), 5));
  CHECK(harary_check(rational_diagram({{3, -2}}), 7));
  CHECK(harary_check(rational_diagram({{8, -9}}), 73));

  // Nine arcs but only three colors per nontrivial 3-coloring.
  CHECK_FALSE(harary_check(torus_diagram(9), 3));

  CHECK_THROWS_AS(harary_check(torus_diagram(3), 4), DomainError);
  CHECK_THROWS_AS(harary_check(torus_diagram(3), 6), DomainError);
  CHECK_THROWS_AS(harary_check(torus_diagram(3), 5), DomainError);
  CHECK_THROWS_AS(harary_check(torus_diagram(4), 3), DomainError);
}

TEST_CASE("bounded conjecture search on the seven crossing closure") {
  ExperimentReport rep = conjecture_experiment(3, 7, 7, 27);
  CHECK(rep.lcpd == 7);
  CHECK(rep.target == 5);
  CHECK(rep.best_palette == 5);
  CHECK(rep.best_steps == 3);
  CHECK(rep.sequences_tried == 6);
  CHECK(rep.moves_used == 27);
  CHECK_FALSE(rep.budget_exhausted);
  CHECK_FALSE(rep.counterexample_found);

  ExperimentReport cut = conjecture_experiment(3, 7, 7, 10);
  CHECK(cut.sequences_tried == 3);
  CHECK(cut.moves_used == 9);
  CHECK(cut.budget_exhausted);
  CHECK(cut.best_palette == 5);
  CHECK(cut.best_steps == 3);
  CHECK_FALSE(cut.counterexample_found);

  ExperimentReport wide = conjecture_experiment(3, 14, 7, 100);
  CHECK(wide.sequences_tried == 6);
  CHECK(wide.moves_used == 54);
  CHECK(wide.best_palette == 5);
  CHECK(wide.best_steps == 3);
  CHECK_FALSE(wide.counterexample_found);

  CHECK_THROWS_AS(conjecture_experiment(2, 5, 5, 100), DomainError);
  CHECK_THROWS_AS(conjecture_experiment(4, 9, 9, 100), DomainError);
  CHECK_THROWS_AS(conjecture_experiment(3, 5, 5, 100), DomainError);

  json j = experiment_to_json(rep);
  CHECK(j.at("best").at("palette") == 5);
  CHECK(j.at("best").at("steps_per_block") == 3);
  CHECK(j.at("best").at("provenance") == "search");
  CHECK(j.at("counterexample_found") == false);
}
