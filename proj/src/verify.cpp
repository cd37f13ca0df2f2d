#include "foxcol/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "foxcol/errors.hpp"
#include "foxcol/modular.hpp"

namespace foxcol {

namespace {

i64 mod(i64 value, i64 r) { return ((value % r) + r) % r; }

struct Check {
  bool ok = true;
  std::string detail;

  void fail(const std::string& message) {
    if (!ok) return;
    ok = false;
    detail = message;
  }
  void summary(const std::string& text) {
    if (ok) detail = text;
  }
};

// Direct r^arcs scan of the crossing relations, independent of the
// algebraic path used by count_colorings.
u64 brute_count(const Diagram& d, i64 r) {
  const std::size_t n = d.arcs.size();
  std::map<int, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[d.arcs[i]] = i;
  std::vector<i64> colors(n, 0);
  u64 count = 0;
  for (;;) {
    bool good = true;
    for (const Crossing& c : d.crossings) {
      i64 sum = 2 * colors[index.at(c.over)] - colors[index.at(c.under_in)] -
                colors[index.at(c.under_out)];
      if (mod(sum, r) != 0) {
        good = false;
        break;
      }
    }
    if (good) ++count;
    std::size_t pos = 0;
    while (pos < n && ++colors[pos] == r) colors[pos++] = 0;
    if (pos == n) break;
  }
  return count;
}

std::vector<std::pair<std::string, Diagram>> test_corpus() {
  std::vector<std::pair<std::string, Diagram>> out;
  for (int n = 2; n <= 8; ++n)
    out.emplace_back("torus(" + std::to_string(n) + ")", torus_diagram(n));
  out.emplace_back("kinked unknot", braid_closure(braid_word_parse("B2: s1^1")));
  out.emplace_back("two loops", braid_closure(braid_word_parse("B2:")));
  out.emplace_back("kink plus loop", braid_closure(braid_word_parse("B3: s1")));
  out.emplace_back("double descent", braid_closure(braid_word_parse("B3: s1 s2")));
  out.emplace_back("mirror trefoil", braid_closure(braid_word_parse("B2: s1^-3")));
  out.emplace_back("single twist", rational_diagram({{1}}));
  out.emplace_back("figure eight", rational_diagram({{2, -2}}));
  out.emplace_back("twist knot", rational_diagram({{3, -2}}));
  out.emplace_back("clasp", rational_diagram({{2}}));
  out.emplace_back("slid torus", teneva_transform(5, 5, 0, 1, 2).first.diagram);
  return out;
}

Check criterion_spectral() {
  Check c;
  int cases = 0;
  for (int n = 2; n <= 12; ++n) {
    Diagram d = torus_diagram(n);
    for (i64 r = 2; r <= 25; ++r) {
      u64 expected = static_cast<u64>(gcd_nonneg(n, r) * r);
      u64 got = count_colorings(d, r);
      ++cases;
      if (got != expected)
        c.fail("n=" + std::to_string(n) + " r=" + std::to_string(r) +
               ": got " + std::to_string(got) + ", want " +
               std::to_string(expected));
    }
  }
  c.summary(std::to_string(cases) + " (n, r) pairs");
  return c;
}

Check criterion_oracle() {
  Check c;
  int cases = 0;
  for (const auto& [name, d] : test_corpus()) {
    if (d.arcs.size() > 8) continue;
    for (i64 r = 2; r <= 5; ++r) {
      u64 algebraic = count_colorings(d, r);
      u64 scanned = brute_count(d, r);
      ++cases;
      if (algebraic != scanned)
        c.fail(name + " r=" + std::to_string(r) + ": algebraic " +
               std::to_string(algebraic) + ", scan " +
               std::to_string(scanned));
    }
  }
  c.summary(std::to_string(cases) + " diagram/modulus pairs");
  return c;
}

Check criterion_trefoil() {
  Check c;
  u64 got = count_colorings(torus_diagram(3), 3);
  if (got != 9) c.fail("got " + std::to_string(got) + ", want 9");
  c.summary("count is 9");
  return c;
}

Check criterion_min_colors() {
  Check c;
  auto expect = [&](const std::optional<int>& got, int want,
                    const std::string& label) {
    if (!got || *got != want)
      c.fail(label + ": got " + (got ? std::to_string(*got) : "none") +
             ", want " + std::to_string(want));
  };
  expect(min_colors_of_diagram(torus_diagram(4), 4), 2, "(4,4)");
  expect(min_colors_of_diagram(torus_diagram(6), 4), 2, "(6,4)");
  expect(min_colors_of_diagram(torus_diagram(2), 6), 2, "(2,6)");
  expect(min_colors_of_diagram(torus_diagram(3), 3), 3, "(3,3)");
  expect(min_colors_of_diagram(torus_diagram(9), 3), 3, "(9,3)");
  expect(min_colors_of_diagram(torus_diagram(3), 9), 3, "(3,9)");
  expect(min_colors_of_diagram(teneva_reduce(5, 5, 0, 1).first.diagram, 5), 4,
         "reduced (5,5)");
  expect(min_colors_of_diagram(teneva_reduce(5, 10, 0, 2).first.diagram, 10),
         4, "reduced (5,10)");
  expect(min_colors_of_diagram(teneva_reduce(10, 5, 0, 1).first.diagram, 5), 4,
         "reduced (10,5)");
  expect(min_colors_of_diagram(torus_diagram(5), 5), 5, "standard (5,5)");
  c.summary("10 branch anchors");
  return c;
}

Check criterion_trace_forms() {
  Check c;
  std::mt19937 rng(7301u);
  int traces = 0;
  for (int n = 3; n <= 15; ++n) {
    for (int pick = 0; pick < 3; ++pick) {
      i64 r = 0, a = 0, b = 0;
      for (;;) {
        r = 2 + static_cast<i64>(rng() % 24);
        i64 g = gcd_nonneg(n, r);
        if (g < 2) continue;
        a = static_cast<i64>(rng() % r);
        i64 mult = 1 + static_cast<i64>(rng() % (g - 1));
        b = mod(a + mult * (r / g), r);
        break;
      }
      ColoredDiagram start = braid_coloring(n, r, a, b);
      auto color = [&](i64 j) { return mod(a + j * (b - a), r); };
      std::string label = "n=" + std::to_string(n) + " r=" +
                          std::to_string(r) + " a=" + std::to_string(a) +
                          " b=" + std::to_string(b);
      for (int steps = 1; steps <= n - 1 && c.ok; ++steps) {
        auto [cd, trace] = teneva_transform(start, steps);
        ++traces;
        if (trace.steps.size() != static_cast<std::size_t>(steps) + 1) {
          c.fail(label + ": trace length mismatch");
          break;
        }
        if (trace.steps[0].introduced != std::vector<i64>{color(0)} ||
            !trace.steps[0].removed.empty())
          c.fail(label + ": kink step mismatch");
        for (int i = 1; i <= steps && c.ok; ++i) {
          if (trace.steps[i].removed != std::vector<i64>{color(n + 1 - i)})
            c.fail(label + " slide " + std::to_string(i) +
                   ": removed color mismatch");
          else if (trace.steps[i].introduced !=
                   std::vector<i64>{color(n + 1 + i)})
            c.fail(label + " slide " + std::to_string(i) +
                   ": introduced color mismatch");
        }
      }
    }
  }
  c.summary(std::to_string(traces) + " traces against closed forms");
  return c;
}

Check criterion_reduction_palettes() {
  Check c;
  for (int p : {5, 7, 11, 13}) {
    int k = (p - 1) / 2;
    auto [cd, trace] = teneva_transform(p, p, 0, 1, k);
    int final_size = trace.steps.back().palette_size_after;
    if (final_size != k + 2)
      c.fail("p=" + std::to_string(p) + ": palette " +
             std::to_string(final_size) + " after " + std::to_string(k) +
             " slides, want " + std::to_string(k + 2));
    if (static_cast<int>(palette_of(cd).size()) != k + 2)
      c.fail("p=" + std::to_string(p) + ": final coloring palette mismatch");
    auto longer = teneva_transform(p, p, 0, 1, k + 1).second;
    if (longer.steps[k + 1].palette_size_after <=
        longer.steps[k].palette_size_after)
      c.fail("p=" + std::to_string(p) + ": slide " + std::to_string(k + 1) +
             " did not grow the palette");
  }
  c.summary("4 primes, palettes k+2 then strictly growing");
  return c;
}

Check criterion_move_invariance() {
  Check c;
  std::mt19937 rng(424243u);

  struct Entry {
    std::string name;
    ColoredDiagram start;
    u64 expected;
    ColoredDiagram current;
  };
  std::vector<Entry> pool;
  for (const auto& [name, d] : test_corpus()) {
    i64 r = 3;
    for (i64 candidate : {3, 4, 5}) {
      if (has_nontrivial(d, candidate)) {
        r = candidate;
        break;
      }
    }
    Coloring chosen{r, {}};
    ColoringStream stream(d, r);
    Coloring c0;
    bool first = true;
    while (stream.next(c0)) {
      std::set<i64> palette;
      for (const auto& [arc, color] : c0.assignment) palette.insert(color);
      if (first) {
        chosen = c0;
        first = false;
      }
      if (palette.size() >= 2) {
        chosen = c0;
        break;
      }
    }
    ColoredDiagram cd{d, chosen};
    pool.push_back({name, cd, count_colorings(d, r), cd});
  }

  int applied = 0;
  std::size_t turn = 0;
  while (applied < 200 && c.ok) {
    Entry& entry = pool[turn % pool.size()];
    ++turn;
    if (entry.current.diagram.arcs.size() > 12) entry.current = entry.start;
    std::vector<MoveSpec> moves = enumerate_moves(entry.current);
    if (moves.empty()) {
      entry.current = entry.start;
      continue;
    }
    MoveResult result =
        apply_move(entry.current, moves[rng() % moves.size()]);
    ++applied;
    if (!validate_diagram(result.cd.diagram).valid)
      c.fail(entry.name + ": move produced an invalid diagram");
    else if (!validate_coloring(result.cd))
      c.fail(entry.name + ": move broke the coloring");
    else if (count_colorings(result.cd.diagram, entry.start.coloring.r) !=
             entry.expected)
      c.fail(entry.name + ": move changed the coloring count");
    entry.current = std::move(result.cd);
  }
  c.summary(std::to_string(applied) + " random moves");
  return c;
}

Check criterion_triples() {
  Check c;
  for (i64 r = 2; r <= 30; ++r) {
    bool closed_exists = false;
    for (i64 a = 0; a < r && !closed_exists; ++a)
      for (i64 b = a + 1; b < r && !closed_exists; ++b)
        for (i64 x = b + 1; x < r && !closed_exists; ++x)
          if (classify_triple(a, b, x, r).kind == TripleKind::ClosedCyclic)
            closed_exists = true;
    if (closed_exists != (r % 3 == 0))
      c.fail("r=" + std::to_string(r) + ": closed triple scan disagrees");
    if (three_color_feasible(r) != closed_exists)
      c.fail("r=" + std::to_string(r) + ": feasibility disagrees with scan");
  }

  std::mt19937 rng(515253u);
  int random_cases = 0;
  while (random_cases < 1000 && c.ok) {
    i64 r = 3 + static_cast<i64>(rng() % 28);
    i64 a = static_cast<i64>(rng() % r);
    i64 b = static_cast<i64>(rng() % r);
    i64 x = static_cast<i64>(rng() % r);
    if (a == b || b == x || a == x) continue;
    ++random_cases;
    TripleClass base = classify_triple(a, b, x, r);
    std::array<i64, 3> v{a, b, x};
    std::sort(v.begin(), v.end());
    do {
      TripleClass perm = classify_triple(v[0], v[1], v[2], r);
      if (perm.kind != base.kind || perm.blocked != base.blocked)
        c.fail("labeling variance at r=" + std::to_string(r));
    } while (std::next_permutation(v.begin(), v.end()) && c.ok);
    for (i64 t : {i64{1}, r - 1, static_cast<i64>(rng() % r)}) {
      TripleClass moved =
          classify_triple(mod(a + t, r), mod(b + t, r), mod(x + t, r), r);
      if (moved.kind != base.kind)
        c.fail("translation variance at r=" + std::to_string(r));
    }
  }
  c.summary("scan r in [2,30] plus 1000 random triples");
  return c;
}

Check criterion_rational() {
  Check c;

  Diagram big = rational_diagram({{8, -9}});
  if (determinant(big) != 73) c.fail("first determinant is not 73");
  if (big.arcs.size() != 17) c.fail("first diagram does not have 17 arcs");

  Coloring wide{73, {}};
  for (int arc = 0; arc <= 10; ++arc) wide.assignment[arc] = arc;
  for (int arc = 11; arc <= 16; ++arc)
    wide.assignment[arc] = 10 + 9 * (arc - 10);
  ColoredDiagram cd{big, wide};
  if (!validate_coloring(cd)) c.fail("17-color coloring does not validate");
  if (palette_of(cd).size() != 17) c.fail("canonical coloring is not 17 colors");
  if (c.ok && !harary_check(big, 73)) c.fail("injectivity check failed");

  if (c.ok) {
    auto runs = find_twist_runs(big);
    if (runs.size() != 2 || runs[0].crossings.size() != 9 ||
        runs[1].crossings.size() != 8) {
      c.fail("unexpected twist region split on the 17 arc diagram");
    } else {
      ColoredDiagram stage = teneva_pass(cd, runs[0], 3, 4).first;
      auto stage_runs = find_twist_runs(stage.diagram);
      const TwistRun* horizontal = nullptr;
      for (const TwistRun& run : stage_runs)
        if (run.crossings == runs[1].crossings) horizontal = &run;
      if (horizontal == nullptr) {
        c.fail("horizontal twist region lost after the first pass");
      } else {
        ColoredDiagram reduced = teneva_pass(stage, *horizontal, 3, 4).first;
        if (!validate_coloring(reduced))
          c.fail("reduced 73-coloring does not validate");
        std::size_t palette = palette_of(reduced).size();
        if (palette != 12)
          c.fail("reduced palette is " + std::to_string(palette) +
                 ", want 12");
      }
    }
  }

  Diagram small = rational_diagram({{8, -6}});
  SnfDecomposition snf = smith_normal_form(coloring_matrix(small));
  i64 product = 1;
  int zeros = 0;
  for (i64 entry : snf.d) {
    if (entry == 0)
      ++zeros;
    else
      product *= entry < 0 ? -entry : entry;
  }
  if (zeros != 1 || product != 49)
    c.fail("normal form oracle does not give determinant 49");
  if (determinant(small) != 49) c.fail("second determinant is not 49");

  if (c.ok) {
    Coloring seven{7, {}};
    for (int arc = 0; arc <= 6; ++arc) seven.assignment[arc] = arc;
    for (int arc = 7; arc <= 13; ++arc) seven.assignment[arc] = (14 - arc) % 7;
    ColoredDiagram start{small, seven};
    if (!validate_coloring(start) || palette_of(start).size() != 7) {
      c.fail("7-color coloring does not validate");
    } else {
      auto runs = find_twist_runs(small);
      ColoredDiagram stage = teneva_pass(start, runs[0], 4, 3).first;
      auto stage_runs = find_twist_runs(stage.diagram);
      const TwistRun* horizontal = nullptr;
      for (const TwistRun& run : stage_runs)
        if (run.crossings == runs[1].crossings) horizontal = &run;
      if (horizontal == nullptr) {
        c.fail("horizontal twist region lost on the 14 arc diagram");
      } else {
        ColoredDiagram reduced = teneva_pass(stage, *horizontal, 3, 3).first;
        std::size_t palette = palette_of(reduced).size();
        if (!validate_coloring(reduced) || palette != 5)
          c.fail("second reduction palette is " + std::to_string(palette) +
                 ", want 5");
      }
    }
  }

  c.summary("determinants 73 and 49, palettes 17 to 12 and 7 to 5");
  return c;
}

Check criterion_experiment() {
  Check c;
  ExperimentReport report = conjecture_experiment(3, 7, 7, 27);
  if (report.sequences_tried != 6)
    c.fail("budget 27 should cover slide counts 1..6");
  if (report.best_palette != 5)
    c.fail("best palette is " + std::to_string(report.best_palette) +
           ", want 5");
  if (report.counterexample_found) c.fail("search claims a counterexample");
  if (report.budget_exhausted) c.fail("budget flagged as exhausted");
  c.summary("best palette 5 over 6 sequences, no counterexample");
  return c;
}

}  // namespace

std::vector<CriterionResult> run_acceptance() {
  struct Entry {
    int id;
    const char* name;
    i64 limit_ms;
    std::function<Check()> fn;
  };
  const std::vector<Entry> entries = {
      {1, "torus coloring counts match the gcd formula", 5000,
       criterion_spectral},
      {2, "algebraic counts equal brute force scans", 60000, criterion_oracle},
      {3, "trefoil has nine 3-colorings", 0, criterion_trefoil},
      {4, "per-diagram minimum palettes hit the branch values", 10000,
       criterion_min_colors},
      {5, "sliding pass traces match the closed forms", 0,
       criterion_trace_forms},
      {6, "k slides reach k+2 colors and slide k+1 grows", 0,
       criterion_reduction_palettes},
      {7, "random legal moves preserve counts and validity", 0,
       criterion_move_invariance},
      {8, "triple classification scan and invariance", 10000,
       criterion_triples},
      {9, "rational diagram determinants and reductions", 30000,
       criterion_rational},
      {10, "bounded conjecture search finds no counterexample", 60000,
       criterion_experiment},
  };

  std::vector<CriterionResult> results;
  for (const Entry& entry : entries) {
    CriterionResult result;
    result.id = entry.id;
    result.name = entry.name;
    result.limit_ms = entry.limit_ms;
    auto start = std::chrono::steady_clock::now();
    Check check;
    try {
      check = entry.fn();
    } catch (const std::exception& e) {
      check.ok = false;
      check.detail = std::string("exception: ") + e.what();
    }
    auto stop = std::chrono::steady_clock::now();
    result.ms = std::chrono::duration_cast<std::chrono::milliseconds>(stop -
                                                                      start)
                    .count();
    result.passed = check.ok;
    result.detail = check.detail;
    if (entry.limit_ms > 0 && result.ms >= entry.limit_ms) {
      result.passed = false;
      result.detail += " [over the " + std::to_string(entry.limit_ms) +
                       " ms limit]";
    }
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace foxcol
