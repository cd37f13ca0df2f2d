#pragma once

#include <optional>
#include <vector>

#include "foxcol/coloring.hpp"
#include "foxcol/moves.hpp"

namespace foxcol {

// Behaviour of a three-element color set {a, b, c} mod r under the crossing
// relation (over, in) -> 2*over - in.
enum class TripleKind { ClosedCyclic, BlockedColor, NotApplicable };

struct TripleClass {
  TripleKind kind = TripleKind::NotApplicable;
  // Smallest color of the triple that no crossing over either of the other
  // two colors can produce. Set exactly when kind is BlockedColor.
  std::optional<i64> blocked;
  // A closed cyclic triple forces 3 | r. Set exactly when kind is
  // ClosedCyclic.
  bool requires_3_divides_r = false;
};

// Classifies {a, b, c}, distinct mod r: ClosedCyclic when in some labeling
// 2b - a = c, 2a - c = b and 2c - b = a all hold mod r, BlockedColor
// otherwise. Invariant under relabeling; the kind is invariant under
// translating all three colors.
TripleClass classify_triple(i64 a, i64 b, i64 c, i64 r);

// True when some three-element color set mod r is closed under the crossing
// relation, which happens exactly when 3 divides r.
bool three_color_feasible(i64 r);

// Smallest palette size over all nontrivial r-colorings of d, or nullopt
// when only trivial colorings exist. Walks the solution stream, so the
// total coloring count must stay within cap.
std::optional<int> min_colors_of_diagram(const Diagram& d, i64 r,
                                         u64 cap = 10'000'000ull);

enum class BoundBranch { NoNontrivial, Exact2, Exact3, Exact4, Range };

struct BoundReport {
  int n = 0;
  i64 r = 0;
  i64 lcpd = 0;
  BoundBranch branch = BoundBranch::NoNontrivial;
  int lower = 0;
  int upper = 0;
  // Colored diagrams whose palette size attains the reported upper bound.
  std::vector<ColoredDiagram> witnesses;
};

// Minimum palette bounds for the n-crossing one-generator braid closure,
// keyed by the least common prime divisor p of n and r: coprime inputs
// admit no nontrivial coloring; p = 2 or p = 3 pin the minimum at p;
// p = 5 pins it at 4; larger odd p gives the range [4, (p-1)/2 + 2] with
// a reduced witness attaining the top.
BoundReport mincol_bounds(int n, i64 r);

json bound_report_to_json(const BoundReport& report);

// True when every nontrivial p-coloring of d assigns pairwise distinct
// colors to the arcs. p must be prime and divide the determinant; whether
// the diagram is minimal and alternating is the caller's responsibility.
bool harary_check(const Diagram& d, i64 p);

struct ExperimentReport {
  int k = 0;
  int n = 0;
  i64 r = 0;
  i64 lcpd = 0;
  int target = 0;  // k + 2, the palette size the search tries to beat
  int best_palette = -1;
  int best_steps = 0;  // per-block slide count achieving best_palette
  int sequences_tried = 0;
  u64 moves_used = 0;
  bool budget_exhausted = false;
  bool counterexample_found = false;
};

// Bounded search for a coloring of the n-crossing one-generator closure
// mod r with fewer than k + 2 colors: runs one sliding pass per p-block
// with a uniform step count s = 1, 2, ... while the move budget lasts, and
// records the smallest palette seen. Requires k > 2 and the least common
// prime divisor of n and r to equal 2k + 1.
ExperimentReport conjecture_experiment(int k, int n, i64 r, u64 move_budget);

json experiment_to_json(const ExperimentReport& report);

}  // namespace foxcol
