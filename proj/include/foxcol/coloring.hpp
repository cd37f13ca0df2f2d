#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "foxcol/diagram.hpp"
#include "foxcol/modular.hpp"

namespace foxcol {

struct Coloring {
  i64 r = 0;
  std::map<int, i64> assignment;  // arc id -> color in [0, r)
  bool operator==(const Coloring&) const = default;
};

struct ColoredDiagram {
  Diagram diagram;
  Coloring coloring;
};

// One row per crossing, one column per arc in sorted id order:
// 2*c(over) - c(under_in) - c(under_out) = 0. Coincident slots accumulate,
// so a kink {over A, in A, out A} contributes a zero row.
// Crossingless diagrams carry no relations and are rejected.
IntegerMatrix coloring_matrix(const Diagram& d);

// Exact count of r-colorings via the Smith normal form of the relation
// matrix; a crossingless diagram has r^arcs colorings. Never a naive scan.
u64 count_colorings(const Diagram& d, i64 r);

// True when some coloring is nonconstant, i.e. count exceeds r.
bool has_nontrivial(const Diagram& d, i64 r);

// Streams every r-coloring in a deterministic order without materializing
// the full list. The kernel is parameterized through the SNF transform.
class ColoringStream {
 public:
  ColoringStream(const Diagram& d, i64 r);
  u64 total() const { return stream_.total(); }
  bool next(Coloring& out);

 private:
  std::vector<int> arcs_;
  i64 r_;
  SolutionStream stream_;
  std::vector<i64> buffer_;
};

// Throws BudgetExceeded (carrying the true count) when more than cap
// colorings exist.
ColoringStream enumerate_colorings(const Diagram& d, i64 r, u64 cap);

// True when every crossing relation holds. Shape problems (missing arcs,
// out-of-range colors, invalid diagram) throw DomainError instead.
bool validate_coloring(const ColoredDiagram& cd);

std::set<i64> palette_of(const ColoredDiagram& cd);

// Standard coloring of the closure of s1^n: arc j gets a + j*(b - a).
// Requires n*(b - a) = 0 (mod r); the error message names the congruence.
ColoredDiagram braid_coloring(int n, i64 r, i64 a, i64 b);

// {0, r/p, 2r/p, ...} for a prime p dividing r: the colors fixed by the
// mod-p reduction. Closed under x, y -> 2x - y.
std::set<i64> subpalette(i64 r, i64 p);

// Standard coloring through the least common prime divisor p of n and r,
// with a and b drawn from subpalette(r, p); the arc colors repeat with
// period p around the twist cycle.
ColoredDiagram stacked_coloring(int n, i64 r, i64 a, i64 b);

// |first minor| of the relation matrix of a knot diagram (one component,
// at least one crossing). Every choice of dropped row/column agrees.
u64 determinant(const Diagram& d);
u64 determinant_minor(const Diagram& d, int drop_row, int drop_col);

// [(r, count) for r in 2..r_max].
std::vector<std::pair<i64, u64>> color_spectrum(const Diagram& d, i64 r_max);

// {"r": ..., "assignment": {"<arc id>": color, ...}}
json coloring_to_json(const Coloring& c);
Coloring coloring_from_json(const json& j);

}  // namespace foxcol
