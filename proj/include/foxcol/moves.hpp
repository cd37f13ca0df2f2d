#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "foxcol/coloring.hpp"

namespace foxcol {

enum class UnderEnd { In, Out };
enum class KinkOver { Original, New };

// Crossing indices in a site always refer to the crossing list of the
// diagram the move is applied to; removals compact the list.

// Adds a kink on the named arc. The new arc takes over the arc's under-end
// at (at_crossing, end); `over` picks which of the two loop strands passes
// on top. A crossingless loop kinks onto itself: at_crossing must be -1 and
// no new arc appears.
struct R1Add {
  int arc;
  int at_crossing;
  UnderEnd end;
  KinkOver over;
};

// Deletes the kink crossing at this index, rejoining the two strand pieces.
struct R1Remove {
  int at_crossing;
};

// Pushes split_arc under over_arc, cutting it into head/tail around a new
// middle arc. The tail inherits the under-end of split_arc at
// (transfer_crossing, transfer_end); over-incidences stay with the head.
// A crossingless split_arc uses transfer_crossing = -1 and gains no tail.
struct R2Add {
  int split_arc;
  int over_arc;
  int transfer_crossing;
  UnderEnd transfer_end;
};

// Deletes two crossings sharing an over arc, together with the middle arc
// that runs between them and under nothing else.
struct R2Remove {
  int c1;
  int c2;
};

// Slides the slider arc across the target crossing. The slider must pass
// over exactly two crossings; those and the target bound the triangle.
struct R3Slide {
  int slider;
  int target;
};

using MoveSpec = std::variant<R1Add, R1Remove, R2Add, R2Remove, R3Slide>;

json move_to_json(const MoveSpec& move);

struct MoveResult {
  ColoredDiagram cd;
  std::vector<i64> introduced;  // colors of arcs the move created
  std::vector<i64> removed;     // colors of arcs the move deleted
};

// Applies one local move at the named site; the input is untouched. The
// coloring transports along: every new arc color is forced by the crossing
// relations and every merged pair already agrees, so validity and the
// coloring count are preserved. Site mismatches throw PatternError.
MoveResult apply_move(const ColoredDiagram& cd, const MoveSpec& move);

// Every site apply_move would accept, in a deterministic order. Intended
// for randomized invariance tests.
std::vector<MoveSpec> enumerate_moves(const ColoredDiagram& cd);

struct TraceStep {
  MoveSpec move;
  std::vector<i64> introduced;
  std::vector<i64> removed;
  int palette_size_after;  // distinct colors on the whole diagram
};

struct PaletteTrace {
  std::vector<TraceStep> steps;
};

json trace_to_json(const PaletteTrace& trace);

// Maximal chains of crossings where each one's over arc is the previous
// one's under-exit (a twist region traversed in order). Every crossing
// belongs to exactly one run; a run closing on itself is cyclic.
struct TwistRun {
  std::vector<int> crossings;
  bool cyclic = false;
};

std::vector<TwistRun> find_twist_runs(const Diagram& d);

// Kinks the under-exit of the run's crossing at `pos` and slides it across
// `steps` crossings of the run, moving toward the run's start (wrapping on
// cyclic runs). Returns the final diagram and the per-move palette trace.
std::pair<ColoredDiagram, PaletteTrace> teneva_pass(const ColoredDiagram& cd,
                                                    const TwistRun& run,
                                                    int pos, int steps);

// The closed-form site list for a pass over the standard closure of s1^n:
// one kink plus `steps` slides. n >= 3, 1 <= steps <= n-1.
std::vector<MoveSpec> teneva_sequence(int n, int steps);

// Applies teneva_sequence to a colored standard closure of s1^n.
std::pair<ColoredDiagram, PaletteTrace> teneva_transform(
    const ColoredDiagram& cd, int steps);
std::pair<ColoredDiagram, PaletteTrace> teneva_transform(int n, i64 r, i64 a,
                                                         i64 b, int steps);

// Color-reducing transformation for <n, r> = 2k+1 with k > 1: builds the
// stacked coloring through a and b and runs one pass of k slides in each of
// the n/p twist blocks, ending on a diagram whose coloring uses exactly
// k + 2 colors.
std::pair<ColoredDiagram, PaletteTrace> teneva_reduce(int n, i64 r, i64 a,
                                                      i64 b);

}  // namespace foxcol
