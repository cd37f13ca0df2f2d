#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "foxcol/errors.hpp"
#include "foxcol/modular.hpp"

namespace foxcol {

using json = nlohmann::ordered_json;

struct BraidLetter {
  int index;  // generator subscript, 1-based
  int sign;   // +1 or -1
  bool operator==(const BraidLetter&) const = default;
};

struct BraidWord {
  int strands = 0;
  std::vector<BraidLetter> letters;
  bool operator==(const BraidWord&) const = default;
};

// Grammar: "B<strands>: s<i>[^<exp>] s<j>[^<exp>] ...". A negative exponent
// means that many inverse letters; the exponent defaults to 1.
BraidWord braid_word_parse(const std::string& text);

// One crossing: the over arc passes across; the under strand enters as
// under_in and leaves as under_out. The coloring relation is orientation
// free, so the in/out labels are bookkeeping only and may be swapped.
struct Crossing {
  int over;
  int under_in;
  int under_out;
  int sign;  // +1 or -1
  bool operator==(const Crossing&) const = default;
};

// Combinatorial link diagram: arcs are maximal over-strand segments, each
// terminating at two under-positions (crossingless loops terminate at none).
struct Diagram {
  std::vector<int> arcs;  // sorted, unique
  std::vector<Crossing> crossings;
  int components = 0;
  json provenance;  // {"kind": "braid-closure" | "rational" | "generic", ...}

  bool has_arc(int id) const;
  bool operator==(const Diagram& other) const {
    return arcs == other.arcs && crossings == other.crossings &&
           components == other.components;
  }
};

struct RationalSpec {
  std::vector<int> twist_vector;  // nonempty, entries nonzero
};

// Trace closure of a braid word. Arcs are relabeled 0..k-1 in order of first
// appearance (initial strand arcs first, then under-exits crossing by
// crossing), which makes the closure of s1^n carry arcs 0..n-1 with crossing
// t = {over t+1, in t, out t+2} (mod n).
Diagram braid_closure(const BraidWord& w);

// Closure of s1^n in B_2: the standard T(2, n) diagram. n >= 2.
Diagram torus_diagram(int n);

// Numerator closure of the alternating twist tangle described by the vector:
// entries are twist regions from the outermost inward, odd positions
// horizontal and even positions vertical; the innermost region twists a 0- or
// infinity-tangle. Signs pick the crossing handedness within a region; the
// convention is calibrated so that two-entry vectors [a, -b] (a, b > 0) give
// a diagram with a + b arcs and determinant a*b + 1.
Diagram rational_diagram(const RationalSpec& spec);

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> violations;
  int arc_count = 0;
  int crossing_count = 0;
  int components = 0;
};

// Structural checks: crossings reference known arcs, every arc has exactly
// zero or two under-ends, signs are +-1, the stored component count matches
// the strand connectivity. Violations are reported, never thrown.
ValidationReport validate_diagram(const Diagram& d);

// Number of link components: arcs connected through under-passes.
int component_count(const Diagram& d);

// Throws DomainError when the diagram fails validation. Downstream modules
// call this before trusting a diagram.
void require_valid(const Diagram& d);

// Interchange format:
// {"arcs": [...], "crossings": [{"over","under_in","under_out","sign"}...],
//  "provenance": {...}} with exact field names; unknown fields are rejected.
json diagram_to_json(const Diagram& d);
Diagram diagram_from_json(const json& j);

}  // namespace foxcol
