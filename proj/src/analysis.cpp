#include "foxcol/analysis.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <string>

#include "foxcol/errors.hpp"
#include "foxcol/modular.hpp"

namespace foxcol {

namespace {

i64 mod(i64 value, i64 r) { return ((value % r) + r) % r; }

bool reachable(i64 x, i64 u, i64 v, i64 r) {
  return mod(2 * u - v, r) == x || mod(2 * v - u, r) == x;
}

std::set<i64> palette_of_coloring(const Coloring& c) {
  std::set<i64> palette;
  for (const auto& [arc, color] : c.assignment) palette.insert(color);
  return palette;
}

const char* branch_name(BoundBranch branch) {
  switch (branch) {
    case BoundBranch::NoNontrivial: return "NoNontrivial";
    case BoundBranch::Exact2: return "Exact2";
    case BoundBranch::Exact3: return "Exact3";
    case BoundBranch::Exact4: return "Exact4";
    case BoundBranch::Range: return "Range";
  }
  return "NoNontrivial";
}

}  // namespace

TripleClass classify_triple(i64 a, i64 b, i64 c, i64 r) {
  if (r < 2) throw DomainError("modulus must be at least 2");
  std::array<i64, 3> t{mod(a, r), mod(b, r), mod(c, r)};
  std::sort(t.begin(), t.end());
  if (t[0] == t[1] || t[1] == t[2])
    throw DomainError("triple classification needs three distinct colors mod r");

  TripleClass out;
  std::vector<i64> unreachable;
  for (int i = 0; i < 3; ++i)
    if (!reachable(t[i], t[(i + 1) % 3], t[(i + 2) % 3], r))
      unreachable.push_back(t[i]);
  if (unreachable.empty()) {
    // Every element arises as 2u - v from the other two, which forces the
    // arithmetic three-cycle {x, x + r/3, x + 2r/3}.
    out.kind = TripleKind::ClosedCyclic;
    out.requires_3_divides_r = true;
  } else {
    out.kind = TripleKind::BlockedColor;
    out.blocked = unreachable.front();
  }
  return out;
}

bool three_color_feasible(i64 r) {
  if (r < 2) throw DomainError("modulus must be at least 2");
  return r % 3 == 0;
}

std::optional<int> min_colors_of_diagram(const Diagram& d, i64 r, u64 cap) {
  ColoringStream stream(d, r);
  if (stream.total() > cap)
    throw BudgetExceeded("minimum color search needs " +
                             std::to_string(stream.total()) +
                             " colorings; cap is " + std::to_string(cap),
                         stream.total());
  std::optional<int> best;
  Coloring c;
  while (stream.next(c)) {
    std::size_t size = palette_of_coloring(c).size();
    if (size < 2) continue;
    if (!best || static_cast<int>(size) < *best) best = static_cast<int>(size);
    if (*best == 2) break;  // nontrivial colorings cannot do better
  }
  return best;
}

BoundReport mincol_bounds(int n, i64 r) {
  if (n < 2) throw DomainError("closure needs at least 2 crossings");
  if (r < 2) throw DomainError("modulus must be at least 2");

  BoundReport report;
  report.n = n;
  report.r = r;
  report.lcpd = least_common_prime_divisor(n, r);

  const i64 p = report.lcpd;
  if (p == 1) {
    report.branch = BoundBranch::NoNontrivial;
    return report;
  }
  if (p == 2) {
    report.branch = BoundBranch::Exact2;
    report.lower = report.upper = 2;
    report.witnesses.push_back(stacked_coloring(n, r, 0, r / 2));
  } else if (p == 3) {
    report.branch = BoundBranch::Exact3;
    report.lower = report.upper = 3;
    report.witnesses.push_back(stacked_coloring(n, r, 0, r / 3));
  } else if (p == 5) {
    report.branch = BoundBranch::Exact4;
    report.lower = report.upper = 4;
    report.witnesses.push_back(teneva_reduce(n, r, 0, r / 5).first);
  } else {
    const int k = static_cast<int>((p - 1) / 2);
    report.branch = BoundBranch::Range;
    report.lower = 4;
    report.upper = k + 2;
    report.witnesses.push_back(teneva_reduce(n, r, 0, r / p).first);
  }
  return report;
}

json bound_report_to_json(const BoundReport& report) {
  json j;
  j["n"] = report.n;
  j["r"] = report.r;
  j["lcpd"] = report.lcpd;
  j["branch"] = branch_name(report.branch);
  j["lower"] = json{{"value", report.lower}, {"provenance", "theorem"}};
  j["upper"] = json{
      {"value", report.upper},
      {"provenance", report.witnesses.empty() ? "theorem" : "witness"}};
  j["witnesses"] = json::array();
  for (const ColoredDiagram& witness : report.witnesses)
    j["witnesses"].push_back(
        {{"diagram", diagram_to_json(witness.diagram)},
         {"coloring", coloring_to_json(witness.coloring)},
         {"palette_size", palette_of(witness).size()}});
  return j;
}

bool harary_check(const Diagram& d, i64 p) {
  if (p < 2 || !is_prime(p))
    throw DomainError("injectivity check needs a prime modulus");
  if (determinant(d) % p != 0)
    throw DomainError("modulus must divide the diagram determinant");

  const std::size_t arc_count = d.arcs.size();
  ColoringStream stream(d, p);
  Coloring c;
  while (stream.next(c)) {
    std::size_t size = palette_of_coloring(c).size();
    if (size < 2) continue;
    if (size != arc_count) return false;
  }
  return true;
}

ExperimentReport conjecture_experiment(int k, int n, i64 r, u64 move_budget) {
  if (k <= 2)
    throw DomainError(
        "experiment needs k greater than 2; smaller cases are settled "
        "exactly");
  const i64 p = least_common_prime_divisor(n, r);
  if (p != 2 * static_cast<i64>(k) + 1)
    throw DomainError(
        "least common prime divisor of crossing count and modulus must "
        "equal 2k + 1");

  ExperimentReport report;
  report.k = k;
  report.n = n;
  report.r = r;
  report.lcpd = p;
  report.target = k + 2;

  const ColoredDiagram start = stacked_coloring(n, r, 0, r / p);
  const TwistRun cycle = find_twist_runs(start.diagram).front();
  const int pi = static_cast<int>(p);
  const int blocks = n / pi;

  for (int s = 1; s <= pi - 1; ++s) {
    const u64 cost = static_cast<u64>(blocks) * static_cast<u64>(1 + s);
    if (cost > move_budget - report.moves_used) {
      report.budget_exhausted = true;
      break;
    }
    ColoredDiagram cd = start;
    for (int block = 1; block <= blocks; ++block)
      cd = teneva_pass(cd, cycle, block * pi - 2, s).first;
    report.moves_used += cost;
    ++report.sequences_tried;
    const int palette = static_cast<int>(palette_of(cd).size());
    if (report.best_palette < 0 || palette < report.best_palette) {
      report.best_palette = palette;
      report.best_steps = s;
    }
  }
  report.counterexample_found =
      report.best_palette >= 0 && report.best_palette < report.target;
  return report;
}

json experiment_to_json(const ExperimentReport& report) {
  json j;
  j["k"] = report.k;
  j["n"] = report.n;
  j["r"] = report.r;
  j["lcpd"] = report.lcpd;
  j["target"] = report.target;
  j["best"] = json{{"palette", report.best_palette},
                   {"steps_per_block", report.best_steps},
                   {"provenance", "search"}};
  j["sequences_tried"] = report.sequences_tried;
  j["moves_used"] = report.moves_used;
  j["budget_exhausted"] = report.budget_exhausted;
  j["counterexample_found"] = report.counterexample_found;
  return j;
}

}  // namespace foxcol
