#include "foxcol/moves.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>

namespace foxcol {

namespace {

i64 mod(i64 value, i64 r) {
  i64 m = value % r;
  return m < 0 ? m + r : m;
}

std::vector<std::pair<int, UnderEnd>> under_ends_of(const Diagram& d,
                                                    int arc) {
  std::vector<std::pair<int, UnderEnd>> ends;
  for (std::size_t i = 0; i < d.crossings.size(); ++i) {
    if (d.crossings[i].under_in == arc)
      ends.emplace_back(static_cast<int>(i), UnderEnd::In);
    if (d.crossings[i].under_out == arc)
      ends.emplace_back(static_cast<int>(i), UnderEnd::Out);
  }
  return ends;
}

std::vector<int> over_crossings_of(const Diagram& d, int arc) {
  std::vector<int> overs;
  for (std::size_t i = 0; i < d.crossings.size(); ++i)
    if (d.crossings[i].over == arc) overs.push_back(static_cast<int>(i));
  return overs;
}

int& under_slot(Crossing& c, UnderEnd end) {
  return end == UnderEnd::In ? c.under_in : c.under_out;
}

// Mutable working state for one move.
struct Editor {
  ColoredDiagram cd;
  std::vector<i64> introduced;
  std::vector<i64> removed;

  explicit Editor(const ColoredDiagram& input) : cd(input) {}

  i64 color(int arc) const { return cd.coloring.assignment.at(arc); }

  int add_arc(i64 color) {
    int id = cd.diagram.arcs.empty() ? 0 : cd.diagram.arcs.back() + 1;
    cd.diagram.arcs.push_back(id);
    cd.coloring.assignment[id] = color;
    introduced.push_back(color);
    return id;
  }

  void delete_arc(int arc) {
    removed.push_back(color(arc));
    auto& arcs = cd.diagram.arcs;
    arcs.erase(std::find(arcs.begin(), arcs.end(), arc));
    cd.coloring.assignment.erase(arc);
  }

  // Rewrites every reference of `from` to `to` and drops `from`. The two
  // colors agree whenever the input coloring satisfied the deleted
  // crossing's relation.
  void merge_arc(int from, int to) {
    for (Crossing& c : cd.diagram.crossings) {
      if (c.over == from) c.over = to;
      if (c.under_in == from) c.under_in = to;
      if (c.under_out == from) c.under_out = to;
    }
    delete_arc(from);
  }

  MoveResult finish() {
    cd.diagram.components = component_count(cd.diagram);
    if (!validate_diagram(cd.diagram).valid || !validate_coloring(cd))
      throw std::logic_error("move produced an inconsistent diagram");
    return {std::move(cd), std::move(introduced), std::move(removed)};
  }
};

void require_arc(const ColoredDiagram& cd, int arc, const char* what) {
  if (!cd.diagram.has_arc(arc))
    throw PatternError(std::string(what) + " " + std::to_string(arc) +
                       " is not an arc of the diagram");
}

void require_crossing(const ColoredDiagram& cd, int index, const char* what) {
  if (index < 0 ||
      index >= static_cast<int>(cd.diagram.crossings.size()))
    throw PatternError(std::string(what) + " " + std::to_string(index) +
                       " is not a crossing index");
}

MoveResult do_r1_add(const ColoredDiagram& input, const R1Add& site) {
  require_arc(input, site.arc, "kink arc");
  Editor ed(input);
  auto ends = under_ends_of(ed.cd.diagram, site.arc);
  if (ends.empty()) {
    if (site.at_crossing != -1)
      throw PatternError("crossingless loop kinks use at_crossing -1");
    ed.cd.diagram.crossings.push_back({site.arc, site.arc, site.arc, 1});
    return ed.finish();
  }
  auto hit = std::find(ends.begin(), ends.end(),
                       std::make_pair(site.at_crossing, site.end));
  if (hit == ends.end())
    throw PatternError("arc " + std::to_string(site.arc) +
                       " has no under-end at that crossing slot");
  int fresh = ed.add_arc(ed.color(site.arc));
  under_slot(ed.cd.diagram.crossings[site.at_crossing], site.end) = fresh;
  int over = site.over == KinkOver::Original ? site.arc : fresh;
  if (site.end == UnderEnd::Out)
    ed.cd.diagram.crossings.push_back({over, fresh, site.arc, 1});
  else
    ed.cd.diagram.crossings.push_back({over, site.arc, fresh, 1});
  return ed.finish();
}

MoveResult do_r1_remove(const ColoredDiagram& input, const R1Remove& site) {
  require_crossing(input, site.at_crossing, "kink crossing");
  Editor ed(input);
  Crossing c = ed.cd.diagram.crossings[site.at_crossing];
  if (c.over != c.under_in && c.over != c.under_out)
    throw PatternError("crossing " + std::to_string(site.at_crossing) +
                       " is not a kink");
  int keep = c.over;
  int other = c.under_in == keep ? c.under_out : c.under_in;
  ed.cd.diagram.crossings.erase(ed.cd.diagram.crossings.begin() +
                                site.at_crossing);
  if (other != keep) ed.merge_arc(other, keep);
  return ed.finish();
}

MoveResult do_r2_add(const ColoredDiagram& input, const R2Add& site) {
  require_arc(input, site.split_arc, "split arc");
  require_arc(input, site.over_arc, "over arc");
  Editor ed(input);
  i64 r = ed.cd.coloring.r;
  i64 middle_color =
      mod(2 * ed.color(site.over_arc) - ed.color(site.split_arc), r);
  auto ends = under_ends_of(ed.cd.diagram, site.split_arc);
  if (ends.empty()) {
    if (site.transfer_crossing != -1)
      throw PatternError("crossingless loop pushes use transfer_crossing -1");
    int middle = ed.add_arc(middle_color);
    ed.cd.diagram.crossings.push_back(
        {site.over_arc, site.split_arc, middle, 1});
    ed.cd.diagram.crossings.push_back(
        {site.over_arc, middle, site.split_arc, -1});
    return ed.finish();
  }
  auto hit = std::find(ends.begin(), ends.end(),
                       std::make_pair(site.transfer_crossing,
                                      site.transfer_end));
  if (hit == ends.end())
    throw PatternError("split arc " + std::to_string(site.split_arc) +
                       " has no under-end at that crossing slot");
  int middle = ed.add_arc(middle_color);
  int tail = ed.add_arc(ed.color(site.split_arc));
  under_slot(ed.cd.diagram.crossings[site.transfer_crossing],
             site.transfer_end) = tail;
  ed.cd.diagram.crossings.push_back({site.over_arc, site.split_arc, middle, 1});
  ed.cd.diagram.crossings.push_back({site.over_arc, middle, tail, -1});
  return ed.finish();
}

struct R2RemovePattern {
  int low, high;    // crossing indices, low < high
  int middle;       // arc deleted with the crossings
  int survivor;     // under arc at `low` that absorbs the one at `high`
  int absorbed;     // under arc at `high` (may equal survivor)
};

// An arc qualifies as the middle when its only under-ends are one at each
// crossing and it never passes over anything.
std::optional<R2RemovePattern> match_r2_remove(const ColoredDiagram& cd,
                                               int c1, int c2,
                                               std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return std::nullopt;
  };
  int m = static_cast<int>(cd.diagram.crossings.size());
  if (c1 < 0 || c2 < 0 || c1 >= m || c2 >= m || c1 == c2)
    return fail("need two distinct crossing indices");
  R2RemovePattern p;
  p.low = std::min(c1, c2);
  p.high = std::max(c1, c2);
  const Crossing& lo = cd.diagram.crossings[p.low];
  const Crossing& hi = cd.diagram.crossings[p.high];
  if (lo.over != hi.over)
    return fail("the two crossings pass under different arcs");
  std::set<int> candidates = {lo.under_in, lo.under_out};
  p.middle = -1;
  for (int arc : candidates) {
    if (arc != hi.under_in && arc != hi.under_out) continue;
    auto ends = under_ends_of(cd.diagram, arc);
    if (ends.size() != 2) continue;
    int at_low = 0, at_high = 0;
    for (const auto& [index, end] : ends) {
      if (index == p.low) ++at_low;
      if (index == p.high) ++at_high;
    }
    if (at_low != 1 || at_high != 1) continue;
    if (!over_crossings_of(cd.diagram, arc).empty()) continue;
    if (p.middle == -1 || arc < p.middle) p.middle = arc;
  }
  if (p.middle == -1)
    return fail("no middle arc runs between the two crossings");
  p.survivor = lo.under_in == p.middle ? lo.under_out : lo.under_in;
  p.absorbed = hi.under_in == p.middle ? hi.under_out : hi.under_in;
  return p;
}

MoveResult do_r2_remove(const ColoredDiagram& input, const R2Remove& site) {
  std::string why;
  auto pattern = match_r2_remove(input, site.c1, site.c2, &why);
  if (!pattern) throw PatternError(why);
  Editor ed(input);
  auto& crossings = ed.cd.diagram.crossings;
  crossings.erase(crossings.begin() + pattern->high);
  crossings.erase(crossings.begin() + pattern->low);
  ed.delete_arc(pattern->middle);
  if (pattern->absorbed != pattern->survivor)
    ed.merge_arc(pattern->absorbed, pattern->survivor);
  return ed.finish();
}

struct R3Pattern {
  int d1, d2;             // crossings the slider passes over
  int u_mid;              // triangle arc deleted by the slide
  int u_far, w, o1;       // surviving frame arcs
};

std::optional<R3Pattern> match_r3(const ColoredDiagram& cd, int slider,
                                  int target, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return std::nullopt;
  };
  if (!cd.diagram.has_arc(slider)) return fail("slider is not an arc");
  int m = static_cast<int>(cd.diagram.crossings.size());
  if (target < 0 || target >= m) return fail("target is not a crossing index");
  const Crossing& c = cd.diagram.crossings[target];
  if (c.over == slider)
    return fail("slider passes over the target crossing itself");
  std::vector<int> overs = over_crossings_of(cd.diagram, slider);
  if (overs.size() != 2)
    return fail("slider must pass over exactly two crossings");
  if (overs[0] == target || overs[1] == target)
    return fail("slider passes over the target crossing itself");

  int o2 = c.over;
  for (int attempt = 0; attempt < 2; ++attempt) {
    int d1 = overs[attempt];
    int d2 = overs[1 - attempt];
    const Crossing& first = cd.diagram.crossings[d1];
    const Crossing& second = cd.diagram.crossings[d2];
    if (first.under_in != o2 && first.under_out != o2) continue;

    int u_mid = -1;
    for (int arc : {c.under_in, c.under_out}) {
      if (arc != second.under_in && arc != second.under_out) continue;
      auto ends = under_ends_of(cd.diagram, arc);
      if (ends.size() != 2) continue;
      int at_target = 0, at_d2 = 0;
      for (const auto& [index, end] : ends) {
        if (index == target) ++at_target;
        if (index == d2) ++at_d2;
      }
      if (at_target != 1 || at_d2 != 1) continue;
      if (!over_crossings_of(cd.diagram, arc).empty()) continue;
      if (u_mid == -1 || arc < u_mid) u_mid = arc;
    }
    if (u_mid == -1) continue;

    R3Pattern p;
    p.d1 = d1;
    p.d2 = d2;
    p.u_mid = u_mid;
    p.u_far = c.under_in == u_mid ? c.under_out : c.under_in;
    p.w = second.under_in == u_mid ? second.under_out : second.under_in;
    p.o1 = first.under_in == o2 ? first.under_out : first.under_in;
    return p;
  }
  return fail("no sliding triangle at this site");
}

MoveResult do_r3_slide(const ColoredDiagram& input, const R3Slide& site) {
  std::string why;
  auto pattern = match_r3(input, site.slider, site.target, &why);
  if (!pattern) throw PatternError(why);
  Editor ed(input);
  i64 r = ed.cd.coloring.r;
  i64 fresh_color =
      mod(2 * ed.color(site.slider) - ed.color(pattern->u_far), r);
  int fresh = ed.add_arc(fresh_color);
  Crossing& target = ed.cd.diagram.crossings[site.target];
  Crossing& far_side = ed.cd.diagram.crossings[pattern->d2];
  target = {pattern->o1, fresh, pattern->w, target.sign};
  far_side = {site.slider, pattern->u_far, fresh, far_side.sign};
  ed.delete_arc(pattern->u_mid);
  return ed.finish();
}

}  // namespace

MoveResult apply_move(const ColoredDiagram& cd, const MoveSpec& move) {
  if (!validate_coloring(cd))
    throw DomainError("move needs a coloring satisfying every crossing");
  return std::visit(
      [&](const auto& site) -> MoveResult {
        using T = std::decay_t<decltype(site)>;
        if constexpr (std::is_same_v<T, R1Add>) return do_r1_add(cd, site);
        else if constexpr (std::is_same_v<T, R1Remove>)
          return do_r1_remove(cd, site);
        else if constexpr (std::is_same_v<T, R2Add>) return do_r2_add(cd, site);
        else if constexpr (std::is_same_v<T, R2Remove>)
          return do_r2_remove(cd, site);
        else
          return do_r3_slide(cd, site);
      },
      move);
}

std::vector<MoveSpec> enumerate_moves(const ColoredDiagram& cd) {
  std::vector<MoveSpec> moves;
  const Diagram& d = cd.diagram;

  for (int arc : d.arcs) {
    auto ends = under_ends_of(d, arc);
    if (ends.empty()) {
      moves.push_back(R1Add{arc, -1, UnderEnd::In, KinkOver::Original});
      continue;
    }
    for (const auto& [index, end] : ends) {
      moves.push_back(R1Add{arc, index, end, KinkOver::Original});
      moves.push_back(R1Add{arc, index, end, KinkOver::New});
    }
  }

  for (std::size_t i = 0; i < d.crossings.size(); ++i) {
    const Crossing& c = d.crossings[i];
    if (c.over == c.under_in || c.over == c.under_out)
      moves.push_back(R1Remove{static_cast<int>(i)});
  }

  for (int split : d.arcs) {
    auto ends = under_ends_of(d, split);
    for (int over : d.arcs) {
      if (ends.empty()) {
        moves.push_back(R2Add{split, over, -1, UnderEnd::In});
        continue;
      }
      for (const auto& [index, end] : ends)
        moves.push_back(R2Add{split, over, index, end});
    }
  }

  int m = static_cast<int>(d.crossings.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (match_r2_remove(cd, i, j, nullptr))
        moves.push_back(R2Remove{i, j});

  for (int slider : d.arcs)
    for (int target = 0; target < m; ++target)
      if (match_r3(cd, slider, target, nullptr))
        moves.push_back(R3Slide{slider, target});

  return moves;
}

json move_to_json(const MoveSpec& move) {
  auto end_name = [](UnderEnd end) {
    return end == UnderEnd::In ? "under_in" : "under_out";
  };
  return std::visit(
      [&](const auto& site) -> json {
        using T = std::decay_t<decltype(site)>;
        if constexpr (std::is_same_v<T, R1Add>) {
          return json{{"kind", "R1_add"},
                      {"arc", site.arc},
                      {"at_crossing", site.at_crossing},
                      {"end", end_name(site.end)},
                      {"over",
                       site.over == KinkOver::Original ? "original" : "new"}};
        } else if constexpr (std::is_same_v<T, R1Remove>) {
          return json{{"kind", "R1_remove"}, {"at_crossing", site.at_crossing}};
        } else if constexpr (std::is_same_v<T, R2Add>) {
          return json{{"kind", "R2_add"},
                      {"split_arc", site.split_arc},
                      {"over_arc", site.over_arc},
                      {"transfer_crossing", site.transfer_crossing},
                      {"transfer_end", end_name(site.transfer_end)}};
        } else if constexpr (std::is_same_v<T, R2Remove>) {
          return json{{"kind", "R2_remove"}, {"c1", site.c1}, {"c2", site.c2}};
        } else {
          return json{{"kind", "R3_slide"},
                      {"slider", site.slider},
                      {"target", site.target}};
        }
      },
      move);
}

json trace_to_json(const PaletteTrace& trace) {
  json steps = json::array();
  for (const TraceStep& step : trace.steps) {
    steps.push_back(json{{"move", move_to_json(step.move)},
                         {"introduced", step.introduced},
                         {"removed", step.removed},
                         {"palette_size_after", step.palette_size_after}});
  }
  return json{{"steps", steps}};
}

std::vector<TwistRun> find_twist_runs(const Diagram& d) {
  require_valid(d);
  int m = static_cast<int>(d.crossings.size());
  auto chained = [&](int x, int y) {
    return d.crossings[y].over == d.crossings[x].under_out &&
           d.crossings[y].under_in == d.crossings[x].over;
  };

  std::vector<int> succ(m, -1);
  std::vector<bool> has_pred(m, false);
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      if (y == x || has_pred[y] || !chained(x, y)) continue;
      succ[x] = y;
      has_pred[y] = true;
      break;
    }
  }

  std::vector<TwistRun> runs;
  std::vector<bool> visited(m, false);
  for (int start = 0; start < m; ++start) {
    if (has_pred[start] || visited[start]) continue;
    TwistRun run;
    for (int x = start; x != -1 && !visited[x]; x = succ[x]) {
      visited[x] = true;
      run.crossings.push_back(x);
    }
    runs.push_back(std::move(run));
  }
  for (int start = 0; start < m; ++start) {
    if (visited[start]) continue;
    TwistRun run;
    run.cyclic = true;
    for (int x = start; !visited[x]; x = succ[x]) {
      visited[x] = true;
      run.crossings.push_back(x);
    }
    runs.push_back(std::move(run));
  }
  std::sort(runs.begin(), runs.end(),
            [](const TwistRun& a, const TwistRun& b) {
              return a.crossings.front() < b.crossings.front();
            });
  return runs;
}

namespace {

std::pair<ColoredDiagram, PaletteTrace> apply_sequence(
    const ColoredDiagram& cd, const std::vector<MoveSpec>& moves) {
  ColoredDiagram current = cd;
  PaletteTrace trace;
  for (const MoveSpec& move : moves) {
    MoveResult result = apply_move(current, move);
    current = std::move(result.cd);
    trace.steps.push_back({move, std::move(result.introduced),
                           std::move(result.removed),
                           static_cast<int>(palette_of(current).size())});
  }
  return {std::move(current), std::move(trace)};
}

}  // namespace

std::pair<ColoredDiagram, PaletteTrace> teneva_pass(const ColoredDiagram& cd,
                                                    const TwistRun& run,
                                                    int pos, int steps) {
  int len = static_cast<int>(run.crossings.size());
  if (len == 0) throw DomainError("twist run is empty");
  int m = static_cast<int>(cd.diagram.crossings.size());
  for (int index : run.crossings)
    if (index < 0 || index >= m)
      throw DomainError("twist run names a missing crossing");
  if (pos < 0 || pos >= len) throw DomainError("pass position outside run");
  if (run.cyclic) {
    if (steps < 1 || steps > len - 1)
      throw DomainError("cyclic pass needs 1 <= steps <= run length - 1");
  } else {
    if (pos > len - 2)
      throw DomainError("open pass position needs a successor in the run");
    if (steps < 1 || steps > pos + 1)
      throw DomainError("open pass needs 1 <= steps <= pos + 1");
  }

  auto at = [&](int position) {
    return run.crossings[((position % len) + len) % len];
  };
  for (int j = 0; j < steps; ++j) {
    const Crossing& cur = cd.diagram.crossings[at(pos - j)];
    const Crossing& next = cd.diagram.crossings[at(pos - j + 1)];
    if (next.over != cur.under_out || next.under_in != cur.over)
      throw DomainError("pass window is not chained in the diagram");
  }

  int slider = cd.diagram.crossings[at(pos)].under_out;
  std::vector<MoveSpec> moves;
  moves.push_back(R1Add{slider, at(pos), UnderEnd::Out, KinkOver::Original});
  for (int i = 1; i <= steps; ++i)
    moves.push_back(R3Slide{slider, at(pos + 1 - i)});
  return apply_sequence(cd, moves);
}

std::vector<MoveSpec> teneva_sequence(int n, int steps) {
  if (n < 3) throw DomainError("pass sequence needs at least 3 crossings");
  if (steps < 1 || steps > n - 1)
    throw DomainError("pass sequence needs 1 <= steps <= n - 1");
  std::vector<MoveSpec> moves;
  moves.push_back(R1Add{0, n - 2, UnderEnd::Out, KinkOver::Original});
  for (int i = 1; i <= steps; ++i) moves.push_back(R3Slide{0, n - 1 - i});
  return moves;
}

std::pair<ColoredDiagram, PaletteTrace> teneva_transform(
    const ColoredDiagram& cd, int steps) {
  int n = static_cast<int>(cd.diagram.arcs.size());
  Diagram expected = n >= 2 ? torus_diagram(n) : Diagram{};
  if (n < 2 || cd.diagram.arcs != expected.arcs ||
      cd.diagram.crossings != expected.crossings)
    throw DomainError(
        "transform needs the standard one-generator braid closure");
  return apply_sequence(cd, teneva_sequence(n, steps));
}

std::pair<ColoredDiagram, PaletteTrace> teneva_transform(int n, i64 r, i64 a,
                                                         i64 b, int steps) {
  return teneva_transform(braid_coloring(n, r, a, b), steps);
}

std::pair<ColoredDiagram, PaletteTrace> teneva_reduce(int n, i64 r, i64 a,
                                                      i64 b) {
  i64 p = least_common_prime_divisor(static_cast<i64>(n), r);
  if (p == 1)
    throw DomainError("coprime crossing count and modulus admit only "
                      "trivial colorings");
  if (p == 2 || p == 3)
    throw DomainError("reduction needs an odd common prime divisor of at "
                      "least 5; smaller cases are already minimal");
  if (a == b) throw DomainError("reduction needs two distinct colors");
  int k = static_cast<int>((p - 1) / 2);

  ColoredDiagram current = stacked_coloring(n, r, a, b);
  TwistRun cycle;
  cycle.cyclic = true;
  cycle.crossings.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) cycle.crossings[static_cast<std::size_t>(i)] = i;

  PaletteTrace trace;
  int blocks = n / static_cast<int>(p);
  for (int t = 0; t < blocks; ++t) {
    int pos = (t + 1) * static_cast<int>(p) - 2;
    auto [next, block_trace] = teneva_pass(current, cycle, pos, k);
    current = std::move(next);
    for (TraceStep& step : block_trace.steps)
      trace.steps.push_back(std::move(step));
  }
  return {std::move(current), std::move(trace)};
}

}  // namespace foxcol
