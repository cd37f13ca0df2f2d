#include "foxcol/coloring.hpp"

#include <algorithm>
#include <sstream>
#include <string>

namespace foxcol {

namespace {

i64 mod(i64 value, i64 r) {
  i64 m = value % r;
  return m < 0 ? m + r : m;
}

int column_of(const std::vector<int>& arcs, int id) {
  auto it = std::lower_bound(arcs.begin(), arcs.end(), id);
  return static_cast<int>(it - arcs.begin());
}

u64 power_checked(i64 base, std::size_t exponent) {
  u64 result = 1;
  for (std::size_t i = 0; i < exponent; ++i)
    result = checked_mul_u64(result, static_cast<u64>(base));
  return result;
}

void require_modulus(i64 r) {
  if (r < 2) throw DomainError("modulus must be at least 2");
}

}  // namespace

IntegerMatrix coloring_matrix(const Diagram& d) {
  require_valid(d);
  if (d.crossings.empty())
    throw DomainError("crossingless diagram has no coloring relations");
  IntegerMatrix m(static_cast<int>(d.crossings.size()),
                  static_cast<int>(d.arcs.size()));
  for (std::size_t k = 0; k < d.crossings.size(); ++k) {
    const Crossing& c = d.crossings[k];
    int row = static_cast<int>(k);
    m.at(row, column_of(d.arcs, c.over)) += 2;
    m.at(row, column_of(d.arcs, c.under_in)) -= 1;
    m.at(row, column_of(d.arcs, c.under_out)) -= 1;
  }
  return m;
}

u64 count_colorings(const Diagram& d, i64 r) {
  require_modulus(r);
  require_valid(d);
  if (d.crossings.empty()) return power_checked(r, d.arcs.size());
  return count_solutions_mod(coloring_matrix(d), r);
}

bool has_nontrivial(const Diagram& d, i64 r) {
  return count_colorings(d, r) > static_cast<u64>(r);
}

namespace {

IntegerMatrix relation_or_empty(const Diagram& d) {
  require_valid(d);
  if (d.crossings.empty())
    return IntegerMatrix(0, static_cast<int>(d.arcs.size()));
  return coloring_matrix(d);
}

i64 validated_modulus(i64 r) {
  require_modulus(r);
  return r;
}

}  // namespace

ColoringStream::ColoringStream(const Diagram& d, i64 r)
    : arcs_(d.arcs), r_(validated_modulus(r)), stream_(relation_or_empty(d), r) {}

bool ColoringStream::next(Coloring& out) {
  if (!stream_.next(buffer_)) return false;
  out.r = r_;
  out.assignment.clear();
  for (std::size_t i = 0; i < arcs_.size(); ++i)
    out.assignment[arcs_[i]] = buffer_[i];
  return true;
}

ColoringStream enumerate_colorings(const Diagram& d, i64 r, u64 cap) {
  ColoringStream stream(d, r);
  if (stream.total() > cap) {
    std::ostringstream msg;
    msg << "enumerating " << stream.total() << " colorings exceeds cap "
        << cap;
    throw BudgetExceeded(msg.str(), stream.total());
  }
  return stream;
}

bool validate_coloring(const ColoredDiagram& cd) {
  require_valid(cd.diagram);
  require_modulus(cd.coloring.r);
  i64 r = cd.coloring.r;
  for (const auto& [id, color] : cd.coloring.assignment) {
    if (!cd.diagram.has_arc(id))
      throw DomainError("coloring assigns unknown arc id " +
                        std::to_string(id));
    if (color < 0 || color >= r)
      throw DomainError("color " + std::to_string(color) + " for arc " +
                        std::to_string(id) + " is outside [0, " +
                        std::to_string(r - 1) + "]");
  }
  for (int id : cd.diagram.arcs) {
    if (!cd.coloring.assignment.count(id))
      throw DomainError("coloring misses arc " + std::to_string(id));
  }
  for (const Crossing& c : cd.diagram.crossings) {
    i64 lhs = 2 * cd.coloring.assignment.at(c.over);
    i64 rhs = cd.coloring.assignment.at(c.under_in) +
              cd.coloring.assignment.at(c.under_out);
    if (mod(lhs - rhs, r) != 0) return false;
  }
  return true;
}

std::set<i64> palette_of(const ColoredDiagram& cd) {
  std::set<i64> colors;
  for (const auto& [id, color] : cd.coloring.assignment) colors.insert(color);
  return colors;
}

ColoredDiagram braid_coloring(int n, i64 r, i64 a, i64 b) {
  require_modulus(r);
  if (a < 0 || a >= r || b < 0 || b >= r)
    throw DomainError("endpoint colors must lie in [0, r)");
  i64 closure = mod(static_cast<i64>(n) * (b - a), r);
  if (closure != 0) {
    std::ostringstream msg;
    msg << "closure needs " << n << "*(" << b << " - " << a
        << ") = 0 (mod " << r << "); got " << closure;
    throw DomainError(msg.str());
  }
  ColoredDiagram cd{torus_diagram(n), {r, {}}};
  for (int j = 0; j < n; ++j)
    cd.coloring.assignment[j] = mod(a + j * (b - a), r);
  return cd;
}

std::set<i64> subpalette(i64 r, i64 p) {
  require_modulus(r);
  if (p < 2 || !is_prime(p))
    throw DomainError("subpalette needs a prime index");
  if (r % p != 0)
    throw DomainError("subpalette needs the prime to divide the modulus");
  std::set<i64> colors;
  for (i64 k = 0; k < p; ++k) colors.insert(k * (r / p));
  return colors;
}

ColoredDiagram stacked_coloring(int n, i64 r, i64 a, i64 b) {
  require_modulus(r);
  if (n < 2) throw DomainError("torus closure needs at least 2 crossings");
  i64 p = least_common_prime_divisor(static_cast<i64>(n), r);
  if (p == 1)
    throw DomainError("coprime crossing count and modulus admit only "
                      "trivial colorings");
  std::set<i64> sub = subpalette(r, p);
  if (!sub.count(a) || !sub.count(b))
    throw DomainError("stacked endpoints must come from the order-" +
                      std::to_string(p) + " subpalette");
  return braid_coloring(n, r, a, b);
}

u64 determinant_minor(const Diagram& d, int drop_row, int drop_col) {
  require_valid(d);
  if (d.components != 1)
    throw DomainError("determinant needs a one-component diagram");
  if (d.crossings.empty())
    throw DomainError("determinant needs at least one crossing");
  IntegerMatrix m = coloring_matrix(d);
  if (m.rows != m.cols)
    throw DomainError("relation matrix of a knot diagram must be square");
  if (drop_row < 0 || drop_row >= m.rows || drop_col < 0 ||
      drop_col >= m.cols)
    throw DomainError("dropped row/column out of range");
  IntegerMatrix minor(m.rows - 1, m.cols - 1);
  for (int i = 0, mi = 0; i < m.rows; ++i) {
    if (i == drop_row) continue;
    for (int j = 0, mj = 0; j < m.cols; ++j) {
      if (j == drop_col) continue;
      minor.at(mi, mj) = m.at(i, j);
      ++mj;
    }
    ++mi;
  }
  return abs_determinant(minor);
}

u64 determinant(const Diagram& d) { return determinant_minor(d, 0, 0); }

std::vector<std::pair<i64, u64>> color_spectrum(const Diagram& d, i64 r_max) {
  if (r_max < 2) throw DomainError("spectrum needs r_max >= 2");
  std::vector<std::pair<i64, u64>> spectrum;
  spectrum.reserve(static_cast<std::size_t>(r_max - 1));
  for (i64 r = 2; r <= r_max; ++r) spectrum.emplace_back(r, count_colorings(d, r));
  return spectrum;
}

json coloring_to_json(const Coloring& c) {
  json assignment = json::object();
  for (const auto& [id, color] : c.assignment)
    assignment[std::to_string(id)] = color;
  return json{{"r", c.r}, {"assignment", assignment}};
}

Coloring coloring_from_json(const json& j) {
  if (!j.is_object()) throw DomainError("coloring must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "r" && key != "assignment")
      throw DomainError("unknown field \"" + key + "\" in coloring");
  }
  if (!j.contains("r") || !j.at("r").is_number_integer())
    throw DomainError("coloring needs an integer \"r\"");
  if (!j.contains("assignment") || !j.at("assignment").is_object())
    throw DomainError("coloring needs an \"assignment\" object");
  Coloring c;
  c.r = j.at("r").get<i64>();
  require_modulus(c.r);
  for (const auto& [key, value] : j.at("assignment").items()) {
    std::size_t used = 0;
    int id;
    try {
      id = std::stoi(key, &used);
    } catch (const std::exception&) {
      throw DomainError("assignment key \"" + key + "\" is not an arc id");
    }
    if (used != key.size())
      throw DomainError("assignment key \"" + key + "\" is not an arc id");
    if (!value.is_number_integer())
      throw DomainError("color for arc " + key + " must be an integer");
    i64 color = value.get<i64>();
    if (color < 0 || color >= c.r)
      throw DomainError("color " + std::to_string(color) + " for arc " + key +
                        " is outside [0, " + std::to_string(c.r - 1) + "]");
    if (c.assignment.count(id))
      throw DomainError("duplicate assignment for arc " + key);
    c.assignment[id] = color;
  }
  return c;
}

}  // namespace foxcol
