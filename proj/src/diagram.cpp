#include "foxcol/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace foxcol {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

class Scanner {
 public:
  explicit Scanner(const std::string& text) : text_(text) {}

  std::size_t pos() const { return pos_; }
  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_spaces() {
    while (!done() && text_[pos_] == ' ') ++pos_;
  }

  void expect(char c, const std::string& what) {
    if (done() || text_[pos_] != c)
      throw ParseError("expected " + what, pos_);
    ++pos_;
  }

  long long integer(const std::string& what) {
    std::size_t start = pos_;
    bool negative = false;
    if (!done() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    if (done() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw ParseError("expected " + what, start);
    long long value = 0;
    while (!done() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > 1000000) throw ParseError(what + " out of range", start);
      ++pos_;
    }
    return negative ? -value : value;
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
};

std::string word_text(const BraidWord& w) {
  std::ostringstream out;
  out << "B" << w.strands << ":";
  for (const auto& letter : w.letters) {
    out << " s" << letter.index;
    if (letter.sign < 0) out << "^-1";
  }
  return out.str();
}

// Relabels arc ids by first appearance and rewrites the crossing list.
Diagram assemble(const std::vector<int>& appearance_order,
                 const std::vector<Crossing>& raw, UnionFind& uf) {
  std::map<int, int> label;
  for (int id : appearance_order) {
    int root = uf.find(id);
    if (!label.count(root)) {
      int next = static_cast<int>(label.size());
      label[root] = next;
    }
  }
  Diagram d;
  d.arcs.resize(label.size());
  std::iota(d.arcs.begin(), d.arcs.end(), 0);
  d.crossings.reserve(raw.size());
  for (const auto& c : raw) {
    d.crossings.push_back({label.at(uf.find(c.over)),
                           label.at(uf.find(c.under_in)),
                           label.at(uf.find(c.under_out)), c.sign});
  }
  d.components = component_count(d);
  return d;
}

}  // namespace

bool Diagram::has_arc(int id) const {
  return std::binary_search(arcs.begin(), arcs.end(), id);
}

BraidWord braid_word_parse(const std::string& text) {
  Scanner in(text);
  in.skip_spaces();
  in.expect('B', "braid header 'B'");
  long long strands = in.integer("strand count");
  in.expect(':', "':' after strand count");
  BraidWord w;
  if (strands < 2) throw DomainError("braid needs at least 2 strands");
  w.strands = static_cast<int>(strands);
  for (;;) {
    in.skip_spaces();
    if (in.done()) break;
    in.expect('s', "generator 's'");
    long long index = in.integer("generator index");
    long long exponent = 1;
    if (!in.done() && in.peek() == '^') {
      in.expect('^', "'^'");
      exponent = in.integer("exponent");
    }
    in.skip_spaces();
    if (!in.done() && in.peek() != 's')
      throw ParseError("expected generator 's'", in.pos());
    if (index < 1 || index >= strands) {
      std::ostringstream msg;
      msg << "generator s" << index << " needs index in [1, " << strands - 1
          << "]";
      throw DomainError(msg.str());
    }
    int sign = exponent < 0 ? -1 : 1;
    for (long long t = 0; t < (exponent < 0 ? -exponent : exponent); ++t)
      w.letters.push_back({static_cast<int>(index), sign});
  }
  return w;
}

Diagram braid_closure(const BraidWord& w) {
  if (w.strands < 2) throw DomainError("braid needs at least 2 strands");
  for (const auto& letter : w.letters) {
    if (letter.index < 1 || letter.index >= w.strands)
      throw DomainError("braid letter index out of range");
    if (letter.sign != 1 && letter.sign != -1)
      throw DomainError("braid letter sign must be +1 or -1");
  }

  int k = w.strands;
  std::vector<int> pos(k);
  std::iota(pos.begin(), pos.end(), 0);
  int next_id = k;
  std::vector<int> appearance(pos);
  std::vector<Crossing> raw;
  raw.reserve(w.letters.size());

  for (const auto& letter : w.letters) {
    int lo = pos[letter.index - 1];
    int hi = pos[letter.index];
    int fresh = next_id++;
    appearance.push_back(fresh);
    if (letter.sign > 0) {
      raw.push_back({hi, lo, fresh, 1});
      pos[letter.index - 1] = hi;
      pos[letter.index] = fresh;
    } else {
      raw.push_back({lo, hi, fresh, -1});
      pos[letter.index - 1] = fresh;
      pos[letter.index] = lo;
    }
  }

  UnionFind uf(next_id);
  for (int p = 0; p < k; ++p) uf.unite(pos[p], p);

  Diagram d = assemble(appearance, raw, uf);
  d.provenance = json{{"kind", "braid-closure"},
                      {"strands", w.strands},
                      {"word", word_text(w)}};
  return d;
}

Diagram torus_diagram(int n) {
  if (n < 2) throw DomainError("torus closure needs at least 2 crossings");
  BraidWord w;
  w.strands = 2;
  w.letters.assign(static_cast<std::size_t>(n), {1, 1});
  Diagram d = braid_closure(w);
  d.provenance["torus"] = json::array({2, n});
  return d;
}

Diagram rational_diagram(const RationalSpec& spec) {
  const auto& tv = spec.twist_vector;
  if (tv.empty()) throw DomainError("twist vector must be nonempty");
  for (int t : tv)
    if (t == 0) throw DomainError("twist entries must be nonzero");

  int m = static_cast<int>(tv.size());
  // Boundary arcs of the tangle built so far.
  int nw, ne, sw, se;
  int next_id;
  if (m % 2 == 0) {
    nw = sw = 0;  // left strand
    ne = se = 1;  // right strand
    next_id = 2;
  } else {
    nw = ne = 0;  // top strand
    sw = se = 1;  // bottom strand
    next_id = 2;
  }
  std::vector<int> appearance = {0, 1};
  std::vector<Crossing> raw;

  for (int position = m; position >= 1; --position) {
    int entry = tv[position - 1];
    int count = entry < 0 ? -entry : entry;
    int sign = entry < 0 ? -1 : 1;
    bool horizontal = position % 2 == 1;
    for (int t = 0; t < count; ++t) {
      int fresh = next_id++;
      appearance.push_back(fresh);
      if (horizontal) {
        if (entry > 0) {
          raw.push_back({se, ne, fresh, sign});
          ne = se;
          se = fresh;
        } else {
          raw.push_back({ne, se, fresh, sign});
          se = ne;
          ne = fresh;
        }
      } else {
        if (entry < 0) {
          raw.push_back({se, sw, fresh, sign});
          sw = se;
          se = fresh;
        } else {
          raw.push_back({sw, se, fresh, sign});
          se = sw;
          sw = fresh;
        }
      }
    }
  }

  UnionFind uf(next_id);
  uf.unite(nw, ne);
  uf.unite(sw, se);

  Diagram d = assemble(appearance, raw, uf);
  d.provenance = json{{"kind", "rational"}, {"twist_vector", tv}};
  return d;
}

int component_count(const Diagram& d) {
  std::map<int, int> dense;
  for (int id : d.arcs) {
    int next = static_cast<int>(dense.size());
    dense.emplace(id, next);
  }
  UnionFind uf(static_cast<int>(dense.size()));
  for (const auto& c : d.crossings) {
    auto in = dense.find(c.under_in);
    auto out = dense.find(c.under_out);
    if (in != dense.end() && out != dense.end()) uf.unite(in->second, out->second);
  }
  std::set<int> roots;
  for (const auto& [id, idx] : dense) roots.insert(uf.find(idx));
  return static_cast<int>(roots.size());
}

ValidationReport validate_diagram(const Diagram& d) {
  ValidationReport report;
  report.arc_count = static_cast<int>(d.arcs.size());
  report.crossing_count = static_cast<int>(d.crossings.size());

  std::set<int> seen;
  for (int id : d.arcs) {
    if (!seen.insert(id).second) {
      report.violations.push_back("duplicate arc id " + std::to_string(id));
    }
  }

  std::map<int, int> under_ends;
  for (std::size_t i = 0; i < d.crossings.size(); ++i) {
    const auto& c = d.crossings[i];
    for (int ref : {c.over, c.under_in, c.under_out}) {
      if (!seen.count(ref)) {
        report.violations.push_back("crossing " + std::to_string(i) +
                                    " references unknown arc id " +
                                    std::to_string(ref));
      }
    }
    if (c.sign != 1 && c.sign != -1) {
      report.violations.push_back("crossing " + std::to_string(i) +
                                  " has sign " + std::to_string(c.sign));
    }
    ++under_ends[c.under_in];
    ++under_ends[c.under_out];
  }

  for (int id : d.arcs) {
    int ends = under_ends.count(id) ? under_ends.at(id) : 0;
    if (ends != 0 && ends != 2) {
      report.violations.push_back("arc " + std::to_string(id) + " has " +
                                  std::to_string(ends) +
                                  " under-ends (want 0 or 2)");
    }
  }

  bool structurally_ok = report.violations.empty();
  report.components = structurally_ok ? component_count(d) : 0;
  if (structurally_ok && report.components != d.components) {
    report.violations.push_back(
        "stored component count " + std::to_string(d.components) +
        " does not match strand connectivity " +
        std::to_string(report.components));
  }

  report.valid = report.violations.empty();
  return report;
}

void require_valid(const Diagram& d) {
  ValidationReport report = validate_diagram(d);
  if (!report.valid)
    throw DomainError("invalid diagram: " + report.violations.front());
}

json diagram_to_json(const Diagram& d) {
  json crossings = json::array();
  for (const auto& c : d.crossings) {
    crossings.push_back(json{{"over", c.over},
                             {"under_in", c.under_in},
                             {"under_out", c.under_out},
                             {"sign", c.sign}});
  }
  json provenance = d.provenance.is_null() ? json{{"kind", "generic"}}
                                           : d.provenance;
  return json{
      {"arcs", d.arcs}, {"crossings", crossings}, {"provenance", provenance}};
}

namespace {

void require_keys(const json& j, const std::vector<std::string>& allowed,
                  const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw DomainError("unknown field \"" + key + "\" in " + where);
  }
}

int int_field(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key))
    throw DomainError("missing field \"" + key + "\" in " + where);
  const json& v = j.at(key);
  if (!v.is_number_integer())
    throw DomainError("field \"" + key + "\" in " + where +
                      " must be an integer");
  return v.get<int>();
}

}  // namespace

Diagram diagram_from_json(const json& j) {
  if (!j.is_object()) throw DomainError("diagram must be a JSON object");
  require_keys(j, {"arcs", "crossings", "provenance"}, "diagram");
  if (!j.contains("arcs") || !j.at("arcs").is_array())
    throw DomainError("diagram needs an \"arcs\" array");
  if (!j.contains("crossings") || !j.at("crossings").is_array())
    throw DomainError("diagram needs a \"crossings\" array");

  Diagram d;
  std::set<int> seen;
  for (const auto& entry : j.at("arcs")) {
    if (!entry.is_number_integer())
      throw DomainError("arc ids must be integers");
    int id = entry.get<int>();
    if (!seen.insert(id).second)
      throw DomainError("duplicate arc id " + std::to_string(id));
    d.arcs.push_back(id);
  }
  std::sort(d.arcs.begin(), d.arcs.end());

  for (const auto& entry : j.at("crossings")) {
    if (!entry.is_object())
      throw DomainError("crossings must be JSON objects");
    require_keys(entry, {"over", "under_in", "under_out", "sign"}, "crossing");
    d.crossings.push_back({int_field(entry, "over", "crossing"),
                           int_field(entry, "under_in", "crossing"),
                           int_field(entry, "under_out", "crossing"),
                           int_field(entry, "sign", "crossing")});
  }

  if (j.contains("provenance")) {
    if (!j.at("provenance").is_object())
      throw DomainError("provenance must be a JSON object");
    d.provenance = j.at("provenance");
  } else {
    d.provenance = json{{"kind", "generic"}};
  }

  d.components = component_count(d);
  return d;
}

}  // namespace foxcol
