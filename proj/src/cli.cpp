#include "foxcol/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "foxcol/analysis.hpp"
#include "foxcol/errors.hpp"
#include "foxcol/verify.hpp"

namespace foxcol {

namespace {

struct SourceOptions {
  int torus_n = 0;
  std::string braid;
  std::vector<int> rational;
  std::string file;
  CLI::Option* torus_opt = nullptr;
  CLI::Option* braid_opt = nullptr;
  CLI::Option* rational_opt = nullptr;
  CLI::Option* file_opt = nullptr;
};

void add_source_options(CLI::App* sub, SourceOptions& src,
                        bool torus_only = false) {
  auto* group = sub->add_option_group("source", "diagram source");
  src.torus_opt = group->add_option(
      "--torus", src.torus_n,
      "one-generator braid closure with this many crossings");
  if (!torus_only) {
    src.braid_opt =
        group->add_option("--braid", src.braid, "braid word, e.g. \"B2: s1^3\"");
    src.rational_opt =
        group->add_option("--rational", src.rational, "twist vector, e.g. 8,-9")
            ->delimiter(',');
    src.file_opt = group->add_option("--file", src.file, "diagram JSON file");
  }
  group->require_option(1);
}

Diagram build_diagram(const SourceOptions& src, json& inputs) {
  if (src.torus_opt->count() > 0) {
    inputs["source"] = json{{"kind", "torus"}, {"n", src.torus_n}};
    return torus_diagram(src.torus_n);
  }
  if (src.braid_opt != nullptr && src.braid_opt->count() > 0) {
    inputs["source"] = json{{"kind", "braid"}, {"word", src.braid}};
    return braid_closure(braid_word_parse(src.braid));
  }
  if (src.rational_opt != nullptr && src.rational_opt->count() > 0) {
    inputs["source"] =
        json{{"kind", "rational"}, {"twist_vector", src.rational}};
    return rational_diagram(RationalSpec{src.rational});
  }
  inputs["source"] = json{{"kind", "file"}, {"path", src.file}};
  std::ifstream in(src.file);
  if (!in) throw DomainError("cannot open diagram file: " + src.file);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError("diagram file is not valid JSON",
                     static_cast<std::size_t>(e.byte));
  }
  return diagram_from_json(j);
}

template <typename T>
json tagged(const T& value, const char* provenance) {
  return json{{"value", value}, {"provenance", provenance}};
}

std::string colors_text(const std::vector<i64>& colors) {
  return json(colors).dump();
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Fox coloring toolkit for knot and link diagrams"};
  app.require_subcommand(1);

  std::string format = "table";
  bool no_timing = false;
  auto add_output_options = [&](CLI::App* sub) {
    sub->add_option("--format", format, "table or json")
        ->check(CLI::IsMember({"table", "json"}));
    sub->add_flag("--no-timing", no_timing, "omit timing from the report");
  };

  auto* count_cmd =
      app.add_subcommand("count", "count the r-colorings of a diagram");
  SourceOptions count_src;
  add_source_options(count_cmd, count_src);
  i64 count_r = 0;
  count_cmd->add_option("-r,--modulus", count_r, "modulus")->required();
  add_output_options(count_cmd);

  auto* spectrum_cmd = app.add_subcommand(
      "spectrum", "coloring counts for every modulus up to a bound");
  SourceOptions spectrum_src;
  add_source_options(spectrum_cmd, spectrum_src);
  i64 max_r = 10;
  spectrum_cmd->add_option("--max-r", max_r, "largest modulus to report");
  add_output_options(spectrum_cmd);

  auto* mincol_cmd = app.add_subcommand(
      "mincol", "smallest nontrivial palette size of a diagram");
  SourceOptions mincol_src;
  add_source_options(mincol_cmd, mincol_src);
  i64 mincol_r = 0;
  mincol_cmd->add_option("-r,--modulus", mincol_r, "modulus")->required();
  u64 cap = 10'000'000ull;
  mincol_cmd->add_option("--cap", cap, "largest coloring count to enumerate")
      ->envname("FOXCOL_CAP");
  add_output_options(mincol_cmd);

  auto* teneva_cmd = app.add_subcommand(
      "teneva", "sliding pass trace on the one-generator closure");
  SourceOptions teneva_src;
  add_source_options(teneva_cmd, teneva_src, /*torus_only=*/true);
  i64 teneva_r = 0, color_a = 0, color_b = 0;
  teneva_cmd->add_option("-r,--modulus", teneva_r, "modulus")->required();
  teneva_cmd->add_option("-a,--color-a", color_a, "first seed color")
      ->required();
  teneva_cmd->add_option("-b,--color-b", color_b, "second seed color")
      ->required();
  int steps = 0;
  bool reduce = false;
  auto* mode = teneva_cmd->add_option_group("mode", "what to run");
  mode->add_option("--steps", steps, "number of slides after the kink");
  mode->add_flag("--reduce", reduce, "run the full per-block reduction");
  mode->require_option(1);
  add_output_options(teneva_cmd);

  auto* classify_cmd = app.add_subcommand(
      "classify", "three-color algebra for a modulus or a triple");
  i64 classify_r = 0;
  classify_cmd->add_option("-r,--modulus", classify_r, "modulus")->required();
  std::vector<i64> triple;
  classify_cmd
      ->add_option("--triple", triple, "three distinct colors, e.g. 0,1,2")
      ->delimiter(',')
      ->expected(3);
  add_output_options(classify_cmd);

  auto* det_cmd =
      app.add_subcommand("det", "determinant of a knot diagram");
  SourceOptions det_src;
  add_source_options(det_cmd, det_src);
  add_output_options(det_cmd);

  auto* harary_cmd = app.add_subcommand(
      "harary", "check that nontrivial prime colorings are injective");
  SourceOptions harary_src;
  add_source_options(harary_cmd, harary_src);
  i64 prime = 0;
  harary_cmd->add_option("-p,--prime", prime, "prime modulus")->required();
  add_output_options(harary_cmd);

  auto* verify_cmd =
      app.add_subcommand("verify", "run the full acceptance checklist");
  add_output_options(verify_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    out << "error: " << e.what() << "\n";
    return 2;
  }

  std::string verb;
  json inputs = json::object();
  json results = json::object();
  std::ostringstream table;
  int exit_code = 0;

  const auto started = std::chrono::steady_clock::now();
  try {
    if (app.got_subcommand(count_cmd)) {
      verb = "count";
      Diagram d = build_diagram(count_src, inputs);
      inputs["r"] = count_r;
      u64 total = count_colorings(d, count_r);
      results["count"] = tagged(total, "formula");
      results["nontrivial"] = tagged(has_nontrivial(d, count_r), "formula");
      table << "count: " << total << "\n"
            << "nontrivial: " << yes_no(has_nontrivial(d, count_r)) << "\n";
    } else if (app.got_subcommand(spectrum_cmd)) {
      verb = "spectrum";
      Diagram d = build_diagram(spectrum_src, inputs);
      inputs["max_r"] = max_r;
      results["spectrum"] = json::array();
      for (const auto& [r, total] : color_spectrum(d, max_r)) {
        results["spectrum"].push_back(
            json{{"r", r}, {"count", tagged(total, "formula")}});
        table << "r=" << r << ": " << total << "\n";
      }
    } else if (app.got_subcommand(mincol_cmd)) {
      verb = "mincol";
      Diagram d = build_diagram(mincol_src, inputs);
      inputs["r"] = mincol_r;
      inputs["cap"] = cap;
      std::optional<int> min = min_colors_of_diagram(d, mincol_r, cap);
      results["min_colors"] =
          min ? tagged(*min, "enumeration") : tagged(nullptr, "enumeration");
      table << "min colors: "
            << (min ? std::to_string(*min) : "none (only trivial colorings)")
            << "\n";
      if (mincol_src.torus_opt->count() > 0) {
        BoundReport bounds = mincol_bounds(mincol_src.torus_n, mincol_r);
        json bounds_json = bound_report_to_json(bounds);
        results["bounds"] = bounds_json;
        table << "bounds: " << bounds_json.at("branch").get<std::string>()
              << ", lower " << bounds.lower << " (theorem), upper "
              << bounds.upper << " ("
              << bounds_json.at("upper").at("provenance").get<std::string>()
              << ")\n";
      }
    } else if (app.got_subcommand(teneva_cmd)) {
      verb = "teneva";
      inputs["source"] = json{{"kind", "torus"}, {"n", teneva_src.torus_n}};
      inputs["r"] = teneva_r;
      inputs["a"] = color_a;
      inputs["b"] = color_b;
      ColoredDiagram cd;
      PaletteTrace trace;
      if (reduce) {
        inputs["reduce"] = true;
        std::tie(cd, trace) =
            teneva_reduce(teneva_src.torus_n, teneva_r, color_a, color_b);
      } else {
        inputs["steps"] = steps;
        std::tie(cd, trace) = teneva_transform(teneva_src.torus_n, teneva_r,
                                               color_a, color_b, steps);
      }
      const std::size_t palette = palette_of(cd).size();
      results["trace"] = trace_to_json(trace);
      results["final_palette_size"] = tagged(palette, "formula");
      results["final"] = json{{"diagram", diagram_to_json(cd.diagram)},
                              {"coloring", coloring_to_json(cd.coloring)}};
      int index = 0;
      for (const TraceStep& step : trace.steps) {
        table << "step " << index++ << ": "
              << move_to_json(step.move).at("kind").get<std::string>()
              << " introduced " << colors_text(step.introduced) << " removed "
              << colors_text(step.removed) << " palette "
              << step.palette_size_after << "\n";
      }
      table << "final palette: " << palette << "\n";
    } else if (app.got_subcommand(classify_cmd)) {
      verb = "classify";
      inputs["r"] = classify_r;
      if (triple.empty()) {
        bool feasible = three_color_feasible(classify_r);
        results["three_color_feasible"] = tagged(feasible, "theorem");
        table << "three colors feasible: " << yes_no(feasible) << "\n";
      } else {
        inputs["triple"] = triple;
        TripleClass cls =
            classify_triple(triple[0], triple[1], triple[2], classify_r);
        const char* kind = cls.kind == TripleKind::ClosedCyclic
                               ? "ClosedCyclic"
                               : cls.kind == TripleKind::BlockedColor
                                     ? "BlockedColor"
                                     : "NotApplicable";
        results["kind"] = kind;
        results["blocked"] = cls.blocked
                                 ? tagged(*cls.blocked, "formula")
                                 : tagged(nullptr, "formula");
        results["requires_3_divides_r"] = cls.requires_3_divides_r;
        table << "kind: " << kind << "\n"
              << "blocked: "
              << (cls.blocked ? std::to_string(*cls.blocked) : "none") << "\n"
              << "requires 3 | r: " << yes_no(cls.requires_3_divides_r)
              << "\n";
      }
    } else if (app.got_subcommand(det_cmd)) {
      verb = "det";
      Diagram d = build_diagram(det_src, inputs);
      i64 det = determinant(d);
      results["determinant"] = tagged(det, "formula");
      table << "determinant: " << det << "\n";
    } else if (app.got_subcommand(harary_cmd)) {
      verb = "harary";
      Diagram d = build_diagram(harary_src, inputs);
      inputs["p"] = prime;
      bool holds = harary_check(d, prime);
      results["holds"] = tagged(holds, "enumeration");
      table << "injective on arcs: " << yes_no(holds) << "\n";
    } else if (app.got_subcommand(verify_cmd)) {
      verb = "verify";
      bool all_passed = true;
      results["criteria"] = json::array();
      for (const CriterionResult& cr : run_acceptance()) {
        all_passed = all_passed && cr.passed;
        json entry{{"id", cr.id},
                   {"name", cr.name},
                   {"passed", cr.passed},
                   {"detail", cr.detail}};
        if (!no_timing) {
          entry["ms"] = cr.ms;
          entry["limit_ms"] = cr.limit_ms;
        }
        results["criteria"].push_back(entry);
        table << "criterion " << (cr.id < 10 ? " " : "") << cr.id << " "
              << (cr.passed ? "PASS" : "FAIL") << " " << cr.name << " ("
              << cr.detail << ")";
        if (!no_timing) {
          table << " [" << cr.ms << " ms";
          if (cr.limit_ms > 0) table << ", limit " << cr.limit_ms << " ms";
          table << "]";
        }
        table << "\n";
      }
      results["all_passed"] = all_passed;
      table << (all_passed ? "all criteria passed"
                           : "some criteria FAILED")
            << "\n";
      if (!all_passed) exit_code = 1;
    }
  } catch (const BudgetExceeded& e) {
    out << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    out << "error: " << e.what() << "\n";
    return 1;
  } catch (const OverflowError& e) {
    out << "error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    out << "error: " << e.what() << "\n";
    return 1;
  }
  const auto finished = std::chrono::steady_clock::now();

  if (format == "json") {
    json report;
    report["verb"] = verb;
    report["inputs"] = inputs;
    report["results"] = results;
    if (!no_timing)
      report["timing_ms"] =
          std::chrono::duration_cast<std::chrono::milliseconds>(finished -
                                                                started)
              .count();
    out << report.dump(2) << "\n";
  } else {
    out << table.str();
  }
  return exit_code;
}

}  // namespace foxcol
