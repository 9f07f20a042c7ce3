// Command-line driver.  Every subcommand prints deterministic text to stdout;
// failures print a human line to stdout and one JSON line to stderr.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "autostack/catalog.hpp"
#include "autostack/cayley.hpp"
#include "autostack/error.hpp"
#include "autostack/stacking.hpp"
#include "autostack/textio.hpp"
#include "autostack/vankampen.hpp"
#include "json.hpp"

using namespace autostack;

namespace {

  struct Budgets {
    std::size_t max_steps = 1000000;
    std::size_t max_depth = 10000;
  };

  int exit_code(ErrorKind kind) {
    switch (kind) {
      case ErrorKind::validation:
        return 2;
      case ErrorKind::budget:
        return 3;
      case ErrorKind::parse:
      case ErrorKind::usage:
        return 4;
    }
    return 4;
  }

  std::string read_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      fail(ErrorKind::usage, "cannot read " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  // "-" is stdout.
  void write_output(std::string const& path, std::string const& text) {
    if (path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
      fail(ErrorKind::usage, "cannot write " + path);
    }
  }

  enum class FileKind { rules, prefix_system, stacking, async_structure };

  // The first section keyword after the alphabet decides the format.
  FileKind detect(std::string const& text) {
    std::istringstream in(text);
    std::string        line;
    while (std::getline(in, line)) {
      std::istringstream words(line);
      std::string        head;
      if (!(words >> head) || line.front() == '#' || head == "LETTERS" || head == "INV") {
        continue;
      }
      if (head == "RULES") {
        return FileKind::rules;
      }
      if (head == "FAMILY" || head == "BOUND") {
        return FileKind::prefix_system;
      }
      if (head == "STACKING") {
        return FileKind::stacking;
      }
      if (head == "BLOCK") {
        return FileKind::async_structure;
      }
      break;
    }
    fail(ErrorKind::parse, "unrecognised file: expected RULES, FAMILY, STACKING or BLOCK");
  }

  struct Source {
    std::string                          name;
    Alphabet                             alphabet;
    std::optional<StringRewritingSystem> rules;
    std::optional<PrefixRewritingSystem> processed;
    std::optional<AsyncAutomaticStructure> async;
    std::optional<StackingStructure>     stacking;
    std::shared_ptr<GroupOracle const>   oracle;

    StackingStructure const& structure() const {
      if (!stacking) {
        fail(ErrorKind::usage, name + " has no stacking structure");
      }
      return *stacking;
    }
  };

  void from_prefix_system(Source& s, PrefixRewritingSystem const& R, Budgets const& b) {
    ProcessOptions options;
    options.step_limit = b.max_steps;
    s.processed        = process(R, options).system;
    s.stacking         = cprs_to_stacking(*s.processed, b.max_steps);
    s.alphabet         = s.stacking->alphabet();
  }

  // A catalog entry name, or a rules / prefix-system / bundle / async file.
  // Stacking structures of async files are built only on request.
  Source load_source(std::string const& arg, Budgets const& b, bool build_async = true) {
    Source s;
    s.name = arg;
    if (!std::filesystem::is_regular_file(arg)) {
      CatalogEntry e = load_entry(arg);
      s.rules        = e.rules;
      s.async        = e.async;
      s.oracle       = e.oracle;
      from_prefix_system(s, lift_srs(e.rules), b);
      return s;
    }
    std::string text = read_file(arg);
    switch (detect(text)) {
      case FileKind::rules:
        s.rules  = parse_rule_file(text);
        s.oracle = rewriting_oracle(*s.rules);
        from_prefix_system(s, lift_srs(*s.rules), b);
        break;
      case FileKind::prefix_system:
        from_prefix_system(s, parse_prefix_system(text), b);
        break;
      case FileKind::stacking:
        s.stacking = parse_stacking_bundle(text);
        s.alphabet = s.stacking->alphabet();
        break;
      case FileKind::async_structure:
        s.async    = parse_async_structure(text);
        s.alphabet = s.async->alphabet;
        if (build_async) {
          s.stacking = stacking_from_async(*s.async).structure;
        }
        break;
    }
    return s;
  }

  std::string yes_no(bool b) {
    return b ? "yes" : "no";
  }

  ////////////////////////////////////////////////////////////////////////
  // Subcommands
  ////////////////////////////////////////////////////////////////////////

  int cmd_reduce(std::string const& src, std::string const& text, bool trace, Budgets const& b) {
    Source s = load_source(src, b);
    Word   w = parse_word(s.alphabet, text);
    auto   R = stacking_to_cprs(s.structure());
    auto   t = reduce(R, w, b.max_steps);
    if (!t.complete) {
      fail(ErrorKind::budget, "reduction did not finish within " + std::to_string(b.max_steps)
                                  + " steps");
    }
    Alphabet const& A = s.alphabet;
    if (trace) {
      for (std::size_t i = 0; i < t.steps.size(); ++i) {
        auto const& st = t.steps[i];
        std::cout << "step " << i + 1 << ": " << A.format(concat(st.rule.lhs, st.suffix)) << " -> "
                  << A.format(concat(st.rule.rhs, st.suffix)) << "  (rule "
                  << A.format(st.rule.lhs) << " -> " << A.format(st.rule.rhs) << ")\n";
      }
    }
    std::cout << A.format(t.final) << "\n";
    return 0;
  }

  int cmd_nf(std::string const& src, std::string const& text, Budgets const& b) {
    Source s  = load_source(src, b);
    Word   w  = parse_word(s.alphabet, text);
    Word   nf = stacking_normal_form(s.structure(), w, b.max_steps);
    std::cout << s.alphabet.format(nf) << "\n";
    return nf == w ? 0 : 1;
  }

  int cmd_wp(std::string const& src, std::string const& text, Budgets const& b) {
    Source s = load_source(src, b);
    Word   w = parse_word(s.alphabet, text);
    std::cout << (stacking_normal_form(s.structure(), w, b.max_steps).empty() ? "identity"
                                                                               : "non-identity")
              << "\n";
    return 0;
  }

  int cmd_ball(std::string const& src, std::size_t r, std::string const& dot, Budgets const& b) {
    Source      s    = load_source(src, b);
    auto const& S    = s.structure();
    auto        ball = build_ball(S, r, b.max_steps);
    std::size_t inside = 0, degenerate = 0, recursive = 0, tree = 0;
    for (auto const& e : ball.edges()) {
      if (!e.target) {
        continue;
      }
      ++inside;
      if (e.kind == EdgeClass::degenerate) {
        ++degenerate;
        tree += ball.vertices()[*e.target].size() > ball.vertices()[e.source].size();
      } else {
        ++recursive;
      }
    }
    std::cout << "radius " << r << "\n"
              << "vertices " << ball.vertices().size() << "\n"
              << "directed edges " << ball.edges().size() << "\n"
              << "inside the ball " << inside << "\n"
              << "leaving the ball " << ball.edges().size() - inside << "\n"
              << "degenerate " << degenerate << "\n"
              << "recursive " << recursive << "\n"
              << "tree edges " << tree << "\n"
              << "tree spans " << yes_no(ball.tree_spans()) << "\n";
    if (!dot.empty()) {
      auto flow = flow_from_stacking(S, ball);
      write_output(dot, ball_dot(ball, &flow));
    }
    return 0;
  }

  int cmd_diagram(std::string const& src, std::string const& text, std::string const& json,
                  std::string const& dot, Budgets const& b) {
    Source      s = load_source(src, b);
    auto const& S = s.structure();
    Word        w = parse_word(s.alphabet, text);
    auto        d = build_diagram(S, w, {b.max_depth, b.max_steps});
    auto        report = validate_diagram(d, stacking_presentation(S));
    std::cout << "boundary " << s.alphabet.format(d.boundary) << "\n"
              << "vertices " << d.vertex_count << "\n"
              << "edges " << d.edge_count() << "\n"
              << "faces " << d.faces.size() << "\n"
              << "valid " << yes_no(report.ok()) << "\n";
    for (auto const& p : report.problems) {
      std::cout << "problem: " << p << "\n";
    }
    if (!json.empty()) {
      write_output(json, diagram_json(d));
    }
    if (!dot.empty()) {
      write_output(dot, diagram_dot(d));
    }
    if (!report.ok()) {
      fail(ErrorKind::validation, "diagram failed validation");
    }
    return 0;
  }

  int cmd_process(std::string const& src, std::string const& out, Budgets const& b) {
    Source s = load_source(src, b);
    if (!s.processed) {
      fail(ErrorKind::usage, src + " is not a rewriting system");
    }
    write_output(out, format_prefix_system(*s.processed));
    return 0;
  }

  int cmd_convert(std::string const& kind, std::string const& in, std::string const& out,
                  Budgets const& b) {
    if (kind == "srs2cprs") {
      Source s = load_source(in, b);
      if (!s.rules) {
        fail(ErrorKind::usage, in + " is not a string rewriting system");
      }
      write_output(out, format_prefix_system(lift_srs(*s.rules)));
    } else if (kind == "cprs2stack") {
      Source s = load_source(in, b);
      if (!s.processed) {
        fail(ErrorKind::usage, in + " is not a rewriting system");
      }
      write_output(out, format_stacking_bundle(s.structure()));
    } else if (kind == "stack2cprs") {
      Source s = load_source(in, b);
      write_output(out, format_prefix_system(stacking_to_cprs(s.structure())));
    } else if (kind == "async2stack") {
      Source s = load_source(in, b, false);
      if (!s.async) {
        fail(ErrorKind::usage, in + " has no asynchronous structure");
      }
      auto conv = stacking_from_async(*s.async);
      std::cerr << "constant " << conv.constant << "\n";
      write_output(out, format_stacking_bundle(conv.structure));
    } else if (kind == "async") {
      // Export of a catalog entry's asynchronous structure.
      Source s = load_source(in, b, false);
      if (!s.async) {
        fail(ErrorKind::usage, in + " has no asynchronous structure");
      }
      write_output(out, format_async_structure(*s.async));
    } else {
      fail(ErrorKind::usage, "unknown conversion '" + kind + "'");
    }
    return 0;
  }

  int cmd_check(std::string const& src, std::size_t r, std::string const& oracle_entry,
                Budgets const& b) {
    Source      s = load_source(src, b);
    auto const& S = s.structure();
    auto        oracle = s.oracle;
    if (!oracle_entry.empty()) {
      auto e = load_entry(oracle_entry);
      if (!(e.alphabet == S.alphabet())) {
        fail(ErrorKind::usage, "alphabet of " + oracle_entry + " differs from the structure's");
      }
      oracle = e.oracle;
    }
    Alphabet const& A = S.alphabet();
    bool            ok = true;
    std::cout << "radius " << r << "\n"
              << "functionality ok (checked exactly when loading)\n"
              << "bound " << S.bound() << "\n"
              << "oracle " << (oracle ? "yes" : "no") << "\n";

    auto report = verify_stacking(S, oracle.get(), r);
    std::cout << "edges checked " << report.checked_edges << "\n"
              << "edge problems " << report.problems.size() << "\n";
    for (auto const& p : report.problems) {
      std::cout << "  " << p << "\n";
    }
    ok = ok && report.ok();

    // With a cyclic phi, following it may never finish; such edges are
    // left unresolved rather than aborting the check.
    std::size_t unresolved = 0;
    CayleyBall  ball =
        oracle ? build_ball(A, S.normal_forms(), r, *oracle)
               : CayleyBall(A, S.normal_forms(), r,
                            [&](Word const& y, Letter a) -> std::optional<Word> {
                              try {
                                return stacking_normal_form(S, concat(y, a), b.max_steps);
                              } catch (Error const& e) {
                                if (e.kind() != ErrorKind::budget) {
                                  throw;
                                }
                                ++unresolved;
                                return std::nullopt;
                              }
                            });
    if (unresolved > 0) {
      std::cout << "unresolved edges " << unresolved << " (normal form budget exhausted)\n";
      ok = false;
    }
    std::optional<FlowAssignment> flow;
    try {
      flow = flow_from_stacking(S, ball);
    } catch (Error const& e) {
      if (e.kind() != ErrorKind::validation) {
        throw;
      }
      std::cout << "flow FAILED: " << e.what() << "\n";
      ok = false;
    }
    if (flow) {
      auto descent = check_wellfounded(*flow, ball);
      std::cout << "recursive edges " << descent.recursive_edges << "\n"
                << "unverified edges " << descent.unverified_edges << "\n"
                << "descent arcs " << descent.descent_arcs << "\n"
                << "descent acyclic " << yes_no(descent.acyclic) << "\n";
      if (descent.acyclic) {
        std::cout << "descent depth " << descent.max_depth << "\n";
      } else {
        ok = false;
        std::cout << "cycle:\n";
        for (EdgeId id : descent.cycle) {
          auto const& e = ball.edges()[id];
          std::cout << "  " << A.format(ball.vertices()[e.source]) << " -" << A.name(e.letter)
                    << "-> " << A.format(ball.vertices()[*e.target]) << "\n";
        }
      }
      if (s.processed && descent.acyclic) {
        auto bad = prl_violations(descent, ball, *s.processed, b.max_steps);
        std::cout << "prl violations " << bad.size() << "\n";
        ok = ok && bad.empty();
      }
    }
    std::cout << "result " << (ok ? "pass" : "FAIL") << "\n";
    if (!ok) {
      fail(ErrorKind::validation, "stacking check failed on radius " + std::to_string(r));
    }
    return 0;
  }

  int cmd_fellow(std::string const& src, std::size_t r, Budgets const& b) {
    Source s      = load_source(src, b);
    auto   ball   = build_ball(s.structure(), r, b.max_steps);
    auto   report = fellow_traveler(ball);
    std::cout << "radius " << r << "\n"
              << "pairs " << report.pairs << "\n"
              << "indeterminate " << report.indeterminate << "\n"
              << "k " << report.k << "\n";
    return 0;
  }

  void report_error(std::string const& kind, std::string const& message) {
    std::cout << "error: " << message << "\n";
    std::cerr << nlohmann::json{{"error", kind}, {"message", message}}.dump() << "\n";
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Autostackable group structures: rewriting, stacking, diagrams."};
  app.require_subcommand(1);
  app.fallthrough();
  Budgets b;
  app.add_option("--max-steps", b.max_steps, "Step budget for reductions")->capture_default_str();
  app.add_option("--max-depth", b.max_depth, "Nesting budget for diagram recursion")
      ->capture_default_str();

  std::string source, word, out = "-", json, dot, kind, input, oracle;
  std::size_t radius = 3;
  bool        trace  = false;

  auto* reduce_cmd = app.add_subcommand("reduce", "Normal form by prefix rewriting");
  reduce_cmd->add_option("source", source, "Catalog entry or file")->required();
  reduce_cmd->add_option("word", word, "Word, '1' for the empty word")->required();
  reduce_cmd->add_flag("--trace", trace, "Print every rewriting step");

  auto* nf_cmd = app.add_subcommand("nf", "Normal form; exit 0 iff the word is already normal");
  nf_cmd->add_option("source", source)->required();
  nf_cmd->add_option("word", word)->required();

  auto* wp_cmd = app.add_subcommand("wp", "Word problem");
  wp_cmd->add_option("source", source)->required();
  wp_cmd->add_option("word", word)->required();

  auto* ball_cmd = app.add_subcommand("ball", "Cayley graph ball statistics");
  ball_cmd->add_option("source", source)->required();
  ball_cmd->add_option("-r,--radius", radius)->capture_default_str();
  ball_cmd->add_option("--dot", dot, "Write the ball as DOT ('-' for stdout)");

  auto* diagram_cmd = app.add_subcommand("diagram", "Build and validate a van Kampen diagram");
  diagram_cmd->add_option("source", source)->required();
  diagram_cmd->add_option("word", word)->required();
  diagram_cmd->add_option("--json", json, "Write the diagram as JSON");
  diagram_cmd->add_option("--dot", dot, "Write the diagram as DOT");

  auto* process_cmd = app.add_subcommand("process", "Emit the processed prefix-rewriting system");
  process_cmd->add_option("source", source)->required();
  process_cmd->add_option("-o,--out", out)->capture_default_str();

  auto* convert_cmd = app.add_subcommand("convert", "Convert between structures");
  convert_cmd->add_option("kind", kind, "srs2cprs | cprs2stack | stack2cprs | async2stack | async")
      ->required()
      ->check(CLI::IsMember({"srs2cprs", "cprs2stack", "stack2cprs", "async2stack", "async"}));
  convert_cmd->add_option("in", input)->required();
  convert_cmd->add_option("out", out)->required();

  auto* check_cmd = app.add_subcommand("check", "Verify a stacking structure on a ball");
  check_cmd->add_option("source", source)->required();
  check_cmd->add_option("-r,--radius", radius)->capture_default_str();
  check_cmd->add_option("--oracle", oracle, "Catalog entry whose oracle checks phi values");

  auto* fellow_cmd = app.add_subcommand("fellow", "Observed fellow-traveler constant on a ball");
  fellow_cmd->add_option("source", source)->required();
  fellow_cmd->add_option("-r,--radius", radius)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    report_error("usage", e.what());
    return 4;
  }

  try {
    if (*reduce_cmd) {
      return cmd_reduce(source, word, trace, b);
    }
    if (*nf_cmd) {
      return cmd_nf(source, word, b);
    }
    if (*wp_cmd) {
      return cmd_wp(source, word, b);
    }
    if (*ball_cmd) {
      return cmd_ball(source, radius, dot, b);
    }
    if (*diagram_cmd) {
      return cmd_diagram(source, word, json, dot, b);
    }
    if (*process_cmd) {
      return cmd_process(source, out, b);
    }
    if (*convert_cmd) {
      return cmd_convert(kind, input, out, b);
    }
    if (*check_cmd) {
      return cmd_check(source, radius, oracle, b);
    }
    if (*fellow_cmd) {
      return cmd_fellow(source, radius, b);
    }
  } catch (Error const& e) {
    report_error(to_string(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (std::exception const& e) {
    report_error("internal", e.what());
    return 1;
  }
  return 0;
}
