// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.  Every check compares library output against an
// independent brute-force computation or an exact invariant.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "autostack/async.hpp"
#include "autostack/automata.hpp"
#include "autostack/catalog.hpp"
#include "autostack/cayley.hpp"
#include "autostack/error.hpp"
#include "autostack/rewriting.hpp"
#include "autostack/stacking.hpp"
#include "autostack/sync.hpp"
#include "autostack/vankampen.hpp"
#include "helpers.hpp"

using namespace autostack;
using autostack::testing::all_words;
using autostack::testing::random_identity_word;
using autostack::testing::random_word;

namespace {

  using Clock = std::chrono::steady_clock;

  double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  }

  // Collects the first few failure messages of one criterion.
  struct Verdict {
    std::vector<std::string> failures;

    void expect(bool ok, std::string const& what) {
      if (!ok && failures.size() < 5) {
        failures.push_back(what);
      }
      failed = failed || !ok;
    }

    bool failed = false;
  };

  StackingStructure from_rules(CatalogEntry const& e) {
    return cprs_to_stacking(process(lift_srs(e.rules)).system);
  }

  Dfa random_dfa(std::mt19937& rng, std::size_t alphabet_size, std::size_t states) {
    Dfa                                  d(alphabet_size, states);
    std::uniform_int_distribution<State> target(0, states - 1);
    std::bernoulli_distribution          coin(0.4);
    for (State s = 0; s < states; ++s) {
      d.set_accepting(s, coin(rng));
      for (Symbol x = 0; x < alphabet_size; ++x) {
        d.set_next(s, x, target(rng));
      }
    }
    return d;
  }

  // A random two-letter asynchronous automaton in which the second tape
  // never runs far ahead: a read_second state only moves on to read the
  // first tape, and the states reading the rest of the second tape form a
  // chain.  So a partner of u, if any, has length <= l(u) + 1 + chain.
  AsyncAutomaton random_async(std::mt19937& rng, std::size_t chain) {
    std::vector<StateKind> kinds = {StateKind::read_first, StateKind::read_first,
                                    StateKind::read_second, StateKind::read_second,
                                    StateKind::read_first_done};
    std::size_t const first_done = 4, second_done = kinds.size();
    for (std::size_t i = 0; i < chain; ++i) {
      kinds.push_back(StateKind::read_second_done);
    }
    State const accept = static_cast<State>(kinds.size());
    kinds.push_back(StateKind::accept);
    State const failing = static_cast<State>(kinds.size());
    kinds.push_back(StateKind::fail);

    Dfa                         d(3, kinds.size());
    std::bernoulli_distribution drop(0.25);
    auto pick = [&](std::vector<State> const& options) {
      if (options.empty() || drop(rng)) {
        return failing;
      }
      return options[rng() % options.size()];
    };
    for (State q = 0; q < kinds.size(); ++q) {
      for (Symbol x = 0; x < 3; ++x) {
        bool               end = x == 2;
        std::vector<State> to;
        switch (kinds[q]) {
          case StateKind::read_first:
            to = end ? std::vector<State>{static_cast<State>(second_done)}
                     : std::vector<State>{0, 1, 2, 3};
            if (end && chain == 0) {
              to.clear();
            }
            break;
          case StateKind::read_second:
            to = end ? std::vector<State>{static_cast<State>(first_done)}
                     : std::vector<State>{0, 1};
            break;
          case StateKind::read_first_done:
            to = end ? std::vector<State>{accept} : std::vector<State>{static_cast<State>(q)};
            break;
          case StateKind::read_second_done:
            if (end) {
              to = {accept};
            } else if (q + 1 < second_done + chain) {
              to = {static_cast<State>(q + 1)};
            }
            break;
          default:
            break;
        }
        d.set_next(q, x, pick(to));
      }
    }
    d.set_start(0);
    return AsyncAutomaton(2, d, kinds);
  }

  // ---------------------------------------------------------------------
  // 1. Language operations against enumeration.

  void language_operations(Verdict& v) {
    std::mt19937 rng(2024);
    auto const   short_words = all_words(2, 6);
    auto const   long_words  = all_words(2, 8);

    for (int trial = 0; trial < 40; ++trial) {
      Dfa  L = random_dfa(rng, 2, 2 + trial % 5);
      Word w = random_word(rng, 2, 3);
      auto Q = quotient_by_word(L, w);
      for (auto const& x : long_words) {
        v.expect(Q.accepts(x) == L.accepts(concat(x, w)), "quotient_by_word");
      }
    }

    for (int trial = 0; trial < 20; ++trial) {
      Dfa  L = random_dfa(rng, 2, 2 + trial % 4);
      auto D = diagonal(L);
      for (auto const& x : short_words) {
        for (auto const& y : short_words) {
          v.expect(D.accepts({x, y}) == (x == y && L.accepts(x)), "diagonal");
        }
      }
    }

    for (int trial = 0; trial < 20; ++trial) {
      Dfa  L1 = random_dfa(rng, 2, 1 + trial % 4);
      Dfa  L2 = random_dfa(rng, 2, 2 + trial % 3);
      auto P  = cartesian_product({L1, L2});
      for (auto const& x : short_words) {
        for (auto const& y : short_words) {
          v.expect(P.accepts({x, y}) == (L1.accepts(x) && L2.accepts(y)), "cartesian_product");
        }
      }
    }

    for (int trial = 0; trial < 30; ++trial) {
      Dfa               L = random_dfa(rng, 2, 2 + trial % 4);
      std::vector<Word> h = {random_word(rng, 2, 2), random_word(rng, 2, 2)};
      for (auto& img : h) {
        if (img.empty()) {
          img = {static_cast<Letter>(rng() % 2)};
        }
      }
      auto image_of = [&](Word const& x) {
        Word out;
        for (Letter c : x) {
          out.insert(out.end(), h[c].begin(), h[c].end());
        }
        return out;
      };
      // Images are no shorter than their sources, so words of length <= 6
      // have all their preimages among words of length <= 6.
      std::set<Word> seen;
      for (auto const& x : short_words) {
        if (L.accepts(x)) {
          seen.insert(image_of(x));
        }
      }
      auto image = hom_image(L, h, 2);
      for (auto const& y : short_words) {
        v.expect(image.accepts(y) == (seen.count(y) > 0), "hom_image");
      }
      auto pre = hom_preimage(L, h);
      for (auto const& x : short_words) {
        v.expect(pre.accepts(x) == L.accepts(image_of(x)), "hom_preimage");
      }
    }

    std::size_t projected = 0;
    for (int trial = 0; trial < 20; ++trial) {
      std::size_t chain = trial % 3;
      auto        M     = random_async(rng, chain);
      auto        P     = async_project_first(M);
      auto const  us    = all_words(2, 5);
      auto const  vs    = all_words(2, 5 + 1 + chain);
      for (auto const& u : us) {
        bool found = std::any_of(vs.begin(), vs.end(),
                                 [&](Word const& w) { return async_accepts(M, u, w); });
        v.expect(P.accepts(u) == found, "async_project_first");
        projected += found;
      }
    }
    // Guard against a generator that only makes empty relations.
    v.expect(projected > 100, "random asynchronous automata are nearly empty");
  }

  // ---------------------------------------------------------------------
  // 2. Round trip through the rewriting system of a stacking structure.

  void round_trip(Verdict& v) {
    std::mt19937 rng(77);
    for (auto const& name : builtin_entries()) {
      auto        e = load_entry(name);
      auto const& A = e.alphabet;
      auto        S = from_rules(e);
      auto        R = stacking_to_cprs(S);
      v.expect(equivalent(minimize(irreducible_language(R)), minimize(S.normal_forms())),
               name + ": Irr differs from the normal forms");

      for (int i = 0; i < 500; ++i) {
        Word w = random_word(rng, A.size(), 12);
        auto t = reduce(R, w, 10000);
        v.expect(t.complete && t.steps.size() < 10000,
                 name + ": no normal form within 10^4 steps for " + A.format(w));
        if (t.complete) {
          v.expect(e.oracle->equal(t.final, w), name + ": normal form changes the element");
          v.expect(S.normal_forms().accepts(t.final), name + ": result is not a normal form");
        }
      }

      // One normal form per element.
      std::map<GroupOracle::Element, Word> owner;
      for (auto const& y : enumerate_language(S.normal_forms(), 6)) {
        auto [it, fresh] = owner.emplace(e.oracle->eval(y), y);
        v.expect(fresh, name + ": " + A.format(y) + " and " + A.format(it->second)
                            + " are equal");
      }
    }
  }

  // ---------------------------------------------------------------------
  // 3. Processing keeps the irreducible language and is exhaustive.

  bool brute_processed(PrefixRewritingSystem const& Q, std::size_t max_lhs) {
    auto const                  rules = Q.rules_up_to(max_lhs);
    std::map<Word, std::size_t> count;
    for (auto const& r : rules) {
      ++count[r.lhs];
    }
    for (auto const& [w, n] : count) {
      if (n != 1) {
        return false;
      }
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (count.count(Word(w.begin(), w.begin() + i))) {
          return false;
        }
      }
    }
    Alphabet const& A = Q.alphabet();
    for (Letter a = 0; a < A.size(); ++a) {
      if (!A.has_inverse(a) || !normal_form(Q, {a, A.inverse(a)}, 1000).empty()) {
        return false;
      }
    }
    return true;
  }

  void processing(Verdict& v) {
    std::vector<std::pair<std::string, StringRewritingSystem>> systems;
    for (auto const& name : builtin_entries()) {
      systems.emplace_back(name, load_entry(name).rules);
    }
    Alphabet          A = Alphabet::paired({"a", "A", "b", "B"});
    std::vector<Rule> free_rules;
    for (Letter x = 0; x < A.size(); ++x) {
      free_rules.push_back({{x, A.inverse(x)}, {}});
    }
    auto junk = free_rules;
    junk.push_back({A.parse("bBa"), A.parse("a")});
    systems.emplace_back("junk rule", StringRewritingSystem(A, junk));
    auto duplicate = free_rules;
    duplicate.push_back({A.parse("aA"), A.parse("bB")});
    systems.emplace_back("duplicate lhs", StringRewritingSystem(A, duplicate));

    for (auto const& [name, srs] : systems) {
      auto R = lift_srs(srs);
      auto P = process(R);
      v.expect(P.certificate.ok(), name + ": " + P.certificate.witness);
      v.expect(equivalent(irreducible_language(P.system), irreducible_language(R)),
               name + ": Irr changed");
      v.expect(brute_processed(P.system, 8), name + ": processed conditions fail");
    }
  }

  // ---------------------------------------------------------------------
  // 4. Descent digraph on a ball.

  void descent(Verdict& v) {
    for (std::string name : {"z2", "s3"}) {
      auto e    = load_entry(name);
      auto Q    = process(lift_srs(e.rules)).system;
      auto S    = cprs_to_stacking(Q);
      auto ball = build_ball(S, 4);
      auto rep  = check_wellfounded(flow_from_stacking(S, ball), ball);
      v.expect(rep.acyclic, name + ": descent digraph has a cycle");
      v.expect(prl_violations(rep, ball, Q).empty(), name + ": prl does not decrease");
    }
  }

  // The checks of `check -r radius --oracle`.
  bool passes_check(StackingStructure const& S, GroupOracle const& oracle, std::size_t radius,
                    std::string& why) {
    auto report = verify_stacking(S, &oracle, radius);
    if (!report.ok()) {
      why = report.problems.front();
      return false;
    }
    auto ball = build_ball(S.alphabet(), S.normal_forms(), radius, oracle);
    auto rep  = check_wellfounded(flow_from_stacking(S, ball), ball);
    if (!rep.acyclic) {
      why = "descent cycle";
      return false;
    }
    for (auto const& edge : ball.edges()) {
      if (edge.target) {
        Word const& y = ball.vertices()[edge.source];
        if (!oracle.equal(S.phi(y, edge.letter), Word{edge.letter})) {
          why = "phi differs from its letter at " + S.alphabet().format(y);
          return false;
        }
      }
    }
    return true;
  }

  // ---------------------------------------------------------------------
  // 5. Structures built from asynchronous multipliers.

  void from_async(Verdict& v) {
    for (std::string name : {"free2", "z2"}) {
      auto        e = load_entry(name);
      auto        S = stacking_from_async(*e.async).structure;
      std::string why;
      v.expect(passes_check(S, *e.oracle, 4, why), name + ": " + why);
    }
  }

  // ---------------------------------------------------------------------
  // 6. Van Kampen diagrams of random identity words.

  void diagrams(Verdict& v, double& worst_median_ms) {
    std::mt19937 rng(5);
    for (auto const& name : builtin_entries()) {
      auto                e = load_entry(name);
      auto                S = from_rules(e);
      auto                P = stacking_presentation(S);
      std::vector<double> ms;
      for (int i = 0; i < 100; ++i) {
        Word w  = random_identity_word(rng, e.alphabet, e.relators(), 12);
        auto t0 = Clock::now();
        auto d  = build_diagram(S, w);
        ms.push_back(seconds_since(t0) * 1000);
        auto report = validate_diagram(d, P);
        v.expect(e.oracle->is_identity(w) && report.ok() && d.boundary == w,
                 name + ": bad diagram for " + e.alphabet.format(w));
      }
      std::nth_element(ms.begin(), ms.begin() + ms.size() / 2, ms.end());
      double median   = ms[ms.size() / 2];
      worst_median_ms = std::max(worst_median_ms, median);
      v.expect(median < 100, name + ": median build time " + std::to_string(median) + " ms");
    }
  }

  // ---------------------------------------------------------------------
  // 7. Invariants of every shipped structure.

  void invariants(Verdict& v) {
    for (auto const& name : builtin_entries()) {
      auto e      = load_entry(name);
      auto report = verify_stacking(from_rules(e), e.oracle.get(), 5);
      v.expect(report.ok(), name + ": " + (report.ok() ? "" : report.problems.front()));
      if (e.async) {
        auto from = stacking_from_async(*e.async).structure;
        auto rep  = verify_stacking(from, e.oracle.get(), 5);
        v.expect(rep.ok(), name + " (async): " + (rep.ok() ? "" : rep.problems.front()));
      }
    }
  }

  // ---------------------------------------------------------------------
  // 8. Byte-identical CLI output.

  std::string run_cli(std::filesystem::path const& dir, std::string const& args, int& code) {
    std::string cmd = "cd '" + dir.string() + "' && '" AUTOSTACK_CLI "' " + args + " 2>&1";
    FILE*       pipe = ::popen(cmd.c_str(), "r");
    std::string out;
    if (pipe == nullptr) {
      code = -1;
      return out;
    }
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) {
      out.append(buf, n);
    }
    int status = ::pclose(pipe);
    code       = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
  }

  void determinism(Verdict& v) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("autostack-accept-" + std::to_string(::getpid()));
    fs::create_directories(dir);

    std::vector<std::string> setup = {
        "convert srs2cprs z2 z2.cprs",         "convert cprs2stack z2.cprs z2.stack",
        "convert stack2cprs z2.stack z2r.cprs", "convert async z2 z2.async",
        "convert async2stack z2.async z2a.stack"};
    for (auto const& args : setup) {
      int code = 0;
      run_cli(dir, args, code);
      v.expect(code == 0, "setup failed: " + args);
    }

    std::vector<std::string> commands;
    for (std::string src : {"free2", "klein", "s3", "z2", "z2.cprs", "z2.stack", "z2a.stack"}) {
      commands.push_back("reduce " + src + " abAB --trace");
      commands.push_back("nf " + src + " abab");
      commands.push_back("wp " + src + " abAB");
      commands.push_back("ball " + src + " -r 3 --dot -");
      commands.push_back("fellow " + src + " -r 3");
      commands.push_back("check " + src + " -r 3");
      commands.push_back("convert cprs2stack " + src + " -");
      commands.push_back("convert stack2cprs " + src + " -");
    }
    for (std::string src : {"free2", "klein", "s3", "z2"}) {
      commands.push_back("process " + src);
      commands.push_back("convert srs2cprs " + src + " -");
    }
    commands.push_back("diagram z2 bbaBBA --json - --dot -");
    commands.push_back("diagram klein abaB --json -");
    commands.push_back("diagram s3 ababab --dot -");
    commands.push_back("diagram free2 abBA");
    commands.push_back("convert async free2 -");
    commands.push_back("convert async2stack z2.async -");
    commands.push_back("wp z2 aq");

    for (auto const& args : commands) {
      int  c1 = 0, c2 = 0;
      auto first  = run_cli(dir, args, c1);
      auto second = run_cli(dir, args, c2);
      v.expect(c1 == c2 && first == second && !first.empty(), "differs: " + args);
    }
    std::error_code ignored;
    fs::remove_all(dir, ignored);
  }

}  // namespace

int main() {
  struct Criterion {
    std::string                    name;
    double                         limit_s;  // 0: no time limit
    std::function<void(Verdict&)> run;
  };
  double                 median_ms = 0;
  std::vector<Criterion> criteria  = {
      {"language operations agree with enumeration", 30, language_operations},
      {"rewriting round trip converges, Irr = N, oracle normal forms", 0, round_trip},
      {"processing keeps Irr and is processed up to lhs length 8", 60, processing},
      {"descent is acyclic and prl decreases on radius 4", 0, descent},
      {"structures from asynchronous multipliers pass check -r 4", 0, from_async},
      {"diagrams of random identity words are valid",
       0,
       [&](Verdict& v) { diagrams(v, median_ms); }},
      {"stacking invariants on radius 5", 0, invariants},
      {"CLI output is byte-identical across runs", 0, determinism},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto const& c = criteria[i];
    Verdict     v;
    auto        t0 = Clock::now();
    try {
      c.run(v);
    } catch (std::exception const& e) {
      v.expect(false, std::string("exception: ") + e.what());
    }
    double s = seconds_since(t0);
    if (c.limit_s > 0) {
      v.expect(s < c.limit_s, "took " + std::to_string(s) + " s");
    }
    std::ostringstream line;
    line << (v.failed ? "FAIL" : "PASS") << " " << (i + 1) << " " << c.name;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << " (" << s << " s";
    if (i == 5) {
      line << ", worst median " << median_ms << " ms";
    }
    line << ")";
    std::cout << line.str() << "\n";
    for (auto const& f : v.failures) {
      std::cout << "  " << f << "\n";
    }
    failed += v.failed;
  }
  return failed == 0 ? 0 : 1;
}
