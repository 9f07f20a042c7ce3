#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

  struct Run {
    int         code = -1;
    std::string out;
    std::string err;
  };

  // A per-process working directory, removed at exit.
  struct Scratch {
    fs::path dir = fs::temp_directory_path() / ("autostack-cli-" + std::to_string(::getpid()));

    Scratch() {
      fs::create_directories(dir);
    }

    ~Scratch() {
      std::error_code ignored;
      fs::remove_all(dir, ignored);
    }
  };

  fs::path scratch() {
    static Scratch s;
    return s.dir;
  }

  std::string slurp(fs::path const& p) {
    std::ifstream     in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }

  Run run(std::string const& args) {
    fs::path    err = scratch() / "stderr.txt";
    std::string cmd = "cd '" + scratch().string() + "' && '" AUTOSTACK_CLI "' " + args + " 2>'"
                      + err.string() + "'";
    Run   r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) {
      r.out.append(buf, n);
    }
    int status = ::pclose(pipe);
    r.code     = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err      = slurp(err);
    return r;
  }

  void write(std::string const& name, std::string const& text) {
    std::ofstream(scratch() / name, std::ios::binary) << text;
  }

  std::string error_kind(Run const& r) {
    return nlohmann::json::parse(r.err).at("error").get<std::string>();
  }

}  // namespace

TEST_CASE("word commands") {
  CHECK(run("reduce z2 ba").out == "ab\n");
  auto traced = run("reduce z2 ba --trace");
  CHECK(traced.out.find("step 1: ba -> bBab") != std::string::npos);
  CHECK(run("wp free2 aA").out == "identity\n");
  CHECK(run("wp s3 ababab").out == "identity\n");
  CHECK(run("wp z2 ab").out == "non-identity\n");

  auto normal = run("nf z2 ab");
  CHECK(normal.out == "ab\n");
  CHECK(normal.code == 0);
  auto moved = run("nf z2 ba");
  CHECK(moved.out == "ab\n");
  CHECK(moved.code == 1);
}

TEST_CASE("error exits") {
  auto bad_letter = run("wp z2 aq");
  CHECK(bad_letter.code == 4);
  CHECK(error_kind(bad_letter) == "parse");
  CHECK(bad_letter.out.rfind("error: ", 0) == 0);

  auto not_identity = run("diagram z2 ab");
  CHECK(not_identity.code == 2);
  CHECK(error_kind(not_identity) == "validation");

  auto budget = run("--max-steps 2 reduce z2 bbbbaaaa");
  CHECK(budget.code == 3);
  CHECK(error_kind(budget) == "budget");

  auto unknown = run("wp nosuchgroup a");
  CHECK(unknown.code == 4);
  CHECK(error_kind(unknown) == "usage");

  CHECK(run("frobnicate").code == 4);

  write("junk.txt", "LETTERS a A\nINV a A\nWHAT\n");
  CHECK(error_kind(run("wp junk.txt a")) == "parse");
}

TEST_CASE("ball, diagram and fellow") {
  auto ball = run("ball free2 -r 2");
  CHECK(ball.out.find("vertices 17\n") != std::string::npos);
  CHECK(ball.out.find("recursive 0\n") != std::string::npos);

  auto d = run("diagram z2 baBA --json d.json --dot d.dot");
  CHECK(d.code == 0);
  CHECK(d.out.find("faces 1\n") != std::string::npos);
  CHECK(d.out.find("valid yes\n") != std::string::npos);
  auto j = nlohmann::json::parse(slurp(scratch() / "d.json"));
  CHECK(j.at("faces").size() == 1);
  CHECK(slurp(scratch() / "d.dot").rfind("digraph", 0) == 0);

  CHECK(run("fellow free2 -r 3").out.find("k 1\n") != std::string::npos);
}

TEST_CASE("conversions and checks") {
  REQUIRE(run("convert srs2cprs z2 z2.cprs").code == 0);
  REQUIRE(run("convert cprs2stack z2.cprs z2.stack").code == 0);
  REQUIRE(run("convert stack2cprs z2.stack z2r.cprs").code == 0);
  CHECK(run("reduce z2.stack ba").out == "ab\n");
  CHECK(run("reduce z2r.cprs ba").out == "ab\n");

  auto check = run("check z2.stack -r 3 --oracle z2");
  CHECK(check.code == 0);
  CHECK(check.out.find("result pass\n") != std::string::npos);

  REQUIRE(run("convert async free2 free2.async").code == 0);
  REQUIRE(run("convert async2stack free2.async free2a.stack").code == 0);
  CHECK(run("check free2a.stack -r 3 --oracle free2").code == 0);

  // phi(b, a) = aAa runs over its own edge.
  std::string bundle = slurp(scratch() / "z2.stack");
  auto        at     = bundle.find("PHI a -> Bab");
  REQUIRE(at != std::string::npos);
  bundle.replace(at, 12, "PHI a -> aAa");
  write("loop.stack", bundle);
  auto loop = run("check loop.stack -r 3 --oracle z2");
  CHECK(loop.code == 2);
  CHECK(loop.out.find("descent acyclic no\n") != std::string::npos);
  CHECK(loop.out.find("cycle:\n  b -a-> ab\n") != std::string::npos);
}

TEST_CASE("user catalog directory") {
  fs::create_directories(scratch() / "catalog");
  write("catalog/z3.rules", "LETTERS a A\nINV a A\nRULES\naA -> 1\nAa -> 1\naa -> A\nAA -> a\n");
  std::string env = "AUTOSTACK_CATALOG_DIR='" + (scratch() / "catalog").string() + "' ";
  auto        r   = run("wp z3 aaa");
  CHECK(r.code == 4);
  std::string cmd = "cd '" + scratch().string() + "' && " + env + "'" AUTOSTACK_CLI "' wp z3 aaa";
  FILE*       pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char        buf[64] = {};
  std::size_t n       = std::fread(buf, 1, sizeof buf - 1, pipe);
  ::pclose(pipe);
  CHECK(std::string(buf, n) == "identity\n");
}

TEST_CASE("outputs are byte-stable") {
  for (std::string args : {"reduce klein abAB --trace", "ball s3 -r 4 --dot -",
                           "diagram klein abaB --json -", "check z2 -r 3", "fellow z2 -r 3",
                           "process s3", "convert cprs2stack klein -"}) {
    INFO(args);
    auto first  = run(args);
    auto second = run(args);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
    CHECK_FALSE(first.out.empty());
  }
}
