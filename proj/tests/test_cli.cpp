#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ans/catalog.hpp"
#include "ans/operations.hpp"
#include "ans/text_format.hpp"
#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kData = ANS_DATA_DIR;
const std::string kTeaching50 = "01023031200231010123023031203120231002310123010123";

std::string data(const std::string& name) { return kData + "/" + name; }

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_ans(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ans::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Fresh scratch directory per test case.
struct Scratch {
  fs::path dir;
  Scratch() {
    static int counter = 0;
    dir = fs::temp_directory_path() / ("ans-cli-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator()(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("seq prints the teaching string") {
  auto r = run_ans({"seq", "-s", data("ab.dfa"), "-m", data("teach.dfao"), "--count", "50"});
  CHECK(r.code == 0);
  CHECK(r.out == kTeaching50 + "\n");
  auto tail = run_ans({"seq", "-s", data("ab.dfa"), "-m", data("teach.dfao"), "--from", "10", "--count", "5"});
  CHECK(tail.out == kTeaching50.substr(10, 5) + "\n");
}

TEST_CASE("rep and val, with @eps") {
  CHECK(run_ans({"val", "-s", data("ab.dfa"), "@eps"}).out == "0\n");
  CHECK(run_ans({"rep", "-s", data("ab.dfa"), "0", "4", "9"}).out == "@eps\nab\nbbb\n");
  CHECK(run_ans({"val", "-s", data("ab.dfa"), "ab", "bbb"}).out == "4\n9\n");
  CHECK(run_ans({"rep", "-s", data("binary.dfa"), "1267650600228229401496703205376"}).out ==
        "1" + std::string(100, '0') + "\n");
  CHECK(run_ans({"enum", "-s", data("ab.dfa"), "--count", "4"}).out == "@eps\na\nb\naa\n");
}

TEST_CASE("exit codes") {
  auto outside = run_ans({"val", "-s", data("ab.dfa"), "ba"});
  CHECK(outside.code == ans::cli::kExitDomain);
  CHECK(outside.err.find("not in L") != std::string::npos);
  CHECK(run_ans({"rep", "-s", data("ab.dfa"), "-3"}).code == ans::cli::kExitInternal);
  CHECK(run_ans({"rep", "-s", data("ab.dfa"), "100000000000000000000"}).code == ans::cli::kExitDomain);
  CHECK(run_ans({"seq", "-s", data("missing.dfa"), "-m", data("teach.dfao")}).code == ans::cli::kExitInternal);
  CHECK(run_ans({"no-such-command"}).code == ans::cli::kExitInternal);
  CHECK(run_ans({}).code == ans::cli::kExitInternal);
  CHECK(run_ans({"--help"}).code == 0);
  CHECK(run_ans({"kernel-to-dfao", "-s", data("ab.dfa"), "--squares", "--max-states", "64", "--bound", "24"}).code ==
        ans::cli::kExitDomain);
}

TEST_CASE("parse errors name the file and the line") {
  Scratch tmp;
  std::ofstream(tmp("bad.dfa")) << "alphabet: a b\nstates: p\nstart: p\nfinal: p\ntrans: p c p\n";
  auto r = run_ans({"minimize", tmp("bad.dfa")});
  CHECK(r.code == ans::cli::kExitInternal);
  CHECK(r.err.find(tmp("bad.dfa") + ":5:") != std::string::npos);
}

TEST_CASE("from-morphism reproduces {a,c}*{b,d}{a,b}* ∪ {a,c}*") {
  Scratch tmp;
  auto r = run_ans({"from-morphism", data("loglog.mor"), "-o", tmp("L.dfa"), "--dfao", tmp("M.dfao")});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(run_ans({"equiv", tmp("L.dfa"), data("acbd.dfa")}).out == "equivalent\n");
  CHECK(run_ans({"seq", "-s", tmp("L.dfa"), "-m", tmp("M.dfao"), "--count", "17"}).out == "00101010111010111\n");
  auto other = run_ans({"equiv", tmp("L.dfa"), data("three-block.dfa")});
  CHECK(other.code == ans::cli::kExitInternal);  // alphabets differ
}

TEST_CASE("equiv reports a witness") {
  Scratch tmp;
  std::ofstream(tmp("astar.dfa")) << "alphabet: a b\nstates: p\nstart: p\nfinal: p\ntrans: p a p\n";
  auto r = run_ans({"equiv", data("ab.dfa"), tmp("astar.dfa")});
  CHECK(r.code == 0);
  CHECK(r.out == "not equivalent\nwitness b\n");
}

TEST_CASE("fibers round trip through fibers-to-dfao") {
  Scratch tmp;
  std::vector<std::string> args{"fibers-to-dfao", "-s", data("ab.dfa"), "-o", tmp("t.dfao")};
  for (std::string s : {"0", "1", "2", "3"}) {
    REQUIRE(run_ans({"fiber", "-s", data("ab.dfa"), "-m", data("teach.dfao"), "--symbol", s, "-o", tmp("f" + s + ".dfa")})
                .code == 0);
    args.push_back("--fiber");
    args.push_back(s + "=" + tmp("f" + s + ".dfa"));
  }
  REQUIRE(run_ans(args).code == 0);
  CHECK(run_ans({"seq", "-s", data("ab.dfa"), "-m", tmp("t.dfao"), "--count", "50"}).out == kTeaching50 + "\n");

  // Dropping two fibers leaves L uncovered.
  auto gap = run_ans({"fibers-to-dfao", "-s", data("ab.dfa"), "--fiber", "0=" + tmp("f0.dfa"), "--fiber",
                  "1=" + tmp("f1.dfa")});
  CHECK(gap.code == ans::cli::kExitDomain);
}

TEST_CASE("Thue-Morse fibers compact to two states") {
  Scratch tmp;
  for (std::string s : {"0", "1"})
    REQUIRE(run_ans({"fiber", "-s", data("binary.dfa"), "-m", data("thue-morse.dfao"), "--symbol", s, "-o",
                 tmp("f" + s + ".dfa")})
                .code == 0);
  auto r = run_ans({"fibers-to-dfao", "-s", data("binary.dfa"), "--fiber", "0=" + tmp("f0.dfa"), "--fiber",
                "1=" + tmp("f1.dfa"), "--compact", "-o", tmp("tm.dfao")});
  REQUIRE(r.code == 0);
  CHECK(ans::load_dfao(tmp("tm.dfao")).num_states() == 2);
  CHECK(run_ans({"seq", "-s", data("binary.dfa"), "-m", tmp("tm.dfao"), "--count", "16"}).out == "0110100110010110\n");
}

TEST_CASE("subst output feeds fixpoint") {
  Scratch tmp;
  for (const char* flag : {"", "--canonical"}) {
    std::vector<std::string> args{"subst", "-s", data("ab.dfa"), "-m", data("teach.dfao"), "-o", tmp("t.mor")};
    if (*flag) args.push_back(flag);
    REQUIRE(run_ans(args).code == 0);
    CHECK(run_ans({"fixpoint", tmp("t.mor"), "--count", "50"}).out == kTeaching50 + "\n");
  }
  CHECK(run_ans({"fixpoint", data("witness.mor"), "--count", "16"}).out == "0112122122212222\n");
  CHECK(run_ans({"fixpoint", data("loglog.mor"), "--count", "6", "--letter", "1"}).out == "111111\n");
}

TEST_CASE("kernel and kernel-to-dfao") {
  auto k = run_ans({"kernel", "-s", data("ab.dfa"), "-m", data("teach.dfao"), "--terms", "5"});
  REQUIRE(k.code == 0);
  CHECK(k.out.rfind("classes 9\nbound 36 = 3 * 12\nk0 @eps 01023\n", 0) == 0);

  Scratch tmp;
  REQUIRE(run_ans({"kernel-to-dfao", "-s", data("ab.dfa"), "-m", data("teach.dfao"), "-o", tmp("k.dfao")}).code == 0);
  CHECK(run_ans({"seq", "-s", data("ab.dfa"), "-m", tmp("k.dfao"), "--count", "50"}).out == kTeaching50 + "\n");

  REQUIRE(run_ans({"kernel-to-dfao", "-s", data("binary.dfa"), "--progression", "1:3", "-o", tmp("p.dfao")}).code == 0);
  CHECK(run_ans({"seq", "-s", data("binary.dfa"), "-m", tmp("p.dfao"), "--count", "12"}).out == "010010010010\n");

  REQUIRE(run_ans({"kernel-to-dfao", "-s", data("squares.dfa"), "--squares", "-o", tmp("sq.dfao")}).code == 0);
  CHECK(run_ans({"seq", "-s", data("squares.dfa"), "-m", tmp("sq.dfao"), "--count", "17"}).out == "11001000010000001\n");
}

TEST_CASE("gaps, complexity, witness and binomial word") {
  auto g = run_ans({"gaps", "-s", data("ab.dfa"), "-m", data("teach.dfao"), "--factor", "00", "--horizon", "50",
                "--positions"});
  CHECK(g.out == "occurrences 2\nmax_gap 26\n10\n36\n");

  auto c = run_ans({"complexity", "--morphism", data("witness.mor"), "--prefix", "2000", "--nmax", "3"});
  CHECK(c.code == 0);
  CHECK(c.out.find("\n1 3 3.0000\n2 5 1.2500\n") != std::string::npos);
  CHECK(run_ans({"complexity", "--binomial", "-s", data("ab.dfa"), "-m", data("teach.dfao")}).code ==
        ans::cli::kExitInternal);

  auto w = run_ans({"witness-quadratic", "--prefix", "20000"});
  CHECK(w.code == 0);
  CHECK(w.out.find("embedding p_v(n) >= p_w(n) yes") != std::string::npos);

  CHECK(run_ans({"binomial-word"}).out == "1110111101111011110\n");
  CHECK(run_ans({"binomial-word", "--count", "29", "--ones"}).out ==
        "0 1 2 4 5 6 7 9 10 11 12 14 15 16 17 21 22 23 25 27 28\n");
}

TEST_CASE("minimize and reduce") {
  Scratch tmp;
  constexpr ans::State D = ans::kDead;
  const ans::Dfa big({"a", "b"}, 0, {1, 3, 2, 3, 1, 3, D, 3, 0, 0}, {true, true, true, true, false});
  std::ofstream(tmp("big.dfa")) << ans::format_dfa(big);
  auto m = run_ans({"minimize", tmp("big.dfa")});
  CHECK(m.out == ans::format_dfa(ans::minimize(big)));
  CHECK(run_ans({"reduce", data("teach.dfao")}).out == ans::format_dfao(ans::reduce_dfao(ans::catalog::teaching_dfao())));
}

TEST_CASE("complexity JSON schema") {
  auto r = run_ans({"complexity", "-s", data("ab.dfa"), "-m", data("teach.dfao"), "--prefix", "1000", "--nmax", "8",
                "--json"});
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  for (const char* key : {"prefix", "n", "p", "ratios", "verdicts"}) CHECK(j.contains(key));
  CHECK(j["prefix"] == 1000);
  CHECK(j["n"].size() == 8);
  CHECK(j["p"][0] == 4);
}

TEST_CASE("JSON outputs round-trip and reruns are byte-identical") {
  Scratch tmp;
  for (std::string s : {"0", "1", "2", "3"})
    REQUIRE(run_ans({"fiber", "-s", data("ab.dfa"), "-m", data("teach.dfao"), "--symbol", s, "-o", tmp("f" + s + ".dfa")})
                .code == 0);
  const std::vector<std::vector<std::string>> commands{
      {"rep", "-s", data("fibonacci.dfa"), "0", "7", "100"},
      {"val", "-s", data("ab.dfa"), "@eps", "aabbb"},
      {"enum", "-s", data("acbd.dfa"), "--count", "20"},
      {"seq", "-s", data("ab.dfa"), "-m", data("teach.dfao"), "--count", "30"},
      {"fiber", "-s", data("ab.dfa"), "-m", data("teach.dfao"), "--symbol", "2"},
      {"fibers-to-dfao", "-s", data("ab.dfa"), "--fiber", "0=" + tmp("f0.dfa"), "--fiber", "1=" + tmp("f1.dfa"), "--fiber",
       "2=" + tmp("f2.dfa"), "--fiber", "3=" + tmp("f3.dfa")},
      {"kernel", "-s", data("binary.dfa"), "-m", data("thue-morse.dfao"), "--terms", "8"},
      {"kernel-to-dfao", "-s", data("binary.dfa"), "--progression", "2:5"},
      {"gaps", "-s", data("ab.dfa"), "-m", data("teach.dfao"), "--factor", "00", "--horizon", "3000"},
      {"subst", "-s", data("binary.dfa"), "-m", data("thue-morse.dfao")},
      {"from-morphism", data("witness.mor")},
      {"fixpoint", data("loglog.mor"), "--count", "40"},
      {"complexity", "--binomial", "--prefix", "5000", "--nmax", "12"},
      {"witness-quadratic", "--prefix", "5000"},
      {"binomial-word", "--count", "40", "--ratio-check", "20000"},
      {"equiv", data("ab.dfa"), data("ab.dfa")},
      {"minimize", data("acbd.dfa")},
      {"reduce", data("thue-morse.dfao"), "--compact"},
  };
  for (auto args : commands) {
    CAPTURE(args[0]);
    const auto text1 = run_ans(args), text2 = run_ans(args);
    CHECK(text1.code == text2.code);
    CHECK(text1.out == text2.out);
    args.push_back("--json");
    const auto first = run_ans(args);
    REQUIRE(first.code == 0);
    CHECK(run_ans(args).out == first.out);
    const auto parsed = json::parse(first.out);
    CHECK(parsed.dump(2) + "\n" == first.out);
    CHECK(json::parse(parsed.dump(2)) == parsed);
  }
}

TEST_CASE("ANS_COLOR controls styling") {
  ::setenv("ANS_COLOR", "1", 1);
  CHECK(run_ans({"equiv", data("ab.dfa"), data("ab.dfa")}).out.find("\x1b[") != std::string::npos);
  CHECK(run_ans({"val", "-s", data("ab.dfa"), "ba"}).err.find("\x1b[") != std::string::npos);
  ::setenv("ANS_COLOR", "0", 1);
  CHECK(run_ans({"equiv", data("ab.dfa"), data("ab.dfa")}).out == "equivalent\n");
  CHECK(run_ans({"val", "-s", data("ab.dfa"), "ba"}).err.find("\x1b[") == std::string::npos);
  ::unsetenv("ANS_COLOR");
}
