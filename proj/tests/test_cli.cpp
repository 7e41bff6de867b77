#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "linsand_cli/cli.hpp"

using namespace linsand::cli;

namespace {
  struct Result {
    int         code;
    std::string out, err;
  };

  Result run_cli(std::vector<char const*> args) {
    std::ostringstream out, err;
    args.insert(args.begin(), "linsand");
    int const code = run(static_cast<int>(args.size()), args.data(), out, err);
    return {code, out.str(), err.str()};
  }

  size_t count_lines(std::string const& s) {
    return static_cast<size_t>(std::count(s.begin(), s.end(), '\n'));
  }

  std::filesystem::path temp_file(std::string const& name, std::string const& body) {
    auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << body;
    return p;
  }
}  // namespace

TEST_CASE("analyze", "[cli]") {
  auto r = run_cli({"analyze", "--q", "3", "--m", "2", "--n", "3", "--rank", "1", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["regular"] == "55");
  CHECK(j["enumerated"]["regular"] == 55);
  CHECK(j["dclasses"][1]["nR"] == "3");
  CHECK(j["dclasses"][1]["nL"] == "9");
  CHECK(j["dclasses"][1]["hSize"] == "2");

  auto z = run_cli({"analyze", "--q", "2", "--m", "2", "--n", "2", "--rank", "0"});
  REQUIRE(z.code == 0);
  CHECK(z.out.find("zero semigroup") != std::string::npos);
  CHECK(z.out.find("size q^{mn} = 16") != std::string::npos);
}

TEST_CASE("analyze from a sandwich file matches the rank shortcut", "[cli]") {
  auto path = temp_file("linsand_rank1.mat", "2 2 2\n1 1\n1 1\n");
  auto f    = run_cli({"analyze", "--q", "2", "--m", "2", "--n", "2", "--sandwich-file",
                       path.c_str(), "--format", "json"});
  auto k    = run_cli({"analyze", "--q", "2", "--m", "2", "--n", "2", "--rank", "1", "--format", "json"});
  REQUIRE(f.code == 0);
  REQUIRE(k.code == 0);
  auto jf = nlohmann::json::parse(f.out), jk = nlohmann::json::parse(k.out);
  jf.erase("A");
  jk.erase("A");
  CHECK(jf == jk);

  auto bad = run_cli({"analyze", "--q", "3", "--sandwich-file", path.c_str()});
  CHECK(bad.code == 2);
  auto both = run_cli({"analyze", "--q", "2", "--m", "2", "--n", "2", "--rank", "1",
                       "--sandwich-file", path.c_str()});
  CHECK(both.code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("eggbox formats", "[cli]") {
  auto csv = run_cli({"eggbox", "--q", "3", "--m", "2", "--n", "3", "--rank", "1", "--scope",
                      "mdclass:1", "--format", "csv"});
  REQUIRE(csv.code == 0);
  CHECK(count_lines(csv.out) == 1 + 4 * 13);
  CHECK(csv.out.rfind("s,rKey,lKey,size,isGroup,nIdempotents\n", 0) == 0);

  auto dot = run_cli({"eggbox", "--q", "2", "--m", "2", "--n", "3", "--rank", "2", "--format", "dot"});
  REQUIRE(dot.code == 0);
  CHECK(dot.out.find("d1 -> d0;") != std::string::npos);
  CHECK(dot.out.find("d2 -> d1;") != std::string::npos);
  CHECK(dot.out.find("d2 -> d0;") == std::string::npos);

  auto zero = run_cli({"eggbox", "--q", "2", "--m", "2", "--n", "2", "--rank", "0", "--format", "json"});
  REQUIRE(zero.code == 0);
  auto j = nlohmann::json::parse(zero.out);
  CHECK(j["dclasses"].size() == 1);
  CHECK(j["order"].empty());

  auto again = run_cli({"eggbox", "--q", "2", "--m", "2", "--n", "3", "--rank", "2", "--format", "dot"});
  CHECK(again.out == dot.out);

  auto path = std::filesystem::temp_directory_path() / "linsand_egg.csv";
  auto file = run_cli({"eggbox", "--q", "3", "--m", "2", "--n", "3", "--rank", "1", "--scope",
                       "mdclass:1", "--format", "csv", "--out", path.c_str()});
  CHECK(file.code == 0);
  CHECK(file.out.empty());
  std::ifstream in(path);
  std::stringstream body;
  body << in.rdbuf();
  CHECK(body.str() == csv.out);
  std::filesystem::remove(path);
}

TEST_CASE("verify subsets and fault injection", "[cli]") {
  auto ok = run_cli({"verify", "--only", "counts", "--grid", "q=2;m=1-2;n=1-2"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("PASS") != std::string::npos);

  auto bad = run_cli({"verify", "--only", "counts", "--grid", "q=2;m=1-2;n=1-2", "--inject-fault",
                      "counts", "--format", "json"});
  CHECK(bad.code == 1);
  auto j = nlohmann::json::parse(bad.out);
  CHECK(j["summary"]["ok"] == false);
  CHECK(j["instances"][0]["groups"]["counts"]["failures"][0].get<std::string>().find("|P| formula")
        != std::string::npos);

  CHECK(run_cli({"verify", "--only", "nonsense"}).code == 2);
  CHECK(run_cli({"verify", "--grid", "q=2;z=3"}).code == 2);
}

TEST_CASE("generators", "[cli]") {
  auto r = run_cli({"generators", "--target", "full", "--q", "2", "--m", "2", "--n", "3", "--rank", "2",
                    "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["generators"].size() == 7);
  CHECK(j["certified"] == true);
  CHECK(j["closureSize"] == 64);

  auto t = run_cli({"generators", "--target", "full", "--q", "2", "--m", "2", "--n", "3", "--rank", "2"});
  CHECK(t.out.find("certified") != std::string::npos);

  CHECK(run_cli({"generators", "--target", "full", "--q", "2", "--m", "2", "--n", "2", "--rank", "2"}).code
        == 2);
  CHECK(run_cli({"generators", "--target", "bogus", "--q", "2", "--m", "2", "--n", "2", "--rank", "1"}).code
        == 2);
}

TEST_CASE("classify", "[cli]") {
  auto r = run_cli({"classify", "--left", "q=2,m=2,n=2,rank=0", "--right", "q=4,m=2,n=1,rank=0"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("isomorphic: yes") != std::string::npos);
  CHECK(r.out.find("verified") != std::string::npos);

  auto d = run_cli({"classify", "--left", "q=2,m=2,n=2,rank=1", "--right", "q=2,m=2,n=2,rank=2"});
  CHECK(d.out.find("isomorphic: no") != std::string::npos);
  CHECK(run_cli({"classify", "--left", "q=2,m=2", "--right", "q=2,m=2,n=2,rank=2"}).code == 2);
}

TEST_CASE("formulas", "[cli]") {
  auto r = run_cli({"formulas", "--q", "2", "--m", "2", "--n", "2", "--rank", "1", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["regular"] == "5");
  CHECK(j["idempotents"] == "5");
  CHECK(j["ranks"]["full"] == "6");
}

TEST_CASE("budgets and exit codes", "[cli]") {
  CHECK(run_cli({"eggbox", "--q", "3", "--m", "2", "--n", "3", "--rank", "1", "--scope", "all",
                 "--budget", "10"})
            .code
        == 3);
  ::setenv("SANDWICH_BUDGET", "10", 1);
  CHECK(run_cli({"eggbox", "--q", "3", "--m", "2", "--n", "3", "--rank", "1", "--scope", "all"}).code == 3);
  ::setenv("SANDWICH_BUDGET", "junk", 1);
  CHECK(run_cli({"eggbox", "--q", "2", "--m", "1", "--n", "1", "--rank", "1"}).code == 2);
  ::unsetenv("SANDWICH_BUDGET");
  CHECK(run_cli({"eggbox", "--q", "2", "--m", "1", "--n", "1", "--rank", "1"}).code == 0);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"analyze", "--q", "6", "--m", "1", "--n", "1", "--rank", "1"}).code == 2);
  CHECK(run_cli({"eggbox", "--q", "2", "--m", "2", "--n", "2", "--rank", "1", "--scope", "dclass:x"}).code
        == 2);
  CHECK(run_cli({"--help"}).code == 0);
}
