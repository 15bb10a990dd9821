#include <doctest.h>

#include <sstream>

#include "hmzf/cli.hpp"
#include "hmzf/serialization.hpp"

using namespace hmzf;

namespace {
struct RunResult {
  int status;
  std::string out;
  std::string err;
};

RunResult run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = cli::run(std::move(args), out, err);
  return {status, out.str(), err.str()};
}
}  // namespace

TEST_CASE("stuffle subcommand") {
  auto r = run_cli({"stuffle", "2", "3"});
  CHECK(r.status == 0);
  CHECK(r.out.find("(2,3)") != std::string::npos);
  CHECK(r.out.find("(3,2)") != std::string::npos);
  CHECK(r.out.find("(5)") != std::string::npos);

  auto rs = run_cli({"--format", "structured", "stuffle", "2", "2"});
  CHECK(rs.status == 0);
  Json doc = Json::parse(rs.out);
  FormalSum fs = formal_sum_from_json(doc.at("expansion"));
  CHECK(fs == stuffle(Composition{2}, Composition{2}));
}

TEST_CASE("structured output is byte identical across runs") {
  auto a = run_cli({"--format", "structured", "stuffle", "2,1", "2"});
  auto b = run_cli({"--format", "structured", "stuffle", "2,1", "2"});
  CHECK(a.out == b.out);
  auto c = run_cli({"--format", "structured", "eval", "2,1", "--z", "0.5", "--tol", "1e-10"});
  auto d = run_cli({"--format", "structured", "eval", "2,1", "--z", "0.5", "--tol", "1e-10"});
  CHECK(c.status == 0);
  CHECK(c.out == d.out);
}

TEST_CASE("lyndon subcommands") {
  CHECK(run_cli({"lyndon", "test", "1,2"}).out.find("lyndon") == 0);
  CHECK(run_cli({"lyndon", "test", "2,1"}).out.find("not lyndon") != std::string::npos);
  auto f = run_cli({"lyndon", "factorize", "2,1,2"});
  CHECK(f.out.find("(2)(1,2)") != std::string::npos);
  auto c = run_cli({"lyndon", "count", "6"});
  CHECK(c.out.find("9") != std::string::npos);
  auto l = run_cli({"--format", "structured", "lyndon", "list", "--max-weight", "4"});
  Json doc = Json::parse(l.out);
  CHECK(doc.at("words").at("4").size() == 3);
}

TEST_CASE("dims and generators") {
  auto d = run_cli({"--format", "structured", "dims", "--max-weight", "8"});
  CHECK(d.status == 0);
  Json doc = Json::parse(d.out);
  std::vector<std::int64_t> dims = doc.at("dimensions").get<std::vector<std::int64_t>>();
  CHECK(dims == std::vector<std::int64_t>{1, 0, 1, 2, 4, 8, 16, 32, 64});
  CHECK(doc.at("deviates_from_printed_2_pow_n_minus_1").size() == 7);

  auto g = run_cli({"--format", "structured", "generators", "--max-weight", "4"});
  Json gdoc = Json::parse(g.out);
  CHECK(gdoc.at("table").at("generators").at("4").size() == 3);
}

TEST_CASE("reduce subcommand") {
  auto r = run_cli({"reduce", "2,2"});
  CHECK(r.status == 0);
  CHECK(r.out.find("1/2*G(2)^2") != std::string::npos);
  CHECK(r.out.find("-1/2*G(4)") != std::string::npos);

  auto bad = run_cli({"reduce", "1,2"});
  CHECK(bad.status == 2);
  CHECK(bad.err.find("convergent") != std::string::npos);
}

TEST_CASE("eval subcommand") {
  auto r = run_cli({"eval", "2,1", "--z", "0", "--tol", "1e-10"});
  CHECK(r.status == 0);
  CHECK(r.out.find("1.2020569031") != std::string::npos);
  CHECK(r.out.find("certified") == std::string::npos);  // depth 2 is heuristic
  CHECK(r.out.find("heuristic") != std::string::npos);

  auto z = run_cli({"eval", "2", "--z", "1,1", "--tol", "1e-10"});
  CHECK(z.status == 0);

  auto pole = run_cli({"eval", "2", "--z", "-1"});
  CHECK(pole.status == 2);

  auto divergent = run_cli({"eval", "1,2"});
  CHECK(divergent.status == 2);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli({"frobnicate"}).status == 2);
  CHECK(run_cli({"eval", "2", "--bogus-flag", "3"}).status == 2);
  CHECK(run_cli({}).status == 2);
}

TEST_CASE("verify subcommands succeed at desk scale") {
  auto f = run_cli({"verify", "freeness", "--max-weight", "5"});
  CHECK(f.status == 0);
  CHECK(f.out.find("pass") != std::string::npos);

  auto d = run_cli({"verify", "diffeq", "--max-weight", "3", "--tol", "1e-9"});
  CHECK(d.status == 0);
  CHECK(d.out.find("0 failures") != std::string::npos);

  auto s = run_cli({"verify", "stuffle", "--max-total-weight", "5", "--tol", "1e-9"});
  CHECK(s.status == 0);

  auto e = run_cli({"verify", "endtoend", "--max-weight", "3", "--exact-weight", "4"});
  CHECK(e.status == 0);

  auto i = run_cli({"verify", "independence", "--sets", "2", "--seed", "42"});
  CHECK(i.status == 0);
}

TEST_CASE("text output echoes the expanded invocation") {
  auto r = run_cli({"verify", "diffeq", "--max-weight", "2"});
  CHECK(r.out.find("# hmzf verify diffeq --max-weight 2 --tol") != std::string::npos);
  CHECK(r.out.find("--points") != std::string::npos);
}
