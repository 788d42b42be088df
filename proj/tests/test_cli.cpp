#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "svloja/cli.hpp"
#include "svloja/report.hpp"

using nlohmann::json;
namespace cli = svloja::cli;

namespace {

std::string data(const char *name) {
  return std::string(SVLOJA_TEST_DATA) + "/" + name + ".json";
}

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::vector<std::string> kFast = {"--samples", "10", "--sphere-samples",
                                        "32", "--workers", "1"};

std::vector<std::string> with(std::vector<std::string> args,
                              const std::vector<std::string> &extra = kFast) {
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

} // namespace

TEST_CASE("exponents") {
  const auto r = run({"exponents", "--n", "1", "--p", "1", "--d", "2"});
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["bounds"]["gradient"]["numerator"] == "89");
  CHECK(j["bounds"]["gradient"]["denominator"] == "90");
  CHECK(j["bounds"]["gradient_at_zero"]["numerator"] == "44");
  CHECK(j["bounds"]["error_bound"]["denominator"] == "45");
  CHECK(j["bounds"]["global_loja"]["numerator"] == "98415");
  CHECK(j["bounds"]["global_loja"]["denominator"] == "2");
  CHECK_FALSE(j["bounds"].contains("separation"));

  const auto t = run({"exponents", "--n", "1", "--p", "1", "--d", "2",
                      "--format", "text"});
  CHECK(t.out.find("89/90") != std::string::npos);
  CHECK(t.out.find("98415/2") != std::string::npos);

  const auto m = run({"exponents", "-m", data("x")});
  CHECK(json::parse(m.out)["bounds"]["gradient"]["denominator"] == "36");
  const auto pair = run({"exponents", "-m", data("x1"), "-m", data("circle")});
  CHECK(json::parse(pair.out)["bounds"]["factorization"]["denominator"] == "10125");

  CHECK(run({"exponents", "--n", "1"}).code == 4);
  CHECK(run({"exponents", "--n", "1", "--p", "1", "--d", "2", "--format",
             "csv"}).code == 4);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 4);
  CHECK(run({"bogus"}).code == 4);
  CHECK(run({"verify"}).code == 4);
  CHECK(run({"verify", "gradient"}).code == 4);
  CHECK(run({"verify", "gradient", "-m", "/no/such/file.json"}).code == 4);
  CHECK(run({"verify", "separation", "-m", data("x1")}).code == 4);
  CHECK(run({"eval", "-m", data("x"), "--x", "1,2"}).code == 4);
  CHECK(run({"eval", "-m", data("x"), "--x", "abc"}).code == 4);
  const auto bad = run({"eval", "-m", data("bad_json")});
  CHECK(bad.code == 4);
  CHECK(bad.err.find("not valid JSON") != std::string::npos);
  CHECK(run({"eval", "-m", data("bad_ragged")}).code == 4);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("eval, slope, grad-check, dist, fit") {
  auto r = run({"eval", "-m", data("diag"), "--x", "2,-1"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["f"] == 1.0);

  r = run({"slope", "-m", data("x2"), "--x=-1.5"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["slope_f"].get<double>() == doctest::Approx(3.0));

  r = run({"grad-check", "-m", data("x2"), "--x", "0.7"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["ok"] == true);
  CHECK(run({"grad-check", "-m", data("diag"), "--x", "1,1"}).code == 2);

  r = run({"dist", "-m", data("diag"), "--x", "2,3"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["value"].get<double>() == doctest::Approx(2.0));
  r = run({"dist", "-m", data("x1"), "-m", data("x2_plane"), "--x", "0.3,0.4"});
  CHECK(json::parse(r.out)["value"].get<double>() == doctest::Approx(0.5));
  r = run({"dist", "-m", data("nozeros"), "--x", "1"});
  CHECK(r.code == 3);
  CHECK(r.err.find("no zero found") != std::string::npos);

  r = run(with({"fit", "-m", data("x2"), "--base", "0"}));
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["alpha"].get<double>() == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("verify exit codes") {
  auto r = run(with({"verify", "gradient", "-m", data("x"), "--base", "0",
                     "--at-zero"}));
  CHECK(r.code == 0);
  const auto rep = svloja::report_from_json(json::parse(r.out));
  CHECK(rep.exponent_used.fraction() == "17/18");

  r = run(with({"verify", "gradient", "-m", data("const"), "--base", "0"}));
  CHECK(r.code == 3);

  r = run(with({"verify", "error-bound", "-m", data("nozeros"), "--radius", "2"}));
  CHECK(r.code == 3);
  CHECK(r.err.find("no zero found") != std::string::npos);
  CHECK(r.out.empty());

  r = run(with({"verify", "factorization", "-m", data("x2_plane"), "-m",
                data("x1"), "-m", data("circle"), "--radius", "2"}));
  CHECK(r.code == 3);
  CHECK(r.err.find("inclusion hypothesis violated") != std::string::npos);
  CHECK(r.err.find("(1, 0)") != std::string::npos);

  CHECK(run(with({"verify", "good-at-infinity", "-m", data("x")})).code == 0);
  CHECK(run(with({"verify", "good-at-infinity", "-m", data("x1x2")})).code == 1);
  CHECK(run(with({"verify", "holder", "-m", data("x1x2")})).code == 3);
  CHECK(run(with({"verify", "global", "-m", data("x")})).code == 0);
  CHECK(run(with({"verify", "compact-tail", "-m", data("x"), "--r-big", "10"}))
            .code == 0);
  CHECK(run(with({"verify", "separation", "-m", data("x1"), "-m",
                  data("x2_plane")})).code == 0);
  CHECK(run(with({"verify", "global-separation", "-m", data("x1"), "-m",
                  data("x1m1")})).code == 3);
}

TEST_CASE("formats and --out") {
  const auto args = with({"verify", "error-bound", "-m", data("x"), "--radius",
                          "2", "--format", "csv"});
  const auto r = run(args);
  CHECK(r.code == 0);
  CHECK(r.out.rfind("radius,point,f,slope,lhs,rhs,ratio,excluded,multiplicity\n",
                    0) == 0);
  const auto t = run(with({"verify", "error-bound", "-m", data("x"),
                           "--format", "text"}));
  CHECK(t.out.find("verdict:") != std::string::npos);

  const auto path = std::filesystem::temp_directory_path() / "svloja_cli_out.json";
  const auto o = run(with({"verify", "global", "-m", data("x"), "--out",
                           path.string()}));
  CHECK(o.code == 0);
  CHECK(o.out.empty());
  std::ifstream in(path);
  const auto j = json::parse(in);
  CHECK(j["inequality_id"] == "global");
  std::filesystem::remove(path);
}

TEST_CASE("property: seeded output is byte-identical and worker-independent") {
  const std::vector<std::string> base = {"verify", "gradient", "-m",
                                         data("diag"), "--base", "0.5,0.2",
                                         "--seed", "99", "--samples", "10",
                                         "--sphere-samples", "32"};
  auto one = base, four = base;
  one.insert(one.end(), {"--workers", "1"});
  four.insert(four.end(), {"--workers", "4"});
  const auto a = run(one), b = run(one), c = run(four);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  auto other = one;
  other[7] = "100";
  CHECK(run(other).out != a.out);
}

TEST_CASE("property: every JSON report parses back") {
  for (const auto &args :
       std::vector<std::vector<std::string>>{
           {"verify", "gradient", "-m", data("x3"), "--base", "0"},
           {"verify", "error-bound", "-m", data("x_xm1"), "--center", "0.5",
            "--radius", "2.5"},
           {"verify", "global", "-m", data("circle")},
           {"verify", "holder", "-m", data("x2")}}) {
    const auto r = run(with(args));
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(svloja::dump_json(svloja::report_to_json(svloja::report_from_json(j))) ==
          r.out);
  }
}
