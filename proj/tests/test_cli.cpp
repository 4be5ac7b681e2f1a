#include <doctest.h>
#include <json.hpp>

#include <sstream>

#include "cli.hpp"
#include "takagi/point.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = takagi::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

json call_json(std::vector<std::string> args) {
  auto r = call(std::move(args));
  REQUIRE(r.code == 0);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("eval") {
  auto doc = call_json({"eval", "--radix", "2", "--point", "1/2", "--exact"});
  CHECK(doc["schema"] == "1");
  CHECK(doc["value"]["num"] == "1");
  CHECK(doc["value"]["den"] == "2");

  doc = call_json({"eval", "--radix", "2", "--point", "1/3"});
  CHECK(doc["mode"] == "exact");
  CHECK(doc["value"]["num"] == "2");
  CHECK(doc["value"]["den"] == "3");

  doc = call_json({"eval", "--radix", "3", "--point", "sparse:b=10,on=0,off=1", "--depth", "50"});
  CHECK(doc["mode"] == "enclosure");
  CHECK(doc["terms"] == 50);

  auto csv = call({"--format", "csv", "eval", "-r", "2", "-x", "1/3"});
  CHECK(csv.code == 0);
  CHECK(csv.out == "point,radix,mode,terms,lo_num,lo_den,hi_num,hi_den\n0.(01)_2,2,exact,,2,3,2,3\n");
}

TEST_CASE("classify") {
  auto doc = call_json({"classify", "--radix", "3", "--point", "sparse:b=10,on=0,off=1", "--depth", "4"});
  const auto& row = doc["results"][0];
  CHECK(row["left"]["result"] == "PlusInfinity");
  CHECK(row["left"]["certainty"] == "Heuristic");
  CHECK(row["right"]["result"] == "NotInfinite");
  CHECK(row["right"]["certainty"] == "Heuristic");

  doc = call_json({"classify", "-r", "2", "-x", "1/4", "-x", "1/7", "-x", "1/3"});
  REQUIRE(doc["results"].size() == 3);
  CHECK(doc["results"][0]["class"] == "D");
  CHECK(doc["results"][0]["right"]["result"] == "PlusInfinity");
  CHECK(doc["results"][1]["left"]["result"] == "PlusInfinity");
  CHECK(doc["results"][2]["right"]["result"] == "NotInfinite");
  CHECK(doc["results"][2]["right"]["certainty"] == "Certified");
}

TEST_CASE("fractal dims example") {
  auto doc = call_json({"fractal", "dims", "--radix", "3", "--n", "3"});
  CHECK(doc["count"] == "8");
  CHECK(doc["exact_ratio"].get<double>() == doctest::Approx(0.6309).epsilon(1e-4));
}

TEST_CASE("other subcommands run") {
  CHECK(call_json({"signs", "-r", "2", "-x", "1/3", "--count", "4"})["signs"] == json({1, -1, 1, -1}));
  CHECK(call_json({"criterion", "-r", "2", "-x", "1/7", "--side", "right", "--sign", "plus", "--count", "5"})["terms"]
            .size() == 5);
  CHECK(call_json({"probe", "-r", "2", "-x", "1/4", "--side", "right", "--steps", "8"})["steps"].size() == 8);
  CHECK(call_json({"fractal", "enum", "-r", "3", "--n", "3"})["count"] == 8);
  CHECK(call_json({"fractal", "ifs", "-r", "3", "--n", "3", "--depth", "2"})["count"] == 64);
  CHECK(call_json({"fractal", "boxdim", "-r", "3", "--n", "3", "--depth", "2", "--m", "3", "--m", "6"})["slope"]
            .get<double>() == doctest::Approx(std::log(8.0) / std::log(27.0)));
  auto w = call_json({"fractal", "witness", "-r", "3", "--n", "3", "--period", "002", "--steps", "10"});
  CHECK(w["left"]["result"] == "PlusInfinity");
  auto s = call_json({"sample", "-r", "2", "--digits", "50", "--samples", "100", "--seed", "4"});
  CHECK(s["samples"] == 100);

  auto ifs_csv = call({"fractal", "ifs", "-r", "2", "--n", "3", "--depth", "1", "--format", "csv"});
  CHECK(ifs_csv.out == "lo_num,lo_den,hi_num,hi_den\n1,8,1,4\n1,4,3,8\n1,2,5,8\n");  // words 001, 010, 100
}

TEST_CASE("determinism") {
  const std::vector<std::vector<std::string>> runs{
      {"classify", "-r", "3", "-x", "sparse:b=10,on=0,off=1", "-x", "5/13", "--depth", "3"},
      {"sample", "-r", "3", "--digits", "100", "--samples", "1000", "--seed", "9", "--threads", "3"},
      {"probe", "-r", "3", "-x", "sparse:b=10,on=0,off=1", "--side", "left", "--steps", "4"},
  };
  for (const auto& args : runs) CHECK(call(args).out == call(args).out);
  auto one = call({"sample", "-r", "3", "--digits", "100", "--samples", "1000", "--seed", "9", "--threads", "1"});
  auto many = call({"sample", "-r", "3", "--digits", "100", "--samples", "1000", "--seed", "9", "--threads", "4"});
  CHECK(one.out == many.out);
}

TEST_CASE("echoed points parse back") {
  for (std::string p : {"1/3", "5/13", "0.1(01)_2", "1"}) {
    auto doc = call_json({"eval", "-r", p == "0.1(01)_2" ? "2" : "3", "-x", p});
    const std::string echo = doc["point"];
    const int r = doc["radix"];
    CHECK(takagi::parse_point(echo, takagi::Radix(r)) == takagi::parse_point(p, takagi::Radix(r)));
  }
}

TEST_CASE("exit codes") {
  auto r = call({"eval", "--radix", "2", "--point", "3/2"});
  CHECK(r.code == 2);
  CHECK(json::parse(r.err)["error"] == "parse");
  CHECK(r.err.find('\n') == r.err.size() - 1);

  CHECK(call({"eval", "--radix", "1", "--point", "1/2"}).code == 2);
  CHECK(call({"bogus"}).code == 2);
  CHECK(call({"eval", "--point", "1/2"}).code == 2);
  CHECK(call({"eval", "-r", "3", "-x", "sparse:b=10,on=0,off=1", "--exact"}).code == 2);
  CHECK(call({"signs", "-r", "2", "-x", "1/4"}).code == 2);

  r = call({"fractal", "ifs", "-r", "3", "--n", "3", "--depth", "9", "--cap", "100"});
  CHECK(r.code == 1);
  CHECK(json::parse(r.err)["error"] == "cap");
  r = call({"eval", "-r", "2", "-x", "1/1000003"});  // cycle longer than 10^6 states
  CHECK(r.code == 1);
  CHECK(json::parse(r.err)["error"] == "cap");

  CHECK(call({"--help"}).code == 0);
}
