#include "wqed/table.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

using namespace wqed;

TEST_CASE("csv is rfc 4180 with crlf line ends") {
  ResultTable t({"x", "a,b"});
  t.append_row({1.0, 0.1});
  t.append_row({2.5, -3e-20});
  CHECK(t.to_csv() == "x,\"a,b\"\r\n1,0.1\r\n2.5,-3e-20\r\n");
}

TEST_CASE("error column only when a row is tagged") {
  ResultTable t({"x"});
  t.append_row({1.0});
  CHECK(t.to_csv().find("error") == std::string::npos);
  t.append_row({std::numeric_limits<double>::quiet_NaN()}, "grid point (x=2): \"bad\"");
  CHECK(t.has_errors());
  CHECK(t.to_csv() == "x,error\r\n1,\r\nnan,\"grid point (x=2): \"\"bad\"\"\"\r\n");
}

TEST_CASE("numbers round trip exactly") {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.2250738585072014e-308, 0.5650123456789}) {
    CHECK(std::stod(format_number(v)) == v);
  }
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("json layout and non-finite values") {
  ResultTable t({"x", "y"});
  t.append_row({1.0, std::numeric_limits<double>::quiet_NaN()}, "failed");
  t.metadata()["kind"] = "test";
  const auto j = t.to_json();
  CHECK(j["columns"] == nlohmann::json({"x", "y"}));
  CHECK(j["data"]["x"][0] == 1.0);
  CHECK(j["data"]["y"][0].is_null());
  CHECK(j["errors"][0] == "failed");
  CHECK(j["metadata"]["kind"] == "test");
}

TEST_CASE("row width and column lookup are checked") {
  ResultTable t({"x", "y"});
  CHECK_THROWS_AS(t.append_row({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(t.column("z"), std::invalid_argument);
  CHECK_THROWS_AS(ResultTable({"x", "x"}), std::invalid_argument);
}

TEST_CASE("same_data treats nan as equal and ignores metadata") {
  ResultTable a({"x"}), b({"x"});
  a.append_row({std::numeric_limits<double>::quiet_NaN()});
  b.append_row({std::numeric_limits<double>::quiet_NaN()});
  b.metadata()["timestamp"] = "later";
  CHECK(a.same_data(b));
  b.append_row({1.0});
  CHECK_FALSE(a.same_data(b));
}

TEST_CASE("writers create parent directories") {
  const auto dir = std::filesystem::temp_directory_path() / "wqed_table_test";
  std::filesystem::remove_all(dir);
  ResultTable t({"x"});
  t.append_row({0.25});
  t.write_csv(dir / "nested" / "t.csv");
  t.write_json(dir / "nested" / "t.json");
  std::ifstream f(dir / "nested" / "t.csv", std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == t.to_csv());
  std::ifstream g(dir / "nested" / "t.json");
  CHECK(nlohmann::json::parse(g)["data"]["x"][0] == 0.25);
  std::filesystem::remove_all(dir);
}

TEST_CASE("provenance carries version and utc timestamp") {
  const auto p = provenance();
  CHECK(p["version"].get<std::string>() != "unknown");
  const auto stamp = p["timestamp"].get<std::string>();
  CHECK(stamp.size() == 20);
  CHECK(stamp.back() == 'Z');
}
