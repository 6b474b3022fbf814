#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "ascent/csv.hpp"

using namespace ascent;

TEST_CASE("read_csv parses quoted fields, embedded commas and newlines", "[csv]") {
  std::istringstream in("a,b,c\n1,\"x,y\",\"line1\nline2\"\n2,\"he said \"\"hi\"\"\",z\n");
  CsvTable table = read_csv(in);
  REQUIRE(table.header == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[0][1] == "x,y");
  CHECK(table.rows[0][2] == "line1\nline2");
  CHECK(table.rows[1][1] == "he said \"hi\"");
}

TEST_CASE("read_csv accepts crlf and missing trailing newline", "[csv]") {
  std::istringstream in("a,b\r\n1,2\r\n3,4");
  CsvTable table = read_csv(in);
  REQUIRE(table.rows.size() == 2);
  CHECK(table.rows[1] == std::vector<std::string>{"3", "4"});
}

TEST_CASE("read_csv header-only stream yields no rows", "[csv]") {
  std::istringstream in("a,b,c\n");
  CsvTable table = read_csv(in);
  CHECK(table.header.size() == 3);
  CHECK(table.rows.empty());
}

TEST_CASE("read_csv rejects unterminated quotes", "[csv]") {
  std::istringstream in("a,b\n\"open,2\n");
  CHECK_THROWS_AS(read_csv(in), InputError);
}

TEST_CASE("csv writer round-trips fields needing quotes", "[csv]") {
  std::ostringstream out;
  write_csv_row(out, {"plain", "with,comma", "with\"quote", "multi\nline"});
  std::istringstream in(out.str());
  CsvTable table = read_csv(in);
  CHECK(table.header == std::vector<std::string>{"plain", "with,comma", "with\"quote",
                                                 "multi\nline"});
}
