#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "fuzzrank/csv.hpp"

using namespace fuzzrank;

namespace {

// Writes content to a unique temp file and returns its path.
std::string temp_file(const std::string& tag, const std::string& content) {
    std::string path = "test_csv_" + tag + ".tmp.csv";
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("read_csv parses a plain table") {
    auto path = temp_file("plain", "a,b,c\n1,2,3\n4,5,6\n");
    auto t = read_csv(path);
    CHECK(t.header == std::vector<std::string>{"a", "b", "c"});
    REQUIRE(t.n_rows() == 2);
    CHECK(t.rows[0] == std::vector<std::string>{"1", "2", "3"});
    CHECK(t.rows[1] == std::vector<std::string>{"4", "5", "6"});
    std::remove(path.c_str());
}

TEST_CASE("read_csv handles quotes, embedded commas, newlines and escapes") {
    auto path = temp_file("quoted", "name,value\n\"hello, world\",1\n\"line\nbreak\",2\n\"say \"\"hi\"\"\",3\n");
    auto t = read_csv(path);
    REQUIRE(t.n_rows() == 3);
    CHECK(t.rows[0][0] == "hello, world");
    CHECK(t.rows[1][0] == "line\nbreak");
    CHECK(t.rows[2][0] == "say \"hi\"");
    std::remove(path.c_str());
}

TEST_CASE("read_csv accepts CRLF line endings and a missing final newline") {
    auto path = temp_file("crlf", "a,b\r\n1,2\r\n3,4");
    auto t = read_csv(path);
    CHECK(t.header == std::vector<std::string>{"a", "b"});
    REQUIRE(t.n_rows() == 2);
    CHECK(t.rows[1] == std::vector<std::string>{"3", "4"});
    std::remove(path.c_str());
}

TEST_CASE("read_csv rejects ragged rows") {
    auto path = temp_file("ragged", "a,b\n1,2,3\n");
    CHECK_THROWS_AS(read_csv(path), std::runtime_error);
    std::remove(path.c_str());
}

TEST_CASE("read_csv rejects a missing file") {
    CHECK_THROWS_AS(read_csv("definitely_not_here.csv"), std::runtime_error);
}

TEST_CASE("csv_escape quotes only when needed") {
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("with,comma") == "\"with,comma\"");
    CHECK(csv_escape("with\"quote") == "\"with\"\"quote\"");
    CHECK(csv_escape("with\nnewline") == "\"with\nnewline\"");
}

TEST_CASE("write_csv then read_csv round-trips awkward cells") {
    std::vector<std::vector<std::string>> rows = {
        {"h1", "h,2"},
        {"a\"b", "c\nd"},
        {"", "plain"},
    };
    std::string path = "test_csv_roundtrip.tmp.csv";
    write_csv(path, rows);
    auto t = read_csv(path);
    CHECK(t.header == rows[0]);
    REQUIRE(t.n_rows() == 2);
    CHECK(t.rows[0] == rows[1]);
    CHECK(t.rows[1] == rows[2]);
    std::remove(path.c_str());
}
