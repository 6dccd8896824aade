#include <charconv>
#include <random>

#include "doctest.h"

#include "capdrift/util/fs.hpp"
#include "capdrift/util/hash.hpp"
#include "capdrift/util/jsonl.hpp"
#include "capdrift/util/numfmt.hpp"
#include "capdrift/util/text.hpp"
#include "support/temp_dir.hpp"

using namespace capdrift;
using capdrift::testing::TempDir;

TEST_CASE("fnv1a64 known vectors") {
  // Standard FNV-1a 64-bit test values.
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ull);
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("a").size() == 16);
}

TEST_CASE("text helpers") {
  CHECK(trim("  a b \n") == "a b");
  CHECK(trim("") == "");
  CHECK(trim(" \t\n ") == "");
  CHECK(lower_ascii("AbC1!") == "abc1!");
  CHECK(tokenize_ws("  one\ttwo\nthree ") ==
        std::vector<std::string>{"one", "two", "three"});
  CHECK(split_lines("a\nb\n").size() == 2);
  CHECK(split_lines("a\r\nb") == std::vector<std::string>{"a", "b"});
  CHECK(contains_icase("Hello World", "WORLD"));
  CHECK_FALSE(contains_icase("Hello", "world"));
}

TEST_CASE("normalize_for_match strips punctuation and case") {
  CHECK(normalize_for_match("Forty-Two!") == "forty two");
  CHECK(normalize_for_match("  The   Answer. ") == "the answer");
  CHECK(normalize_for_match("...") == "");
  // multibyte input survives without crashing and non-ascii is kept
  CHECK_FALSE(normalize_for_match("caf\xc3\xa9").empty());
}

TEST_CASE("utf8_next walks codepoints") {
  std::string s = "a\xc3\xa9\xe2\x82\xac";  // 'a', e-acute, euro sign
  size_t i = 0;
  CHECK(utf8_next(s, i) == 0x61);
  CHECK(utf8_next(s, i) == 0xe9);
  CHECK(utf8_next(s, i) == 0x20ac);
  CHECK(i == s.size());
}

TEST_CASE("fmt_double round-trips") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> dist(-1e6, 1e6);
  for (int i = 0; i < 2000; ++i) {
    double v = dist(gen);
    std::string s = fmt_double(v);
    double back = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), back);
    REQUIRE(ec == std::errc());
    REQUIRE(p == s.data() + s.size());
    CHECK(back == v);
  }
  CHECK(fmt_double(0.0) == "0");
  CHECK(fmt_double(-1.0) == "-1");
  CHECK(fmt_fixed(2.5, 2) == "2.50");
  CHECK(fmt_fixed(-0.125, 2) == "-0.12");  // printf rounding, pinned
}

TEST_CASE("jsonl round trip and torn tail") {
  TempDir tmp("jsonl");
  auto path = tmp / "log.jsonl";
  write_jsonl(path, {nlohmann::json{{"a", 1}}, nlohmann::json{{"b", 2}}});
  auto rows = read_jsonl(path);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].at("b") == 2);

  append_jsonl(path, nlohmann::json{{"c", 3}});
  CHECK(read_jsonl(path).size() == 3);

  // a torn final line (crash mid-append) is dropped only when tolerated
  std::string blob = read_file(path);
  write_file_atomic(path, blob + "{\"d\": 4");
  CHECK(read_jsonl(path, true).size() == 3);
  CHECK_THROWS(read_jsonl(path, false));
}

TEST_CASE("write_file_atomic creates parents") {
  TempDir tmp("fs");
  auto path = tmp.path / "a" / "b" / "c.txt";
  write_file_atomic(path, "hi");
  CHECK(read_file(path) == "hi");
}
