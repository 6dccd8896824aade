#include <cmath>
#include <set>

#include "doctest.h"

#include "capdrift/metrics/choice.hpp"
#include "capdrift/metrics/citation.hpp"
#include "capdrift/metrics/code_exec.hpp"
#include "capdrift/metrics/constraints.hpp"
#include "capdrift/metrics/evidence.hpp"
#include "capdrift/metrics/numeric.hpp"
#include "capdrift/metrics/registry.hpp"
#include "capdrift/metrics/schema.hpp"
#include "capdrift/metrics/style.hpp"
#include "capdrift/metrics/tool_call.hpp"
#include "capdrift/util/jsonl.hpp"
#include "support/temp_dir.hpp"

using namespace capdrift;
using capdrift::testing::TempDir;

namespace {
std::filesystem::path corpus(const char* name) {
  return std::filesystem::path(CAPDRIFT_DATA_DIR) / "corpora" / name;
}
}  // namespace

TEST_CASE("metric registry knows every metric") {
  CHECK(all_metrics().size() == 26);
  CHECK(find_metric("numeric_acc").has_value());
  CHECK_FALSE(find_metric("nope").has_value());
  CHECK(is_judge_metric("faithfulness"));
  CHECK_FALSE(is_judge_metric("choice_acc"));
}

TEST_CASE("choice corpus agrees 100%") {
  for (const auto& row : read_jsonl(corpus("choice_cases.jsonl"))) {
    std::vector<std::string> choices;
    for (const auto& c : row.at("choices")) choices.push_back(c.get<std::string>());
    ChoiceExtraction got =
        extract_choice(row.at("response").get<std::string>(), choices);
    INFO("case ", row.at("case").get<int>());
    if (row.at("expected").is_null()) {
      CHECK(got.fallback);
    } else {
      REQUIRE(got.extracted.has_value());
      CHECK(*got.extracted == row.at("expected").get<std::string>());
    }
  }
}

TEST_CASE("numeric corpus agrees 100%") {
  for (const auto& row : read_jsonl(corpus("numeric_cases.jsonl"))) {
    NumericExtraction got =
        extract_number(row.at("response").get<std::string>());
    INFO("case ", row.at("case").get<int>());
    if (row.at("expected").is_null()) {
      CHECK(got.fallback);
    } else {
      REQUIRE(got.value.has_value());
      CHECK(*got.value == doctest::Approx(row.at("expected").get<double>())
                              .epsilon(1e-9));
    }
  }
}

TEST_CASE("schema corpus agrees 100%") {
  for (const auto& row : read_jsonl(corpus("schema_cases.jsonl"))) {
    SchemaReport got = score_schema(row.at("response").get<std::string>(),
                                    output_schema(row.at("schema_id").get<std::string>()));
    INFO("case ", row.at("case").get<int>());
    CHECK(got.strict_pass == row.at("strict_pass").get<bool>());
    CHECK(got.lenient_pass == row.at("lenient_pass").get<bool>());
    std::set<std::string> want_missing, want_wrong;
    for (const auto& f : row.at("missing")) want_missing.insert(f.get<std::string>());
    for (const auto& f : row.at("wrong_type")) want_wrong.insert(f.get<std::string>());
    CHECK(std::set<std::string>(got.missing.begin(), got.missing.end()) ==
          want_missing);
    CHECK(std::set<std::string>(got.wrong_type.begin(), got.wrong_type.end()) ==
          want_wrong);
  }
}

TEST_CASE("evidence corpus agrees >= 90%") {
  int agree = 0, total = 0;
  for (const auto& row : read_jsonl(corpus("evidence_cases.jsonl"))) {
    std::vector<std::string> passages;
    for (const auto& p : row.at("passages")) passages.push_back(p.get<std::string>());
    EvidenceOverlap got =
        evidence_overlap(row.at("answer").get<std::string>(), passages);
    ++total;
    if (got.hit == row.at("expected_hit").get<bool>()) ++agree;
  }
  REQUIRE(total == 30);
  CHECK(agree >= 27);
}

TEST_CASE("style corpus agrees on every field") {
  const auto lexicon = load_hedging_lexicon(
      (std::filesystem::path(CAPDRIFT_DATA_DIR) / "lexicons" / "hedging.txt")
          .string());
  REQUIRE_FALSE(lexicon.empty());
  for (const auto& row : read_jsonl(corpus("style_cases.jsonl"))) {
    StyleStats got = score_style(row.at("response").get<std::string>(), lexicon);
    const auto& want = row.at("expected");
    INFO("case ", row.at("case").get<int>());
    CHECK(got.answer_length_words == want.at("words").get<long>());
    CHECK(got.num_sentences == want.at("sentences").get<long>());
    CHECK(got.mean_sentence_length ==
          doctest::Approx(want.at("mean").get<double>()).epsilon(1e-12));
    CHECK(got.has_bullets == want.at("bullets").get<bool>());
    CHECK(got.has_table == want.at("table").get<bool>());
    CHECK(got.has_emoji == want.at("emoji").get<bool>());
    CHECK(got.hedged == want.at("hedged").get<bool>());
    CHECK(got.direct_first_sentence == want.at("direct").get<bool>());
  }
}

TEST_CASE("citation scoring") {
  CitationScore none = score_citation("no brackets here", 3, {1});
  CHECK_FALSE(none.used_citation);
  CHECK(none.format_ok);  // vacuous
  CHECK(none.source_acc == 0.0);

  CitationScore good = score_citation("see [1] and [2,3]", 3, {1, 3});
  CHECK(good.used_citation);
  CHECK(good.format_ok);
  CHECK(good.cited == std::set<int>{1, 2, 3});
  CHECK(good.source_acc == doctest::Approx(2.0 / 3.0));

  CitationScore bad = score_citation("see [4]", 3, {1});
  CHECK(bad.used_citation);
  CHECK_FALSE(bad.format_ok);  // out of range
}

TEST_CASE("tool call scoring canonicalizes numbers") {
  nlohmann::json expected{{"name", "lookup"},
                          {"arguments", {{"limit", 2}, {"q", "cats"}}}};
  ToolCallScore exact = score_tool_call(
      R"(calling {"name": "lookup", "arguments": {"q": "cats", "limit": 2.0}})",
      expected);
  CHECK(exact.parsed);
  CHECK(exact.selection == 1.0);
  CHECK(exact.args == 1.0);

  ToolCallScore wrong_tool = score_tool_call(
      R"({"name": "search", "arguments": {"q": "cats", "limit": 2}})", expected);
  CHECK(wrong_tool.selection == 0.0);
  CHECK(wrong_tool.args == 0.0);

  ToolCallScore wrong_args = score_tool_call(
      R"({"name": "lookup", "arguments": {"q": "dogs", "limit": 2}})", expected);
  CHECK(wrong_args.selection == 1.0);
  CHECK(wrong_args.args == 0.0);

  CHECK_FALSE(score_tool_call("no json at all", expected).parsed);
  CHECK(canonicalize_args(nlohmann::json::parse("[2.0, 3.5]")).dump() ==
        "[2,3.5]");
}

TEST_CASE("constraints scoring") {
  nlohmann::json cs = nlohmann::json::array(
      {{{"kind", "max_words"}, {"n", 5}}, {{"kind", "include_keyword"}, {"text", "cat"}}});
  CHECK(score_constraints("the CAT sat", cs).value == 1.0);
  CHECK(score_constraints("the dog sat", cs).value == 0.0);
  CHECK(score_constraints("one two three four five six cat", cs).value == 0.0);

  ConstraintsScore unknown = score_constraints(
      "x", nlohmann::json::array({{{"kind", "telepathy"}}}));
  CHECK(unknown.unknown_kind);

  nlohmann::json bullets = nlohmann::json::array({{{"kind", "min_bullets"}, {"n", 2}}});
  CHECK(score_constraints("- a\n- b", bullets).value == 1.0);
  CHECK(score_constraints("- a", bullets).value == 0.0);
}

TEST_CASE("evidence refuses stopword-only answers") {
  EvidenceOverlap ov = evidence_overlap("the of and", {"the of and is here"});
  CHECK_FALSE(ov.hit);
}

TEST_CASE("code exec runs the configured command on two files") {
  TempDir tmp("exec");
  CodeExecConfig cfg;
  cfg.work_dir = tmp.path.string();

  SUBCASE("disabled executor never runs") {
    cfg.command = "";
    CodeExecResult r = score_code("```\nx\n```", "tests", cfg);
    CHECK_FALSE(r.ran);
  }
  SUBCASE("exit status is the verdict") {
    cfg.command = "cmp -s";  // passes iff code file == tests file
    CodeExecResult same = score_code("```py\nprint(1)\n```", "print(1)\n", cfg);
    CHECK(same.ran);
    CHECK(same.value == 1.0);
    CodeExecResult diff = score_code("```py\nprint(1)\n```", "print(2)\n", cfg);
    CHECK(diff.ran);
    CHECK(diff.value == 0.0);
  }
  SUBCASE("timeout kills and scores zero") {
    cfg.command = "sleep 5; true";
    cfg.timeout_s = 0.2;
    CodeExecResult r = score_code("```\nx\n```", "y", cfg);
    CHECK(r.ran);
    CHECK(r.timed_out);
    CHECK(r.value == 0.0);
  }
}

TEST_CASE("code block extraction") {
  CHECK(extract_code_block("```python\nx = 1\n```") == "x = 1\n");
  CHECK(extract_code_block("no fence") == "no fence");
  CHECK(extract_code_block("pre\n```\na\n```\npost\n```\nb\n```") == "a\n");
}
