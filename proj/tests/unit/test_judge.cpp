#include <fstream>

#include "doctest.h"

#include "capdrift/judge/criteria.hpp"
#include "capdrift/judge/scoring.hpp"
#include "capdrift/judge/session.hpp"
#include "capdrift/judge/task.hpp"
#include "capdrift/util/fs.hpp"
#include "capdrift/util/jsonl.hpp"
#include "support/mock_http.hpp"
#include "support/rule_judge.hpp"
#include "support/temp_dir.hpp"

using namespace capdrift;
using capdrift::testing::MockServer;
using capdrift::testing::rule_judge_handler;
using capdrift::testing::TempDir;

namespace {

JudgeConfig mock_judge_config(const MockServer& srv) {
  JudgeConfig cfg;
  cfg.endpoint.base_url = srv.base_url();
  cfg.endpoint.model_id = "judge-mock";
  cfg.endpoint.max_attempts = 2;
  cfg.endpoint.backoff_base_s = 0.01;
  return cfg;
}

}  // namespace

TEST_CASE("criterion table round trips and every prompt template exists") {
  const std::filesystem::path dir =
      std::filesystem::path(CAPDRIFT_DATA_DIR) / "judge_prompts" / "v1";
  for (size_t i = 0; i < kCriterionCount; ++i) {
    Criterion c = static_cast<Criterion>(i);
    CHECK(parse_criterion(criterion_name(c)) == c);
    std::string tmpl = load_prompt_template(dir, c);
    CHECK_FALSE(tmpl.empty());
    // every declared payload field has a placeholder in the template
    for (const std::string& f : criterion_fields(c))
      CHECK(tmpl.find("{{" + f + "}}") != std::string::npos);
  }
  CHECK_THROWS(parse_criterion("vibes"));
}

TEST_CASE("make_task enforces the payload contract") {
  JudgeTask t = make_task(Criterion::equivalence,
                          {{"candidate", "a"}, {"gold", "b"}});
  CHECK(t.task_id ==
        make_task(Criterion::equivalence, {{"gold", "b"}, {"candidate", "a"}})
            .task_id);
  CHECK(t.task_id !=
        make_task(Criterion::equivalence, {{"candidate", "a"}, {"gold", "c"}})
            .task_id);

  // same payload, different criterion: same payload hash, different task id
  JudgeTask r = make_task(Criterion::refusal_class, {{"response", "x"}});
  JudgeTask u = make_task(Criterion::underspec_class, {{"response", "x"}});
  CHECK(r.payload_hash == u.payload_hash);
  CHECK(r.task_id != u.task_id);

  CHECK_THROWS_AS(make_task(Criterion::equivalence,
                            {{"candidate", "a"}, {"gold", "b"}, {"model", "m"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_task(Criterion::equivalence, {{"candidate", "a"}}),
                  std::invalid_argument);
}

TEST_CASE("render_prompt substitutes fields and rejects leftovers") {
  JudgeTask t = make_task(Criterion::equivalence,
                          {{"candidate", "foo"}, {"gold", "bar"}});
  CHECK(render_prompt(t, "C: {{candidate}} / G: {{gold}}") ==
        "C: foo / G: bar");
  CHECK_THROWS_AS(render_prompt(t, "{{candidate}} {{mystery}}"),
                  std::runtime_error);
}

TEST_CASE("parse_label") {
  CHECK(parse_label("match", Criterion::equivalence) == "match");
  CHECK(parse_label("Reasoning...\n\n**No match**", Criterion::equivalence) ==
        "no_match");
  CHECK(parse_label("The answer is a match", Criterion::equivalence) ==
        "match");
  CHECK(parse_label("could be match or no_match", Criterion::equivalence) ==
        "");
  CHECK(parse_label("", Criterion::equivalence) == "");
  // word boundaries: "invalid" must not satisfy "valid"
  CHECK(parse_label("invalid", Criterion::step_validity) == "invalid");
  CHECK(parse_label("Valid.", Criterion::step_validity) == "valid");
  CHECK(parse_label("Score: 0.5", Criterion::multiturn_consistency) == "0.5");
  CHECK(parse_label("1", Criterion::multiturn_consistency) == "1");
}

TEST_CASE("parse_claims strips list furniture") {
  auto claims = parse_claims(
      "- Paris is in France.\n2) Water boils at 100C.\n\n3. Third one\nplain");
  CHECK(claims == std::vector<std::string>{"Paris is in France.",
                                           "Water boils at 100C.", "Third one",
                                           "plain"});
  CHECK(parse_claims("NONE").empty());
  CHECK(parse_claims("none\n\n").empty());
}

TEST_CASE("live session caches, logs, retries, and resumes") {
  MockServer srv(rule_judge_handler());
  TempDir tmp("judge");
  const auto log = tmp / "judgments.jsonl";

  JudgeTask ok_task = make_task(
      Criterion::equivalence,
      {{"candidate", "the capital is Paris [same]"}, {"gold", "Paris"}});
  JudgeTask garbled = make_task(
      Criterion::equivalence,
      {{"candidate", "response with [garble] inside"}, {"gold", "x"}});

  {
    JudgeSession s(mock_judge_config(srv), log);
    Judgment j = s.ask(ok_task);
    CHECK(j.label == "match");
    CHECK(s.queried() == 1);
    Judgment again = s.ask(ok_task);  // cache hit, no new query
    CHECK(again.label == "match");
    CHECK(s.queried() == 1);

    Judgment bad = s.ask(garbled);
    CHECK(bad.label == kAbstainLabel);
    CHECK(s.queried() == 3);  // one retry before abstaining
    CHECK(s.abstained() == 1);
    CHECK(s.cache_size() == 2);
  }

  CHECK(read_jsonl(log).size() == 2);  // abstentions are logged too
  const std::string clean_log = read_file(log);

  {
    // a resumed session replays the cache without any network
    JudgeSession s(mock_judge_config(srv), log);
    CHECK(s.cache_size() == 2);
    CHECK(s.ask(ok_task).label == "match");
    CHECK(s.ask(garbled).label == kAbstainLabel);
    CHECK(s.queried() == 0);
    CHECK(s.abstained() == 1);  // cached abstain still counts
  }

  {
    // a torn tail is truncated before appending
    std::ofstream app(log, std::ios::app | std::ios::binary);
    app << "{\"task_id\": \"torn";
    app.close();
    JudgeSession s(mock_judge_config(srv), log);
    CHECK(read_file(log) == clean_log);
    CHECK(s.cache_size() == 2);
  }

  {
    // replay mode: hits answer from the log, misses abstain, file untouched
    JudgeSession s = JudgeSession::replay(log);
    CHECK(s.is_replay());
    CHECK(s.ask(ok_task).label == "match");
    JudgeTask fresh =
        make_task(Criterion::equivalence,
                  {{"candidate", "never judged"}, {"gold", "nope"}});
    CHECK(s.ask(fresh).label == kAbstainLabel);
    CHECK(s.replay_misses() == 1);
    CHECK(s.abstained() == 1);
    CHECK(read_file(log) == clean_log);
  }
}

TEST_CASE("equivalence fast path never consults the judge") {
  TempDir tmp("eq");
  JudgeSession replay = JudgeSession::replay(tmp / "absent.jsonl");
  JudgedValue v = check_equivalence("Forty-Two!", "forty two", replay);
  CHECK(v.defined);
  CHECK(v.value == 1.0);
  CHECK(replay.replay_misses() == 0);

  // a real mismatch does consult the judge; replay miss -> undefined
  JudgedValue miss = check_equivalence("different", "thing", replay);
  CHECK_FALSE(miss.defined);
  CHECK(replay.replay_misses() == 1);
}

TEST_CASE("refusal corpus classifies >= 18/20 through the real templates") {
  MockServer srv(rule_judge_handler());
  TempDir tmp("refusal");
  JudgeSession s(mock_judge_config(srv), tmp / "log.jsonl");
  int agree = 0, total = 0;
  for (const auto& row : read_jsonl(std::filesystem::path(CAPDRIFT_DATA_DIR) /
                                    "corpora" / "refusal_cases.jsonl")) {
    std::string got = classify_behavior(
        row.at("response").get<std::string>(),
        row.at("regime").get<std::string>() == "underspecified", s);
    ++total;
    if (got == row.at("expected").get<std::string>()) ++agree;
  }
  REQUIRE(total == 20);
  CHECK(agree >= 18);
}

TEST_CASE("reasoning score averages the three judged subscores") {
  MockServer srv(rule_judge_handler());
  TempDir tmp("reason");
  JudgeSession s(mock_judge_config(srv), tmp / "log.jsonl");

  ReasoningResult r = score_reasoning(
      "What is 2+2?", "1. two plus two\n2. equals five [bad]\n3. so four", s);
  REQUIRE(r.defined);
  CHECK(r.validity == 2.0 / 3.0);
  CHECK(r.coherence == 1.0);
  CHECK(r.consistency == 1.0);
  CHECK(r.score == (2.0 / 3.0 + 1.0 + 1.0) / 3.0);

  ReasoningResult drifty = score_reasoning(
      "Q", "1. fine\n2. also fine [incoherent]\nanswer [inconsistent]", s);
  REQUIRE(drifty.defined);
  CHECK(drifty.consistency == 0.0);
  CHECK(drifty.coherence < 1.0);

  // single step: no pairs, coherence vacuously 1
  ReasoningResult single = score_reasoning("Q", "just an answer", s);
  REQUIRE(single.defined);
  CHECK(single.coherence == 1.0);
}

TEST_CASE("parse_steps and count_marked_steps") {
  ParsedSteps p = parse_steps("Step 1: a\ncontinued\nStep 2: b");
  CHECK(p.marked);
  REQUIRE(p.steps.size() == 2);
  CHECK(p.steps[0].find("continued") != std::string::npos);
  ParsedSteps plain = parse_steps("no markers here");
  CHECK_FALSE(plain.marked);
  CHECK(plain.steps.size() == 1);
  CHECK(count_marked_steps("1. a\n2. b\n3. c") == 3.0);
  CHECK(count_marked_steps("free text") == 0.0);
}

TEST_CASE("claim support is one minus the unsupported rate") {
  MockServer srv(rule_judge_handler());
  TempDir tmp("claims");
  JudgeSession s(mock_judge_config(srv), tmp / "log.jsonl");

  ClaimScore cs = score_claim_support(
      "CLAIM: alpha beta\nCLAIM: gamma delta\nCLAIM: zeta",
      "alpha beta and gamma delta are both here", s);
  REQUIRE(cs.defined);
  CHECK(cs.claims == 3);
  CHECK(cs.value == 1.0 - 1.0 / 3.0);  // exact complement, bit for bit

  ClaimScore none = score_claim_support("NONE", "whatever", s);
  CHECK_FALSE(none.defined);
}

TEST_CASE("multiturn, followbench, and evidence judges") {
  MockServer srv(rule_judge_handler());
  TempDir tmp("misc");
  JudgeSession s(mock_judge_config(srv), tmp / "log.jsonl");

  CHECK(score_multiturn("u1", "a1", "u2", "keeps the promise", s).value == 1.0);
  CHECK(score_multiturn("u1", "a1", "u2", "changed [partial]", s).value == 0.5);
  CHECK(score_multiturn("u1", "a1", "u2", "contradicts [drift]", s).value == 0.0);

  CHECK(judge_followbench("do X", "did X", s).value == 1.0);
  CHECK(judge_followbench("do X", "did Y [violate]", s).value == 0.0);

  CHECK(judge_evidence("osmosis", "the passage explains osmosis fully", s)
            .value == 1.0);
  CHECK(judge_evidence("quasar", "nothing relevant at all here", s).value ==
        0.0);
}
