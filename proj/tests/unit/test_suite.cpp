#include "doctest.h"

#include "capdrift/suite/capability.hpp"
#include "capdrift/suite/suite.hpp"
#include "capdrift/suite/transform.hpp"
#include "capdrift/util/fs.hpp"
#include "support/mini_suite.hpp"
#include "support/temp_dir.hpp"

using namespace capdrift;
using capdrift::testing::TempDir;
using capdrift::testing::make_mini_suite;

TEST_CASE("taxonomy is the fixed 19-axis table") {
  REQUIRE(kCapabilities.size() == 19);
  CHECK(kCapabilities.front().code == std::string("C1"));
  CHECK(kCapabilities.back().code == std::string("H6"));
  CHECK(group_name(find_capability("W2a")->group) == std::string("WILL"));
  CHECK_FALSE(find_capability("Z9").has_value());
  CHECK(capability_index("C5b") == 5);
}

TEST_CASE("sample json round trip is canonical") {
  Sample s;
  s.id = "x-1";
  s.messages.push_back({Role::system, "be brief"});
  s.messages.push_back({Role::user, "q?"});
  s.gold = {GoldKind::number, 42.0};
  s.meta["choices"] = nlohmann::json::array({"A", "B"});
  nlohmann::json j = sample_to_json(s);
  Sample back = sample_from_json(j);
  CHECK(sample_to_json(back).dump() == j.dump());
  CHECK(back.gold.kind == GoldKind::number);
  CHECK(back.messages.size() == 2);

  CHECK_THROWS(sample_from_json(nlohmann::json{{"id", "no-messages"}}));
}

TEST_CASE("suite serialize -> load round trips byte-for-byte") {
  auto mini = make_mini_suite();
  TempDir tmp("suite");
  serialize_suite(mini.suite, tmp.path);
  Suite loaded = load_suite(tmp.path);
  CHECK(loaded.benchmarks.size() == 3);
  CHECK(loaded.samples.at("qa").size() == 3);

  TempDir tmp2("suite2");
  serialize_suite(loaded, tmp2.path);
  CHECK(read_file(tmp.path / "suite.json") ==
        read_file(tmp2.path / "suite.json"));
  for (const auto& b : loaded.benchmarks) {
    CHECK(read_file(tmp.path / b.source_path) ==
          read_file(tmp2.path / b.source_path));
  }
}

TEST_CASE("validate_suite catches structural problems") {
  auto mini = make_mini_suite();
  ValidationReport vr = validate_suite(mini.suite);
  CHECK(vr.ok());
  CHECK(vr.manifest_total == 11);
  CHECK(vr.capability_benchmarks.at("C1") == std::vector<std::string>{"arith"});
  // mini suite covers 4 of 19 axes
  CHECK(vr.uncovered.size() == 15);

  SUBCASE("sample count mismatch") {
    mini.suite.samples["arith"].pop_back();
    CHECK_FALSE(validate_suite(mini.suite).ok());
  }
  SUBCASE("duplicate ids") {
    mini.suite.samples["arith"][1].id = "arith-1";
    CHECK_FALSE(validate_suite(mini.suite).ok());
  }
  SUBCASE("unregistered metric") {
    mini.suite.benchmarks[0].metrics.push_back("bogus_metric");
    CHECK_FALSE(validate_suite(mini.suite).ok());
  }
  SUBCASE("capability_metrics outside metrics") {
    mini.suite.benchmarks[0].capability_metrics["C1"] = {"schema_pass"};
    CHECK_FALSE(validate_suite(mini.suite).ok());
  }
  SUBCASE("unknown capability code") {
    mini.suite.benchmarks[0].capabilities = {"C99"};
    CHECK_FALSE(validate_suite(mini.suite).ok());
  }
  SUBCASE("subset larger than total") {
    mini.suite.benchmarks[0].subset_size = 1000;
    CHECK_FALSE(validate_suite(mini.suite).ok());
  }
}

TEST_CASE("schema_wrap transform appends instruction once") {
  Sample s;
  s.id = "t-1";
  s.messages.push_back({Role::user, "What is 2+2?"});
  s.gold = {GoldKind::number, 4.0};

  TransformSpec spec;
  spec.kind = TransformKind::schema_wrap;
  spec.schema_id = "A";
  Sample out = apply_transform(s, spec);
  const std::string& prompt = out.messages.back().content;
  CHECK(prompt.find("What is 2+2?") == 0);
  CHECK(prompt.size() > s.messages.back().content.size());
  CHECK(out.meta.at("original_prompt") == "What is 2+2?");
  CHECK(out.meta.count("transform") == 1);
  // applying twice is a hard error, not a silent double-wrap
  CHECK_THROWS(apply_transform(out, spec));
}

TEST_CASE("tail_truncate removes the final tokens") {
  Sample s;
  s.id = "t-2";
  s.messages.push_back({Role::user, "one two three four five"});
  TransformSpec spec;
  spec.kind = TransformKind::tail_truncate;
  spec.truncate_tokens = 2;
  Sample out = apply_transform(s, spec);
  CHECK(out.messages.back().content == "one two three");

  spec.truncate_tokens = 99;
  Sample gone = apply_transform(s, spec);
  CHECK(gone.messages.back().content.empty());
  CHECK(gone.meta.count("truncate_exhausted") == 1);
}

TEST_CASE("rephrase_attach needs the map") {
  Sample s;
  s.id = "t-3";
  s.messages.push_back({Role::user, "original wording"});
  TransformSpec spec;
  spec.kind = TransformKind::rephrase_attach;
  spec.rephrase_file = "rephrases/x.json";

  RephraseMap map{{"t-3", "new wording"}};
  Sample out = apply_transform(s, spec, &map);
  CHECK(out.messages.back().content == "new wording");
  CHECK(out.meta.at("original_prompt") == "original wording");

  RephraseMap missing;
  CHECK_THROWS(apply_transform(s, spec, &missing));
  CHECK_THROWS(apply_transform(s, spec, nullptr));
}

TEST_CASE("output schemas are pinned") {
  const OutputSchema& a = output_schema("A");
  CHECK(a.fields.size() >= 2);
  CHECK_FALSE(a.instruction.empty());
  CHECK_THROWS(output_schema("Z"));
}
