#pragma once

#include <string>
#include <vector>

#include "capdrift/judge/session.hpp"

namespace capdrift {

// A judged per-sample score. defined == false means the sample contributes
// nothing to the aggregate (its denominator slot disappears) — abstained
// atoms, zero extracted claims, and similar dead ends land here.
struct JudgedValue {
  bool defined = false;
  double value = 0.0;
};

// Step decomposition of a reasoning chain. A line opens a new step when it
// starts with "step", "<digits>." / "<digits>)" / "<digits>:", or a "- " /
// "* " bullet; following lines attach to the open step. Text with no
// markers at all is treated as a single unmarked step.
struct ParsedSteps {
  std::vector<std::string> steps;
  bool marked = false;  // true when explicit markers were found
};

ParsedSteps parse_steps(const std::string& text);

// reasoning_steps metric: the count of explicitly marked steps (0 when the
// chain has no markers).
double count_marked_steps(const std::string& text);

// Three-part reasoning quality score: per-step validity, adjacent-pair
// coherence, whole-chain consistency; each subscore averages its judged
// atoms with abstentions removed from the denominator. One step means no
// pairs, which makes coherence vacuously 1. The score is the unweighted
// mean of the three subscores; if any subscore ends up with no judged atoms
// the sample is undefined.
struct ReasoningResult {
  bool defined = false;
  double score = 0.0;
  double validity = 0.0;
  double coherence = 0.0;
  double consistency = 0.0;
  size_t atoms = 0;
  size_t abstained = 0;
};

ReasoningResult score_reasoning(const std::string& question,
                                const std::string& response,
                                JudgeSession& session);

// Claim-level support: extracts claims from source_text, judges each one
// against reference_text, returns the supported fraction. This one
// primitive covers all three claim metrics:
//   faithfulness     = support(response, context)
//   coverage         = support(gold reference, response)
//   overreach_score  = support(response, gold reference)
// Zero extracted claims or zero judged claims -> undefined.
struct ClaimScore {
  bool defined = false;
  double value = 0.0;
  size_t claims = 0;
  size_t abstained = 0;
};

ClaimScore score_claim_support(const std::string& source_text,
                               const std::string& reference_text,
                               JudgeSession& session);

// Binary behavior classification; returns "refuse", "attempt", or
// "abstain". underspec selects the underspecified-prompt criterion, which
// shares the label space but carries its own prompt.
std::string classify_behavior(const std::string& response, bool underspec,
                              JudgeSession& session);

// Second-turn consistency against the first exchange: 0, 0.5, or 1.
JudgedValue score_multiturn(const std::string& turn1_user,
                            const std::string& turn1_assistant,
                            const std::string& turn2_user,
                            const std::string& response,
                            JudgeSession& session);

// Semantic equivalence with a cheap exact fast path: when the normalized
// strings already match the judge is never consulted (and the score is 1
// even with no judge configured). Anything else goes to the judge.
JudgedValue check_equivalence(const std::string& candidate,
                              const std::string& gold, JudgeSession& session);

JudgedValue judge_followbench(const std::string& instruction,
                              const std::string& response,
                              JudgeSession& session);

// Fallback for evidence attribution when rule-based matching is
// inconclusive.
JudgedValue judge_evidence(const std::string& answer,
                           const std::string& passages, JudgeSession& session);

}  // namespace capdrift
