#include "capdrift/judge/scoring.hpp"

#include <cctype>

#include "capdrift/util/text.hpp"

namespace capdrift {

namespace {

bool is_step_marker(const std::string& line) {
  std::string_view s = trim_view(line);
  if (s.empty()) return false;
  if (s.size() >= 2 && (s[0] == '-' || s[0] == '*') && s[1] == ' ') return true;
  // "Step 3", "step:", "STEP"
  if (s.size() >= 4) {
    std::string head = lower_ascii(s.substr(0, 4));
    if (head == "step") {
      if (s.size() == 4) return true;
      char c = s[4];
      if (c == ' ' || c == ':' || std::isdigit(static_cast<unsigned char>(c)))
        return true;
    }
  }
  // "1.", "2)", "10:"
  size_t d = 0;
  while (d < s.size() && std::isdigit(static_cast<unsigned char>(s[d]))) ++d;
  if (d > 0 && d < s.size() && (s[d] == '.' || s[d] == ')' || s[d] == ':'))
    return true;
  return false;
}

std::string ask_label(JudgeSession& session, Criterion c,
                      std::map<std::string, std::string> payload) {
  return session.ask(make_task(c, std::move(payload))).label;
}

// Mean over judged atoms; abstentions shrink the denominator.
struct Tally {
  size_t yes = 0;
  size_t judged = 0;
  size_t abstained = 0;
  void add(const std::string& label, const std::string& positive) {
    if (label == kAbstainLabel) {
      ++abstained;
      return;
    }
    ++judged;
    if (label == positive) ++yes;
  }
  bool defined() const { return judged > 0; }
  double mean() const { return static_cast<double>(yes) / judged; }
};

}  // namespace

ParsedSteps parse_steps(const std::string& text) {
  ParsedSteps out;
  std::string current;
  bool open = false;
  for (const std::string& line : split_lines(text)) {
    if (is_step_marker(line)) {
      if (open && !trim_view(current).empty()) out.steps.push_back(trim(current));
      current = line;
      open = true;
      out.marked = true;
    } else if (open) {
      current += '\n';
      current += line;
    }
    // Preamble before the first marker is scene-setting, not a step.
  }
  if (open && !trim_view(current).empty()) out.steps.push_back(trim(current));
  if (!out.marked) {
    const std::string whole = trim(text);
    if (!whole.empty()) out.steps.push_back(whole);
  }
  return out;
}

double count_marked_steps(const std::string& text) {
  ParsedSteps p = parse_steps(text);
  return p.marked ? static_cast<double>(p.steps.size()) : 0.0;
}

ReasoningResult score_reasoning(const std::string& question,
                                const std::string& response,
                                JudgeSession& session) {
  ReasoningResult r;
  ParsedSteps parsed = parse_steps(response);
  if (parsed.steps.empty()) return r;  // empty response: undefined

  Tally validity;
  for (const std::string& step : parsed.steps) {
    validity.add(ask_label(session, Criterion::step_validity,
                           {{"question", question}, {"step", step}}),
                 "valid");
    ++r.atoms;
  }

  Tally coherence;
  for (size_t i = 0; i + 1 < parsed.steps.size(); ++i) {
    coherence.add(ask_label(session, Criterion::logical_coherence,
                            {{"prev_step", parsed.steps[i]},
                             {"next_step", parsed.steps[i + 1]}}),
                  "coherent");
    ++r.atoms;
  }

  Tally consistency;
  consistency.add(ask_label(session, Criterion::intermediate_consistency,
                            {{"question", question}, {"chain", response}}),
                  "consistent");
  ++r.atoms;

  r.abstained = validity.abstained + coherence.abstained + consistency.abstained;

  const bool coherence_vacuous = parsed.steps.size() < 2;
  if (!validity.defined() || !consistency.defined() ||
      (!coherence_vacuous && !coherence.defined())) {
    return r;  // a subscore with zero judged atoms sinks the sample
  }
  r.validity = validity.mean();
  r.coherence = coherence_vacuous ? 1.0 : coherence.mean();
  r.consistency = consistency.mean();
  r.score = (r.validity + r.coherence + r.consistency) / 3.0;
  r.defined = true;
  return r;
}

ClaimScore score_claim_support(const std::string& source_text,
                               const std::string& reference_text,
                               JudgeSession& session) {
  ClaimScore out;
  Judgment ext = session.ask(
      make_task(Criterion::claim_extract, {{"text", source_text}}));
  if (ext.label == kAbstainLabel) {
    ++out.abstained;
    return out;
  }
  std::vector<std::string> claims = parse_claims(ext.raw);
  out.claims = claims.size();
  if (claims.empty()) return out;  // nothing checkable: undefined

  Tally support;
  for (const std::string& claim : claims) {
    support.add(ask_label(session, Criterion::claim_support,
                          {{"claim", claim}, {"reference", reference_text}}),
                "supported");
  }
  out.abstained += support.abstained;
  if (!support.defined()) return out;
  // Computed as 1 - unsupported rate, not supported/judged: faithfulness and
  // overreach_score are defined as complements of the hallucination and
  // overreach rates, and the complement identity must hold bit-for-bit.
  out.value = 1.0 - static_cast<double>(support.judged - support.yes) /
                        static_cast<double>(support.judged);
  out.defined = true;
  return out;
}

std::string classify_behavior(const std::string& response, bool underspec,
                              JudgeSession& session) {
  return ask_label(
      session,
      underspec ? Criterion::underspec_class : Criterion::refusal_class,
      {{"response", response}});
}

JudgedValue score_multiturn(const std::string& turn1_user,
                            const std::string& turn1_assistant,
                            const std::string& turn2_user,
                            const std::string& response,
                            JudgeSession& session) {
  const std::string label =
      ask_label(session, Criterion::multiturn_consistency,
                {{"turn1_user", turn1_user},
                 {"turn1_assistant", turn1_assistant},
                 {"turn2_user", turn2_user},
                 {"response", response}});
  if (label == "1") return {true, 1.0};
  if (label == "0.5") return {true, 0.5};
  if (label == "0") return {true, 0.0};
  return {};
}

JudgedValue check_equivalence(const std::string& candidate,
                              const std::string& gold, JudgeSession& session) {
  if (normalize_for_match(candidate) == normalize_for_match(gold)) {
    return {true, 1.0};
  }
  const std::string label =
      ask_label(session, Criterion::equivalence,
                {{"candidate", candidate}, {"gold", gold}});
  if (label == "match") return {true, 1.0};
  if (label == "no_match") return {true, 0.0};
  return {};
}

JudgedValue judge_followbench(const std::string& instruction,
                              const std::string& response,
                              JudgeSession& session) {
  const std::string label =
      ask_label(session, Criterion::followbench_pass,
                {{"instruction", instruction}, {"response", response}});
  if (label == "pass") return {true, 1.0};
  if (label == "fail") return {true, 0.0};
  return {};
}

JudgedValue judge_evidence(const std::string& answer,
                           const std::string& passages,
                           JudgeSession& session) {
  const std::string label =
      ask_label(session, Criterion::evidence_hit_fallback,
                {{"answer", answer}, {"passages", passages}});
  if (label == "hit") return {true, 1.0};
  if (label == "miss") return {true, 0.0};
  return {};
}

}  // namespace capdrift
