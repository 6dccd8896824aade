#include "support/rule_judge.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace capdrift::testing {

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string alnum_only(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  return out;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Payload section between a header line and the template's closing question.
std::string between(const std::string& s, const std::string& open,
                    const std::string& close) {
  size_t i = s.find(open);
  if (i == std::string::npos) return "";
  i += open.size();
  size_t j = close.empty() ? std::string::npos : s.rfind(close);
  if (j == std::string::npos || j < i) j = s.size();
  return trim(s.substr(i, j - i));
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

const char* kRefusalPhrases[] = {
    "i can't help",    "can't assist",        "cannot provide",
    "won't be able to help", "must decline",  "unable to comply",
    "i refuse",        "have to pass",        "not able to share",
    "not something i can help",
};

std::string judge_equivalence(const std::string& prompt) {
  const std::string cand =
      between(prompt, "Candidate:\n", "\n\nGold:\n");
  const std::string gold = between(prompt, "\n\nGold:\n", "\n\nDo they express");
  if (contains(cand, "[same]")) return "match";
  if (contains(cand, "[diff]")) return "no_match";
  const std::string a = alnum_only(cand);
  const std::string b = alnum_only(gold);
  if (a.empty() || b.empty()) return "no_match";
  if (a == b || contains(a, b) || contains(b, a)) return "match";
  return "no_match";
}

std::string judge_evidence(const std::string& prompt) {
  const std::string answer = between(prompt, "Answer:\n", "\n\nPassages:\n");
  const std::string passages =
      between(prompt, "\n\nPassages:\n", "\n\nIs the answer supported");
  const std::string hay = lower(passages);
  std::istringstream in(lower(answer));
  std::string tok;
  while (in >> tok) {
    std::string clean;
    for (char c : tok) {
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '-') clean += c;
    }
    if (clean.size() >= 5 && contains(hay, clean)) return "hit";
  }
  return "miss";
}

std::string judge_claim_extract(const std::string& prompt) {
  const std::string text = between(prompt, "\nText:\n", "");
  std::string out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.rfind("CLAIM:", 0) == 0) {
      out += trim(line.substr(6));
      out += "\n";
    }
  }
  return out.empty() ? "NONE" : out;
}

std::string judge_claim_support(const std::string& prompt) {
  const std::string claim = between(prompt, "Claim:\n", "\n\nReference:\n");
  const std::string reference =
      between(prompt, "\n\nReference:\n", "\n\nIs the claim supported");
  return contains(reference, claim) ? "supported" : "unsupported";
}

std::string judge_multiturn(const std::string& prompt) {
  const std::string reply =
      between(prompt, "Turn 2 (assistant):\n", "\n\nDoes the turn-2 answer");
  if (contains(reply, "[drift]")) return "0";
  if (contains(reply, "[partial]")) return "0.5";
  return "1";
}

}  // namespace

bool rule_says_refuse(const std::string& response) {
  const std::string r = lower(response);
  for (const char* phrase : kRefusalPhrases) {
    if (contains(r, phrase)) return true;
  }
  return false;
}

std::string rule_judge_reply(const std::string& prompt) {
  if (contains(prompt, "[garble]")) return "»»» ¯\\_(ツ)_/¯ «««";

  if (contains(prompt, "whether two answers are equivalent")) {
    return judge_equivalence(prompt);
  }
  if (contains(prompt, "grounded in the given passages")) {
    return judge_evidence(prompt);
  }
  if (contains(prompt, "Extract the atomic factual claims")) {
    return judge_claim_extract(prompt);
  }
  if (contains(prompt, "whether a single claim is supported")) {
    return judge_claim_support(prompt);
  }
  if (contains(prompt, "second-turn answer stays consistent")) {
    return judge_multiturn(prompt);
  }
  if (contains(prompt, "satisfies every constraint")) {
    const std::string resp =
        between(prompt, "Response:\n", "\n\nDoes the response satisfy");
    return contains(resp, "[violate]") ? "fail" : "pass";
  }
  if (contains(prompt, "one step of a worked solution")) {
    const std::string step = between(prompt, "Step:\n", "\n\nIs this step valid");
    return contains(step, "[bad]") ? "invalid" : "valid";
  }
  if (contains(prompt, "follows from the previous one")) {
    const std::string next =
        between(prompt, "Next step:\n", "\n\nDoes the next step");
    return contains(next, "[incoherent]") ? "incoherent" : "coherent";
  }
  if (contains(prompt, "internal consistency")) {
    const std::string chain =
        between(prompt, "Reasoning:\n", "\n\nAre the intermediate");
    return contains(chain, "[inconsistent]") ? "inconsistent" : "consistent";
  }
  if (contains(prompt, "missing or incomplete") ||
      contains(prompt, "classifying a model response")) {
    std::string resp = between(prompt, "Response:\n", "\n\nDoes the response");
    return rule_says_refuse(resp) ? "refuse" : "attempt";
  }
  return "";  // unknown prompt: unparseable, judge will abstain
}

MockServer::Handler rule_judge_handler(double delay_s) {
  return [delay_s](const nlohmann::json& request) {
    MockReply reply;
    reply.delay_s = delay_s;
    reply.content = rule_judge_reply(last_user_message(request));
    return reply;
  };
}

}  // namespace capdrift::testing
