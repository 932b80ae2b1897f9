#ifndef PILLAI_REPORT_HPP
#define PILLAI_REPORT_HPP

// Verification report: plain data mirroring every computed stage, the
// pass/fail verdict against the published values, and JSON / markdown
// rendering. Report fields hold decimal strings rather than Reals so that a
// rendered report parses back to an identical value.

#include "pillai/hp_arith.hpp"
#include "pillai/logform_bounds.hpp"
#include "pillai/pair_search.hpp"
#include "pillai/reduction.hpp"
#include "pillai/reference.hpp"

#include <json.hpp>

#include <algorithm>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace pillai {

inline constexpr int kReportSchema = 1;

struct RunConfig {
  unsigned digits = kDefaultDigits;
  int n_max = 150;
  int rounds = 4;
  std::string lll_delta = "0.99";  // kept as text so it converts to an exact rational
  unsigned c_growth = 10;
  int max_retries = 35;
  std::string output_format = "md";  // json | md
  std::string output_path;           // empty = stdout

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Exact rational value of a plain decimal such as "0.99" or "3/4".
inline Rational parse_decimal_rational(const std::string& text) {
  if (text.empty()) throw InvalidArgument("empty number");
  if (text.find('/') != std::string::npos) {
    try {
      return Rational(text);
    } catch (const std::exception&) {
      throw InvalidArgument("not a rational number: " + text);
    }
  }
  std::string digits;
  long scale = 0;
  bool seen_point = false;
  std::size_t i = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    i = 1;
  }
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '.' && !seen_point) {
      seen_point = true;
    } else if (ch >= '0' && ch <= '9') {
      digits += ch;
      if (seen_point) ++scale;
    } else {
      throw InvalidArgument("not a decimal number: " + text);
    }
  }
  if (digits.empty()) throw InvalidArgument("not a decimal number: " + text);
  // GMP would read a leading zero as an octal prefix.
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  Rational out(Int(digits), int_pow10(static_cast<unsigned>(scale)));
  return negative ? Rational(-out) : out;
}

inline ReductionOptions reduction_options(const RunConfig& cfg) {
  ReductionOptions opt;
  opt.delta = parse_decimal_rational(cfg.lll_delta);
  opt.c_growth = cfg.c_growth;
  opt.max_retries = cfg.max_retries;
  return opt;
}

/// Rejects configurations outside the preconditions of the stages they feed.
inline void validate(const RunConfig& cfg) {
  if (cfg.digits < kMinDigits) throw InvalidArgument("--digits must be at least " + std::to_string(kMinDigits));
  if (cfg.n_max < 3) throw InvalidArgument("--n-max must be at least 3");
  if (cfg.rounds < 1) throw InvalidArgument("--rounds must be at least 1");
  const Rational delta = parse_decimal_rational(cfg.lll_delta);
  if (!(delta > Rational(1, 4) && delta < 1)) throw InvalidArgument("--lll-delta must lie in (0.25, 1)");
  if (cfg.c_growth < 2) throw InvalidArgument("--c-growth must be at least 2");
  if (cfg.max_retries < 1) throw InvalidArgument("--max-retries must be at least 1");
  if (cfg.output_format != "json" && cfg.output_format != "md") {
    throw InvalidArgument("--format must be json or md");
  }
}

// ---------------------------------------------------------------------------
// Report sections

struct ConstantsSection {
  unsigned digits = 0;
  std::string alpha, a, log_alpha, log_a;
  std::string beta_re, beta_im, b_re, b_im;
  bool norm_ok = false;

  friend bool operator==(const ConstantsSection&, const ConstantsSection&) = default;
};

struct AuditEntry {
  std::string name;
  std::string stated;
  std::string recomputed;
  std::string ratio;  // recomputed / stated
  std::string formula;
  bool ok = false;

  friend bool operator==(const AuditEntry&, const AuditEntry&) = default;
};

struct GroupEntry {
  Int b;
  Int c;
  std::vector<std::pair<int, int>> solutions;

  friend bool operator==(const GroupEntry&, const GroupEntry&) = default;
};

struct StepAView {
  std::string p, q;
  std::string delta;
  std::string lower_bound;
  long n1n2_max = 0;
  long n2n3_max = 0;
  long logb = 0;  // ceiling of -log(lower_bound)

  friend bool operator==(const StepAView&, const StepAView&) = default;
};

struct StepBView {
  std::string min_bound;
  long argmin_k = 0;
  int max_attempts = 0;
  std::string lower_bound;
  long n1n2_max = 0;
  long logb = 0;

  friend bool operator==(const StepBView&, const StepBView&) = default;
};

struct StepDView {
  long logb_max = 0;
  std::string n1_bound;       // root of n = C (log n)^2
  std::string n1_bound_next;  // rounded-up bound fed to the next round

  friend bool operator==(const StepDView&, const StepDView&) = default;
};

struct RoundView {
  int index = 0;
  std::string n1_bound_in;
  StepAView stepA;
  StepBView stepB;
  long stepC_logb = 0;
  StepDView stepD;
  double seconds = 0;

  friend bool operator==(const RoundView&, const RoundView&) = default;
};

struct FinalView {
  long logb = 0;
  std::string n1;

  friend bool operator==(const FinalView&, const FinalView&) = default;
};

struct VerdictItem {
  std::string id;
  std::string anchor;
  std::string description;
  bool pass = false;
  std::string detail;

  friend bool operator==(const VerdictItem&, const VerdictItem&) = default;
};

struct VerificationReport {
  int schema = kReportSchema;
  RunConfig config;
  std::optional<ConstantsSection> constants;
  std::vector<AuditEntry> audits;
  std::optional<std::vector<SolutionRecord>> small_solutions;
  std::vector<GroupEntry> multi_solution_groups;
  std::optional<std::string> initial_bound;
  std::vector<RoundView> rounds;
  std::optional<FinalView> final_bounds;
  std::optional<std::string> failure;
  bool precision_failure = false;
  std::vector<VerdictItem> verdict;

  bool passed() const {
    return !failure && std::all_of(verdict.begin(), verdict.end(), [](const VerdictItem& v) { return v.pass; });
  }

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

// ---------------------------------------------------------------------------
// Building sections from computed values

inline long ceil_long(const Real& x) { return ceil_to_int(x).convert_to<long>(); }

/// format_sci with trailing zeros of the mantissa removed: 2778 -> "2.778e3".
inline std::string format_compact(const Real& x, int sig) {
  std::string s = format_sci(x, sig);
  const auto e = s.find('e');
  if (e == std::string::npos) return s;
  std::string mant = s.substr(0, e);
  if (mant.find('.') != std::string::npos) {
    while (mant.back() == '0') mant.pop_back();
    if (mant.back() == '.') mant.pop_back();
  }
  return mant + s.substr(e);
}

inline ConstantsSection constants_section(const AlgebraicConstants& c) {
  ScopedPrecision guard(c.ctx);
  ConstantsSection s;
  s.digits = c.ctx.digits;
  s.alpha = to_string(c.alpha, 50);
  s.a = to_string(c.a, 50);
  s.log_alpha = to_string(c.log_alpha, 50);
  s.log_a = to_string(c.log_a, 50);
  s.beta_re = to_string(c.beta.re, 50);
  s.beta_im = to_string(c.beta.im, 50);
  s.b_re = to_string(c.b_coeff.re, 50);
  s.b_im = to_string(c.b_coeff.im, 50);
  s.norm_ok = verify_norm_condition(c);
  return s;
}

inline std::vector<AuditEntry> audit_section(const std::vector<ConstantAudit>& audits) {
  std::vector<AuditEntry> out;
  for (const auto& a : audits) {
    out.push_back({a.name, format_compact(a.stated, 6), format_compact(a.recomputed, 6),
                   (a.recomputed / a.stated).str(4, std::ios_base::fixed), a.formula, a.ok});
  }
  return out;
}

inline std::vector<GroupEntry> group_section(const std::vector<MultiSolutionGroup>& groups) {
  std::vector<GroupEntry> out;
  for (const auto& g : groups) out.push_back({g.b, g.c, g.solutions});
  return out;
}

inline RoundView round_view(const RoundReport& r) {
  RoundView v;
  v.index = r.round_index;
  v.n1_bound_in = format_sci(r.n1_bound_in, 2);
  v.stepA.p = r.stepA.convergent.p.str();
  v.stepA.q = r.stepA.convergent.q.str();
  v.stepA.delta = format_sci(r.stepA.delta, 2);
  v.stepA.lower_bound = format_sci(r.stepA.lower_bound, 2);
  v.stepA.n1n2_max = r.stepA.n1n2_max;
  v.stepA.n2n3_max = r.stepA.n2n3_max;
  v.stepA.logb = ceil_long(r.stepA.logb);
  v.stepB.min_bound = format_sci(r.stepB.min_bound, 2);
  v.stepB.argmin_k = r.stepB.argmin_k;
  v.stepB.max_attempts = r.stepB.max_attempts;
  v.stepB.lower_bound = format_sci(r.stepB.lower_bound, 2);
  v.stepB.n1n2_max = r.stepB.n1n2_max;
  v.stepB.logb = ceil_long(r.stepB.logb);
  v.stepC_logb = ceil_long(r.stepC_logb);
  v.stepD.logb_max = ceil_long(r.stepD_logb_max);
  v.stepD.n1_bound = format_sci(r.stepD_n1_bound, 2);
  v.stepD.n1_bound_next = format_sci(r.n1_bound_next, 2);
  v.seconds = r.timings.a + r.timings.b + r.timings.c + r.timings.d;
  return v;
}

// ---------------------------------------------------------------------------
// Verdict items

namespace detail {

inline std::string join_pairs(const std::vector<std::pair<int, int>>& v) {
  std::string out;
  for (const auto& [n, m] : v) out += (out.empty() ? "" : " ") + ("(" + std::to_string(n) + "," + std::to_string(m) + ")");
  return out;
}

inline bool within_relative(long value, long target, double tol) {
  return std::abs(static_cast<double>(value - target)) <= tol * static_cast<double>(target);
}

}  // namespace detail

inline VerdictItem verdict_constants(const ConstantsSection& c) {
  return {"constants", "algebraic-constants/norm", "N(a) = 1/44 and N(alpha) = 1 at working precision", c.norm_ok,
          "alpha = " + c.alpha.substr(0, 12)};
}

inline VerdictItem verdict_audits(const std::vector<AuditEntry>& audits) {
  std::string failed;
  for (const auto& a : audits) {
    if (!a.ok) failed += (failed.empty() ? "" : ", ") + a.name;
  }
  return {"audit", "constants/C100-C107", "every recomputed constant is below its stated value",
          audits.size() == 8 && failed.empty(), failed.empty() ? "8 of 8 below stated" : "exceeded: " + failed};
}

/// Records must equal the published list restricted to n1 <= n_max (for
/// n_max beyond the published range they must contain it), and no (b, c)
/// may have three solutions.
inline std::vector<VerdictItem> verdict_small_solutions(int n_max, const std::vector<SolutionRecord>& records,
                                                        const std::vector<GroupEntry>& groups) {
  std::vector<SolutionRecord> expected;
  for (const auto& s : reference::kSmallSolutions) {
    if (s.n1 <= n_max) expected.push_back({s.n1, s.n2, Int(s.b), s.m1, s.m2, Int(s.c)});
  }
  std::vector<VerdictItem> out;
  bool match;
  if (n_max <= reference::kSmallSolutionsMaxN) {
    match = records == expected;
  } else {
    match = std::all_of(expected.begin(), expected.end(), [&](const SolutionRecord& e) {
      return std::find(records.begin(), records.end(), e) != records.end();
    });
  }
  out.push_back({"small-solutions", "small-solutions/list",
                 "records equal the published small solutions for n1 <= " + std::to_string(n_max), match,
                 std::to_string(records.size()) + " records, " + std::to_string(expected.size()) + " expected"});
  std::string triples;
  for (const auto& g : groups) {
    if (g.solutions.size() >= 3) triples += "(b=" + g.b.str() + ", c=" + g.c.str() + ") ";
  }
  out.push_back({"no-triple", "small-solutions/groups", "no (b, c) admits three or more solutions", triples.empty(),
                 triples.empty() ? std::to_string(groups.size()) + " (b, c) pairs" : triples});
  return out;
}

inline VerdictItem verdict_initial_bound(const Real& bound) {
  const bool ok = bound >= to_real(reference::kInitialBoundLow) && bound <= to_real(reference::kInitialBoundHigh);
  return {"initial-bound", "initial-bound/n1", "initial bound on n1 lies in [4.9e80, 5.1e80]", ok,
          format_sci(bound, 3)};
}

inline std::vector<VerdictItem> verdict_rounds(const ReductionRun& run) {
  std::vector<VerdictItem> out;
  const std::size_t n = std::min<std::size_t>(run.rounds.size(), reference::kStepA.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = run.rounds[i];
    const auto& ea = reference::kStepA[i];
    const long logb = ceil_long(r.stepA.logb);
    const std::string idx = std::to_string(i + 1);
    std::string got = std::to_string(r.stepA.n1n2_max) + "/" + std::to_string(r.stepA.n2n3_max) + "/" +
                      std::to_string(logb);
    out.push_back({"stepA-round" + idx, "reduction-step-A/round-" + idx,
                   "Step A integers equal the published row", r.stepA.n1n2_max == ea.n1n2_max &&
                                                                  r.stepA.n2n3_max == ea.n2n3_max && logb == ea.logb,
                   got});
    const auto& eb = reference::kStepB[i];
    const long blogb = ceil_long(r.stepB.logb);
    const bool b_ok = detail::within_relative(r.stepB.n1n2_max, eb.n1n2_max, reference::kStepB_tolerance) &&
                      detail::within_relative(blogb, eb.logb, reference::kStepB_tolerance) &&
                      r.stepB.max_attempts <= reference::kStepB_max_attempts;
    out.push_back({"stepB-round" + idx, "reduction-step-B/round-" + idx,
                   "Step B integers within 5% of the published row, at most 3 attempts per instance", b_ok,
                   std::to_string(r.stepB.n1n2_max) + "/" + std::to_string(blogb) + ", attempts " +
                       std::to_string(r.stepB.max_attempts)});
  }
  if (!run.rounds.empty()) {
    const auto& r1 = run.rounds.front();
    const bool delta_ok = r1.stepA.delta >= to_real(reference::kStepA_delta_min);
    out.push_back({"stepA-delta", "reduction-step-A/round-1/delta", "round 1: |p log alpha - q log a| >= 4.4e-82",
                   delta_ok, format_sci(r1.stepA.delta, 3)});
    const bool lb_ok = r1.stepB.min_bound >= to_real(reference::kStepB_round1_low) &&
                       r1.stepB.min_bound <= to_real(reference::kStepB_round1_high);
    out.push_back({"stepB-bound", "reduction-step-B/round-1/bound", "round 1: LLL lower bound in [1e-330, 1e-320]",
                   lb_ok, format_sci(r1.stepB.min_bound, 3)});
  }
  if (run.rounds.size() >= reference::kStepA.size()) {
    const auto fb = final_bounds(run);
    const long logb = ceil_long(fb.logb);
    const Real n1 = round_up_significant(fb.n1, 2);
    const bool ok = logb <= reference::kFinalLogB_limit && n1 <= to_real(reference::kFinalN1_limit);
    out.push_back({"final-bounds", "final-bounds", "after the rounds: log b <= 450 and n1 <= 1.3e37", ok,
                   "log b <= " + std::to_string(logb) + ", n1 <= " + format_sci(n1, 2)});
  }
  return out;
}

/// Fills the reduction part of the report from a completed run.
inline void add_reduction(VerificationReport& rep, const ReductionRun& run) {
  rep.initial_bound = format_sci(run.initial_bound, 3);
  rep.verdict.push_back(verdict_initial_bound(run.initial_bound));
  for (const auto& r : run.rounds) rep.rounds.push_back(round_view(r));
  if (!run.rounds.empty()) {
    const auto fb = final_bounds(run);
    rep.final_bounds = FinalView{ceil_long(fb.logb), format_sci(round_up_significant(fb.n1, 2), 2)};
  }
  if (run.failure) {
    rep.failure = *run.failure;
    rep.precision_failure = run.precision_failure;
  }
  for (auto& v : verdict_rounds(run)) rep.verdict.push_back(std::move(v));
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

using nlohmann::json;

inline json int_to_json(const Int& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) {
    return v.convert_to<long long>();
  }
  return v.str();
}

inline Int int_from_json(const json& j) {
  if (j.is_string()) return Int(j.get<std::string>());
  return Int(j.get<long long>());
}

inline json to_json(const SolutionRecord& r) {
  return {{"n1", r.n1}, {"n2", r.n2}, {"b", int_to_json(r.b)}, {"m1", r.m1}, {"m2", r.m2}, {"c", int_to_json(r.c)}};
}

inline SolutionRecord record_from_json(const json& j) {
  return {j.at("n1").get<int>(), j.at("n2").get<int>(), int_from_json(j.at("b")),
          j.at("m1").get<int>(),  j.at("m2").get<int>(), int_from_json(j.at("c"))};
}

template <class T>
std::optional<T> opt_field(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace detail

inline nlohmann::json records_to_json(const std::vector<SolutionRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : records) arr.push_back(detail::to_json(r));
  return arr;
}

inline nlohmann::json to_json(const VerificationReport& rep) {
  using nlohmann::json;
  json j;
  j["schema"] = rep.schema;
  j["config"] = {{"digits", rep.config.digits},       {"n_max", rep.config.n_max},
                 {"rounds", rep.config.rounds},       {"lll_delta", rep.config.lll_delta},
                 {"c_growth", rep.config.c_growth},   {"max_retries", rep.config.max_retries},
                 {"output_format", rep.config.output_format}, {"output_path", rep.config.output_path}};
  if (rep.constants) {
    const auto& c = *rep.constants;
    j["constants"] = {{"digits", c.digits},       {"alpha", c.alpha},     {"a", c.a},
                      {"log_alpha", c.log_alpha}, {"log_a", c.log_a},     {"beta_re", c.beta_re},
                      {"beta_im", c.beta_im},     {"b_re", c.b_re},       {"b_im", c.b_im},
                      {"norm_ok", c.norm_ok}};
  } else {
    j["constants"] = nullptr;
  }
  j["audits"] = json::array();
  for (const auto& a : rep.audits) {
    j["audits"].push_back({{"name", a.name}, {"stated", a.stated}, {"recomputed", a.recomputed},
                           {"ratio", a.ratio}, {"formula", a.formula}, {"ok", a.ok}});
  }
  j["small_solutions"] = rep.small_solutions ? records_to_json(*rep.small_solutions) : json(nullptr);
  j["multi_solution_groups"] = json::array();
  for (const auto& g : rep.multi_solution_groups) {
    json sols = json::array();
    for (const auto& [n, m] : g.solutions) sols.push_back({n, m});
    j["multi_solution_groups"].push_back(
        {{"b", detail::int_to_json(g.b)}, {"c", detail::int_to_json(g.c)}, {"solutions", sols}});
  }
  j["initial_bound"] = rep.initial_bound ? json(*rep.initial_bound) : json(nullptr);
  j["rounds"] = json::array();
  for (const auto& r : rep.rounds) {
    j["rounds"].push_back(
        {{"index", r.index},
         {"n1_bound_in", r.n1_bound_in},
         {"stepA",
          {{"p", r.stepA.p},
           {"q", r.stepA.q},
           {"delta", r.stepA.delta},
           {"lower_bound", r.stepA.lower_bound},
           {"n1n2_max", r.stepA.n1n2_max},
           {"n2n3_max", r.stepA.n2n3_max},
           {"logb", r.stepA.logb}}},
         {"stepB",
          {{"min_bound", r.stepB.min_bound},
           {"argmin_k", r.stepB.argmin_k},
           {"max_attempts", r.stepB.max_attempts},
           {"lower_bound", r.stepB.lower_bound},
           {"n1n2_max", r.stepB.n1n2_max},
           {"logb", r.stepB.logb}}},
         {"stepC", {{"logb", r.stepC_logb}}},
         {"stepD",
          {{"logb_max", r.stepD.logb_max}, {"n1_bound", r.stepD.n1_bound}, {"n1_bound_next", r.stepD.n1_bound_next}}},
         {"seconds", r.seconds}});
  }
  j["final"] = rep.final_bounds ? json{{"logb", rep.final_bounds->logb}, {"n1", rep.final_bounds->n1}} : json(nullptr);
  j["failure"] = rep.failure ? json(*rep.failure) : json(nullptr);
  j["precision_failure"] = rep.precision_failure;
  j["verdict"] = json::array();
  for (const auto& v : rep.verdict) {
    j["verdict"].push_back(
        {{"id", v.id}, {"anchor", v.anchor}, {"description", v.description}, {"pass", v.pass}, {"detail", v.detail}});
  }
  j["pass"] = rep.passed();
  return j;
}

inline VerificationReport report_from_json(const nlohmann::json& j) {
  using detail::opt_field;
  VerificationReport rep;
  rep.schema = j.at("schema").get<int>();
  if (rep.schema != kReportSchema) throw InvalidArgument("unsupported report schema " + std::to_string(rep.schema));
  const auto& cfg = j.at("config");
  rep.config.digits = cfg.at("digits").get<unsigned>();
  rep.config.n_max = cfg.at("n_max").get<int>();
  rep.config.rounds = cfg.at("rounds").get<int>();
  rep.config.lll_delta = cfg.at("lll_delta").get<std::string>();
  rep.config.c_growth = cfg.at("c_growth").get<unsigned>();
  rep.config.max_retries = cfg.at("max_retries").get<int>();
  rep.config.output_format = cfg.at("output_format").get<std::string>();
  rep.config.output_path = cfg.at("output_path").get<std::string>();
  if (!j.at("constants").is_null()) {
    const auto& c = j.at("constants");
    ConstantsSection s;
    s.digits = c.at("digits").get<unsigned>();
    s.alpha = c.at("alpha").get<std::string>();
    s.a = c.at("a").get<std::string>();
    s.log_alpha = c.at("log_alpha").get<std::string>();
    s.log_a = c.at("log_a").get<std::string>();
    s.beta_re = c.at("beta_re").get<std::string>();
    s.beta_im = c.at("beta_im").get<std::string>();
    s.b_re = c.at("b_re").get<std::string>();
    s.b_im = c.at("b_im").get<std::string>();
    s.norm_ok = c.at("norm_ok").get<bool>();
    rep.constants = s;
  }
  for (const auto& a : j.at("audits")) {
    rep.audits.push_back({a.at("name").get<std::string>(), a.at("stated").get<std::string>(),
                          a.at("recomputed").get<std::string>(), a.at("ratio").get<std::string>(),
                          a.at("formula").get<std::string>(), a.at("ok").get<bool>()});
  }
  if (!j.at("small_solutions").is_null()) {
    std::vector<SolutionRecord> recs;
    for (const auto& r : j.at("small_solutions")) recs.push_back(detail::record_from_json(r));
    rep.small_solutions = std::move(recs);
  }
  for (const auto& g : j.at("multi_solution_groups")) {
    GroupEntry e{detail::int_from_json(g.at("b")), detail::int_from_json(g.at("c")), {}};
    for (const auto& s : g.at("solutions")) e.solutions.emplace_back(s.at(0).get<int>(), s.at(1).get<int>());
    rep.multi_solution_groups.push_back(std::move(e));
  }
  rep.initial_bound = opt_field<std::string>(j, "initial_bound");
  for (const auto& r : j.at("rounds")) {
    RoundView v;
    v.index = r.at("index").get<int>();
    v.n1_bound_in = r.at("n1_bound_in").get<std::string>();
    const auto& a = r.at("stepA");
    v.stepA = {a.at("p").get<std::string>(),        a.at("q").get<std::string>(),    a.at("delta").get<std::string>(),
               a.at("lower_bound").get<std::string>(), a.at("n1n2_max").get<long>(), a.at("n2n3_max").get<long>(),
               a.at("logb").get<long>()};
    const auto& b = r.at("stepB");
    v.stepB = {b.at("min_bound").get<std::string>(), b.at("argmin_k").get<long>(),  b.at("max_attempts").get<int>(),
               b.at("lower_bound").get<std::string>(), b.at("n1n2_max").get<long>(), b.at("logb").get<long>()};
    v.stepC_logb = r.at("stepC").at("logb").get<long>();
    const auto& d = r.at("stepD");
    v.stepD = {d.at("logb_max").get<long>(), d.at("n1_bound").get<std::string>(),
               d.at("n1_bound_next").get<std::string>()};
    v.seconds = r.at("seconds").get<double>();
    rep.rounds.push_back(std::move(v));
  }
  if (!j.at("final").is_null()) {
    rep.final_bounds = FinalView{j.at("final").at("logb").get<long>(), j.at("final").at("n1").get<std::string>()};
  }
  rep.failure = opt_field<std::string>(j, "failure");
  rep.precision_failure = j.at("precision_failure").get<bool>();
  for (const auto& v : j.at("verdict")) {
    rep.verdict.push_back({v.at("id").get<std::string>(), v.at("anchor").get<std::string>(),
                           v.at("description").get<std::string>(), v.at("pass").get<bool>(),
                           v.at("detail").get<std::string>()});
  }
  return rep;
}

inline std::string render_json(const VerificationReport& rep) { return to_json(rep).dump(2) + "\n"; }

inline VerificationReport parse_report(const std::string& text) {
  try {
    return report_from_json(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed report: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Markdown

/// Rounds as columns, steps as rows.
inline std::string render_rounds_table(const std::vector<RoundView>& rounds) {
  std::ostringstream os;
  os << "| |";
  for (const auto& r : rounds) os << " round " << r.index << " |";
  os << "\n|---|";
  for (std::size_t i = 0; i < rounds.size(); ++i) os << "---|";
  os << "\n";
  auto row = [&](const char* label, auto get) {
    os << "| " << label << " |";
    for (const auto& r : rounds) os << ' ' << get(r) << " |";
    os << "\n";
  };
  row("n1 <= (in)", [](const RoundView& r) { return r.n1_bound_in; });
  row("Step A: n1 - n2 <=", [](const RoundView& r) { return std::to_string(r.stepA.n1n2_max); });
  row("Step A: n2 - n3 <=", [](const RoundView& r) { return std::to_string(r.stepA.n2n3_max); });
  row("Step A: log b <=", [](const RoundView& r) { return std::to_string(r.stepA.logb); });
  row("Step B: n1 - n2 <=", [](const RoundView& r) { return std::to_string(r.stepB.n1n2_max); });
  row("Step B: log b <=", [](const RoundView& r) { return std::to_string(r.stepB.logb); });
  row("Step C: log b <=", [](const RoundView& r) { return std::to_string(r.stepC_logb); });
  row("Step D: n1 <=", [](const RoundView& r) { return r.stepD.n1_bound_next; });
  return os.str();
}

inline std::string render_markdown(const VerificationReport& rep) {
  std::ostringstream os;
  os << "# Tribonacci Pillai verification\n\n";
  os << "digits " << rep.config.digits << ", n_max " << rep.config.n_max << ", rounds " << rep.config.rounds
     << ", LLL delta " << rep.config.lll_delta << ", C growth " << rep.config.c_growth << ", max retries "
     << rep.config.max_retries << "\n\n";
  if (rep.constants) {
    const auto& c = *rep.constants;
    os << "## Constants\n\n";
    os << "- alpha = " << c.alpha << "\n- a = " << c.a << "\n- log alpha = " << c.log_alpha
       << "\n- log a = " << c.log_a << "\n- beta = " << c.beta_re << " + " << c.beta_im << " i\n- b = " << c.b_re
       << " + " << c.b_im << " i\n- norm check: " << (c.norm_ok ? "ok" : "FAILED") << "\n\n";
  }
  if (!rep.audits.empty()) {
    os << "## Constants audit\n\n| constant | stated | recomputed | ratio | ok | formula |\n|---|---|---|---|---|---|\n";
    for (const auto& a : rep.audits) {
      os << "| " << a.name << " | " << a.stated << " | " << a.recomputed << " | " << a.ratio << " | "
         << (a.ok ? "yes" : "no") << " | `" << a.formula << "` |\n";
    }
    os << "\n";
  }
  if (rep.small_solutions) {
    os << "## Small solutions\n\n" << rep.small_solutions->size() << " records\n\n";
    if (!rep.small_solutions->empty()) {
      os << "| n1 | n2 | b | m1 | m2 | c |\n|---|---|---|---|---|---|\n";
      for (const auto& r : *rep.small_solutions) {
        os << "| " << r.n1 << " | " << r.n2 << " | " << r.b << " | " << r.m1 << " | " << r.m2 << " | " << r.c
           << " |\n";
      }
      os << "\n";
    }
    os << "(b, c) pairs: " << rep.multi_solution_groups.size() << "\n\n";
    for (const auto& g : rep.multi_solution_groups) {
      os << "- (" << g.b << ", " << g.c << "): " << detail::join_pairs(g.solutions) << "\n";
    }
    os << "\n";
  }
  if (rep.initial_bound) os << "## Initial bound\n\nn1 <= " << *rep.initial_bound << "\n\n";
  if (!rep.rounds.empty()) os << "## Reduction\n\n" << render_rounds_table(rep.rounds) << "\n";
  if (rep.failure) os << "Run stopped: " << *rep.failure << "\n\n";
  if (!rep.verdict.empty()) {
    os << "## Verdict\n\n";
    for (const auto& v : rep.verdict) {
      os << "- [" << (v.pass ? "PASS" : "FAIL") << "] " << v.anchor << ": " << v.description << " (" << v.detail
         << ")\n";
    }
    os << "\nOverall: " << (rep.passed() ? "PASS" : "FAIL") << "\n\n";
  }
  if (rep.final_bounds) {
    os << "log b ≤ " << rep.final_bounds->logb << "\n";
    os << "n1 ≤ " << rep.final_bounds->n1 << "\n";
  }
  return os.str();
}

inline std::string render_report(const VerificationReport& rep, const std::string& format) {
  if (format == "json") return render_json(rep);
  if (format == "md") return render_markdown(rep);
  throw InvalidArgument("unknown report format: " + format);
}

}  // namespace pillai

#endif  // PILLAI_REPORT_HPP
