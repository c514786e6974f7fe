#include "iwasawa/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <sstream>
#include <thread>

namespace iwasawa {

using nlohmann::json;

std::vector<GrowthRow> growth_table(std::uint32_t p, int n_max) {
  if (p < 3 || !is_prime(p)) throw InvalidArgument("p must be an odd prime, got " + std::to_string(p));
  if (n_max < 0) throw InvalidArgument("n_max must be >= 0");
  std::vector<GrowthRow> rows;
  for (int n = 0; n <= n_max; ++n) {
    const long q = q_n(p, n);
    rows.push_back({n, q, e_n(p, n), n == 0 ? e_n(p, 0) : e_n(p, n - 1) + q});
  }
  return rows;
}

json growth_json(std::uint32_t p, const std::vector<GrowthRow>& rows) {
  json out{{"command", "table"}, {"p", p}, {"rows", json::array()}};
  bool consistent = true;
  for (const auto& r : rows) {
    out["rows"].push_back({{"n", r.n}, {"q_n", r.q}, {"e_n", r.e}, {"e_prev_plus_q", r.e_prev_plus_q}});
    consistent = consistent && r.e == r.e_prev_plus_q;
  }
  out["consistent"] = consistent;
  return out;
}

std::string growth_csv(const std::vector<GrowthRow>& rows) {
  std::ostringstream os;
  os << "n,q_n,e_n,e_prev_plus_q\n";
  for (const auto& r : rows) os << r.n << ',' << r.q << ',' << r.e << ',' << r.e_prev_plus_q << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------

bool CampaignResult::passed() const {
  return std::all_of(trials.begin(), trials.end(),
                     [](const TrialResult& t) { return !t.exhausted && t.report.passed(); });
}

bool CampaignResult::exhausted() const {
  return std::any_of(trials.begin(), trials.end(), [](const TrialResult& t) { return t.exhausted.has_value(); });
}

CampaignResult run_campaign(const SimConfig& config, unsigned jobs) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  CampaignResult out{config, std::vector<TrialResult>(config.trials), 0};
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::uint64_t>(config.trials, 1))));

  std::atomic<std::uint64_t> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  auto worker = [&](unsigned id) {
    try {
      for (std::uint64_t i; (i = next.fetch_add(1)) < config.trials;) out.trials[i] = run_trial(config, i);
    } catch (...) {
      errors[id] = std::current_exception();
      next = config.trials;
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker, j);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

namespace {

const CheckResult* find_check(const Report& r, std::string_view name, int level) {
  for (const auto& c : r.checks)
    if (c.name == name && c.level == level) return &c;
  return nullptr;
}

json check_value(const Report& r, std::string_view name, int level) {
  const CheckResult* c = find_check(r, name, level);
  if (!c) return nullptr;
  return c->passed;
}

}  // namespace

json campaign_json(const CampaignResult& r, bool include_timing) {
  const SimConfig& c = r.config;
  json out;
  out["command"] = "verify";
  out["config"] = {{"p", c.p},           {"a_p", c.a_p.to_string()}, {"n_max", c.n_max},
                   {"trials", c.trials}, {"seed", c.seed},           {"precision", c.precision()}};
  json records = json::array();
  std::map<std::string, std::pair<long, long>> tally;  // name -> (passed, failed)
  json failures = json::array();
  for (const auto& t : r.trials) {
    for (const auto& ch : t.report.checks) {
      auto& slot = tally[ch.name];
      (ch.passed ? slot.first : slot.second) += 1;
      if (!ch.passed && failures.size() < 20)
        failures.push_back({{"trial", t.trial}, {"n", ch.level}, {"check", ch.name}, {"expected", ch.expected},
                            {"actual", ch.actual}});
    }
    if (t.exhausted) {
      failures.push_back({{"trial", t.trial}, {"check", "precision"}, {"error", *t.exhausted}});
      continue;
    }
    const PSequenceTrace& tr = *t.trace;
    for (const auto& lv : tr.levels) {
      const int n = lv.level;
      json rec{{"p", c.p},
               {"a_p", c.a_p.to_string()},
               {"n", n},
               {"seed", c.seed},
               {"trial", t.trial},
               {"precision", t.precision},
               {"mu", lv.invariants.mu},
               {"lambda", lv.invariants.lambda},
               {"q_n", q_n(c.p, n)},
               {"order_exponent", lv.profile.order_exponent()},
               {"e_n", e_n(c.p, n)},
               {"profile", lv.profile.nontrivial()},
               {"character_valuation", lv.character_valuation.to_string()}};
      if (c.a_p_is_zero()) {
        rec["structure_checks"] = {{"vanishing", check_value(t.report, "vanishing", n)},
                                   {"membership", check_value(t.report, "membership", n)},
                                   {"profile_match", check_value(t.report, "profile_match", n)}};
      } else {
        rec["structure_checks"] = nullptr;
      }
      bool ok = true;
      for (const auto& ch : t.report.checks)
        if (ch.level == n && !ch.passed) ok = false;
      rec["passed"] = ok;
      records.push_back(std::move(rec));
    }
  }
  json summary = json::object();
  for (const auto& [name, counts] : tally) summary[name] = {{"passed", counts.first}, {"failed", counts.second}};
  out["records"] = std::move(records);
  out["summary"] = std::move(summary);
  out["failures"] = std::move(failures);
  out["passed"] = r.passed();
  out["status"] = r.exhausted() ? "precision_exhausted" : (r.passed() ? "pass" : "fail");
  if (include_timing) out["timing"] = {{"wall_seconds", r.wall_seconds}};
  return out;
}

std::string campaign_csv(const CampaignResult& r) {
  const SimConfig& c = r.config;
  std::ostringstream os;
  os << "p,a_p,n,seed,trial,mu,lambda,q_n,order_exponent,e_n,vanishing,membership,profile_match,passed\n";
  auto cell = [](const Report& rep, std::string_view name, int n) -> std::string {
    const CheckResult* ch = find_check(rep, name, n);
    return ch ? (ch->passed ? "1" : "0") : "";
  };
  for (const auto& t : r.trials) {
    if (!t.trace) continue;
    for (const auto& lv : t.trace->levels) {
      const int n = lv.level;
      bool ok = true;
      for (const auto& ch : t.report.checks)
        if (ch.level == n && !ch.passed) ok = false;
      os << c.p << ',' << c.a_p.to_string() << ',' << n << ',' << c.seed << ',' << t.trial << ','
         << lv.invariants.mu << ',' << lv.invariants.lambda << ',' << q_n(c.p, n) << ','
         << lv.profile.order_exponent() << ',' << e_n(c.p, n) << ',' << cell(t.report, "vanishing", n) << ','
         << cell(t.report, "membership", n) << ',' << cell(t.report, "profile_match", n) << ',' << (ok ? 1 : 0)
         << '\n';
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

FormalGroupReport formal_group_report(const HondaType& type, int degree, int target, int assoc_degree) {
  FormalGroupReport rep;
  json& b = rep.body;
  const std::uint32_t p = type.p;
  b["command"] = "fg";
  b["config"] = {{"p", p},
                 {"a_p", type.a_p_at(std::max(target, 1)).to_string()},
                 {"degree", degree},
                 {"target", target},
                 {"assoc_degree", assoc_degree}};
  bool ok = true;
  try {
    const SeriesPlan plan = log_plan(p, degree, target);
    const HondaCoeffs hc = honda_coeffs(type, plan.terms - 1, plan.working_precision);
    const bool rec = check_recursion(type, hc);
    b["recursion"] = rec;
    ok = ok && rec;

    const GroupLaw g = group_law(type, degree, target);
    int default_target = target;
    for (long q = 1; q < degree; q *= p) default_target += 2;
    b["log_precision"] = {{"default", default_target}, {"used", g.target}, {"law", law_precision(g)}};
    b["integral"] = true;  // group_law throws otherwise
    b["min_valuation"] = {{"log", g.log.min_valuation()}, {"exp", g.exp.min_valuation()}, {"law", g.law.min_valuation()}};
    const bool unit_ok = unit_axiom_holds(g);
    const bool sym = symmetric(g);
    const int hom = homomorphism_residual(g);
    const int assoc = associativity_residual(g, assoc_degree);
    b["unit_axiom"] = unit_ok;
    b["symmetric"] = sym;
    b["homomorphism"] = {{"passed", hom >= target}, {"precision", hom}};
    b["associative"] = {{"passed", assoc >= target}, {"precision", assoc}};
    ok = ok && unit_ok && sym && hom >= target && assoc >= target;
    b["series"] = {{"log", g.log.dump_lines()}, {"exp", g.exp.dump_lines()}};

    const Epsilon eps = solve_epsilon(type, target);
    const bool eps_ok = eps.residual.is_zero() && eps.residual.absolute_precision() >= target;
    b["epsilon"] = {{"value", eps.value.to_string()},
                    {"valuation", eps.value.valuation().to_string()},
                    {"residual", describe(eps.residual)},
                    {"iterations", eps.iterations},
                    {"passed", eps_ok}};
    ok = ok && eps_ok;

    const PadicRing& ring = PadicRing::get(p, std::max(target, 1));
    const PadicScalar u = trace_unit_u(ring, type.a_p_at(ring.precision()));
    b["trace_unit"] = {{"value", u.to_string()}, {"unit", u.is_unit()}};
    ok = ok && u.is_unit();
  } catch (const IntegralityViolation& e) {
    b["integral"] = false;
    b["error"] = e.what();
    ok = false;
  } catch (const NonConvergence& e) {
    b["error"] = e.what();
    ok = false;
  } catch (const PrecisionExhausted& e) {
    b["error"] = e.what();
    rep.exhausted = true;
    ok = false;
  }
  b["passed"] = ok;
  b["status"] = rep.exhausted ? "precision_exhausted" : (ok ? "pass" : "fail");
  rep.passed = ok;
  return rep;
}

json element_json(const AlgebraElement& f) {
  json coeffs = json::array();
  for (u128 c : f.raw()) coeffs.push_back(to_decimal(c));
  return {{"p", f.prime()}, {"N", f.precision()}, {"level", f.level()}, {"coeffs", std::move(coeffs)}};
}

AlgebraElement element_from_json(const json& j) {
  try {
    const auto p = j.at("p").get<std::uint32_t>();
    const int n = j.at("N").get<int>();
    const int level = j.at("level").get<int>();
    if (p < 3 || !is_prime(p)) throw InvalidArgument("p must be an odd prime");
    if (n < 1 || n > PadicRing::max_precision(p)) throw InvalidArgument("N out of range");
    if (level < 0) throw InvalidArgument("level must be >= 0");
    const PadicRing& ring = PadicRing::get(p, n);
    const auto& cs = j.at("coeffs");
    if (!cs.is_array() || cs.size() != group_order(p, level))
      throw InvalidArgument("coeffs must hold p^level entries");
    std::vector<u128> v;
    for (const auto& c : cs) {
      const std::string s = c.is_string() ? c.get<std::string>() : c.dump();
      v.push_back(PadicScalar::parse(ring, s).value());
    }
    return AlgebraElement(ring, level, std::move(v));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed element JSON: ") + e.what());
  }
}

}  // namespace iwasawa
