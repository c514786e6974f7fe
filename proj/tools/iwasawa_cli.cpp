// Command-line front end: growth tables, seeded verification campaigns,
// formal-group reports and element invariants.
//
// Exit codes: 0 pass, 1 check failure, 2 usage error, 3 precision exhausted.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>

#include "iwasawa/campaign.hpp"

namespace {

using namespace iwasawa;
using nlohmann::json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;
constexpr int kExhausted = 3;

void require_odd_prime(std::uint32_t p) {
  if (p == 2) throw InvalidArgument("p = 2 is not supported: the theory needs an odd prime");
  if (!is_prime(p)) throw InvalidArgument("--p must be an odd prime, got " + std::to_string(p));
}

struct Options {
  std::uint32_t p = 3;
  std::string ap = "0";
  int n_max = 4;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  std::optional<int> precision;
  std::string format = "json";
  unsigned jobs = 1;
  bool no_timing = false;
  int degree = 20;
  int target = 10;
  std::optional<int> assoc_degree;
  std::string element_json_text;
  std::string element_text;
};

int cmd_table(const Options& o) {
  require_odd_prime(o.p);
  const auto rows = growth_table(o.p, o.n_max);
  if (o.format == "csv")
    std::cout << growth_csv(rows);
  else
    std::cout << growth_json(o.p, rows).dump(2) << '\n';
  return kPass;
}

int cmd_verify(const Options& o) {
  require_odd_prime(o.p);
  const SimConfig cfg = SimConfig::make(o.p, o.ap, o.n_max, o.seed, o.trials, o.precision);
  std::cerr << "verify: p=" << cfg.p << " a_p=" << cfg.a_p.to_string() << " n_max=" << cfg.n_max
            << " trials=" << cfg.trials << " N=" << cfg.precision() << " jobs=" << o.jobs << '\n';
  const CampaignResult r = run_campaign(cfg, o.jobs);
  if (o.format == "csv")
    std::cout << campaign_csv(r);
  else
    std::cout << campaign_json(r, !o.no_timing).dump(2) << '\n';
  std::cerr << "verify: " << (r.passed() ? "all checks passed" : "FAILED") << " in " << r.wall_seconds << " s\n";
  if (r.exhausted()) return kExhausted;
  return r.passed() ? kPass : kFail;
}

int cmd_fg(const Options& o) {
  require_odd_prime(o.p);
  if (o.degree < 1) throw InvalidArgument("--deg must be >= 1");
  if (o.target < 1) throw InvalidArgument("--target must be >= 1");
  const int assoc = o.assoc_degree.value_or(std::min(o.degree, 10));
  if (assoc < 1 || assoc > o.degree) throw InvalidArgument("--assoc-deg must lie in [1, --deg]");
  const HondaType type = HondaType::make(o.p, o.ap);
  const FormalGroupReport rep = formal_group_report(type, o.degree, o.target, assoc);
  std::cout << rep.body.dump(2) << '\n';
  std::cerr << "fg: " << rep.body["status"].get<std::string>() << '\n';
  if (rep.exhausted) return kExhausted;
  return rep.passed ? kPass : kFail;
}

int cmd_invariants(const Options& o) {
  if (o.element_json_text.empty() == o.element_text.empty())
    throw InvalidArgument("give exactly one of --element or --text");
  const AlgebraElement f = o.element_text.empty() ? element_from_json(json::parse(o.element_json_text))
                                                  : AlgebraElement::parse_text(o.element_text);
  json out{{"command", "invariants"}, {"element", element_json(f)}, {"text", f.to_text()}};
  try {
    const Invariants inv = invariants(f);
    out["mu"] = inv.mu;
    out["lambda"] = inv.lambda;
  } catch (const PrecisionExhausted& e) {
    out["error"] = e.what();
    std::cout << out.dump(2) << '\n';
    return kExhausted;
  }
  std::cout << out.dump(2) << '\n';
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iwasawa-theoretic growth of Sha at supersingular primes: tables, campaigns, formal groups"};
  app.require_subcommand(1);
  app.allow_extras(false);
  Options o;

  auto add_format = [&](CLI::App* c) { c->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"})); };

  CLI::App* table = app.add_subcommand("table", "q_n and e_n for n <= nmax");
  table->add_option("--p", o.p, "odd prime")->required();
  table->add_option("--nmax", o.n_max, "top level")->check(CLI::Range(0, 30));
  add_format(table);

  CLI::App* verify = app.add_subcommand("verify", "seeded campaign of admissible sequences");
  verify->add_option("--p", o.p, "odd prime")->required();
  verify->add_option("--ap", o.ap, "a_p in decimal, divisible by p");
  verify->add_option("--nmax", o.n_max, "top level")->check(CLI::Range(0, 12));
  verify->add_option("--trials", o.trials, "number of trials")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 32));
  verify->add_option("--seed", o.seed, "64-bit seed");
  verify->add_option("--precision", o.precision, "working precision N (default e_nmax + 8)");
  verify->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  verify->add_flag("--no-timing", o.no_timing, "omit the timing field");
  add_format(verify);

  CLI::App* fg = app.add_subcommand("fg", "formal group of Honda type t^2 - a_p t + p");
  fg->add_option("--p", o.p, "odd prime")->required();
  fg->add_option("--ap", o.ap, "a_p in decimal, divisible by p");
  fg->add_option("--deg", o.degree, "truncation degree")->check(CLI::Range(1, 60));
  fg->add_option("--target", o.target, "target precision");
  fg->add_option("--assoc-deg", o.assoc_degree, "degree of the associativity check (default min(deg, 10))");

  CLI::App* inv = app.add_subcommand("invariants", "mu and lambda of a group-ring element");
  inv->add_option("--element", o.element_json_text, "element as JSON {p, N, level, coeffs}");
  inv->add_option("--text", o.element_text, "element as \"level n; [c0, ...] mod p^N\"");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kPass : kUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kPass : kUsage;
  }

  try {
    if (table->parsed()) return cmd_table(o);
    if (verify->parsed()) return cmd_verify(o);
    if (fg->parsed()) return cmd_fg(o);
    if (inv->parsed()) return cmd_invariants(o);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NotAUnit& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PrecisionExhausted& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExhausted;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
