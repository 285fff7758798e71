#include "pb/cli.hpp"

#include "pb/checks.hpp"
#include "pb/experiments.hpp"
#include "pb/mle.hpp"
#include "pb/pabulib.hpp"
#include "pb/proportional.hpp"
#include "pb/rules.hpp"
#include "pb/welfare.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace pb::cli {
namespace {

using Json = nlohmann::ordered_json;

// Raised by post-parse validation of flag values; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json rational_json(const Rational& r) {
  return Json{{"num", rat_num(r).str()},
              {"den", rat_den(r).str()},
              {"decimal", to_decimal_string(r)}};
}

Json winners_json(const RuleOutcome& outcome, const Instance& inst) {
  Json winners = Json::array();
  for (const auto& ids : outcome.id_lists(inst)) {
    winners.push_back(ids);
  }
  return winners;
}

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t end = text.find(sep, start);
    if (end == std::string::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, end - start));
    start = end + 1;
  }
}

// "p1:2,p2:2,p3:3" -> projects with costs.
std::vector<Project> parse_inline_projects(const std::string& text) {
  std::vector<Project> projects;
  for (const std::string& item : split_list(text, ',')) {
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= item.size()) {
      throw StructuralError("project entries must look like 'id:cost', got '" +
                            item + "'");
    }
    std::int64_t cost = 0;
    try {
      cost = std::stoll(item.substr(colon + 1));
    } catch (const std::exception&) {
      throw StructuralError("bad project cost in '" + item + "'");
    }
    projects.push_back({item.substr(0, colon), cost});
  }
  return projects;
}

// "p1|p2,p3|" -> three ballots; an empty segment is an empty ballot.
Profile parse_inline_profile(const Instance& inst, const std::string& text) {
  Profile prof;
  for (const std::string& segment : split_list(text, '|')) {
    std::vector<std::string> ids;
    if (!segment.empty()) {
      ids = split_list(segment, ',');
    }
    prof.ballots.push_back(make_ballot(inst, ids));
  }
  return prof;
}

BudgetAllocation parse_truth(const Instance& inst, const std::string& text) {
  std::vector<std::string> ids;
  if (!text.empty()) {
    ids = split_list(text, ',');
  }
  return BudgetAllocation(inst, make_ballot(inst, ids).approved);
}

struct IoFlags {
  std::string instance_file;
  std::string inline_projects;
  std::int64_t budget = 0;
  std::string inline_profile;
  bool has_inline_profile = false;
};

void add_instance_flags(CLI::App* cmd, IoFlags& io, bool with_profile) {
  cmd->add_option("--instance", io.instance_file,
                  "Election in .pb format (votes become the profile)");
  cmd->add_option("--projects", io.inline_projects,
                  "Inline projects, e.g. 'p1:1,p2:2'");
  cmd->add_option("--budget", io.budget, "Budget limit for --projects");
  if (with_profile) {
    cmd->add_option("--profile", io.inline_profile,
                    "Inline ballots, '|'-separated, e.g. 'p1|p1,p2|'")
        ->each([&io](const std::string&) { io.has_inline_profile = true; });
  }
}

std::pair<Instance, std::optional<Profile>> load_instance(const IoFlags& io) {
  if (!io.instance_file.empty()) {
    std::ifstream in(io.instance_file);
    if (!in) {
      throw StructuralError("cannot read '" + io.instance_file + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const PbFile file = parse_pb(buffer.str());
    auto [inst, prof] = to_instance_profile(file);
    if (io.has_inline_profile) {
      return {inst, parse_inline_profile(inst, io.inline_profile)};
    }
    return {std::move(inst), std::move(prof)};
  }
  if (io.inline_projects.empty()) {
    throw UsageError("either --instance or --projects is required");
  }
  Instance inst(parse_inline_projects(io.inline_projects), io.budget);
  if (io.has_inline_profile) {
    return {inst, parse_inline_profile(inst, io.inline_profile)};
  }
  return {std::move(inst), std::nullopt};
}

Profile require_profile(const std::pair<Instance, std::optional<Profile>>& in) {
  if (!in.second) {
    throw UsageError(
        "a profile is required (--profile or votes in the .pb file)");
  }
  return *in.second;
}

NoiseModelKind require_model(const std::string& name) {
  auto kind = parse_noise_model(name);
  if (!kind) {
    throw UsageError("unknown noise model '" + name +
                               "'; use m-app, m-ncost or m-napp");
  }
  return *kind;
}

TruthSpace require_space(const std::string& name) {
  auto space = parse_truth_space(name);
  if (!space) {
    throw UsageError("unknown truth space '" + name +
                               "'; use all, exhaustive or nondegenerate");
  }
  return *space;
}

std::string resolve_rule_name(const std::string& rule,
                              const std::string& satisfaction) {
  if (rule == "mes") {
    if (satisfaction != "card" && satisfaction != "cost") {
      throw UsageError("--satisfaction must be card or cost");
    }
    return "mes-" + satisfaction;
  }
  return rule;
}

RuleLimits limits_from_env() {
  RuleLimits limits;
  if (const char* cap = std::getenv("PB_EPISTEMIC_BRANCH_CAP")) {
    try {
      limits.branch_cap = static_cast<std::size_t>(std::stoull(cap));
    } catch (const std::exception&) {
      throw StructuralError("PB_EPISTEMIC_BRANCH_CAP must be an integer");
    }
  }
  return limits;
}

Json violation_json(const ViolationReport& report) {
  const Instance& inst = report.instance;
  Json projects = Json::array();
  for (const Project& p : inst.projects()) {
    projects.push_back(Json{{"id", p.id}, {"cost", p.cost}});
  }
  auto profile_json = [&](const Profile& prof) {
    Json ballots = Json::array();
    for (const Ballot& b : prof.ballots) {
      ballots.push_back(sorted_ids(inst, b.approved));
    }
    return ballots;
  };
  return Json{{"rule", report.rule},
              {"projects", projects},
              {"budget", inst.budget()},
              {"profile_a", profile_json(report.profile_a)},
              {"profile_b", profile_json(report.profile_b)},
              {"f_a", winners_json(report.outcome_a, inst)},
              {"f_ab", winners_json(report.outcome_ab, inst)}};
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Participatory budgeting rules, noise models and likelihood "
               "tooling"};
  app.require_subcommand(1);

  // rule run
  CLI::App* rule_cmd = app.add_subcommand("rule", "Evaluate a voting rule");
  rule_cmd->require_subcommand(1);
  CLI::App* rule_run = rule_cmd->add_subcommand("run", "Run a rule");
  IoFlags rule_io;
  std::string rule_name;
  std::string satisfaction = "card";
  add_instance_flags(rule_run, rule_io, true);
  rule_run->add_option("--rule", rule_name, "Rule name, see rule list")
      ->required();
  rule_run->add_option("--satisfaction", satisfaction,
                       "Satisfaction for mes: card or cost");

  CLI::App* rule_list = rule_cmd->add_subcommand("list", "List rule names");

  // mle
  CLI::App* mle_cmd =
      app.add_subcommand("mle", "Brute-force maximum likelihood estimate");
  IoFlags mle_io;
  std::string mle_model;
  std::string mle_space = "all";
  add_instance_flags(mle_cmd, mle_io, true);
  mle_cmd->add_option("--model", mle_model, "m-app, m-ncost or m-napp")
      ->required();
  mle_cmd->add_option("--space", mle_space, "all, exhaustive or nondegenerate");

  // sample
  CLI::App* sample_cmd =
      app.add_subcommand("sample", "Draw ballots from a noise model");
  IoFlags sample_io;
  std::string sample_model;
  std::string sample_truth;
  std::size_t sample_agents = 1;
  std::uint64_t sample_seed = 0;
  add_instance_flags(sample_cmd, sample_io, false);
  sample_cmd->add_option("--model", sample_model, "m-app, m-ncost or m-napp")
      ->required();
  sample_cmd->add_option("--truth", sample_truth, "Ground truth, e.g. 'p1,p2'")
      ->required();
  sample_cmd->add_option("--agents", sample_agents, "Number of ballots");
  sample_cmd->add_option("--seed", sample_seed, "Root seed");

  // z-factor
  CLI::App* z_cmd =
      app.add_subcommand("z-factor", "Normalisation factor of a noise model");
  IoFlags z_io;
  std::string z_model;
  std::string z_truth;
  add_instance_flags(z_cmd, z_io, false);
  z_cmd->add_option("--model", z_model, "m-app, m-ncost or m-napp")->required();
  z_cmd->add_option("--truth", z_truth, "Ground truth, e.g. 'p1,p2'")
      ->required();

  // likelihood
  CLI::App* lik_cmd =
      app.add_subcommand("likelihood", "Likelihood of a profile");
  IoFlags lik_io;
  std::string lik_model;
  std::string lik_truth;
  add_instance_flags(lik_cmd, lik_io, true);
  lik_cmd->add_option("--model", lik_model, "m-app, m-ncost or m-napp")
      ->required();
  lik_cmd->add_option("--truth", lik_truth, "Ground truth, e.g. 'p1,p2'")
      ->required();

  // check reinforcement
  CLI::App* check_cmd = app.add_subcommand("check", "Property checks");
  check_cmd->require_subcommand(1);
  CLI::App* check_reinf = check_cmd->add_subcommand(
      "reinforcement", "Randomized weak-reinforcement search");
  std::string check_rule;
  std::size_t check_trials = 10'000;
  std::uint64_t check_seed = 0;
  FuzzParams check_params;
  check_reinf->add_option("--rule", check_rule, "Rule name")->required();
  check_reinf->add_option("--trials", check_trials, "Number of trials");
  check_reinf->add_option("--seed", check_seed, "Root seed");
  check_reinf->add_option("--max-projects", check_params.max_projects,
                          "Projects per random instance (upper bound)");
  check_reinf->add_option("--max-agents", check_params.max_agents,
                          "Agents per random profile (upper bound)");
  check_reinf->add_option("--min-cost", check_params.min_cost,
                          "Minimum project cost");
  check_reinf->add_option("--max-cost", check_params.max_cost,
                          "Maximum project cost");

  // verify counterexamples
  CLI::App* verify_cmd = app.add_subcommand("verify", "Built-in fixtures");
  verify_cmd->require_subcommand(1);
  CLI::App* verify_cx = verify_cmd->add_subcommand(
      "counterexamples", "Reproduce the built-in counterexample fixtures");

  // experiment recovery
  CLI::App* exp_cmd = app.add_subcommand("experiment", "Monte-Carlo harness");
  exp_cmd->require_subcommand(1);
  CLI::App* exp_rec =
      exp_cmd->add_subcommand("recovery", "Truth-recovery rates as CSV");
  IoFlags exp_io;
  std::string exp_model;
  std::string exp_truth;
  std::string exp_rules;
  std::string exp_grid;
  std::string exp_space = "all";
  std::string exp_out = "-";
  std::size_t exp_trials = 1;
  std::uint64_t exp_seed = 0;
  add_instance_flags(exp_rec, exp_io, false);
  exp_rec->add_option("--model", exp_model, "m-app, m-ncost or m-napp")
      ->required();
  exp_rec->add_option("--truth", exp_truth, "Planted ground truth")->required();
  exp_rec->add_option("--rules", exp_rules, "Comma-separated rules or 'mle'")
      ->required();
  exp_rec->add_option("--n-grid", exp_grid, "Comma-separated agent counts")
      ->required();
  exp_rec->add_option("--trials", exp_trials, "Trials per cell");
  exp_rec->add_option("--seed", exp_seed, "Root seed");
  exp_rec->add_option("--space", exp_space, "Truth space for the mle rule");
  exp_rec->add_option("--out", exp_out, "Output file, '-' for stdout");

  // pb-validate
  CLI::App* validate_cmd =
      app.add_subcommand("pb-validate", "Validate a .pb file");
  std::string validate_file;
  validate_cmd->add_option("--instance", validate_file, "Election file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const RuleLimits limits = limits_from_env();

  if (rule_run->parsed()) {
    const std::string resolved = resolve_rule_name(rule_name, satisfaction);
    auto rule = find_rule(resolved, limits);
    if (!rule) {
      throw UsageError("unknown rule '" + resolved + "'");
    }
    auto loaded = load_instance(rule_io);
    const Profile prof = require_profile(loaded);
    const RuleOutcome outcome = (*rule)(loaded.first, prof);
    Json result{{"schema", "1"},
                {"command", "rule-run"},
                {"rule", resolved},
                {"winners", winners_json(outcome, loaded.first)}};
    out << result.dump(2) << '\n';
    return 0;
  }

  if (rule_list->parsed()) {
    Json result{{"schema", "1"},
                {"command", "rule-list"},
                {"rules", rule_names()}};
    out << result.dump(2) << '\n';
    return 0;
  }

  if (mle_cmd->parsed()) {
    const NoiseModelKind model = require_model(mle_model);
    const TruthSpace space = require_space(mle_space);
    auto loaded = load_instance(mle_io);
    const Profile prof = require_profile(loaded);
    const RuleOutcome outcome =
        mle(model, loaded.first, prof, space, limits.enumeration_cap);
    const Rational best = likelihood(
        model, loaded.first, GroundTruth{outcome.winners().front()}, prof);
    Json result{{"schema", "1"},
                {"command", "mle"},
                {"model", std::string(to_string(model))},
                {"space", std::string(to_string(space))},
                {"winners", winners_json(outcome, loaded.first)},
                {"max_likelihood", rational_json(best)}};
    out << result.dump(2) << '\n';
    return 0;
  }

  if (sample_cmd->parsed()) {
    const NoiseModelKind model = require_model(sample_model);
    auto loaded = load_instance(sample_io);
    const GroundTruth truth{parse_truth(loaded.first, sample_truth)};
    Json ballots = Json::array();
    const RandomStream root(sample_seed);
    for (std::size_t agent = 0; agent < sample_agents; ++agent) {
      RandomStream stream = root.split(agent);
      const Ballot b = sample_ballot(model, loaded.first, truth, stream);
      ballots.push_back(sorted_ids(loaded.first, b.approved));
    }
    Json result{{"schema", "1"},
                {"command", "sample"},
                {"model", std::string(to_string(model))},
                {"seed", sample_seed},
                {"ballots", ballots}};
    out << result.dump(2) << '\n';
    return 0;
  }

  if (z_cmd->parsed()) {
    const NoiseModelKind model = require_model(z_model);
    auto loaded = load_instance(z_io);
    const GroundTruth truth{parse_truth(loaded.first, z_truth)};
    const ZFactor z = normalisation_factor(model, loaded.first, truth);
    Json result{{"schema", "1"},
                {"command", "z-factor"},
                {"model", std::string(to_string(model))},
                {"z", rational_json(z.value)},
                {"cross_checked", z.cross_checked}};
    out << result.dump(2) << '\n';
    return 0;
  }

  if (lik_cmd->parsed()) {
    const NoiseModelKind model = require_model(lik_model);
    auto loaded = load_instance(lik_io);
    const Profile prof = require_profile(loaded);
    const GroundTruth truth{parse_truth(loaded.first, lik_truth)};
    const Rational value = likelihood(model, loaded.first, truth, prof);
    Json result{{"schema", "1"},
                {"command", "likelihood"},
                {"model", std::string(to_string(model))},
                {"likelihood", rational_json(value)}};
    out << result.dump(2) << '\n';
    return 0;
  }

  if (check_reinf->parsed()) {
    const FuzzSummary summary = fuzz_weak_reinforcement(
        check_rule, check_params, check_trials, check_seed, limits);
    Json result{{"schema", "1"},
                {"command", "check-reinforcement"},
                {"rule", check_rule},
                {"trials", summary.trials},
                {"applicable", summary.applicable},
                {"passes", summary.passes},
                {"violations", summary.violations}};
    if (summary.first_violation) {
      result["first_violation"] = violation_json(*summary.first_violation);
    }
    out << result.dump(2) << '\n';
    return summary.violations > 0 ? 1 : 0;
  }

  if (verify_cx->parsed()) {
    Json reports = Json::array();
    bool all_reproduced = true;
    std::size_t violations = 0;
    for (const Fixture& fixture : builtin_fixtures()) {
      const Instance& inst = fixture.instance;
      bool reproduced = true;
      Json per_rule = Json::array();
      for (const std::string& rule_id : fixture.rules) {
        const RuleFn rule = *find_rule(rule_id, limits);
        Json outcomes = Json::array();
        for (std::size_t i = 0; i < fixture.profiles.size(); ++i) {
          const RuleOutcome outcome = rule(inst, fixture.profiles[i]);
          reproduced = reproduced && outcome == fixture.expected[i];
          outcomes.push_back(winners_json(outcome, inst));
        }
        const RuleOutcome combined =
            rule(inst, concat(fixture.profiles[fixture.concat_left],
                              fixture.profiles[fixture.concat_right]));
        reproduced = reproduced && combined == fixture.expected_concat;
        per_rule.push_back(Json{{"rule", rule_id},
                                {"outcomes", outcomes},
                                {"combined", winners_json(combined, inst)}});
      }
      Json report{{"name", fixture.name},
                  {"rules", fixture.rules},
                  {"evaluation", per_rule}};
      if (fixture.expects_reinforcement_violation) {
        const ReinforcementCheck check = check_weak_reinforcement(
            fixture.rules.front(), inst,
            fixture.profiles[fixture.concat_left],
            fixture.profiles[fixture.concat_right], limits);
        const bool violated = check.status == ReinforcementStatus::Violation;
        reproduced = reproduced && violated;
        if (violated) {
          ++violations;
          report["violation"] = violation_json(*check.report);
        }
      }
      if (fixture.mle_refutation) {
        const MleRefutation& r = *fixture.mle_refutation;
        const MleComparison cmp = mle_matches_rule(
            r.model, fixture.rules.front(), inst,
            fixture.profiles[r.profile_index], r.space, limits);
        reproduced = reproduced && !cmp.equal;
        if (!cmp.equal) {
          ++violations;
          report["mle_discrepancy"] =
              Json{{"model", std::string(to_string(r.model))},
                   {"space", std::string(to_string(r.space))},
                   {"mle", winners_json(cmp.mle_outcome, inst)},
                   {"rule", winners_json(cmp.rule_outcome, inst)}};
        }
      }
      report["reproduced"] = reproduced;
      all_reproduced = all_reproduced && reproduced;
      reports.push_back(std::move(report));
    }
    Json result{{"schema", "1"},
                {"command", "verify-counterexamples"},
                {"all_reproduced", all_reproduced},
                {"violations", violations},
                {"fixtures", reports}};
    out << result.dump(2) << '\n';
    return violations > 0 ? 1 : 0;
  }

  if (exp_rec->parsed()) {
    const NoiseModelKind model = require_model(exp_model);
    auto loaded = load_instance(exp_io);
    ExperimentConfig cfg;
    cfg.model = model;
    cfg.truth_mask = parse_truth(loaded.first, exp_truth).mask();
    cfg.rules = split_list(exp_rules, ',');
    for (const std::string& n : split_list(exp_grid, ',')) {
      try {
        cfg.agent_grid.push_back(std::stoull(n));
      } catch (const std::exception&) {
        throw UsageError("bad agent count '" + n + "'");
      }
    }
    cfg.trials = exp_trials;
    cfg.root_seed = exp_seed;
    cfg.space = require_space(exp_space);
    cfg.limits = limits;
    const std::string csv = emit_csv(run_recovery(loaded.first, cfg));
    if (exp_out == "-") {
      out << csv;
    } else {
      std::ofstream file(exp_out);
      if (!file) {
        throw StructuralError("cannot write '" + exp_out + "'");
      }
      file << csv;
    }
    return 0;
  }

  if (validate_cmd->parsed()) {
    std::ifstream in(validate_file);
    if (!in) {
      throw StructuralError("cannot read '" + validate_file + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const PbFile file = parse_pb(buffer.str());
    Json result{{"schema", "1"},
                {"command", "pb-validate"},
                {"valid", true},
                {"projects", file.projects.size()},
                {"votes", file.votes.size()},
                {"budget", *file.meta_value("budget")}};
    out << result.dump(2) << '\n';
    return 0;
  }

  err << "no command selected\n";
  return 2;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  try {
    return run(argc, argv, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const PbParseError& e) {
    Json diag{{"schema", "1"},
              {"error", "parse"},
              {"code", std::string(to_string(e.code()))},
              {"line", e.line()},
              {"column", e.column()},
              {"message", e.what()}};
    err << diag.dump(2) << '\n';
    return 3;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace pb::cli
