#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "dixie/asymptotics.hpp"
#include "dixie/errors.hpp"
#include "dixie/experiments.hpp"
#include "dixie/montecarlo.hpp"
#include "dixie/quadrature.hpp"
#include "dixie/report.hpp"
#include "dixie/weights.hpp"

namespace dixie::cli {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string beta;
  std::string delta;
  std::vector<std::string> family;
  std::string dist;
  std::string rare;
  std::size_t size = 0;   // --M
  std::size_t total = 0;  // --N
  unsigned m = 1;
  unsigned r = 1;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  std::uint64_t draw_cap = 1'000'000'000;
  std::uint64_t draws = 2'000'000;
  std::vector<std::size_t> grid;
  std::string out;
  std::string format = "csv";
  double rel_tol = 1e-8;
  double abs_floor = 1e-14;
  std::size_t max_subdivisions = 2000;
};

void add_options(CLI::App* sub, Options& o) {
  sub->add_option("--beta", o.beta, "Law of the odd (non-rare) coupons");
  sub->add_option("--delta", o.delta, "Law of the even (rare) coupons");
  sub->add_option("--family", o.family, "Comma-separated subfamily laws for k-way interlacing")
      ->delimiter(',');
  sub->add_option("--dist", o.dist, "Single-family law");
  sub->add_option("--rare", o.rare, "Rare subfamily: index, 'beta' or 'delta'");
  sub->add_option("--M", o.size, "Coupons per subfamily");
  sub->add_option("--N", o.total, "Total number of coupons (multiple of k)");
  sub->add_option("--m", o.m, "Number of complete sets")->check(CLI::PositiveNumber);
  sub->add_option("--r", o.r, "Rising-moment order")->check(CLI::Range(1u, kMaxRisingOrder));
  sub->add_option("--trials", o.trials, "Simulation trials");
  sub->add_option("--seed", o.seed, "Simulation seed");
  sub->add_option("--draw-cap", o.draw_cap, "Per-trial draw cap");
  sub->add_option("--draws", o.draws, "Total draws for interarrival statistics");
  sub->add_option("--grid", o.grid, "Comma-separated size grid overriding the study default")
      ->delimiter(',');
  sub->add_option("--out", o.out, "Output path (default: stdout)");
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--rel-tol", o.rel_tol, "Quadrature relative tolerance")
      ->check(CLI::PositiveNumber);
  sub->add_option("--abs-floor", o.abs_floor, "Integrand cutoff")->check(CLI::PositiveNumber);
  sub->add_option("--max-subdivisions", o.max_subdivisions, "Quadrature subdivision limit");
}

unsigned workers_from_env() {
  const char* env = std::getenv("DIXIE_THREADS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) throw UsageError(std::string("invalid DIXIE_THREADS value: ") + env);
  return static_cast<unsigned>(v);
}

std::vector<WeightLaw> parse_laws(const Options& o) {
  const int given = (!o.beta.empty() || !o.delta.empty()) + !o.family.empty() + !o.dist.empty();
  if (given != 1) throw UsageError("specify exactly one of --beta/--delta, --family or --dist");
  if (!o.dist.empty()) return {parse_law(o.dist)};
  if (!o.family.empty()) {
    std::vector<WeightLaw> laws;
    for (const auto& s : o.family) laws.push_back(parse_law(s));
    return laws;
  }
  if (o.beta.empty() || o.delta.empty()) throw UsageError("--beta and --delta go together");
  return {parse_law(o.beta), parse_law(o.delta)};
}

std::size_t resolve_size(const Options& o, std::size_t k) {
  if (o.size && o.total) throw UsageError("give either --M or --N, not both");
  if (o.size) return o.size;
  if (o.total) {
    if (o.total % k != 0) {
      throw UsageError("--N " + std::to_string(o.total) + " is not divisible by k = " +
                       std::to_string(k));
    }
    return o.total / k;
  }
  throw UsageError("a size is required (--M or --N)");
}

std::optional<std::size_t> resolve_rare(const Options& o, const std::vector<WeightLaw>& laws,
                                        bool required) {
  if (!o.rare.empty()) {
    if (o.rare == "beta") return 0;
    if (o.rare == "delta") return 1;
    char* end = nullptr;
    const unsigned long v = std::strtoul(o.rare.c_str(), &end, 10);
    if (*end != '\0' || v >= laws.size()) throw UsageError("invalid --rare value: " + o.rare);
    return v;
  }
  const auto unique = unique_case_two(laws);
  if (!unique && required) {
    throw UsageError("cannot infer the rare subfamily (zero or several Case II laws); pass --rare");
  }
  return unique;
}

InterlacedFamily build_family(const Options& o, bool rare_required) {
  InterlacedFamily family;
  family.subfamilies = parse_laws(o);
  family.per_family_size = resolve_size(o, family.k());
  family.rare_index = resolve_rare(o, family.subfamilies, rare_required);
  return family;
}

QuadratureConfig quadrature_config(const Options& o) {
  return {o.rel_tol, o.abs_floor, o.max_subdivisions};
}

SimulationConfig simulation_config(const Options& o, unsigned workers) {
  return {o.trials, o.seed, o.draw_cap, workers};
}

ReportRow base_row(const std::string& study, const InterlacedFamily& family, const Options& o) {
  ReportRow row;
  row.study_id = study;
  row.family = family.spec();
  row.size = family.per_family_size;
  row.total = family.total_size();
  row.sets = o.m;
  row.order = o.r;
  return row;
}

std::string describe(const LeadingTerm& term) {
  std::string note = term.description;
  if (term.constant_unknown) note += " [constant_unknown]";
  if (term.outside_hypothesis) note += " [outside_hypothesis]";
  return note;
}

struct Outcome {
  RunReport report;
  int status = kOk;
};

Outcome cmd_exact(const Options& o) {
  const auto family = build_family(o, false);
  const auto result = exact_rising_moment(interlace(family), {o.m, o.r}, quadrature_config(o));
  auto row = base_row("exact", family, o);
  row.exact = result.value;
  std::ostringstream note;
  note << "est_error=" << result.est_error;
  row.note = note.str();
  return {{{row}}};
}

Outcome cmd_simulate(const Options& o, unsigned workers) {
  if (o.r > 2) throw UsageError("simulate supports --r 1 or 2");
  const auto family = build_family(o, false);
  const auto summary = simulate_summary(interlace(family), o.m, simulation_config(o, workers));
  auto row = base_row("simulate", family, o);
  row.simulated = o.r == 1 ? summary.mean : summary.second_rising;
  row.sim_stderr = o.r == 1 ? summary.std_error : summary.second_rising_std_error;
  row.note = "trials=" + std::to_string(summary.trials_completed) +
             ";capped=" + std::to_string(summary.capped_trials);
  return {{{row}}, summary.tainted() ? kTainted : kOk};
}

Outcome cmd_asymptotic(const Options& o) {
  const auto family = build_family(o, true);
  const auto term = leading_expectation(family, o.m);
  auto row = base_row("asymptotic", family, o);
  row.order = 1;
  row.asymptotic = term.value_at(static_cast<double>(family.per_family_size));
  row.note = describe(term);
  return {{{row}}};
}

Outcome cmd_compare(const Options& o, unsigned workers) {
  auto family = build_family(o, false);
  const auto dist = interlace(family);
  const auto cfg = quadrature_config(o);
  auto row = base_row("compare", family, o);
  row.exact = exact_rising_moment(dist, {o.m, o.r}, cfg).value;
  int status = kOk;
  if (o.trials > 0 && o.r <= 2) {
    const auto summary = simulate_summary(dist, o.m, simulation_config(o, workers));
    row.simulated = o.r == 1 ? summary.mean : summary.second_rising;
    row.sim_stderr = o.r == 1 ? summary.std_error : summary.second_rising_std_error;
    if (summary.tainted()) status = kTainted;
  }
  const bool rare_ok = family.rare_index &&
                       family.subfamilies[*family.rare_index].rarity_class() == RarityClass::CaseII;
  if (rare_ok && o.r == 1) {
    row.estimate = theorem1_estimate(family, o.m, cfg);
    row.ratio_exact_over_estimate = *row.exact / *row.estimate;
    const auto term = leading_expectation(family, o.m);
    row.asymptotic = term.value_at(static_cast<double>(family.per_family_size));
    row.ratio_exact_over_asymptotic = *row.exact / *row.asymptotic;
    row.note = describe(term);
  }
  return {{{row}}, status};
}

StudyConfig study_config(const Options& o, unsigned workers) {
  StudyConfig cfg;
  cfg.quadrature = quadrature_config(o);
  cfg.simulation = simulation_config(o, workers);
  cfg.workers = workers;
  return cfg;
}

Outcome cmd_table1(const Options& o, unsigned workers) {
  const auto cfg = study_config(o, workers);
  return {o.grid.empty() ? study_table1(o.m, cfg) : study_table1(o.m, cfg, o.grid)};
}

Outcome cmd_schur(const Options& o, unsigned workers) {
  const auto cfg = study_config(o, workers);
  return {o.grid.empty() ? study_schur(o.r, o.m, cfg) : study_schur(o.r, o.m, cfg, o.grid)};
}

Outcome cmd_figure1(const Options& o, unsigned workers) {
  const auto cfg = study_config(o, workers);
  return {o.grid.empty() ? study_figure1(o.m, cfg) : study_figure1(o.m, cfg, o.grid)};
}

Outcome cmd_theorem1(const Options& o, unsigned workers) {
  Options sized = o;
  if (!sized.size && !sized.total) sized.size = 1;  // the grid supplies M
  const auto family = build_family(sized, true);
  const auto cfg = study_config(o, workers);
  return {o.grid.empty() ? study_theorem1(family, o.m, cfg)
                         : study_theorem1(family, o.m, cfg, o.grid)};
}

Outcome cmd_interarrival(const Options& o) {
  const auto family = build_family(o, true);
  StreamRng rng(o.seed, 0);
  const auto stats = interarrival_stats(family, o.draws, rng);
  auto mean_row = base_row("interarrival_mean", family, o);
  mean_row.sets.reset();
  mean_row.order.reset();
  mean_row.exact = stats.expected_mean;
  mean_row.simulated = stats.sample_mean;
  mean_row.sim_stderr = stats.mean_std_error;
  mean_row.note = "blocks=" + std::to_string(stats.count);
  auto var_row = mean_row;
  var_row.study_id = "interarrival_var";
  var_row.exact = stats.expected_var;
  var_row.simulated = stats.sample_var;
  var_row.sim_stderr = stats.var_std_error;
  return {{{mean_row, var_row}}};
}

Outcome cmd_oracle(const Options& o) {
  const auto family = build_family(o, false);
  auto row = base_row("oracle", family, o);
  row.exact = markov_oracle(interlace(family), {o.m, o.r});
  return {{{row}}};
}

void emit(const RunReport& report, const Options& o, std::ostream& out) {
  const auto write = [&](std::ostream& os) {
    if (o.format == "json") {
      write_json(report, os);
    } else {
      write_csv(report, os);
    }
  };
  if (o.out.empty()) {
    write(out);
    return;
  }
  std::ofstream file(o.out);
  if (!file) throw UsageError("cannot open output file " + o.out);
  write(file);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Expectations, rising moments and simulations of the m-set coupon collector "
               "over interlaced coupon distributions",
               "dixie"};
  app.require_subcommand(1);
  Options o;
  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"exact", "Exact expectation or rising moment by quadrature"},
      {"simulate", "Monte Carlo summary of the stopping time"},
      {"asymptotic", "Leading-order asymptotic term"},
      {"compare", "Exact, simulated and asymptotic values side by side"},
      {"table1", "Partial sums and L1 integrals against their leading terms"},
      {"schur", "Ordering experiment over the even-coupon law"},
      {"figure1", "Uniform-versus-Zipf simulation against theory"},
      {"theorem1", "Exact expectation against the product estimate over a grid of M"},
      {"interarrival", "Empirical moments of the rare-coupon interarrival blocks"},
      {"oracle", "Exact expectation from the absorbing Markov chain"},
  };
  for (const auto& c : commands) add_options(app.add_subcommand(c.name, c.help), o);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "dixie: " << e.what() << '\n';
    return kUsage;
  }

  try {
    const unsigned workers = workers_from_env();
    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    Outcome outcome;
    if (name == "exact") {
      outcome = cmd_exact(o);
    } else if (name == "simulate") {
      outcome = cmd_simulate(o, workers);
    } else if (name == "asymptotic") {
      outcome = cmd_asymptotic(o);
    } else if (name == "compare") {
      outcome = cmd_compare(o, workers);
    } else if (name == "table1") {
      outcome = cmd_table1(o, workers);
    } else if (name == "schur") {
      outcome = cmd_schur(o, workers);
    } else if (name == "figure1") {
      outcome = cmd_figure1(o, workers);
    } else if (name == "theorem1") {
      outcome = cmd_theorem1(o, workers);
    } else if (name == "interarrival") {
      outcome = cmd_interarrival(o);
    } else {
      outcome = cmd_oracle(o);
    }
    emit(outcome.report, o, out);
    if (outcome.status == kTainted) err << "dixie: simulation tainted by capped trials\n";
    return outcome.status;
  } catch (const UsageError& e) {
    err << "dixie: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "dixie: " << e.what() << '\n';
    return kUsage;
  } catch (const RangeError& e) {
    err << "dixie: " << e.what() << '\n';
    return kRange;
  } catch (const QuadratureError& e) {
    err << "dixie: " << e.what() << " (partial value " << e.partial_value() << ", error estimate "
        << e.error_estimate() << ")\n";
    return kNoConvergence;
  } catch (const TaintedSimulationError& e) {
    err << "dixie: " << e.what() << '\n';
    return kTainted;
  }
}

}  // namespace dixie::cli
