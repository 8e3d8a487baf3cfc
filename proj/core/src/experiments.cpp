#include "dixie/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <string>

#include "dixie/asymptotics.hpp"
#include "dixie/errors.hpp"
#include "dixie/parallel.hpp"

namespace dixie {
namespace {

const WeightLaw kSchurOdd = WeightLaw::power(1.0);

std::vector<WeightLaw> schur_even_laws() {
  return {WeightLaw::uniform(), WeightLaw::power(3.0), WeightLaw::zipf(2.0)};
}

void require_even_split(std::size_t total, std::size_t k) {
  if (total == 0 || total % k != 0) {
    throw DomainError("N = " + std::to_string(total) + " is not a positive multiple of " +
                      std::to_string(k));
  }
}

std::string flags(const LeadingTerm& term) {
  std::string out;
  if (term.constant_unknown) out = "constant_unknown";
  if (term.outside_hypothesis) out += out.empty() ? "outside_hypothesis" : ";outside_hypothesis";
  return out;
}

}  // namespace

std::vector<WeightLaw> table1_catalogue() {
  return {WeightLaw::uniform(),      WeightLaw::power(1.0),       WeightLaw::zipf(0.5),
          WeightLaw::zipf(1.0),      WeightLaw::zipf(2.0),        WeightLaw::logarithmic(1.0),
          WeightLaw::exp_grow(1.0),  WeightLaw::exp_decay(1.0),   WeightLaw::super_exponential(0.5),
          WeightLaw::factorial(),    WeightLaw::reciprocal_factorial()};
}

RunReport study_figure1(unsigned m, const StudyConfig& cfg, std::span<const std::size_t> totals) {
  RunReport report;
  report.rows.resize(totals.size());
  for (std::size_t total : totals) require_even_split(total, 2);

  parallel_for(totals.size(), cfg.workers, [&](std::size_t i) {
    const std::size_t total = totals[i];
    InterlacedFamily family{{WeightLaw::uniform(), WeightLaw::zipf(1.0)}, total / 2, 1};
    const auto dist = interlace(family);
    const double n = static_cast<double>(total);
    ReportRow& row = report.rows[i];
    row.study_id = "figure1";
    row.family = family.spec();
    row.size = family.per_family_size;
    row.total = total;
    row.sets = m;
    row.order = 1;
    row.exact = exact_rising_moment(dist, {m, 1}, cfg.quadrature).value;
    row.estimate = theorem1_estimate(family, m, cfg.quadrature);
    row.asymptotic = n * n * std::log(n) / 4.0;
    row.ratio_exact_over_estimate = *row.exact / *row.estimate;
    row.ratio_exact_over_asymptotic = *row.exact / *row.asymptotic;
  });

  if (cfg.simulation.trials > 0) {
    for (std::size_t i = 0; i < totals.size(); ++i) {
      InterlacedFamily family{{WeightLaw::uniform(), WeightLaw::zipf(1.0)}, totals[i] / 2, 1};
      SimulationConfig sim = cfg.simulation;
      sim.seed = mix64(cfg.simulation.seed + totals[i]);
      const auto summary = simulate_summary(interlace(family), m, sim);
      if (summary.tainted()) {
        throw TaintedSimulationError("figure1 simulation hit the draw cap at N = " +
                                         std::to_string(totals[i]),
                                     summary.capped_trials);
      }
      report.rows[i].simulated = summary.mean;
      report.rows[i].sim_stderr = summary.std_error;
    }
  }
  return report;
}

RunReport study_schur(unsigned r, unsigned m, const StudyConfig& cfg,
                      std::span<const std::size_t> totals) {
  const auto evens = schur_even_laws();
  for (std::size_t total : totals) require_even_split(total, 2);
  RunReport report;
  report.rows.resize(totals.size() * evens.size());
  parallel_for(report.rows.size(), cfg.workers, [&](std::size_t i) {
    const std::size_t total = totals[i / evens.size()];
    const WeightLaw& even = evens[i % evens.size()];
    InterlacedFamily family{{kSchurOdd, even}, total / 2, std::nullopt};
    ReportRow& row = report.rows[i];
    row.study_id = "schur";
    row.family = family.spec();
    row.size = family.per_family_size;
    row.total = total;
    row.sets = m;
    row.order = r;
    row.exact = exact_rising_moment(interlace(family), {m, r}, cfg.quadrature).value;
    row.note = even.spec();
  });
  return report;
}

bool schur_ordering_holds(const RunReport& report) {
  // N -> (uniform value, smallest non-uniform value)
  std::map<std::size_t, std::pair<std::optional<double>, std::optional<double>>> by_total;
  const std::string uniform = WeightLaw::uniform().spec();
  for (const auto& row : report.rows) {
    if (row.study_id != "schur" || !row.total || !row.exact) continue;
    auto& [u, other] = by_total[*row.total];
    if (row.note == uniform) {
      u = *row.exact;
    } else {
      other = other ? std::min(*other, *row.exact) : *row.exact;
    }
  }
  if (by_total.empty()) return false;
  for (const auto& [total, values] : by_total) {
    if (!values.first || !values.second || !(*values.first < *values.second)) return false;
  }
  return true;
}

RunReport study_theorem1(const InterlacedFamily& family, unsigned m, const StudyConfig& cfg,
                         std::span<const std::size_t> sizes) {
  InterlacedFamily base = family;
  if (!base.rare_index) base.rare_index = unique_case_two(base.subfamilies);
  if (!base.rare_index) throw DomainError("rare subfamily is ambiguous for " + base.spec());
  const LeadingTerm leading = leading_expectation(base, m);

  RunReport report;
  report.rows.resize(sizes.size());
  parallel_for(sizes.size(), cfg.workers, [&](std::size_t i) {
    InterlacedFamily at = base;
    at.per_family_size = sizes[i];
    ReportRow& row = report.rows[i];
    row.study_id = "theorem1";
    row.family = at.spec();
    row.size = sizes[i];
    row.total = at.total_size();
    row.sets = m;
    row.order = 1;
    row.exact = exact_rising_moment(interlace(at), {m, 1}, cfg.quadrature).value;
    row.estimate = theorem1_estimate(at, m, cfg.quadrature);
    row.asymptotic = leading.value_at(static_cast<double>(sizes[i]));
    row.ratio_exact_over_estimate = *row.exact / *row.estimate;
    row.ratio_exact_over_asymptotic = *row.exact / *row.asymptotic;
    std::string note = flags(leading);
    if (at.k() > 1) {
      char excess[64];
      std::snprintf(excess, sizeof excess, "ln_excess=%.6g",
                    theorem1_log_excess(at, m, cfg.quadrature));
      note += (note.empty() ? "" : ";") + std::string(excess);
    }
    row.note = note;
  });
  return report;
}

RunReport study_table1(unsigned m, const StudyConfig& cfg, std::span<const std::size_t> sizes) {
  struct Task {
    WeightLaw law;
    std::size_t size;
    bool l1;
  };
  std::vector<Task> tasks;
  for (const auto& law : table1_catalogue()) {
    for (std::size_t size : sizes) {
      if (size > law.max_size()) continue;
      tasks.push_back({law, size, false});
    }
  }
  for (const auto& law : table1_catalogue()) {
    if (law.rarity_class() != RarityClass::CaseII) continue;
    for (std::size_t size : sizes) {
      if (size > law.max_size()) continue;
      tasks.push_back({law, size, true});
    }
  }

  RunReport report;
  report.rows.resize(tasks.size());
  parallel_for(tasks.size(), cfg.workers, [&](std::size_t i) {
    const Task& task = tasks[i];
    const double size = static_cast<double>(task.size);
    ReportRow& row = report.rows[i];
    row.family = task.law.spec();
    row.size = task.size;
    row.total = task.size;
    row.sets = m;
    if (task.l1) {
      const auto term = leading_l1(task.law);
      row.study_id = "table1_l1";
      row.exact = l1_integral(generate_weights(task.law, task.size), m, cfg.quadrature).value;
      row.asymptotic = term.value_at(size);
      row.note = flags(term);
    } else {
      const auto term = leading_sum(task.law);
      row.study_id = "table1_sum";
      row.exact = partial_sum(task.law, task.size);
      row.asymptotic = term.value_at(size);
      row.note = flags(term);
    }
    row.ratio_exact_over_asymptotic = *row.exact / *row.asymptotic;
  });
  return report;
}

}  // namespace dixie
