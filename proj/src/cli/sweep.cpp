#include "incro/cli/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <ostream>
#include <thread>

#include "incro/format.hpp"

namespace incro::cli {

namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

std::vector<SweepRow> run_sweep(const ExperimentConfig& base, std::vector<double> R_values,
                                std::vector<double> s_values, unsigned threads) {
  if (R_values.empty() || s_values.empty())
    throw ConfigError("sweep needs at least one R and one s");
  std::sort(R_values.begin(), R_values.end());
  std::sort(s_values.begin(), s_values.end());
  R_values.erase(std::unique(R_values.begin(), R_values.end()), R_values.end());
  s_values.erase(std::unique(s_values.begin(), s_values.end()), s_values.end());

  std::vector<SweepRow> rows;
  for (double R : R_values)
    for (double s : s_values) rows.push_back({R, s, {}});

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      ExperimentConfig config = base;
      config.R = rows[i].R;
      config.s = rows[i].s;
      config.trace_path.clear();
      config.report_path.clear();
      rows[i].outcome = run_experiment(config);
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(rows.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << sweep_header << '\n';
  for (const auto& row : rows) {
    const auto& o = row.outcome;
    const bool analysed = o.status == status::pass || o.status == status::verdict_failure;
    std::string verdicts;
    for (const auto& v : o.report.verdicts) {
      if (!verdicts.empty()) verdicts += ';';
      verdicts += v.claim + '=' + to_string(v.status);
    }
    out << shortest(row.R) << ',' << shortest(row.s) << ',' << o.status << ','
        << (analysed ? shortest(o.report.fit.exponent) : "") << ','
        << (analysed ? shortest(o.report.fit.residual) : "") << ','
        << (analysed ? shortest(o.report.tail_limsup) : "") << ',' << verdicts << ','
        << csv_field(o.message) << '\n';
  }
}

void write_sweep_jsonl(std::ostream& out, const ExperimentConfig& base,
                       const std::vector<SweepRow>& rows) {
  for (const auto& row : rows)
    write_report_jsonl(out, row.outcome.report, report_context(row.outcome.report, base.cycles));
}

int sweep_status(const std::vector<SweepRow>& rows) {
  int worst = status::pass;
  for (const auto& row : rows) worst = std::max(worst, row.outcome.status);
  return worst;
}

}  // namespace incro::cli
