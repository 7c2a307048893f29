#pragma once

// Aggregation of results CSV rows into per-(sigma2, model) averages.

#include <iosfwd>
#include <string>
#include <vector>

namespace stieltjes {

struct ResultRow {
  std::string instance_id;
  std::string model;
  std::string status;
  double objective = 0.0;
  double bound = 0.0;
  double rel_gap = 0.0;
  double time_s = 0.0;
  int rounds = 0;
  int cuts_added = 0;
};

/// Parses a results CSV (header line required); throws ParseError.
std::vector<ResultRow> read_results_csv(std::istream& in, const std::string& source = "<input>");

/// Value of "sigma2=<v>" inside an instance id, or "-" when absent.
std::string sigma2_label(const std::string& instance_id);

struct ReportCell {
  std::string sigma2;
  std::string model;
  int instances = 0;
  double time_s = 0.0;   // mean
  double gap_pct = 0.0;  // mean of 100 * rel_gap
  int optimal = 0;       // rows with status "optimal" and rel_gap <= 1e-4
  double rounds = 0.0;   // mean
  double cuts = 0.0;     // mean
};

/// Groups by (sigma2, model) in first-seen order.  `warnings` receives one
/// line per (sigma2, model) pair whose instance count differs from the
/// largest count in the same sigma2 group.
std::vector<ReportCell> aggregate(const std::vector<ResultRow>& rows,
                                  std::vector<std::string>* warnings = nullptr);

void write_report_text(const std::vector<ReportCell>& cells, std::ostream& out);
void write_report_csv(const std::vector<ReportCell>& cells, std::ostream& out);

}  // namespace stieltjes
