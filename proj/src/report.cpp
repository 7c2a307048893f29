#include "stieltjes/report.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

#include "stieltjes/errors.hpp"

namespace stieltjes {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double to_double(const std::string& text, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError(where, "not a number: '" + text + "'");
  }
}

}  // namespace

std::vector<ResultRow> read_results_csv(std::istream& in, const std::string& source) {
  std::vector<ResultRow> rows;
  std::string line;
  int line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header || line.rfind("instance_id,", 0) == 0) {
      header = false;
      if (line.rfind("instance_id,", 0) == 0) continue;
    }
    const auto f = split(line);
    const std::string where = source + ":" + std::to_string(line_no);
    if (f.size() != 9) throw ParseError(where, "expected 9 fields, got " + std::to_string(f.size()));
    ResultRow row;
    row.instance_id = f[0];
    row.model = f[1];
    row.status = f[2];
    row.objective = to_double(f[3], where + " objective");
    row.bound = to_double(f[4], where + " bound");
    row.rel_gap = to_double(f[5], where + " rel_gap");
    row.time_s = to_double(f[6], where + " time_s");
    row.rounds = static_cast<int>(to_double(f[7], where + " rounds"));
    row.cuts_added = static_cast<int>(to_double(f[8], where + " cuts_added"));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sigma2_label(const std::string& instance_id) {
  const std::string key = "sigma2=";
  const auto pos = instance_id.find(key);
  if (pos == std::string::npos) return "-";
  const auto start = pos + key.size();
  const auto end = instance_id.find('_', start);
  return instance_id.substr(start, end == std::string::npos ? std::string::npos : end - start);
}

std::vector<ReportCell> aggregate(const std::vector<ResultRow>& rows, std::vector<std::string>* warnings) {
  std::vector<ReportCell> cells;
  std::map<std::pair<std::string, std::string>, std::size_t> where;
  for (const ResultRow& row : rows) {
    const auto key = std::make_pair(sigma2_label(row.instance_id), row.model);
    auto it = where.find(key);
    if (it == where.end()) {
      it = where.emplace(key, cells.size()).first;
      cells.push_back({key.first, key.second});
    }
    ReportCell& cell = cells[it->second];
    ++cell.instances;
    cell.time_s += row.time_s;
    cell.gap_pct += std::isfinite(row.rel_gap) ? 100.0 * row.rel_gap : 0.0;
    cell.rounds += row.rounds;
    cell.cuts += row.cuts_added;
    if (row.status == "optimal" && row.rel_gap <= 1e-4) ++cell.optimal;
  }
  std::map<std::string, int> largest;
  for (ReportCell& cell : cells) {
    cell.time_s /= cell.instances;
    cell.gap_pct /= cell.instances;
    cell.rounds /= cell.instances;
    cell.cuts /= cell.instances;
    largest[cell.sigma2] = std::max(largest[cell.sigma2], cell.instances);
  }
  if (warnings != nullptr) {
    for (const ReportCell& cell : cells) {
      if (cell.instances < largest[cell.sigma2]) {
        warnings->push_back("sigma2=" + cell.sigma2 + " model=" + cell.model + ": " +
                            std::to_string(cell.instances) + " of " +
                            std::to_string(largest[cell.sigma2]) + " instances");
      }
    }
  }
  return cells;
}

void write_report_text(const std::vector<ReportCell>& cells, std::ostream& out) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-8s %-8s %5s %10s %9s %5s %7s %9s\n", "sigma2", "model", "N",
                "Time(s)", "Gap(%)", "#Opt", "#Iter", "Cuts");
  out << buf;
  for (const ReportCell& c : cells) {
    std::snprintf(buf, sizeof(buf), "%-8s %-8s %5d %10.3f %9.3f %5d %7.1f %9.1f\n", c.sigma2.c_str(),
                  c.model.c_str(), c.instances, c.time_s, c.gap_pct, c.optimal, c.rounds, c.cuts);
    out << buf;
  }
}

void write_report_csv(const std::vector<ReportCell>& cells, std::ostream& out) {
  out << "sigma2,model,instances,time_s,gap_pct,optimal,rounds,cuts\n";
  char buf[160];
  for (const ReportCell& c : cells) {
    std::snprintf(buf, sizeof(buf), ",%d,%.6g,%.6g,%d,%.6g,%.6g\n", c.instances, c.time_s, c.gap_pct,
                  c.optimal, c.rounds, c.cuts);
    out << c.sigma2 << ',' << c.model << buf;
  }
}

}  // namespace stieltjes
