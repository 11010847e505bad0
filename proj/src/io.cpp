#include "lfq/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace lfq {

using Json = nlohmann::ordered_json;

namespace {

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json array_of(std::span<const double> xs) {
  Json out = Json::array();
  for (double x : xs) out.push_back(number_or_null(x));
  return out;
}

}  // namespace

std::string header_line(const OutputHeader& header) {
  return "# config_hash=" + header.config_hash + " seed=" + std::to_string(header.seed);
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string events_csv(const OutputHeader& header, std::span<const PathEvent> events) {
  std::ostringstream os;
  os << header_line(header) << "\n";
  os << "time,kind,size,W_before,W_after\n";
  for (const auto& e : events) {
    os << format_double(e.time) << "," << to_string(e.kind) << "," << format_double(e.size)
       << "," << format_double(e.w_before) << "," << format_double(e.w_after) << "\n";
  }
  return os.str();
}

std::string samples_csv(const OutputHeader& header, const std::string& column,
                        std::span<const double> values) {
  std::ostringstream os;
  os << header_line(header) << "\n" << column << "\n";
  for (double v : values) os << format_double(v) << "\n";
  return os.str();
}

std::string curve_csv(const OutputHeader& header, const std::string& axis,
                      std::span<const double> grid, std::span<const double> values,
                      std::span<const double> se) {
  if (grid.size() != values.size() || (!se.empty() && se.size() != grid.size())) {
    throw std::invalid_argument("curve_csv: column lengths differ");
  }
  std::ostringstream os;
  os << header_line(header) << "\n" << axis << ",value,se\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    os << format_double(grid[i]) << "," << format_double(values[i]) << ","
       << format_double(se.empty() ? 0.0 : se[i]) << "\n";
  }
  return os.str();
}

std::string curve_csv(const OutputHeader& header, const LstCurve& curve) {
  return curve_csv(header, "theta", curve.grid, curve.values, curve.se);
}

std::string pairs_csv(const OutputHeader& header, std::span<const BreakdownPair> pairs) {
  std::ostringstream os;
  os << header_line(header) << "\nW_before,W_after\n";
  for (const auto& p : pairs) os << format_double(p.before) << "," << format_double(p.after) << "\n";
  return os.str();
}

std::vector<BreakdownPair> read_pairs_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path.string() + ": cannot open embedding file");
  std::vector<BreakdownPair> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line[0] == '#' || line.rfind("W_before", 0) == 0) continue;
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument("missing comma");
      const double before = std::stod(line.substr(0, comma));
      const double after = std::stod(line.substr(comma + 1));
      out.push_back({before, after});
    } catch (const std::exception&) {
      throw std::runtime_error(path.string() + ":" + std::to_string(number) +
                               ": expected 'W_before,W_after'");
    }
  }
  return out;
}

std::string summary_json(const OutputHeader& header, const SteadyStateSummary& s,
                         const WorkloadMoments* moments) {
  Json j;
  j["config_hash"] = header.config_hash;
  j["seed"] = header.seed;
  j["p"] = s.p;
  j["lambda_R"] = s.failure_rate;
  j["lambda_V"] = s.vacation_rate ? Json(*s.vacation_rate) : Json(nullptr);
  j["mean"] = s.mean;
  j["variance"] = s.variance;
  j["busy_mean"] = s.busy_mean ? Json(*s.busy_mean) : Json(nullptr);
  if (moments) j["variance_as_printed"] = moments->variance_as_printed;
  j["lst_provenance"] = to_string(s.lst.provenance);
  Json lst = Json::array();
  for (std::size_t i = 0; i < s.lst.grid.size(); ++i) {
    Json point;
    point["theta"] = s.lst.grid[i];
    point["value"] = number_or_null(s.lst.values[i]);
    point["se"] = number_or_null(s.lst.se[i]);
    lst.push_back(point);
  }
  j["lst"] = lst;
  return j.dump(2) + "\n";
}

std::string reports_json(const OutputHeader& header, const std::string& label, Budget budget,
                         std::span<const ComparisonReport> reports, bool include_runtime) {
  Json j;
  j["config_hash"] = header.config_hash;
  j["seed"] = header.seed;
  j["budget"] = to_string(budget);
  j["label"] = label;
  j["failures"] = count_failures(reports);
  Json arr = Json::array();
  for (const auto& r : reports) {
    Json item;
    item["name"] = r.name;
    item["theory"] = array_of(r.theory);
    item["empirical"] = array_of(r.empirical);
    item["se"] = array_of(r.se);
    item["statistic"] = number_or_null(r.statistic);
    item["threshold"] = r.threshold;
    item["pass"] = r.pass;
    item["seed"] = r.seed;
    if (include_runtime) item["runtime_seconds"] = r.runtime_seconds;
    item["note"] = r.note;
    arr.push_back(item);
  }
  j["reports"] = arr;
  return j.dump(2) + "\n";
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot write");
  out << text;
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace lfq
