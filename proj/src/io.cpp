#include "testlab/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace testlab {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.emplace_back();
  return fields;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_real(const std::string& text, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw IoError("line " + std::to_string(line_no) + ": not a number: '" + text + "'");
  }
}

std::size_t parse_index(const std::string& text, std::size_t line_no) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw IoError("line " + std::to_string(line_no) + ": not a job id: '" + text + "'");
  }
  return value;
}

std::string format_full(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::vector<Job> read_instance_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty instance file");
  if (trim(line) != "id,u,t,p") throw IoError("instance header must be 'id,u,t,p'");

  std::vector<Job> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 4) throw IoError("line " + std::to_string(line_no) + ": expected 4 fields");
    rows.push_back(Job{parse_index(trim(fields[0]), line_no), parse_real(trim(fields[1]), line_no),
                       parse_real(trim(fields[2]), line_no), parse_real(trim(fields[3]), line_no)});
  }
  std::sort(rows.begin(), rows.end(), [](const Job& a, const Job& b) { return a.id < b.id; });
  try {
    validate_jobs(rows);
  } catch (const InstanceError& e) {
    throw IoError(std::string("invalid instance: ") + e.what());
  }
  return rows;
}

std::vector<Job> read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_instance_csv(in);
}

void write_instance_csv(std::ostream& out, const std::vector<Job>& jobs) {
  out << "id,u,t,p\n";
  for (const Job& j : jobs) {
    out << j.id << ',' << format_full(j.u) << ',' << format_full(j.t) << ',' << format_full(j.p) << '\n';
  }
}

void write_events_csv(std::ostream& out, const Schedule& schedule) {
  out << "event_index,job_id,kind,start,end,share_set\n";
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const ScheduleEvent& e = schedule[i];
    out << i << ',' << e.job << ',' << to_string(e.kind) << ',' << format_full(e.start) << ',' << format_full(e.end)
        << ',';
    for (std::size_t k = 0; k < e.share_set.size(); ++k) out << (k ? ";" : "") << e.share_set[k];
    out << '\n';
  }
}

Schedule read_events_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "event_index,job_id,kind,start,end,share_set") {
    throw IoError("event log header must be 'event_index,job_id,kind,start,end,share_set'");
  }
  Schedule schedule;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 6) throw IoError("line " + std::to_string(line_no) + ": expected 6 fields");
    const auto kind = parse_event_kind(trim(fields[2]));
    if (!kind) throw IoError("line " + std::to_string(line_no) + ": unknown event kind");
    ScheduleEvent e{parse_index(trim(fields[1]), line_no), *kind, parse_real(trim(fields[3]), line_no),
                    parse_real(trim(fields[4]), line_no), {}};
    const std::string share = trim(fields[5]);
    if (!share.empty()) {
      for (const auto& id : split(share, ';')) e.share_set.push_back(parse_index(trim(id), line_no));
    }
    schedule.push_back(std::move(e));
  }
  return schedule;
}

void write_result_row(std::ostream& out, const ResultRow& row) {
  out << row.alg << ',' << row.instance << ',' << row.n << ',' << format_real(row.alg_value) << ','
      << format_real(row.opt_value) << ',' << format_real(row.ratio) << '\n';
}

void write_statistics_row(std::ostream& out, const std::string& alg, const std::string& family, std::size_t n,
                          const Statistics& stats) {
  out << alg << ',' << family << ',' << n << ',' << stats.trials << ',' << format_real(stats.mean) << ','
      << format_real(stats.stddev) << ',' << format_real(stats.ci_lo) << ',' << format_real(stats.ci_hi) << ','
      << format_real(stats.min) << ',' << format_real(stats.max) << '\n';
}

}  // namespace testlab
