#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "testlab/analysis.hpp"
#include "testlab/core.hpp"

namespace testlab {

/// Raised on unreadable or malformed files.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Instance CSV: header `id,u,t,p`, one row per job. Rows may come in any
/// order but ids must cover 0..n-1.
std::vector<Job> read_instance_csv(std::istream& in);
std::vector<Job> read_instance_file(const std::string& path);
void write_instance_csv(std::ostream& out, const std::vector<Job>& jobs);

/// Event log CSV: `event_index,job_id,kind,start,end,share_set`.
void write_events_csv(std::ostream& out, const Schedule& schedule);
Schedule read_events_csv(std::istream& in);

/// Formats a real with 12 significant digits.
std::string format_real(double value);

struct ResultRow {
  std::string alg;
  std::string instance;
  std::size_t n = 0;
  double alg_value = 0.0;
  double opt_value = 0.0;
  double ratio = 0.0;
};

inline constexpr const char* kResultHeader = "alg,instance,n,alg_value,opt_value,ratio";
inline constexpr const char* kStatisticsHeader = "alg,family,n,trials,mean,std,ci_lo,ci_hi,min,max";

void write_result_row(std::ostream& out, const ResultRow& row);
void write_statistics_row(std::ostream& out, const std::string& alg, const std::string& family, std::size_t n,
                          const Statistics& stats);

}  // namespace testlab
