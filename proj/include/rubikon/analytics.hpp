#pragma once

// Event-log persistence, process metrics and deterministic replay.

#include <istream>
#include <memory>
#include <map>
#include <optional>
#include <ostream>

#include "rubikon/session.hpp"

namespace rubikon {

// One JSON object per line. Reading throws CorruptLog (detail = 0-based line)
// on malformed lines.
void write_log(std::ostream& out, const std::vector<SessionEvent>& events);
std::vector<SessionEvent> read_log(std::istream& in);

struct AttemptTiming {
  int attempt_id;
  KcId kc;
  std::string outcome;
  std::int64_t preparation_ms;
  std::int64_t exercise_ms;
};

struct ProcessMetrics {
  std::map<KcId, int> exercise_counts;  // closed attempts per KC, all 11 present
  std::vector<AttemptTiming> attempts;
  std::int64_t preparation_ms = 0;
  std::int64_t exercise_ms = 0;
  std::int64_t session_ms = 0;  // first to last event

  int kcs_exercised() const;
  // Total preparation over total exercise time; throws UndefinedMetric when
  // no exercise time was recorded.
  double preparation_cost() const;
};

// Every closed attempt counts as an exercise opportunity; preparation is the
// gap from the previous attempt's end (or session start) to its start.
// Throws EmptyLog for an empty log.
ProcessMetrics compute_metrics(const std::vector<SessionEvent>& events);

Json to_json(const ProcessMetrics& m);

struct ReplayResult {
  bool identical = true;
  std::optional<std::int64_t> first_mismatch_seq;
  std::vector<SessionEvent> replayed;  // events re-derived up to the log's length
  std::unique_ptr<Session> session;
};

// Rebuilds the session from SessionStarted and the logged client messages,
// comparing every re-derived event with the log byte for byte. A log cut off
// mid-message compares on the prefix it has. Throws EmptyLog, or CorruptLog
// (detail = first bad seq) when seqs are not 0, 1, 2, ... or the first event
// is not SessionStarted.
ReplayResult replay(const std::vector<SessionEvent>& events);

}  // namespace rubikon
