#include "rubikon/analytics.hpp"

#include <algorithm>
#include <string>

namespace rubikon {

void write_log(std::ostream& out, const std::vector<SessionEvent>& events) {
  for (const SessionEvent& e : events) out << e.to_json().dump() << '\n';
}

std::vector<SessionEvent> read_log(std::istream& in) {
  std::vector<SessionEvent> out;
  std::string line;
  for (std::int64_t n = 0; std::getline(in, line); ++n) {
    if (line.empty()) continue;
    const Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::CorruptLog, "line " + std::to_string(n) + " is not JSON", n);
    try {
      out.push_back(SessionEvent::from_json(j));
    } catch (const Error& e) {
      throw Error(ErrorCode::CorruptLog, "line " + std::to_string(n) + ": " + e.what(), n);
    }
  }
  return out;
}

int ProcessMetrics::kcs_exercised() const {
  int n = 0;
  for (const auto& [kc, count] : exercise_counts) n += count > 0;
  return n;
}

double ProcessMetrics::preparation_cost() const {
  if (exercise_ms <= 0) throw Error(ErrorCode::UndefinedMetric, "no exercise time recorded");
  return static_cast<double>(preparation_ms) / static_cast<double>(exercise_ms);
}

ProcessMetrics compute_metrics(const std::vector<SessionEvent>& events) {
  if (events.empty()) throw Error(ErrorCode::EmptyLog, "log has no events");
  ProcessMetrics m;
  for (const KcInfo& k : kc_catalog()) m.exercise_counts[k.id] = 0;
  std::int64_t session_start = events.front().ts;
  for (const SessionEvent& e : events)
    if (e.kind == "SessionStarted") {
      session_start = e.ts;
      break;
    }
  std::int64_t last_end = session_start;
  std::int64_t last_ts = session_start;
  for (const SessionEvent& e : events) {
    last_ts = std::max(last_ts, e.ts);
    if (e.kind != "AttemptClosed") continue;
    const auto kc = kc_from_string(e.payload.value("kc_id", std::string()));
    if (!kc) throw Error(ErrorCode::CorruptLog, "AttemptClosed without a known kc_id", e.seq);
    const std::int64_t start = e.payload.value("start_ts", e.ts);
    const std::int64_t end = e.payload.value("end_ts", e.ts);
    AttemptTiming t{e.payload.value("attempt_id", 0), *kc, e.payload.value("outcome", std::string()),
                    start - last_end, end - start};
    m.preparation_ms += t.preparation_ms;
    m.exercise_ms += t.exercise_ms;
    m.exercise_counts[*kc]++;
    m.attempts.push_back(std::move(t));
    last_end = end;
  }
  m.session_ms = last_ts - session_start;
  return m;
}

Json to_json(const ProcessMetrics& m) {
  Json counts = Json::object();
  for (const auto& [kc, n] : m.exercise_counts) counts[std::string(to_string(kc))] = n;
  Json attempts = Json::array();
  for (const AttemptTiming& a : m.attempts)
    attempts.push_back({{"attempt_id", a.attempt_id},
                        {"kc_id", to_string(a.kc)},
                        {"outcome", a.outcome},
                        {"preparation_ms", a.preparation_ms},
                        {"exercise_ms", a.exercise_ms}});
  Json cost = m.exercise_ms > 0 ? Json(m.preparation_cost()) : Json(nullptr);
  return {{"exercise_counts", counts},
          {"kcs_exercised", m.kcs_exercised()},
          {"attempts", attempts},
          {"preparation_ms", m.preparation_ms},
          {"exercise_ms", m.exercise_ms},
          {"session_ms", m.session_ms},
          {"preparation_cost", cost}};
}

ReplayResult replay(const std::vector<SessionEvent>& events) {
  if (events.empty()) throw Error(ErrorCode::EmptyLog, "log has no events");
  for (std::size_t i = 0; i < events.size(); ++i)
    if (events[i].seq != static_cast<std::int64_t>(i))
      throw Error(ErrorCode::CorruptLog, "expected seq " + std::to_string(i), static_cast<std::int64_t>(i));
  if (events.front().kind != "SessionStarted")
    throw Error(ErrorCode::CorruptLog, "log does not begin with SessionStarted", 0);

  ReplayResult r;
  SessionConfig config;
  try {
    config = SessionConfig::from_json(events.front().payload);
  } catch (const Error& e) {
    throw Error(ErrorCode::CorruptLog, std::string("SessionStarted: ") + e.what(), 0);
  }
  config.start_ts = events.front().ts;
  std::int64_t seq = 0;
  r.session = std::make_unique<Session>(config, [] { return std::int64_t{0}; });

  auto compare_upto = [&](std::size_t n) {
    const auto& got = r.session->events();
    for (; static_cast<std::size_t>(seq) < std::min(n, events.size()); ++seq) {
      const std::size_t i = static_cast<std::size_t>(seq);
      if (i >= got.size() || got[i].to_json().dump() != events[i].to_json().dump()) {
        r.identical = false;
        r.first_mismatch_seq = seq;
        return false;
      }
    }
    return true;
  };

  if (!compare_upto(1)) return r;
  for (std::size_t i = 1; i < events.size(); ++i) {
    const SessionEvent& e = events[i];
    if (e.kind != "MessageReceived") continue;
    // Everything up to this input must already have been re-derived.
    if (!compare_upto(i)) break;
    const Json message = {{"seq", 0}, {"type", e.payload.value("type", std::string())},
                          {"payload", e.payload.value("payload", Json::object())}};
    r.session->handle_at(message, e.ts);
  }
  if (r.identical) compare_upto(events.size());
  const auto& got = r.session->events();
  r.replayed.assign(got.begin(), got.begin() + static_cast<std::ptrdiff_t>(std::min(got.size(), events.size())));
  return r;
}

}  // namespace rubikon
