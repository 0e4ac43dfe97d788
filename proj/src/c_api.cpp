#include "rubikon/rubikon.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <sstream>

#include "rubikon/analytics.hpp"
#include "rubikon/sim.hpp"

struct rk_session {
  std::unique_ptr<rubikon::Session> session;
};

namespace {

using rubikon::ErrorCode;
using rubikon::Json;

thread_local std::string last_error;
thread_local std::int64_t last_detail = -1;

static_assert(static_cast<int>(RK_IO) == static_cast<int>(ErrorCode::Io) + 1);

rk_status status_of(ErrorCode c) {
  // rk_status lists the codes in ErrorCode order, shifted past RK_OK.
  return static_cast<rk_status>(static_cast<int>(c) + 1);
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs `f`, translating exceptions into status codes and the thread's last
// error.
template <typename F>
rk_status guarded(F&& f) {
  last_error.clear();
  last_detail = -1;
  try {
    f();
    return RK_OK;
  } catch (const rubikon::Error& e) {
    last_error = e.what();
    last_detail = e.detail();
    return status_of(e.code());
  } catch (const Json::exception& e) {
    last_error = std::string("SchemaError: ") + e.what();
    return RK_SCHEMA_ERROR;
  } catch (const std::exception& e) {
    last_error = e.what();
    return RK_INTERNAL;
  }
}

rk_status null_argument(const char* what) {
  last_error = std::string("InvalidArgument: ") + what + " must not be NULL";
  last_detail = -1;
  return RK_INVALID_ARGUMENT;
}

Json parse_object(const char* text, const char* what) {
  if (!text) return Json::object();
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw rubikon::Error(ErrorCode::InvalidArgument, std::string(what) + " must be a JSON object");
  return j;
}

std::vector<rubikon::SessionEvent> parse_log(const char* text) {
  std::istringstream in(text);
  return rubikon::read_log(in);
}

std::string events_jsonl(const std::vector<rubikon::SessionEvent>& events, std::size_t from) {
  std::string out;
  for (std::size_t i = from; i < events.size(); ++i) {
    out += events[i].to_json().dump();
    out += '\n';
  }
  return out;
}

}  // namespace

extern "C" {

const char* rk_status_name(rk_status status) {
  if (status == RK_OK) return "Ok";
  if (status == RK_INTERNAL) return "Internal";
  if (status > RK_OK && status < RK_INTERNAL) {
    static const auto names = [] {
      std::vector<std::string> v;
      for (int c = 0; c <= static_cast<int>(ErrorCode::Io); ++c) v.emplace_back(rubikon::to_string(static_cast<ErrorCode>(c)));
      return v;
    }();
    return names[static_cast<std::size_t>(status) - 1].c_str();
  }
  return "Unknown";
}

const char* rk_last_error(void) { return last_error.c_str(); }

int64_t rk_last_error_detail(void) { return last_detail; }

void rk_string_free(char* s) { std::free(s); }

int rk_protocol_version(void) { return rubikon::kProtocolVersion; }

rk_status rk_session_create(const char* config_json, rk_clock_fn clock, void* clock_user, rk_session** out) {
  if (!out) return null_argument("out");
  return guarded([&] {
    const rubikon::SessionConfig config = rubikon::SessionConfig::from_json(parse_object(config_json, "config"));
    rubikon::Session::Clock c;
    if (clock) c = [clock, clock_user] { return static_cast<std::int64_t>(clock(clock_user)); };
    auto handle = std::make_unique<rk_session>();
    handle->session = std::make_unique<rubikon::Session>(config, std::move(c));
    *out = handle.release();
  });
}

void rk_session_destroy(rk_session* session) { delete session; }

rk_status rk_session_handle(rk_session* session, const char* line, char** out_lines) {
  if (!session || !line || !out_lines) return null_argument("session, line and out_lines");
  return guarded([&] {
    std::string text;
    for (const std::string& reply : session->session->handle_line(line)) {
      text += reply;
      text += '\n';
    }
    *out_lines = copy_out(text);
  });
}

size_t rk_session_event_count(const rk_session* session) { return session ? session->session->events().size() : 0; }

rk_status rk_session_events(const rk_session* session, size_t from, char** out_jsonl) {
  if (!session || !out_jsonl) return null_argument("session and out_jsonl");
  return guarded([&] { *out_jsonl = copy_out(events_jsonl(session->session->events(), from)); });
}

rk_status rk_min_steps(const char* from_facelet, const char* to_facelet, int cap, int* out_distance) {
  if (!from_facelet || !to_facelet || !out_distance) return null_argument("facelets and out_distance");
  return guarded([&] {
    const rubikon::CubeState from = rubikon::CubeState::parse(from_facelet);
    const rubikon::CubeState to = rubikon::CubeState::parse(to_facelet);
    const auto d = rubikon::min_steps(from, to, cap);
    *out_distance = d.finite() ? d.value() : -1;
  });
}

rk_status rk_kc_catalog(char** out_json) {
  if (!out_json) return null_argument("out_json");
  return guarded([&] { *out_json = copy_out(rubikon::kc_catalog_json().dump(2) + "\n"); });
}

rk_status rk_replay(const char* log_jsonl, char** out_report_json) {
  if (!log_jsonl || !out_report_json) return null_argument("log_jsonl and out_report_json");
  return guarded([&] {
    const auto events = parse_log(log_jsonl);
    const rubikon::ReplayResult r = rubikon::replay(events);
    const Json report = {{"identical", r.identical},
                         {"first_mismatch_seq", r.first_mismatch_seq ? Json(*r.first_mismatch_seq) : Json(nullptr)},
                         {"events", events.size()}};
    *out_report_json = copy_out(report.dump());
  });
}

rk_status rk_metrics(const char* log_jsonl, char** out_json) {
  if (!log_jsonl || !out_json) return null_argument("log_jsonl and out_json");
  return guarded([&] { *out_json = copy_out(rubikon::to_json(rubikon::compute_metrics(parse_log(log_jsonl))).dump()); });
}

rk_status rk_simulate(const char* config_json, char** out_result_json, char** out_log_jsonl) {
  if (!out_result_json) return null_argument("out_result_json");
  return guarded([&] {
    const rubikon::SimConfig config = rubikon::SimConfig::from_json(parse_object(config_json, "config"));
    const rubikon::SimResult r = rubikon::simulate(config);
    std::string result = rubikon::to_json(r, config).dump();
    std::string log = out_log_jsonl ? events_jsonl(r.events, 0) : std::string();
    char* result_out = copy_out(result);
    if (out_log_jsonl) {
      try {
        *out_log_jsonl = copy_out(log);
      } catch (...) {
        std::free(result_out);
        throw;
      }
    }
    *out_result_json = result_out;
  });
}

}  // extern "C"
