// Command-line front end over the C interface: serve the wire protocol,
// simulate scripted learners, replay logs and report process metrics.

#include <CLI11.hpp>
#include <json.hpp>

#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rubikon/rubikon.h"

namespace {

using Json = nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

// A failed C call, carrying its status and message.
struct Failure {
  rk_status status;
  std::string message;
  std::int64_t detail;
};

void check(rk_status s) {
  if (s != RK_OK) throw Failure{s, rk_last_error(), rk_last_error_detail()};
}

struct OwnedString {
  char* p = nullptr;
  OwnedString() = default;
  OwnedString(const OwnedString&) = delete;
  OwnedString& operator=(const OwnedString&) = delete;
  ~OwnedString() { rk_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct SessionDeleter {
  void operator()(rk_session* s) const { rk_session_destroy(s); }
};
using SessionPtr = std::unique_ptr<rk_session, SessionDeleter>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{RK_IO, "cannot read " + path, -1};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text)) throw Failure{RK_IO, "cannot write " + path, -1};
}

std::optional<Json> read_params(const std::string& path) {
  if (path.empty()) return std::nullopt;
  Json j = Json::parse(read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Failure{RK_INVALID_ARGUMENT, path + " must hold a JSON object", -1};
  return j;
}

// Appends a session's new events to its log file as they are produced.
class LogWriter {
 public:
  LogWriter(const std::string& dir, const std::string& id) {
    if (dir.empty()) return;
    fs::create_directories(dir);
    path_ = (fs::path(dir) / (id + ".jsonl")).string();
    out_.open(path_, std::ios::binary | std::ios::trunc);
    if (!out_) throw Failure{RK_IO, "cannot write " + path_, -1};
  }

  void flush_from(const rk_session* s) {
    if (!out_.is_open()) return;
    const std::size_t n = rk_session_event_count(s);
    if (n == written_) return;
    OwnedString events;
    check(rk_session_events(s, written_, &events.p));
    out_ << events.p;
    out_.flush();
    written_ = n;
  }

 private:
  std::string path_;
  std::ofstream out_;
  std::size_t written_ = 0;
};

SessionPtr open_session(const std::string& id, std::uint64_t seed, const std::optional<Json>& params) {
  Json config = {{"id", id}, {"seed", seed}};
  if (params) config["params"] = *params;
  rk_session* s = nullptr;
  check(rk_session_create(config.dump().c_str(), nullptr, nullptr, &s));
  return SessionPtr(s);
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

// ---- serve ----------------------------------------------------------------

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  bool stdio = false;
  bool once = false;
  std::string log_dir;
  std::uint64_t seed = 0;
  std::string session_id = "stdio";
  std::string params_file;
};

int serve_stdio(const ServeOptions& o, const std::optional<Json>& params) {
  SessionPtr session = open_session(o.session_id, o.seed, params);
  LogWriter log(o.log_dir, o.session_id);
  log.flush_from(session.get());
  for (std::string line; std::getline(std::cin, line);) {
    if (line.empty()) continue;
    OwnedString replies;
    check(rk_session_handle(session.get(), line.c_str(), &replies.p));
    std::cout << replies.p << std::flush;
    log.flush_from(session.get());
  }
  return kExitOk;
}

namespace net = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;

// One session per connection; its messages are handled strictly in order on
// the connection's own thread.
void serve_connection(tcp::socket socket, std::string id, std::uint64_t seed, const std::optional<Json>& params,
                      const std::string& log_dir) {
  try {
    websocket::stream<tcp::socket> ws(std::move(socket));
    ws.accept();
    ws.text(true);
    SessionPtr session = open_session(id, seed, params);
    LogWriter log(log_dir, id);
    log.flush_from(session.get());
    for (;;) {
      beast::flat_buffer buffer;
      beast::error_code ec;
      ws.read(buffer, ec);
      if (ec == websocket::error::closed || ec == net::error::eof || ec == net::error::connection_reset) break;
      if (ec) throw beast::system_error(ec);
      for (const std::string& line : split_lines(beast::buffers_to_string(buffer.data()))) {
        OwnedString replies;
        check(rk_session_handle(session.get(), line.c_str(), &replies.p));
        for (const std::string& reply : split_lines(replies.str())) ws.write(net::buffer(reply));
        log.flush_from(session.get());
      }
    }
  } catch (const Failure& f) {
    std::cerr << "session " << id << ": " << f.message << "\n";
  } catch (const std::exception& e) {
    std::cerr << "session " << id << ": " << e.what() << "\n";
  }
}

int serve_websocket(const ServeOptions& o, const std::optional<Json>& params) {
  net::io_context ioc{1};
  tcp::acceptor acceptor(ioc);
  try {
    const tcp::endpoint endpoint(net::ip::make_address(o.host), static_cast<unsigned short>(o.port));
    acceptor.open(endpoint.protocol());
    acceptor.set_option(net::socket_base::reuse_address(true));
    acceptor.bind(endpoint);
    acceptor.listen();
  } catch (const std::exception& e) {
    std::cerr << "error: cannot listen on " << o.host << ":" << o.port << ": " << e.what() << "\n";
    return kExitData;
  }
  std::cout << "listening on ws://" << o.host << ":" << acceptor.local_endpoint().port() << std::endl;

  const auto started = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::system_clock::now().time_since_epoch())
                           .count();
  for (std::uint64_t n = 0;; ++n) {
    tcp::socket socket(ioc);
    acceptor.accept(socket);
    const std::string id = "ws-" + std::to_string(started) + "-" + std::to_string(n);
    if (o.once) {
      serve_connection(std::move(socket), id, o.seed + n, params, o.log_dir);
      return kExitOk;
    }
    std::thread(serve_connection, std::move(socket), id, o.seed + n, params, o.log_dir).detach();
  }
}

int cmd_serve(const ServeOptions& o) {
  const auto params = read_params(o.params_file);
  return o.stdio ? serve_stdio(o, params) : serve_websocket(o, params);
}

// ---- reports --------------------------------------------------------------

Json catalog() {
  OwnedString c;
  check(rk_kc_catalog(&c.p));
  return Json::parse(c.p);
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

struct KcTotals {
  int count = 0;
  std::int64_t exercise_ms = 0;
  std::int64_t preparation_ms = 0;
};

std::map<std::string, KcTotals> per_kc(const Json& metrics) {
  std::map<std::string, KcTotals> out;
  for (const Json& a : metrics["attempts"]) {
    KcTotals& t = out[a["kc_id"].get<std::string>()];
    ++t.count;
    t.exercise_ms += a["exercise_ms"].get<std::int64_t>();
    t.preparation_ms += a["preparation_ms"].get<std::int64_t>();
  }
  return out;
}

std::string cost_text(const Json& metrics) {
  return metrics["preparation_cost"].is_null() ? "undefined (no exercise time)"
                                               : fixed(metrics["preparation_cost"].get<double>(), 4);
}

void print_metrics_table(std::ostream& out, const Json& metrics) {
  const Json cat = catalog();
  const auto totals = per_kc(metrics);
  out << std::left << std::setw(14) << "kc" << std::setw(14) << "stage" << std::right << std::setw(6) << "stars"
      << std::setw(10) << "attempts" << std::setw(14) << "exercise_ms" << std::setw(16) << "preparation_ms" << "\n";
  KcTotals sum;
  for (const Json& k : cat["kcs"]) {
    const std::string id = k["id"].get<std::string>();
    const auto it = totals.find(id);
    const KcTotals t = it == totals.end() ? KcTotals{} : it->second;
    sum.count += t.count;
    sum.exercise_ms += t.exercise_ms;
    sum.preparation_ms += t.preparation_ms;
    out << std::left << std::setw(14) << id << std::setw(14) << k["stage"].get<std::string>() << std::right
        << std::setw(6) << k["stars"].get<int>() << std::setw(10) << t.count << std::setw(14) << t.exercise_ms
        << std::setw(16) << t.preparation_ms << "\n";
  }
  out << std::left << std::setw(34) << "total" << std::right << std::setw(10) << sum.count << std::setw(14)
      << sum.exercise_ms << std::setw(16) << sum.preparation_ms << "\n";
  out << "kcs exercised: " << metrics["kcs_exercised"].get<int>() << "\n";
  out << "session ms: " << metrics["session_ms"].get<std::int64_t>() << "\n";
  out << "preparation cost: " << cost_text(metrics) << "\n";
}

void print_metrics_csv(std::ostream& out, const Json& metrics) {
  const auto totals = per_kc(metrics);
  const Json cat = catalog();
  out << "kc_id,stage,stars,attempts,exercise_ms,preparation_ms\n";
  for (const Json& k : cat["kcs"]) {
    const std::string id = k["id"].get<std::string>();
    const auto it = totals.find(id);
    const KcTotals t = it == totals.end() ? KcTotals{} : it->second;
    out << id << "," << k["stage"].get<std::string>() << "," << k["stars"].get<int>() << "," << t.count << ","
        << t.exercise_ms << "," << t.preparation_ms << "\n";
  }
}

Json metrics_of(const std::string& log) {
  OwnedString m;
  check(rk_metrics(log.c_str(), &m.p));
  return Json::parse(m.p);
}

// ---- sim ------------------------------------------------------------------

struct SimOptions {
  std::string policy = "perfect";
  std::uint64_t seed = 0;
  double p = 0.7;
  int hint_level = 1;
  int max_attempts = 200;
  std::string params_file;
  std::string log_file;
  std::string format = "table";
};

int cmd_sim(const SimOptions& o) {
  Json config = {{"policy", o.policy}, {"seed", o.seed}, {"p", o.p}, {"hint_level", o.hint_level},
                 {"max_attempts", o.max_attempts}};
  if (auto params = read_params(o.params_file)) config["params"] = *params;
  OwnedString result;
  OwnedString log;
  check(rk_simulate(config.dump().c_str(), &result.p, &log.p));
  if (!o.log_file.empty()) write_file(o.log_file, log.str());
  const Json r = Json::parse(result.p);
  if (o.format == "json") {
    std::cout << r.dump(2) << "\n";
    return kExitOk;
  }
  std::cout << "policy " << r["policy"].get<std::string>() << ", seed " << r["seed"].get<std::uint64_t>() << ": "
            << r["closed_attempts"].get<int>() << " closed attempts, " << r["mastered"].get<int>()
            << " of 11 KCs mastered" << (r["done"].get<bool>() ? ", done" : "") << "\n\n";
  std::cout << "skill trajectory\n";
  std::cout << std::left << std::setw(9) << "attempt" << std::setw(14) << "kc" << std::right << std::setw(7) << "score"
            << "  mastered\n";
  for (const Json& p : r["trajectory"])
    std::cout << std::left << std::setw(9) << p["attempt_id"].get<int>() << std::setw(14)
              << p["kc_id"].get<std::string>() << std::right << std::setw(7) << fixed(p["score"].get<double>(), 2)
              << "  " << (p["mastered"].get<bool>() ? "yes" : "no") << "\n";
  std::cout << "\nskillometer\n";
  for (const Json& row : r["skillometer"])
    std::cout << std::left << std::setw(14) << row["kc_id"].get<std::string>() << std::right << std::setw(7)
              << fixed(row["score"].get<double>(), 2) << "  " << (row["mastered"].get<bool>() ? "mastered" : "-")
              << "\n";
  std::cout << "\nprocess metrics\n";
  print_metrics_table(std::cout, r["metrics"]);
  if (!o.log_file.empty()) std::cout << "\nlog written to " << o.log_file << "\n";
  return kExitOk;
}

// ---- replay / metrics / catalog --------------------------------------------

int cmd_replay(const std::string& path) {
  const std::string log = read_file(path);
  OwnedString report;
  check(rk_replay(log.c_str(), &report.p));
  const Json r = Json::parse(report.p);
  if (!r["identical"].get<bool>()) {
    std::cout << "FAIL: derived events differ from the log, first mismatch at seq "
              << r["first_mismatch_seq"].get<std::int64_t>() << "\n";
    return kExitData;
  }
  std::cout << "PASS: " << r["events"].get<std::size_t>() << " events re-derived byte-identically\n";
  print_metrics_table(std::cout, metrics_of(log));
  return kExitOk;
}

int cmd_metrics(const std::string& path, const std::string& format) {
  const Json m = metrics_of(read_file(path));
  if (format == "json")
    std::cout << m.dump(2) << "\n";
  else if (format == "csv")
    print_metrics_csv(std::cout, m);
  else
    print_metrics_table(std::cout, m);
  return kExitOk;
}

int cmd_catalog(const std::string& out) {
  OwnedString c;
  check(rk_kc_catalog(&c.p));
  if (out.empty())
    std::cout << c.p;
  else
    write_file(out, c.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rubik's cube first-layer tutor: service, simulation and log analysis"};
  app.require_subcommand(1);

  ServeOptions serve;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the wire protocol over WebSocket or stdio");
  serve_cmd->add_option("--port", serve.port, "WebSocket port (0 picks a free one)")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", serve.host, "Address to bind");
  serve_cmd->add_flag("--stdio", serve.stdio, "Speak NDJSON on standard input/output instead");
  serve_cmd->add_flag("--once", serve.once, "Exit after the first WebSocket connection closes");
  serve_cmd->add_option("--log-dir", serve.log_dir, "Directory for one JSON-lines log per session");
  serve_cmd->add_option("--seed", serve.seed, "Base seed for session scrambles and tasks");
  serve_cmd->add_option("--session-id", serve.session_id, "Session id in stdio mode");
  serve_cmd->add_option("--params-file", serve.params_file, "JSON object overriding tracing parameters");

  SimOptions sim;
  auto* sim_cmd = app.add_subcommand("sim", "Run a scripted learner through the wire protocol");
  sim_cmd->add_option("--policy", sim.policy, "perfect, noisy, random_walk or hint_seeker")
      ->check(CLI::IsMember({"perfect", "noisy", "random_walk", "random-walk", "hint_seeker", "hint-seeker"}));
  sim_cmd->add_option("--seed", sim.seed, "Seed");
  sim_cmd->add_option("--p", sim.p, "Noisy: probability of the planned move")->check(CLI::Range(0.0, 1.0));
  sim_cmd->add_option("--hint-level", sim.hint_level, "HintSeeker: level requested per task")->check(CLI::Range(1, 3));
  sim_cmd->add_option("--max-attempts", sim.max_attempts, "Stop after this many closed attempts")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--params-file", sim.params_file, "JSON object overriding tracing parameters");
  sim_cmd->add_option("--log", sim.log_file, "Write the session log here");
  sim_cmd->add_option("--format", sim.format, "table or json")->check(CLI::IsMember({"table", "json"}));

  std::string replay_path;
  auto* replay_cmd = app.add_subcommand("replay", "Re-derive a log's events and compare them byte for byte");
  replay_cmd->add_option("log", replay_path, "JSON-lines session log")->required();

  std::string metrics_path;
  std::string metrics_format = "table";
  auto* metrics_cmd = app.add_subcommand("metrics", "Process metrics of a session log");
  metrics_cmd->add_option("log", metrics_path, "JSON-lines session log")->required();
  metrics_cmd->add_option("--format", metrics_format, "table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  std::string catalog_out;
  auto* catalog_cmd = app.add_subcommand("catalog", "Print the knowledge-component catalog");
  catalog_cmd->add_option("--out", catalog_out, "Write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*serve_cmd) return cmd_serve(serve);
    if (*sim_cmd) return cmd_sim(sim);
    if (*replay_cmd) return cmd_replay(replay_path);
    if (*metrics_cmd) return cmd_metrics(metrics_path, metrics_format);
    if (*catalog_cmd) return cmd_catalog(catalog_out);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message;
    if (f.status == RK_CORRUPT_LOG && f.detail >= 0) std::cerr << " (seq " << f.detail << ")";
    std::cerr << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
