// Starts `rubikon-cli serve --port 0 --once`, speaks the wire protocol over a
// WebSocket and checks the replies and the session log.

#include <doctest.h>
#include <json.hpp>

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using Json = nlohmann::json;
namespace net = boost::asio;
namespace beast = boost::beast;
using tcp = net::ip::tcp;

TEST_CASE("a WebSocket client completes a Hello and a task request") {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "rubikon_ws_smoke";
  std::filesystem::remove_all(dir);
  const std::string cmd = std::string(RUBIKON_CLI) + " serve --port 0 --once --seed 3 --log-dir " + dir.string();
  FILE* server = popen(cmd.c_str(), "r");
  REQUIRE(server != nullptr);
  char ready[256] = {};
  REQUIRE(std::fgets(ready, sizeof ready, server) != nullptr);
  const std::string line(ready);
  const auto colon = line.rfind(':');
  REQUIRE(line.rfind("listening on ws://", 0) == 0);
  const std::string port = line.substr(colon + 1, line.find_first_of("\r\n") - colon - 1);

  net::io_context ioc;
  tcp::resolver resolver(ioc);
  beast::websocket::stream<tcp::socket> ws(ioc);
  net::connect(ws.next_layer(), resolver.resolve("127.0.0.1", port));
  ws.handshake("127.0.0.1:" + port, "/");
  ws.text(true);

  auto exchange = [&](const Json& msg, std::size_t replies) {
    ws.write(net::buffer(msg.dump()));
    std::vector<Json> out;
    for (std::size_t i = 0; i < replies; ++i) {
      beast::flat_buffer buf;
      ws.read(buf);
      out.push_back(Json::parse(beast::buffers_to_string(buf.data())));
    }
    return out;
  };

  const auto hello = exchange({{"seq", 1}, {"type", "Hello"}, {"payload", Json::object()}}, 3);
  CHECK(hello[0]["type"] == "Welcome");
  CHECK(hello[0]["payload"]["protocol_version"] == 1);
  CHECK(hello[0]["payload"]["kc_catalog"]["kcs"].size() == 11);
  CHECK(hello[1]["type"] == "Rendered");
  const auto bad = exchange({{"seq", 2}, {"type", "Teleport"}, {"payload", Json::object()}}, 1);
  CHECK(bad[0]["payload"]["code"] == "SchemaError");
  CHECK(bad[0]["payload"]["ref_seq"] == 2);
  const auto task = exchange({{"seq", 3}, {"type", "RequestTask"}, {"payload", Json::object()}}, 2);
  CHECK(task[0]["type"] == "ModeChanged");
  CHECK(task[1]["type"] == "Task");
  CHECK(task[1]["payload"]["kc_id"] == "side");

  ws.close(beast::websocket::close_code::normal);
  CHECK(pclose(server) == 0);

  std::size_t logs = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    ++logs;
    std::ifstream in(entry.path());
    std::string first;
    REQUIRE(std::getline(in, first));
    CHECK(Json::parse(first)["kind"] == "SessionStarted");
  }
  CHECK(logs == 1);
  std::filesystem::remove_all(dir);
}
