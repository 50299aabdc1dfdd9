#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "bidcg/json.hpp"
#include "bidcg/notation.hpp"
#include "bidcg/solver.hpp"

namespace httplib {
class Server;
}

namespace bidcg::service {

struct Response {
  int status = 200;
  Json body;
};

struct Limits {
  int max_tb = 16;
  std::size_t max_sessions = 4096;
  FormLimits forms;
};

/// Sessions and analysis behind the HTTP API, independent of the transport.
/// Handlers are safe to call concurrently; each session serializes its own
/// requests. Session ids are assigned in creation order ("s1", "s2", ...),
/// so an identical request sequence replays to identical responses.
class Engine {
 public:
  explicit Engine(Limits limits = {});
  ~Engine();
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  /// POST /session {game, tb, human_side, initial_budget}
  Response create_session(const Json& body);
  /// POST /session/{id}/bid {amount, include_marker}
  Response bid(const std::string& id, const Json& body);
  /// POST /session/{id}/move {index} or {to}
  Response move(const std::string& id, const Json& body);
  /// GET /session/{id}
  Response get_session(const std::string& id);
  /// GET /analyze?game=...&tb=...
  Response analyze(const std::optional<std::string>& game, const std::optional<std::string>& tb);

 private:
  struct Session;

  std::shared_ptr<Session> find(const std::string& id);
  Json session_json(const Session& s);
  Json options_json(GameId g, Player p);
  void finish_round(Session& s, const Bid& human_bid, const Bid& engine_bid, Json& round);

  Limits limits_;
  Arena arena_;
  Solver solver_;
  NameTable names_;
  std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 1;
};

/// Registers the endpoints on an httplib server.
void install_routes(httplib::Server& server, Engine& engine);

/// Blocks serving on host:port until the process is stopped.
int serve(const std::string& host, int port, Limits limits = {});

}  // namespace bidcg::service
