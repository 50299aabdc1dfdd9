#include "bidcg/service.hpp"

#include <httplib.h>

#include <algorithm>
#include <charconv>
#include <iostream>

#include "bidcg/auction.hpp"

namespace bidcg::service {
namespace {

Json with_version(Json body) {
  Json out;
  out["version"] = kSchemaVersion;
  for (auto& [key, value] : body.items()) out[key] = std::move(value);
  return out;
}

Response ok(Json body) { return {200, with_version(std::move(body))}; }

Response error(int status, const std::string& message, Json extra = Json::object()) {
  Json e{{"code", status}, {"message", message}};
  for (auto& [key, value] : extra.items()) e[key] = std::move(value);
  return {status, with_version({{"error", std::move(e)}})};
}

std::optional<Player> parse_side(const Json& v) {
  if (!v.is_string()) return std::nullopt;
  const std::string s = v.get<std::string>();
  if (s == "Left" || s == "left" || s == "L") return Player::Left;
  if (s == "Right" || s == "right" || s == "R") return Player::Right;
  return std::nullopt;
}

std::optional<int> parse_int(const std::string& text) {
  int v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

Json bids_json(const std::vector<Bid>& bids) {
  Json out = Json::array();
  for (const Bid& b : bids) out.push_back(to_json(b));
  return out;
}

}  // namespace

struct Engine::Session {
  enum class Phase { Bid, Move, Over };

  std::mutex mutex;
  std::string id;
  std::string game_text;
  GameId start;
  BudgetState start_state;
  Outcome start_value = Outcome::L;
  Player human = Player::Left;
  Player engine = Player::Right;

  GameId position;
  BudgetState state;
  Phase phase = Phase::Bid;
  BudgetState pending;
  std::optional<Player> winner;
  Json history = Json::array();
};

Engine::Engine(Limits limits) : limits_(limits), solver_(arena_), names_(arena_) {}

Engine::~Engine() = default;

std::shared_ptr<Engine::Session> Engine::find(const std::string& id) {
  std::lock_guard lock(sessions_mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

Json Engine::options_json(GameId g, Player p) {
  Json out = Json::array();
  const auto options = arena_.options(g, p);
  for (std::size_t i = 0; i < options.size(); ++i) {
    out.push_back({{"index", i},
                   {"name", names_.print(options[i], PrintStyle::Named)},
                   {"form", names_.print(options[i], PrintStyle::Literal)}});
  }
  return out;
}

Json Engine::session_json(const Session& s) {
  static constexpr const char* kPhases[] = {"bid", "move", "over"};
  Json j;
  j["id"] = s.id;
  j["game"] = s.game_text;
  j["tb"] = s.state.tb;
  j["human_side"] = std::string(to_string(s.human));
  j["engine_side"] = std::string(to_string(s.engine));
  j["initial_state"] = to_json(s.start_state);
  j["initial_value"] = std::string(1, to_char(s.start_value));
  j["position"] = {{"name", names_.print(s.position, PrintStyle::Named)},
                   {"form", names_.print(s.position, PrintStyle::Literal)},
                   {"birthday", arena_.birthday(s.position)}};
  j["state"] = to_json(s.phase == Session::Phase::Move ? s.pending : s.state);
  j["phase"] = kPhases[static_cast<int>(s.phase)];
  j["legal_bids"] = s.phase == Session::Phase::Bid ? bids_json(legal_bids(s.state, s.human)) : Json::array();
  j["move_options"] = s.phase == Session::Phase::Move ? options_json(s.position, s.human) : Json::array();
  j["winner"] = s.winner ? Json(std::string(to_string(*s.winner))) : Json(nullptr);
  j["history"] = s.history;
  return j;
}

Response Engine::create_session(const Json& body) {
  if (!body.is_object()) return error(400, "request body must be a JSON object");
  if (!body.contains("game") || !body["game"].is_string()) return error(400, "'game' must be a string");
  if (!body.contains("tb") || !body["tb"].is_number_integer()) return error(400, "'tb' must be an integer");
  const int tb = body["tb"].get<int>();
  if (tb < 0 || tb > limits_.max_tb) {
    return error(400, "'tb' must be in 0.." + std::to_string(limits_.max_tb));
  }
  const auto human = parse_side(body.value("human_side", Json()));
  if (!human) return error(400, "'human_side' must be \"Left\" or \"Right\"");

  BudgetState start;
  const Json& init = body.value("initial_budget", Json());
  try {
    if (init.is_string()) {
      start = parse_budget_state(tb, init.get<std::string>());
    } else if (init.is_object() && init.contains("left_budget") && init["left_budget"].is_number_integer()) {
      const auto marker = parse_side(init.value("marker", Json()));
      if (!marker) return error(400, "'initial_budget.marker' must be \"Left\" or \"Right\"");
      start = {tb, init["left_budget"].get<int>(), *marker};
      if (!start.valid()) return error(400, "'initial_budget.left_budget' must be in 0..tb");
    } else {
      return error(400, "'initial_budget' must be a label such as \"1^\" or {left_budget, marker}");
    }
  } catch (const std::exception& e) {
    return error(400, e.what());
  }

  GameId g;
  try {
    g = parse(arena_, body["game"].get<std::string>(), limits_.forms);
  } catch (const std::exception& e) {
    return error(400, std::string("cannot parse game: ") + e.what());
  }

  auto s = std::make_shared<Session>();
  s->game_text = body["game"].get<std::string>();
  s->start = s->position = g;
  s->start_state = s->state = start;
  s->human = *human;
  s->engine = opponent(*human);
  s->start_value = solver_.partial_outcome(g, start);
  {
    std::lock_guard lock(sessions_mutex_);
    if (sessions_.size() >= limits_.max_sessions) return error(503, "session limit reached");
    s->id = "s" + std::to_string(next_id_++);
    sessions_[s->id] = s;
  }
  std::lock_guard lock(s->mutex);
  return ok({{"session", session_json(*s)}});
}

void Engine::finish_round(Session& s, const Bid& human_bid, const Bid& engine_bid, Json& round) {
  const Bid& left = s.human == Player::Left ? human_bid : engine_bid;
  const Bid& right = s.human == Player::Left ? engine_bid : human_bid;
  const RoundResult result = resolve(s.state, left, right);
  round["index"] = s.history.size();
  round["position"] = names_.print(s.position, PrintStyle::Named);
  round["state"] = to_json(s.state);
  round["left_bid"] = to_json(left);
  round["right_bid"] = to_json(right);
  round["winner"] = std::string(to_string(result.winner));
  round["next_state"] = to_json(result.next);
  round["move"] = nullptr;

  if (arena_.options(s.position, result.winner).empty()) {
    s.state = result.next;
    s.phase = Session::Phase::Over;
    s.winner = opponent(result.winner);
    round["game_over"] = true;
    round["reason"] = std::string(to_string(result.winner)) + " won the bid with no move";
  } else if (result.winner == s.engine) {
    const GameId next = *solver_.best_move(s.position, result.next, s.engine);
    round["move"] = {{"by", std::string(to_string(s.engine))}, {"to", names_.print(next, PrintStyle::Named)}};
    s.position = next;
    s.state = result.next;
    round["game_over"] = false;
  } else {
    s.pending = result.next;
    s.phase = Session::Phase::Move;
    round["game_over"] = false;
  }
  s.history.push_back(round);
}

Response Engine::bid(const std::string& id, const Json& body) {
  const auto s = find(id);
  if (!s) return error(404, "unknown session '" + id + "'");
  std::lock_guard lock(s->mutex);
  if (s->phase != Session::Phase::Bid) {
    return error(409, s->phase == Session::Phase::Move ? "a move is pending" : "the game is over");
  }
  if (!body.is_object() || !body.contains("amount") || !body["amount"].is_number_integer()) {
    return error(400, "'amount' must be an integer");
  }
  const Json& flag = body.value("include_marker", Json(false));
  if (!flag.is_boolean()) return error(400, "'include_marker' must be a boolean");
  const Bid human_bid{body["amount"].get<int>(), flag.get<bool>()};
  if (!is_legal(s->state, s->human, human_bid)) {
    return error(422, "illegal bid", {{"legal_bids", bids_json(legal_bids(s->state, s->human))}});
  }
  const StrategyEntry engine = solver_.best_response(s->position, s->state, s->engine);
  Json round;
  round["engine_bid"] = to_json(engine.best_bid);
  finish_round(*s, human_bid, engine.best_bid, round);
  return ok({{"round", round}, {"session", session_json(*s)}});
}

Response Engine::move(const std::string& id, const Json& body) {
  const auto s = find(id);
  if (!s) return error(404, "unknown session '" + id + "'");
  std::lock_guard lock(s->mutex);
  if (s->phase != Session::Phase::Move) return error(409, "no move is pending");
  const auto options = arena_.options(s->position, s->human);
  std::optional<GameId> chosen;
  if (body.is_object() && body.contains("index") && body["index"].is_number_integer()) {
    const auto i = body["index"].get<std::int64_t>();
    if (i >= 0 && static_cast<std::size_t>(i) < options.size()) chosen = options[static_cast<std::size_t>(i)];
  } else if (body.is_object() && body.contains("to") && body["to"].is_string()) {
    try {
      const GameId target = parse(arena_, body["to"].get<std::string>(), limits_.forms);
      if (std::find(options.begin(), options.end(), target) != options.end()) chosen = target;
    } catch (const std::exception& e) {
      return error(400, std::string("cannot parse 'to': ") + e.what());
    }
  } else {
    return error(400, "give the move as {\"index\": i} or {\"to\": notation}");
  }
  if (!chosen) return error(422, "not an option of the position", {{"move_options", options_json(s->position, s->human)}});
  s->history.back()["move"] = {{"by", std::string(to_string(s->human))}, {"to", names_.print(*chosen, PrintStyle::Named)}};
  s->position = *chosen;
  s->state = s->pending;
  s->phase = Session::Phase::Bid;
  return ok({{"session", session_json(*s)}});
}

Response Engine::get_session(const std::string& id) {
  const auto s = find(id);
  if (!s) return error(404, "unknown session '" + id + "'");
  std::lock_guard lock(s->mutex);
  return ok({{"session", session_json(*s)}});
}

Response Engine::analyze(const std::optional<std::string>& game, const std::optional<std::string>& tb_text) {
  if (!game) return error(400, "missing query parameter 'game'");
  if (!tb_text) return error(400, "missing query parameter 'tb'");
  const auto tb = parse_int(*tb_text);
  if (!tb || *tb < 0 || *tb > limits_.max_tb) {
    return error(400, "'tb' must be an integer in 0.." + std::to_string(limits_.max_tb));
  }
  GameId g;
  try {
    g = parse(arena_, *game, limits_.forms);
  } catch (const std::exception& e) {
    return error(400, std::string("cannot parse game: ") + e.what());
  }
  return {200, analysis_payload(solver_, names_, g, *game, *tb)};
}

void install_routes(httplib::Server& server, Engine& engine) {
  auto send = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  auto body_of = [](const httplib::Request& req) -> std::optional<Json> {
    try {
      return Json::parse(req.body.empty() ? "{}" : req.body);
    } catch (const Json::parse_error&) {
      return std::nullopt;
    }
  };
  auto bad_json = [&](httplib::Response& res) { send(res, error(400, "request body is not valid JSON")); };

  server.Post("/session", [=, &engine](const httplib::Request& req, httplib::Response& res) {
    const auto body = body_of(req);
    if (!body) return bad_json(res);
    send(res, engine.create_session(*body));
  });
  server.Post(R"(/session/([A-Za-z0-9]+)/bid)", [=, &engine](const httplib::Request& req, httplib::Response& res) {
    const auto body = body_of(req);
    if (!body) return bad_json(res);
    send(res, engine.bid(req.matches[1], *body));
  });
  server.Post(R"(/session/([A-Za-z0-9]+)/move)", [=, &engine](const httplib::Request& req, httplib::Response& res) {
    const auto body = body_of(req);
    if (!body) return bad_json(res);
    send(res, engine.move(req.matches[1], *body));
  });
  server.Get(R"(/session/([A-Za-z0-9]+))", [=, &engine](const httplib::Request& req, httplib::Response& res) {
    send(res, engine.get_session(req.matches[1]));
  });
  server.Get("/analyze", [=, &engine](const httplib::Request& req, httplib::Response& res) {
    auto param = [&](const char* key) -> std::optional<std::string> {
      if (!req.has_param(key)) return std::nullopt;
      return req.get_param_value(key);
    };
    send(res, engine.analyze(param("game"), param("tb")));
  });
  server.set_error_handler([=](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
    send(res, error(res.status, res.status == 404 ? "no such endpoint" : "request failed"));
    return httplib::Server::HandlerResponse::Handled;
  });
}

int serve(const std::string& host, int port, Limits limits) {
  Engine engine(limits);
  httplib::Server server;
  install_routes(server, engine);
  std::cerr << "listening on http://" << host << ":" << port << "\n";
  return server.listen(host, port) ? 0 : 1;
}

}  // namespace bidcg::service
