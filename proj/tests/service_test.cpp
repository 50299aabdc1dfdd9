#include <gtest/gtest.h>
#include <httplib.h>

#include <random>
#include <sstream>
#include <thread>

#include "bidcg/enumerate.hpp"
#include "bidcg/service.hpp"
#include "cli.hpp"

using namespace bidcg;
using service::Engine;
using service::Response;

namespace {

Json body_for(const std::string& game, int tb, const std::string& side, const Json& state) {
  return {{"game", game}, {"tb", tb}, {"human_side", side}, {"initial_budget", state}};
}

Json bid(int amount, bool marker = false) { return {{"amount", amount}, {"include_marker", marker}}; }

std::string create(Engine& e, const Json& body) {
  const Response r = e.create_session(body);
  EXPECT_EQ(r.status, 200) << r.body.dump();
  return r.body["session"]["id"].get<std::string>();
}

// Plays a session to the end with uniformly random legal bids and moves.
Json play_randomly(Engine& e, const std::string& id, std::mt19937_64& rng) {
  Json s = e.get_session(id).body["session"];
  while (s["phase"] != "over") {
    if (s["phase"] == "bid") {
      const Json& legal = s["legal_bids"];
      std::uniform_int_distribution<std::size_t> pick(0, legal.size() - 1);
      const Json& b = legal[pick(rng)];
      const Response r = e.bid(id, {{"amount", b["amount"]}, {"include_marker", b["include_marker"]}});
      EXPECT_EQ(r.status, 200) << r.body.dump();
      s = r.body["session"];
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, s["move_options"].size() - 1);
      const Response r = e.move(id, {{"index", pick(rng)}});
      EXPECT_EQ(r.status, 200) << r.body.dump();
      s = r.body["session"];
    }
  }
  return s;
}

}  // namespace

TEST(Service, StarPlusStarSession) {
  Engine e;
  const std::string id = create(e, body_for("*+*", 1, "Left", "1^"));
  Json s = e.get_session(id).body["session"];
  EXPECT_EQ(s["initial_value"], "L");
  EXPECT_EQ(s["engine_side"], "Right");

  Response r = e.bid(id, bid(0));
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body["round"]["engine_bid"]["amount"], 0);
  EXPECT_EQ(r.body["round"]["winner"], "Left");
  EXPECT_EQ(r.body["session"]["phase"], "move");
  ASSERT_EQ(r.body["session"]["move_options"].size(), 1u);

  r = e.move(id, {{"index", 0}});
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body["session"]["position"]["name"], "*");
  EXPECT_EQ(r.body["session"]["phase"], "bid");

  r = e.bid(id, bid(1));
  ASSERT_EQ(r.status, 200) << r.body.dump();
  EXPECT_EQ(r.body["round"]["winner"], "Left");
  r = e.move(id, {{"to", "0"}});
  ASSERT_EQ(r.status, 200) << r.body.dump();

  r = e.bid(id, bid(0));
  ASSERT_EQ(r.status, 200) << r.body.dump();
  EXPECT_EQ(r.body["round"]["winner"], "Right");
  EXPECT_EQ(r.body["round"]["game_over"], true);
  s = r.body["session"];
  EXPECT_EQ(s["phase"], "over");
  EXPECT_EQ(s["winner"], "Left");
  EXPECT_EQ(s["history"].size(), 3u);
  EXPECT_EQ(e.bid(id, bid(0)).status, 409);
}

// Left wins "1" from every state; try every bid sequence Right can make.
TEST(Service, EngineNeverLosesOneAgainstAnyBids) {
  for (const std::string state : {"2^", "1^", "0^", "2", "1", "0"}) {
    std::vector<std::vector<Json>> frontier{{}};
    std::size_t games = 0;
    while (!frontier.empty()) {
      const std::vector<Json> script = frontier.back();
      frontier.pop_back();
      Engine e;
      const std::string id = create(e, body_for("1", 2, "Right", state));
      Json s = e.get_session(id).body["session"];
      for (const Json& b : script) s = e.bid(id, b).body["session"];
      if (s["phase"] == "over") {
        ++games;
        EXPECT_EQ(s["winner"], "Left") << state << " " << s["history"].dump();
        continue;
      }
      ASSERT_EQ(s["phase"], "bid");
      for (const Json& b : s["legal_bids"]) {
        auto next = script;
        next.push_back({{"amount", b["amount"]}, {"include_marker", b["include_marker"]}});
        frontier.push_back(std::move(next));
      }
    }
    EXPECT_GT(games, 1u) << state;
  }
}

TEST(Service, IllegalBidListsLegalAmounts) {
  Engine e;
  const std::string id = create(e, body_for("1", 2, "Right", "0^"));
  const Response r = e.bid(id, bid(5));
  EXPECT_EQ(r.status, 422);
  std::set<int> amounts;
  for (const Json& b : r.body["error"]["legal_bids"]) amounts.insert(b["amount"].get<int>());
  EXPECT_EQ(amounts, (std::set<int>{0, 1, 2}));
  EXPECT_EQ(r.body["version"], kSchemaVersion);
  // Right cannot offer a marker it does not hold.
  EXPECT_EQ(e.bid(id, bid(0, true)).status, 422);
}

TEST(Service, InputErrors) {
  Engine e;
  EXPECT_EQ(e.get_session("s99").status, 404);
  EXPECT_EQ(e.bid("nope", bid(0)).status, 404);
  EXPECT_EQ(e.move("nope", {{"index", 0}}).status, 404);
  EXPECT_EQ(e.create_session(body_for("{0|", 1, "Left", "0")).status, 400);
  EXPECT_EQ(e.create_session(body_for("0", 1, "Up", "0")).status, 400);
  EXPECT_EQ(e.create_session(body_for("0", 1, "Left", "3")).status, 400);
  EXPECT_EQ(e.create_session(body_for("0", 99, "Left", "0")).status, 400);
  EXPECT_EQ(e.create_session(Json::array()).status, 400);
  EXPECT_EQ(e.analyze(std::nullopt, "1").status, 400);
  EXPECT_EQ(e.analyze("*", "x").status, 400);
  EXPECT_EQ(e.analyze("{|", "1").status, 400);

  const std::string id = create(e, body_for("*", 1, "Left", {{"left_budget", 1}, {"marker", "Left"}}));
  EXPECT_EQ(e.move(id, {{"index", 0}}).status, 409);
  EXPECT_EQ(e.bid(id, {{"amount", "1"}}).status, 400);
  ASSERT_EQ(e.bid(id, bid(1)).status, 200);
  const Json s = e.get_session(id).body["session"];
  if (s["phase"] == "move") {
    EXPECT_EQ(e.move(id, {{"index", 7}}).status, 422);
    EXPECT_EQ(e.move(id, {{"to", "1"}}).status, 422);
    EXPECT_EQ(e.move(id, {}).status, 400);
  }
}

// The engine never finishes below the value of the starting state.
TEST(Service, EngineHoldsInitialValue) {
  Arena pop_arena;
  const auto forms = explorer::population(pop_arena, {.max_birthday = 2});
  std::mt19937_64 rng(7);
  Engine e;
  std::size_t engine_wins = 0;
  for (int round = 0; round < 400; ++round) {
    const GameId g = forms[rng() % forms.size()];
    const int tb = static_cast<int>(rng() % 4);
    const int left = static_cast<int>(rng() % (tb + 1));
    const bool hat = rng() % 2;
    const std::string side = rng() % 2 ? "Left" : "Right";
    const std::string label = std::to_string(left) + (hat ? "^" : "");
    const std::string id = create(e, body_for(print(pop_arena, g), tb, side, label));
    const Json start = e.get_session(id).body["session"];
    const Json end = play_randomly(e, id, rng);
    if (start["initial_value"] == start["engine_side"].get<std::string>().substr(0, 1)) {
      ++engine_wins;
      EXPECT_EQ(end["winner"], start["engine_side"]) << start.dump() << "\n" << end["history"].dump();
    }
  }
  EXPECT_GT(engine_wins, 50u);
}

TEST(Service, ReplayIsDeterministic) {
  auto run = [](std::uint64_t seed) {
    Engine e;
    std::mt19937_64 rng(seed);
    std::vector<std::string> log;
    for (const char* game : {"*+*", "{1|*}", "^+v", "{0|{0|^}}"}) {
      const Response r = e.create_session(body_for(game, 3, "Left", "2^"));
      log.push_back(r.body.dump());
      log.push_back(play_randomly(e, r.body["session"]["id"], rng).dump());
    }
    return log;
  };
  EXPECT_EQ(run(11), run(11));
}

TEST(Service, ConcurrentSessionsAreIndependent) {
  Engine e;
  std::vector<std::thread> threads;
  std::vector<Json> finals(8);
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      std::mt19937_64 rng(t);
      const std::string id = create(e, body_for("1+*", 2, "Right", "1^"));
      finals[t] = play_randomly(e, id, rng);
    });
  }
  for (auto& th : threads) th.join();
  for (const Json& f : finals) EXPECT_EQ(f["winner"], "Left");
}

class HttpTest : public ::testing::Test {
 protected:
  void SetUp() override {
    service::install_routes(server_, engine_);
    port_ = server_.bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }
  httplib::Client client() { return httplib::Client("127.0.0.1", port_); }

  Engine engine_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

TEST_F(HttpTest, RoundTrip) {
  auto c = client();
  auto res = c.Post("/session", body_for("*+*", 1, "Left", "1^").dump(), "application/json");
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200);
  const Json created = Json::parse(res->body);
  const std::string id = created["session"]["id"];

  res = c.Post("/session/" + id + "/bid", bid(0).dump(), "application/json");
  ASSERT_EQ(res->status, 200);
  EXPECT_EQ(Json::parse(res->body)["round"]["winner"], "Left");
  res = c.Post("/session/" + id + "/move", Json{{"index", 0}}.dump(), "application/json");
  ASSERT_EQ(res->status, 200);
  res = c.Get("/session/" + id);
  ASSERT_EQ(res->status, 200);
  EXPECT_EQ(Json::parse(res->body)["session"]["history"].size(), 1u);
}

TEST_F(HttpTest, ErrorsCarryVersion) {
  auto c = client();
  struct Case {
    httplib::Result res;
    int status;
  };
  std::vector<Case> cases;
  cases.push_back({c.Get("/session/s404"), 404});
  cases.push_back({c.Post("/session", "{not json", "application/json"), 400});
  cases.push_back({c.Post("/session", body_for("{{", 1, "Left", "0").dump(), "application/json"), 400});
  cases.push_back({c.Get("/nowhere"), 404});
  cases.push_back({c.Get("/analyze?game=*"), 400});
  const auto made = c.Post("/session", body_for("1", 2, "Right", "0^").dump(), "application/json");
  const std::string id = Json::parse(made->body)["session"]["id"];
  cases.push_back({c.Post("/session/" + id + "/bid", bid(5).dump(), "application/json"), 422});
  for (auto& [res, status] : cases) {
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, status) << res->body;
    const Json j = Json::parse(res->body);
    EXPECT_EQ(j["version"], kSchemaVersion);
    EXPECT_EQ(j["error"]["code"], status);
  }
}

TEST_F(HttpTest, AnalyzeMatchesCli) {
  auto c = client();
  for (const auto& [game, tb] : std::vector<std::pair<std::string, int>>{
           {"{-1|1}", 2}, {"*", 1}, {"{0|{0|^}}", 4}, {"^+v", 1}, {"1/2+1/2", 2}}) {
    const auto res = c.Get("/analyze", httplib::Params{{"game", game}, {"tb", std::to_string(tb)}}, {});
    ASSERT_TRUE(res);
    ASSERT_EQ(res->status, 200) << res->body;
    std::ostringstream out, err;
    ASSERT_EQ(cli::run({"classify", game, "--tb", std::to_string(tb), "--json"}, out, err), 0) << err.str();
    EXPECT_EQ(res->body + "\n", out.str()) << game;
  }
}
