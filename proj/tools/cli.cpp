#include "cli.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include "bidcg/explorer.hpp"
#include "bidcg/json.hpp"
#include "bidcg/notation.hpp"
#include "bidcg/service.hpp"

namespace bidcg::cli {
namespace {

struct Options {
  std::string tb = "0";
  bool json = false;
  std::string out_file;
  int threads = 0;

  std::vector<std::string> games;
  std::string name;
  bool list = false;

  std::optional<std::uint32_t> birthday;
  std::optional<std::size_t> sample;
  std::optional<std::size_t> cap;
  std::optional<int> size;
  std::optional<std::size_t> pairs;
  std::optional<std::uint64_t> seed;
  bool serial = false;
  bool count_only = false;

  std::string host = "127.0.0.1";
  int port = 8080;
  bool expose = false;
};

class Context {
 public:
  Context(const Options& o, std::ostream& out) : opt(o), solver(arena), names(arena), out_(&out) {}

  std::ostream& out() { return *out_; }

  void open_output() {
    if (opt.out_file.empty()) return;
    file_ = std::make_unique<std::ofstream>(opt.out_file);
    if (!*file_) throw std::runtime_error("cannot open '" + opt.out_file + "' for writing");
    out_ = file_.get();
  }

  GameId game(const std::string& text) { return parse(arena, text); }
  std::string name(GameId g) const { return names.print(g, PrintStyle::Named); }

  const Options& opt;
  Arena arena;
  Solver solver;
  NameTable names;

 private:
  std::ostream* out_;
  std::unique_ptr<std::ofstream> file_;
};

const char* yes_no(bool b) { return b ? "yes" : "no"; }

std::string tests_text(const Evidence& e) {
  std::ostringstream s;
  if (!e.tests.empty()) {
    s << "tests";
    for (int t : e.tests) s << ' ' << t;
  }
  if (!e.theorem.empty()) s << (s.tellp() > 0 ? "; " : "") << e.theorem;
  return s.str();
}

void print_verdicts(Context& ctx, const Comparison& c) {
  for (const RelationVerdict& v : c.verdicts) {
    std::ostream& o = ctx.out();
    o << "  " << std::left << std::setw(7) << to_string(v.relation) << std::setw(8) << to_string(v.status);
    std::string detail = tests_text(v.evidence);
    if (v.evidence.witness) {
      const Witness& w = *v.evidence.witness;
      detail += (detail.empty() ? "" : "; ") + std::string("witness X=") + ctx.name(w.x) + " at " +
                w.state.to_string() + " (" + to_char(w.lhs) + " vs " + to_char(w.rhs) + ")";
    }
    if (!v.evidence.note.empty()) detail += (detail.empty() ? "" : "; ") + v.evidence.note;
    o << detail << "\n";
  }
}

int cmd_outcome(Context& ctx) {
  const GameId g = ctx.game(ctx.opt.games.at(0));
  for (int tb : parse_tb_range(ctx.opt.tb)) {
    const OutcomeVector v = ctx.solver.outcome_vector(g, tb);
    if (ctx.opt.json) {
      Json j;
      j["version"] = kSchemaVersion;
      j["game"] = ctx.opt.games[0];
      j["form"] = ctx.names.print(g, PrintStyle::Literal);
      j["tb"] = tb;
      j["outcome_vector"] = to_json(v);
      ctx.out() << j.dump() << "\n";
    } else {
      ctx.out() << v.to_string() << "  tb=" << tb << " order=TB^..0^,TB..0"
                << " monotone=" << yes_no(v.monotone()) << " marker_worth=" << yes_no(v.marker_worth()) << "\n";
    }
  }
  return 0;
}

int cmd_classify(Context& ctx) {
  const std::string& text = ctx.opt.games.at(0);
  const GameId g = ctx.game(text);
  for (int tb : parse_tb_range(ctx.opt.tb)) {
    if (ctx.opt.json) {
      ctx.out() << analysis_payload(ctx.solver, ctx.names, g, text, tb).dump() << "\n";
      continue;
    }
    const Comparison c = analyze(ctx.solver, g, tb);
    const auto strongest = c.strongest();
    ctx.out() << text << " at tb=" << tb << ": " << (strongest ? to_string(*strongest) : "undecided")
              << (strongest ? " Proven" : "") << "  (vector " << ctx.solver.outcome_vector(g, tb).to_string()
              << ")\n";
    print_verdicts(ctx, c);
  }
  return 0;
}

int cmd_compare(Context& ctx) {
  const GameId g = ctx.game(ctx.opt.games.at(0));
  const GameId h = ctx.game(ctx.opt.games.at(1));
  for (int tb : parse_tb_range(ctx.opt.tb)) {
    const Comparison c = compare(ctx.solver, g, h, tb);
    if (ctx.opt.json) {
      Json j;
      j["version"] = kSchemaVersion;
      j["comparison"] = to_json(ctx.names, c);
      ctx.out() << j.dump() << "\n";
      continue;
    }
    const auto strongest = c.strongest();
    ctx.out() << ctx.opt.games[0] << " vs " << ctx.opt.games[1] << " at tb=" << tb << ": G - H "
              << (strongest ? to_string(*strongest) : "undecided") << "\n";
    print_verdicts(ctx, c);
  }
  return 0;
}

int cmd_sum(Context& ctx) {
  std::vector<GameId> terms;
  for (const std::string& t : ctx.opt.games) terms.push_back(ctx.game(t));
  const GameId s = ctx.arena.sum(terms);
  Json j;
  j["version"] = kSchemaVersion;
  j["terms"] = ctx.opt.games;
  j["sum"] = {{"name", ctx.name(s)},
              {"form", ctx.names.print(s, PrintStyle::Literal)},
              {"birthday", ctx.arena.birthday(s)}};
  if (ctx.opt.json) {
    ctx.out() << j.dump() << "\n";
  } else {
    ctx.out() << ctx.name(s) << "\n  form     " << ctx.names.print(s, PrintStyle::Literal) << "\n  birthday "
              << ctx.arena.birthday(s) << "\n";
  }
  return 0;
}

explorer::RunOptions run_options(const Options& o, const std::string& name) {
  explorer::RunOptions r = explorer::default_options(name);
  if (o.birthday) {
    r.bounds.max_birthday = *o.birthday;
    r.bounds.top_day_sample = *o.birthday >= 3 ? 1000 : 0;
  }
  if (o.sample) r.bounds.top_day_sample = *o.sample;
  if (o.cap) r.bounds.option_subset_cap = *o.cap;
  if (o.seed) r.bounds.seed = *o.seed;
  if (o.size) r.size = *o.size;
  if (o.pairs) r.pairs = *o.pairs;
  if (o.serial) r.exec = explorer::Execution::Serial;
  return r;
}

void write_report(Context& ctx, const explorer::Report& report) {
  const bool to_file = !ctx.opt.out_file.empty();
  if (ctx.opt.json || to_file) {
    for (const Json& line : report.json_lines()) ctx.out() << line.dump() << "\n";
  }
  if (ctx.opt.json) return;
  std::ostream& o = to_file ? std::cout : ctx.out();
  const Json s = report.summary();
  o << report.name << ": " << report.verdict << "  (" << s["counts"]["pass"] << " pass, " << s["counts"]["fail"]
    << " fail, " << s["counts"]["inconclusive"] << " inconclusive";
  if (report.count("observed") > 0) o << ", " << s["counts"]["observed"] << " observed";
  o << ")\n  bounds " << s["bounds"].dump() << "\n";
  if (report.conjecture) o << "  " << s["details"]["claim"].get<std::string>() << "; bounded experiment, not a proof\n";
  std::size_t shown = 0;
  for (const explorer::Record& r : report.records) {
    if (r.result != "fail" || shown++ >= 10) continue;
    o << "  FAIL tb=" << r.tb << " " << r.instance << "  " << r.evidence.dump() << "\n";
  }
}

std::vector<int> tb_override(const Options& o, const std::vector<int>& fallback, bool explicit_tb) {
  return explicit_tb ? parse_tb_range(o.tb) : fallback;
}

int cmd_explore(Context& ctx, bool conjecture, bool explicit_tb) {
  const auto names = conjecture ? explorer::conjecture_names() : explorer::suite_names();
  if (ctx.opt.list) {
    for (const std::string& n : names) ctx.out() << n << "\n";
    return 0;
  }
  explorer::RunOptions options = run_options(ctx.opt, ctx.opt.name);
  options.bounds.tb_range = tb_override(ctx.opt, options.bounds.tb_range, explicit_tb);
  const explorer::Report report = conjecture ? explorer::run_conjecture(ctx.solver, ctx.opt.name, options)
                                             : explorer::run_suite(ctx.solver, ctx.opt.name, options);
  write_report(ctx, report);
  if (conjecture) return report.verdict == "CounterexampleFound" ? kCounterexample : 0;
  return report.verdict == "pass" ? 0 : kSuiteFailed;
}

int cmd_enumerate(Context& ctx) {
  explorer::EnumerationSpec spec;
  spec.max_birthday = ctx.opt.birthday.value_or(2);
  if (ctx.opt.cap) spec.option_subset_cap = *ctx.opt.cap;
  if (ctx.opt.sample) spec.top_day_sample = *ctx.opt.sample;
  if (ctx.opt.seed) spec.seed = *ctx.opt.seed;
  if (ctx.opt.count_only && spec.top_day_sample == 0) {
    if (ctx.opt.json) {
      ctx.out() << Json{{"version", kSchemaVersion}, {"bounds", to_json(spec)}, {"count", explorer::count_forms(spec)}}.dump()
                << "\n";
    } else {
      ctx.out() << explorer::count_forms(spec) << "\n";
    }
    return 0;
  }
  const std::vector<GameId> forms = explorer::population(ctx.arena, spec);
  if (ctx.opt.count_only) {
    ctx.out() << forms.size() << "\n";
    return 0;
  }
  for (GameId g : forms) {
    if (ctx.opt.json) {
      ctx.out() << Json{{"name", ctx.name(g)},
                        {"form", ctx.names.print(g, PrintStyle::Literal)},
                        {"birthday", ctx.arena.birthday(g)}}
                       .dump()
                << "\n";
    } else {
      ctx.out() << ctx.arena.birthday(g) << "  " << ctx.name(g) << "\n";
    }
  }
  return 0;
}

}  // namespace

std::vector<int> parse_tb_range(const std::string& text) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    int v = -1;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || v < 0 || v > Solver::kMaxTotalBudget) {
      throw std::invalid_argument("bad total budget '" + s + "' (0.." + std::to_string(Solver::kMaxTotalBudget) + ")");
    }
    return v;
  };
  std::vector<int> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int lo = number(text.substr(0, dots)), hi = number(text.substr(dots + 2));
    if (lo > hi) throw std::invalid_argument("empty budget range '" + text + "'");
    for (int tb = lo; tb <= hi; ++tb) out.push_back(tb);
    return out;
  }
  std::stringstream parts(text);
  std::string part;
  while (std::getline(parts, part, ',')) out.push_back(number(part));
  if (out.empty()) throw std::invalid_argument("empty budget list");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact solver and explorer for discrete bidding combinatorial games", "bidcg"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kSchemaVersion));
  app.add_option("--threads", o.threads, "OpenMP threads for suites and searches (0 = runtime default)")
      ->check(CLI::NonNegativeNumber);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--tb", o.tb, "total budget: N, A..B or a comma list");
    sub->add_flag("--json", o.json, "machine-readable output");
    sub->add_option("--out", o.out_file, "write output to FILE");
  };
  auto bounds = [&](CLI::App* sub) {
    sub->add_option("--birthday", o.birthday, "maximum birthday of enumerated forms");
    sub->add_option("--sample", o.sample, "sample this many forms of the top birthday (0 = all)");
    sub->add_option("--cap", o.cap, "option-set cap beyond birthday 2");
    sub->add_option("--seed", o.seed, "sampling seed");
  };

  CLI::App* outcome = app.add_subcommand("outcome", "outcome vector, order TB^..0^,TB..0");
  outcome->add_option("game", o.games, "game in bracket notation")->required()->expected(1);
  common(outcome);

  CLI::App* classify = app.add_subcommand("classify", "compare a game with 0");
  classify->add_option("game", o.games, "game in bracket notation")->required()->expected(1);
  common(classify);

  CLI::App* cmp = app.add_subcommand("compare", "compare two games");
  cmp->add_option("games", o.games, "G H")->required()->expected(2);
  common(cmp);

  CLI::App* sum = app.add_subcommand("sum", "disjunctive sum of games");
  sum->add_option("games", o.games, "terms")->required()->expected(1, -1);
  common(sum);

  CLI::App* verify = app.add_subcommand("verify", "run a theorem suite");
  verify->add_option("suite", o.name, "suite name (see --list)");
  verify->add_flag("--list", o.list, "list suites");
  verify->add_option("--n", o.size, "family size for the number suites");
  verify->add_option("--pairs", o.pairs, "random pairs for pairwise suites");
  verify->add_flag("--serial", o.serial, "run the serial reference instead of OpenMP");
  common(verify);
  bounds(verify);

  CLI::App* conj = app.add_subcommand("conjecture", "run a bounded conjecture experiment");
  conj->add_option("name", o.name, "experiment name (see --list)");
  conj->add_flag("--list", o.list, "list experiments");
  conj->add_option("--n", o.size, "family size");
  conj->add_flag("--serial", o.serial, "run the serial reference instead of OpenMP");
  common(conj);
  bounds(conj);

  CLI::App* enumerate = app.add_subcommand("enumerate", "list game forms by birthday");
  enumerate->add_flag("--count", o.count_only, "print the count only");
  common(enumerate);
  bounds(enumerate);

  CLI::App* serve = app.add_subcommand("serve", "run the HTTP service");
  serve->add_option("--port", o.port, "port")->check(CLI::Range(1, 65535));
  serve->add_option("--host", o.host, "bind address");
  serve->add_flag("--expose", o.expose, "bind 0.0.0.0 instead of loopback");

  std::vector<std::string> storage{"bidcg"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  if (o.threads > 0) omp_set_num_threads(o.threads);
  const bool explicit_tb = (verify->parsed() ? verify : conj)->count("--tb") > 0;

  try {
    Context ctx(o, out);
    if (serve->parsed()) return service::serve(o.expose ? "0.0.0.0" : o.host, o.port);
    ctx.open_output();
    if (outcome->parsed()) return cmd_outcome(ctx);
    if (classify->parsed()) return cmd_classify(ctx);
    if (cmp->parsed()) return cmd_compare(ctx);
    if (sum->parsed()) return cmd_sum(ctx);
    if (verify->parsed() || conj->parsed()) {
      if (!o.list && o.name.empty()) {
        err << "give a name, or --list\n";
        return kBadInput;
      }
      return cmd_explore(ctx, conj->parsed(), explicit_tb);
    }
    if (enumerate->parsed()) return cmd_enumerate(ctx);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return 0;
}

}  // namespace bidcg::cli
