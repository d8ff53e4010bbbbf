#include <chrono>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "influx/errors.hpp"
#include "influx/graph.hpp"
#include "influx/io.hpp"
#include "influx/metrics.hpp"
#include "influx/oracle.hpp"
#include "influx/rank.hpp"
#include "influx/rng.hpp"
#include "influx/runner.hpp"
#include "influx/stats.hpp"
#include "influx/stream_gen.hpp"
#include "influx/topk.hpp"

namespace {

using nlohmann::json;

// Writes to the path, or stdout for "-".
class OutFile {
 public:
  explicit OutFile(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw influx::DataError("cannot open for writing: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

struct Cli {
  // shared
  std::string graph_path;
  std::string stream_path;
  std::string out_path = "-";
  std::uint64_t seed = 1;
  double eps = 0.1;
  double delta = 0.001;
  std::int64_t k = 50;
  std::int64_t k_max = 50;
  std::int64_t tau = 100;
  std::string mode = "practical";
  bool summary = false;
  bool timings = false;
  // gen-stream
  std::string full_path;
  std::vector<double> fractions = {0.85, 0.05, 0.10};
  // oracle / eval
  std::vector<influx::Vertex> seeds;
  std::uint64_t max_configs = influx::kDefaultMaxConfigs;
  std::uint64_t sims = 100000;
  std::int64_t pool = 100000;
};

influx::IMMode parse_mode(const std::string& s) {
  if (s == "practical") return influx::IMMode::practical;
  if (s == "theoretical") return influx::IMMode::theoretical;
  throw std::invalid_argument("mode must be practical or theoretical");
}

std::vector<influx::UpdateEvent> load_stream_or_empty(const std::string& path) {
  if (path.empty()) return {};
  return influx::load_stream(path);
}

int run_gen_stream(const Cli& cli) {
  if (cli.fractions.size() != 3) {
    throw std::invalid_argument("--fractions needs exactly three values");
  }
  influx::Graph topo = influx::load_snapshot(cli.graph_path);
  influx::StreamSpec spec;
  spec.e1 = cli.fractions[0];
  spec.e2 = cli.fractions[1];
  spec.e3 = cli.fractions[2];
  spec.tau = cli.tau;
  spec.k_max = cli.k_max;
  spec.seed = cli.seed;
  influx::GeneratedStream gen = influx::generate_stream(topo, spec);
  influx::save_snapshot(gen.base, cli.out_path);
  influx::save_stream(gen.events, cli.stream_path);
  if (!cli.full_path.empty()) influx::save_snapshot(gen.full, cli.full_path);
  json rec = {{"base_edges", gen.base.edge_count()},
              {"events", gen.events.size()},
              {"full_edges", gen.full.edge_count()},
              {"seed", cli.seed},
              {"type", "gen-stream"}};
  std::cout << rec.dump() << '\n';
  return 0;
}

int run_track_topk(const Cli& cli) {
  influx::Graph g = influx::load_snapshot(cli.graph_path);
  auto stream = load_stream_or_empty(cli.stream_path);
  influx::RunOptions opt;
  opt.cfg = {cli.eps, cli.delta};
  opt.seed = cli.seed;
  opt.k = cli.k;
  opt.summary = cli.summary;
  opt.timings = cli.timings;
  OutFile out(cli.out_path);
  influx::run_topk(std::move(g), stream, opt, out.stream());
  return 0;
}

int run_track_im(const Cli& cli) {
  influx::Graph g = influx::load_snapshot(cli.graph_path);
  auto stream = load_stream_or_empty(cli.stream_path);
  influx::RunOptions opt;
  opt.cfg = {cli.eps, cli.delta};
  opt.seed = cli.seed;
  opt.k_max = cli.k_max;
  opt.mode = parse_mode(cli.mode);
  opt.tau = cli.tau;
  opt.summary = cli.summary;
  opt.timings = cli.timings;
  OutFile out(cli.out_path);
  influx::run_im(std::move(g), stream, opt, out.stream());
  return 0;
}

int run_oracle_exact(const Cli& cli) {
  influx::Graph g = influx::load_snapshot(cli.graph_path);
  double inf = influx::exact_influence(g, cli.seeds, cli.max_configs);
  json rec = {{"influence", inf}, {"seeds", cli.seeds}, {"type", "oracle-exact"}};
  std::cout << rec.dump() << '\n';
  return 0;
}

int run_oracle_mc(const Cli& cli) {
  influx::Graph g = influx::load_snapshot(cli.graph_path);
  influx::McResult r = influx::mc_influence(g, cli.seeds, cli.sims, cli.seed);
  json rec = {{"mean", r.mean},
              {"seeds", cli.seeds},
              {"sims", r.sims},
              {"std_err", r.std_err},
              {"type", "oracle-mc"}};
  std::cout << rec.dump() << '\n';
  return 0;
}

int run_oracle_opt_seed(const Cli& cli) {
  influx::Graph g = influx::load_snapshot(cli.graph_path);
  auto seeds = influx::exhaustive_optimal_seed(g, cli.k, cli.max_configs);
  double inf = influx::exact_influence(g, seeds, cli.max_configs);
  json rec = {{"influence", inf},
              {"k", cli.k},
              {"seeds", seeds},
              {"type", "oracle-opt-seed"}};
  std::cout << rec.dump() << '\n';
  return 0;
}

int run_eval(const Cli& cli) {
  influx::Graph g = influx::load_snapshot(cli.graph_path);
  influx::Rng rng(cli.seed);
  double est = influx::evaluate_seeds(g, cli.seeds, cli.pool, rng);
  json rec = {{"estimate", est},
              {"pool", cli.pool},
              {"seed", cli.seed},
              {"seeds", cli.seeds},
              {"type", "eval"}};
  std::cout << rec.dump() << '\n';
  return 0;
}

int run_bench(const Cli& cli) {
  using Clock = std::chrono::steady_clock;
  influx::Graph g = influx::load_snapshot(cli.graph_path);
  auto stream = load_stream_or_empty(cli.stream_path);
  auto t0 = Clock::now();
  influx::TopKTracker tr(std::move(g), cli.k, {cli.eps, cli.delta}, cli.seed);
  auto t1 = Clock::now();
  for (const auto& e : stream) tr.process(e);
  auto t2 = Clock::now();
  auto ms = [](Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
  };
  double stream_ms = ms(t1, t2);
  json rec = {{"cost", tr.r1().total_cost() + tr.r2().total_cost()},
              {"events", stream.size()},
              {"events_per_sec",
               stream.empty() ? 0.0 : 1000.0 * static_cast<double>(stream.size()) / stream_ms},
              {"init_ms", ms(t0, t1)},
              {"link_ops", tr.r1().index().link_ops()},
              {"m1", tr.m1()},
              {"stream_ms", stream_ms},
              {"type", "bench"}};
  std::cout << rec.dump() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"influx: streaming influence analytics over RR-set sketches"};
  app.require_subcommand(1);
  Cli cli;

  auto add_graph = [&](CLI::App* cmd) {
    cmd->add_option("--graph", cli.graph_path, "snapshot file")
        ->required()
        ->check(CLI::ExistingFile);
  };
  auto add_seed = [&](CLI::App* cmd) {
    cmd->add_option("--seed", cli.seed, "RNG seed");
  };
  auto add_eps_delta = [&](CLI::App* cmd) {
    cmd->add_option("--eps", cli.eps, "relative error target");
    cmd->add_option("--delta", cli.delta, "failure probability");
  };
  auto add_seeds = [&](CLI::App* cmd) {
    cmd->add_option("--seeds", cli.seeds, "comma-separated seed vertices")
        ->required()
        ->delimiter(',');
  };

  CLI::App* gen = app.add_subcommand(
      "gen-stream", "split a snapshot into a base graph plus an update stream");
  add_graph(gen);
  gen->add_option("--out", cli.out_path, "base snapshot output path")->required();
  gen->add_option("--stream", cli.stream_path, "stream output path")->required();
  gen->add_option("--full", cli.full_path,
                  "also write the canonical full snapshot");
  gen->add_option("--fractions", cli.fractions,
                  "kept,churned,inserted edge fractions")
      ->delimiter(',');
  add_seed(gen);

  CLI::App* ttk = app.add_subcommand("track-topk",
                                     "maintain a top-k tracker over a stream");
  add_graph(ttk);
  ttk->add_option("--stream", cli.stream_path, "update stream file")
      ->check(CLI::ExistingFile);
  ttk->add_option("--k", cli.k, "rank to track");
  add_eps_delta(ttk);
  add_seed(ttk);
  ttk->add_option("--out", cli.out_path, "report path ('-' = stdout)");
  ttk->add_flag("--summary", cli.summary, "append an aggregate record");
  ttk->add_flag("--timings", cli.timings,
                "add wall-clock fields (report no longer byte-stable)");

  CLI::App* tim = app.add_subcommand("track-im",
                                     "maintain an IM tracker over a stream");
  add_graph(tim);
  tim->add_option("--stream", cli.stream_path, "update stream file")
      ->check(CLI::ExistingFile);
  tim->add_option("--kmax", cli.k_max, "largest queryable seed-set size");
  add_eps_delta(tim);
  tim->add_option("--mode", cli.mode, "practical|theoretical")
      ->check(CLI::IsMember({"practical", "theoretical"}));
  tim->add_option("--tau", cli.tau, "events between inserted queries");
  add_seed(tim);
  tim->add_option("--out", cli.out_path, "report path ('-' = stdout)");
  tim->add_flag("--summary", cli.summary, "append an aggregate record");
  tim->add_flag("--timings", cli.timings,
                "add wall-clock fields (report no longer byte-stable)");

  CLI::App* oracle = app.add_subcommand("oracle", "ground-truth influence");
  oracle->require_subcommand(1);
  CLI::App* oexact = oracle->add_subcommand(
      "exact", "enumerate every live-edge configuration");
  add_graph(oexact);
  add_seeds(oexact);
  oexact->add_option("--max-configs", cli.max_configs, "enumeration budget");
  CLI::App* omc =
      oracle->add_subcommand("mc", "Monte-Carlo forward simulation");
  add_graph(omc);
  add_seeds(omc);
  omc->add_option("--sims", cli.sims, "simulation count");
  add_seed(omc);
  CLI::App* oopt = oracle->add_subcommand(
      "opt-seed", "exhaustive optimal seed set via the exact oracle");
  add_graph(oopt);
  oopt->add_option("--k", cli.k, "seed set size")->required();
  oopt->add_option("--max-configs", cli.max_configs, "enumeration budget");

  CLI::App* ev = app.add_subcommand(
      "eval", "estimate seed-set influence from an independent RR pool");
  add_graph(ev);
  add_seeds(ev);
  ev->add_option("--pool", cli.pool, "RR sets to draw");
  add_seed(ev);

  CLI::App* bench = app.add_subcommand(
      "bench", "time tracker construction and stream replay");
  add_graph(bench);
  bench->add_option("--stream", cli.stream_path, "update stream file")
      ->check(CLI::ExistingFile);
  bench->add_option("--k", cli.k, "rank to track");
  add_eps_delta(bench);
  add_seed(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }

  try {
    if (app.got_subcommand(gen)) return run_gen_stream(cli);
    if (app.got_subcommand(ttk)) return run_track_topk(cli);
    if (app.got_subcommand(tim)) {
      // Unless overridden, use the eps that pins the practical-mode
      // approximation factor 1 - 1/e - (2 - 1/e) eps at exactly 1/2.
      if (tim->count("--eps") == 0) cli.eps = influx::im_half_eps();
      return run_track_im(cli);
    }
    if (app.got_subcommand(oracle)) {
      if (oracle->got_subcommand(oexact)) return run_oracle_exact(cli);
      if (oracle->got_subcommand(omc)) return run_oracle_mc(cli);
      return run_oracle_opt_seed(cli);
    }
    if (app.got_subcommand(ev)) return run_eval(cli);
    return run_bench(cli);
  } catch (const influx::InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return 3;
  } catch (const influx::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 2;
  } catch (const influx::BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
