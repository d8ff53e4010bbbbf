#include "influx/runner.hpp"

#include <chrono>
#include <ostream>
#include <utility>

#include <json.hpp>

#include "influx/immax.hpp"
#include "influx/rng.hpp"
#include "influx/topk.hpp"

namespace influx {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

std::int64_t micros_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() -
                                                               start)
      .count();
}

void emit(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

json update_record(const UpdateEvent& e, const ProcessStats& st) {
  return {{"added", st.added},
          {"delta", e.delta},
          {"op", e.increase ? "+" : "-"},
          {"refreshed_r1", st.refreshed_r1},
          {"refreshed_r2", st.refreshed_r2},
          {"removed", st.removed},
          {"t", e.t},
          {"type", "update"},
          {"u", e.u},
          {"v", e.v}};
}

void absorb(RunSummary& s, const ProcessStats& st) {
  ++s.events;
  s.added += st.added;
  s.removed += st.removed;
  s.refreshed += st.refreshed_r1 + st.refreshed_r2;
}

json summary_record(const RunSummary& s) {
  return {{"added", s.added},       {"cost", s.cost},
          {"events", s.events},     {"m1", s.m1},
          {"m2", s.m2},             {"queries", s.queries},
          {"refreshed", s.refreshed}, {"removed", s.removed},
          {"type", "summary"}};
}

}  // namespace

RunSummary run_topk(Graph g, const std::vector<UpdateEvent>& stream,
                    const RunOptions& opt, std::ostream& out) {
  const auto t0 = Clock::now();
  RunSummary sum;
  TopKTracker tr(std::move(g), opt.k, opt.cfg, opt.seed);
  {
    json rec = {{"cost", tr.r1().total_cost() + tr.r2().total_cost()},
                {"d1k", tr.d1k()},
                {"delta", opt.cfg.delta},
                {"eps", opt.cfg.eps},
                {"k", opt.k},
                {"m", tr.graph().edge_count()},
                {"m1", tr.m1()},
                {"m2", tr.m2()},
                {"model", tr.graph().model() == Model::LT ? "LT" : "IC"},
                {"n", tr.graph().n()},
                {"seed", opt.seed},
                {"target", tr.target()},
                {"type", "init"}};
    if (opt.timings) rec["micros"] = micros_since(t0);
    emit(out, rec);
  }
  for (const UpdateEvent& e : stream) {
    const auto te = Clock::now();
    ProcessStats st = tr.process(e);
    absorb(sum, st);
    json rec = update_record(e, st);
    rec["d1k"] = tr.d1k();
    rec["m1"] = tr.m1();
    rec["m2"] = tr.m2();
    rec["cost"] = tr.r1().total_cost() + tr.r2().total_cost();
    if (opt.timings) rec["micros"] = micros_since(te);
    emit(out, rec);
  }
  {
    const auto tq = Clock::now();
    auto items = tr.query();
    json arr = json::array();
    for (const auto& it : items) {
      arr.push_back({{"d2", it.d2}, {"estimate", it.estimate}, {"v", it.v}});
    }
    json rec = {{"items", arr},
                {"t", stream.empty() ? 0 : stream.back().t},
                {"threshold", tr.threshold()},
                {"type", "query"}};
    if (opt.timings) rec["micros"] = micros_since(tq);
    emit(out, rec);
    ++sum.queries;
  }
  sum.m1 = tr.m1();
  sum.m2 = tr.m2();
  sum.cost = tr.r1().total_cost() + tr.r2().total_cost();
  if (opt.summary) {
    json rec = summary_record(sum);
    if (opt.timings) rec["wall_ms"] = micros_since(t0) / 1000.0;
    emit(out, rec);
  }
  return sum;
}

RunSummary run_im(Graph g, const std::vector<UpdateEvent>& stream,
                  const RunOptions& opt, std::ostream& out) {
  const auto t0 = Clock::now();
  RunSummary sum;
  IMTracker tr(std::move(g), opt.mode, opt.cfg, opt.k_max, opt.seed);
  Rng query_rng = Rng(opt.seed).fork(3);
  {
    json rec = {{"cost", tr.r1().total_cost() + tr.r2().total_cost()},
                {"d_star", tr.d_star()},
                {"delta", opt.cfg.delta},
                {"eps", opt.cfg.eps},
                {"k_max", opt.k_max},
                {"m", tr.graph().edge_count()},
                {"m1", tr.m1()},
                {"m2", tr.m2()},
                {"m2_ratio", tr.targets().m2_ratio},
                {"mode", opt.mode == IMMode::practical ? "practical"
                                                       : "theoretical"},
                {"model", tr.graph().model() == Model::LT ? "LT" : "IC"},
                {"n", tr.graph().n()},
                {"seed", opt.seed},
                {"target", tr.targets().d1_target},
                {"tau", opt.tau},
                {"type", "init"}};
    if (opt.timings) rec["micros"] = micros_since(t0);
    emit(out, rec);
  }
  std::int64_t since_query = 0;
  for (const UpdateEvent& e : stream) {
    const auto te = Clock::now();
    ProcessStats st = tr.process(e);
    absorb(sum, st);
    json rec = update_record(e, st);
    rec["d_star"] = tr.d_star();
    rec["m1"] = tr.m1();
    rec["m2"] = tr.m2();
    rec["cost"] = tr.r1().total_cost() + tr.r2().total_cost();
    if (opt.timings) rec["micros"] = micros_since(te);
    emit(out, rec);
    if (++since_query == opt.tau) {
      since_query = 0;
      const auto tq = Clock::now();
      auto k = static_cast<std::int64_t>(
          1 + query_rng.below(static_cast<std::uint64_t>(opt.k_max)));
      IMQueryResult res = tr.query_im(k);
      json qrec = {{"coverage", res.greedy.coverage},
                   {"estimate", res.estimate},
                   {"fallback", res.fallback},
                   {"k", k},
                   {"q", res.greedy.q},
                   {"seeds", res.greedy.seeds},
                   {"t", e.t},
                   {"type", "query"},
                   {"used_threshold", res.greedy.used_threshold}};
      if (opt.timings) qrec["micros"] = micros_since(tq);
      emit(out, qrec);
      ++sum.queries;
    }
  }
  sum.m1 = tr.m1();
  sum.m2 = tr.m2();
  sum.cost = tr.r1().total_cost() + tr.r2().total_cost();
  if (opt.summary) {
    json rec = summary_record(sum);
    if (opt.timings) rec["wall_ms"] = micros_since(t0) / 1000.0;
    emit(out, rec);
  }
  return sum;
}

}  // namespace influx
