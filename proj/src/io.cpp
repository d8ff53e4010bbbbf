#include "influx/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "influx/errors.hpp"

namespace influx {

namespace {

[[noreturn]] void fail(const std::string& name, std::int64_t line,
                       const std::string& what) {
  throw DataError(name + ":" + std::to_string(line) + ": " + what);
}

// Strips comments/whitespace; returns false for lines with no content.
bool clean_line(std::string& s) {
  auto hash = s.find('#');
  if (hash != std::string::npos) s.erase(hash);
  return s.find_first_not_of(" \t\r\n") != std::string::npos;
}

std::int64_t parse_int(const std::string& tok, const std::string& name,
                       std::int64_t line) {
  std::int64_t out = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  if (ec != std::errc() || p != tok.data() + tok.size()) {
    fail(name, line, "expected integer, got '" + tok + "'");
  }
  return out;
}

double parse_double(const std::string& tok, const std::string& name,
                    std::int64_t line) {
  double out = 0.0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  if (ec != std::errc() || p != tok.data() + tok.size()) {
    fail(name, line, "expected number, got '" + tok + "'");
  }
  return out;
}

std::vector<std::string> tokens_of(const std::string& s) {
  std::istringstream iss(s);
  std::vector<std::string> toks;
  std::string t;
  while (iss >> t) toks.push_back(t);
  return toks;
}

Vertex parse_vertex(const std::string& tok, std::int64_t n,
                    const std::string& name, std::int64_t line) {
  std::int64_t v = parse_int(tok, name, line);
  if (v < 0 || v >= n) {
    fail(name, line, "vertex id " + std::to_string(v) + " out of [0," +
                         std::to_string(n) + ")");
  }
  return static_cast<Vertex>(v);
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, p);
}

Graph load_snapshot(std::istream& in, const std::string& name) {
  std::string line;
  std::int64_t lineno = 0;

  std::int64_t n = 0, m = 0;
  Model model = Model::LT;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!clean_line(line)) continue;
    auto toks = tokens_of(line);
    if (toks.size() != 3) fail(name, lineno, "header needs 'n m MODEL'");
    n = parse_int(toks[0], name, lineno);
    m = parse_int(toks[1], name, lineno);
    if (n < 1) fail(name, lineno, "n must be >= 1");
    if (m < 0) fail(name, lineno, "m must be >= 0");
    if (toks[2] == "LT") {
      model = Model::LT;
    } else if (toks[2] == "IC") {
      model = Model::IC;
    } else {
      fail(name, lineno, "unknown model '" + toks[2] + "'");
    }
    header_seen = true;
    break;
  }
  if (!header_seen) fail(name, lineno + 1, "missing header");

  Graph g(n, model);
  std::int64_t edges = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!clean_line(line)) continue;
    auto toks = tokens_of(line);
    if (toks[0] == "v") {
      if (toks.size() != 3) fail(name, lineno, "self-weight line needs 'v id w'");
      if (model != Model::LT) {
        fail(name, lineno, "self-weight lines only apply to LT graphs");
      }
      Vertex v = parse_vertex(toks[1], n, name, lineno);
      double w = parse_double(toks[2], name, lineno);
      if (!(w >= 0.0)) fail(name, lineno, "self-weight must be >= 0");
      g.set_self_weight(v, w);
      continue;
    }
    if (toks.size() != 3) fail(name, lineno, "edge line needs 'u v w'");
    if (edges == m) fail(name, lineno, "more than m=" + std::to_string(m) + " edges");
    Vertex u = parse_vertex(toks[0], n, name, lineno);
    Vertex v = parse_vertex(toks[1], n, name, lineno);
    double w = parse_double(toks[2], name, lineno);
    try {
      g.add_edge(u, v, w);
    } catch (const DataError& e) {
      fail(name, lineno, e.what());
    }
    ++edges;
  }
  if (edges != m) {
    fail(name, lineno,
         "expected " + std::to_string(m) + " edges, found " + std::to_string(edges));
  }
  return g;
}

Graph load_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open graph file: " + path);
  return load_snapshot(in, path);
}

void save_snapshot(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write graph file: " + path);
  out << g.n() << ' ' << g.edge_count() << ' '
      << (g.model() == Model::LT ? "LT" : "IC") << '\n';
  for (Vertex v = 0; v < static_cast<std::uint64_t>(g.n()); ++v) {
    for (const InEdge& e : g.in_edges(v)) {
      out << e.u << ' ' << v << ' ' << format_double(e.w) << '\n';
    }
  }
  if (g.model() == Model::LT) {
    for (Vertex v = 0; v < static_cast<std::uint64_t>(g.n()); ++v) {
      if (g.self_weight(v) != 1.0) {
        out << "v " << v << ' ' << format_double(g.self_weight(v)) << '\n';
      }
    }
  }
  if (!out) throw DataError("failed writing graph file: " + path);
}

std::vector<UpdateEvent> load_stream(std::istream& in, const std::string& name) {
  std::vector<UpdateEvent> events;
  std::string line;
  std::int64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!clean_line(line)) continue;
    auto toks = tokens_of(line);
    if (toks.size() != 5) fail(name, lineno, "event line needs 'u v S delta t'");
    UpdateEvent e;
    std::int64_t u = parse_int(toks[0], name, lineno);
    std::int64_t v = parse_int(toks[1], name, lineno);
    if (u < 0 || v < 0) fail(name, lineno, "vertex ids must be >= 0");
    e.u = static_cast<Vertex>(u);
    e.v = static_cast<Vertex>(v);
    if (toks[2] == "+") {
      e.increase = true;
    } else if (toks[2] == "-") {
      e.increase = false;
    } else {
      fail(name, lineno, "sign must be '+' or '-', got '" + toks[2] + "'");
    }
    e.delta = parse_double(toks[3], name, lineno);
    if (!(e.delta > 0.0)) fail(name, lineno, "delta must be > 0");
    e.t = parse_int(toks[4], name, lineno);
    events.push_back(e);
  }
  return events;
}

std::vector<UpdateEvent> load_stream(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open stream file: " + path);
  return load_stream(in, path);
}

void save_stream(const std::vector<UpdateEvent>& events,
                 const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write stream file: " + path);
  for (const UpdateEvent& e : events) {
    out << e.u << ' ' << e.v << ' ' << (e.increase ? '+' : '-') << ' '
        << format_double(e.delta) << ' ' << e.t << '\n';
  }
  if (!out) throw DataError("failed writing stream file: " + path);
}

}  // namespace influx
