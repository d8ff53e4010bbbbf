#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "influx/graph.hpp"

namespace influx {

// Snapshot file format (`#` starts a comment, blank lines are skipped):
//   n m MODEL            MODEL is LT or IC
//   u v w                exactly m edge lines, 0-based dense ids
//   v <id> <w>           optional LT self-weight overrides (default 1.0)
Graph load_snapshot(const std::string& path);
Graph load_snapshot(std::istream& in, const std::string& name);
void save_snapshot(const Graph& g, const std::string& path);

// Stream file format: one event per line, `u v S delta t` with S in {+,-}.
std::vector<UpdateEvent> load_stream(const std::string& path);
std::vector<UpdateEvent> load_stream(std::istream& in, const std::string& name);
void save_stream(const std::vector<UpdateEvent>& events,
                 const std::string& path);

// Shortest round-trip decimal form of a double; stable across platforms.
std::string format_double(double x);

}  // namespace influx
