#pragma once

// Text rendering of solver output: the depth-prefixed log and the machine
// report consumed by scripts and golden tests.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "guicheck/resolve.hpp"
#include "guicheck/solver.hpp"
#include "guicheck/trace.hpp"

namespace guicheck {

inline std::string render_log(const std::vector<LogEvent>& events) {
  std::ostringstream out;
  for (const LogEvent& e : events)
    out << e.depth << " " << e.scope << ": " << e.message << "\n";
  return out.str();
}

// One line per solution (slot=label pairs in slot order, lines sorted), then
// SATISFIED or VIOLATED.
inline std::string render_report(const FlattenedSpec& spec, const Verdict& verdict,
                                 const TraceDoc& trace) {
  std::vector<std::string> lines;
  lines.reserve(verdict.solutions.size());
  for (const CandidateTuple& t : verdict.solutions.tuples())
    lines.push_back(tuple_to_string(t, spec, trace));
  std::sort(lines.begin(), lines.end());
  std::ostringstream out;
  out << "spec " << spec.name << "\n";
  for (const std::string& line : lines) out << line << "\n";
  out << (verdict.satisfied ? "SATISFIED" : "VIOLATED") << "\n";
  return out.str();
}

}  // namespace guicheck
