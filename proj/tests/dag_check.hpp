#pragma once

// Minimal reader for the DOT subset written by the tool: node statements
// `cN [label="n=K"];` and edge statements `cA -> cB;`.

#include <map>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

namespace conley::testing {

struct DotGraph {
  bool valid = false;
  std::map<std::string, int> members;
  std::vector<std::pair<std::string, std::string>> edges;

  bool acyclic() const {
    std::map<std::string, int> indegree;
    for (const auto& [n, _] : members) indegree[n] = 0;
    for (const auto& [a, b] : edges) ++indegree[b];
    std::vector<std::string> ready;
    for (const auto& [n, d] : indegree)
      if (d == 0) ready.push_back(n);
    std::size_t removed = 0;
    while (!ready.empty()) {
      const std::string v = ready.back();
      ready.pop_back();
      ++removed;
      for (const auto& [a, b] : edges)
        if (a == v && --indegree[b] == 0) ready.push_back(b);
    }
    return removed == members.size();
  }
};

inline DotGraph parse_dot(const std::string& text) {
  DotGraph g;
  std::istringstream in(text);
  std::string line;
  const std::regex header(R"re(^digraph \w+ \{$)re");
  const std::regex node(R"re(^\s*(c\d+) \[label="n=(\d+)"\];$)re");
  const std::regex edge(R"re(^\s*(c\d+) -> (c\d+);$)re");
  if (!std::getline(in, line) || !std::regex_match(line, header)) return g;
  bool closed = false;
  std::smatch m;
  while (std::getline(in, line)) {
    if (line == "}") {
      closed = true;
      continue;
    }
    if (closed) return g;
    if (std::regex_match(line, m, node)) {
      g.members[m[1]] = std::stoi(m[2]);
    } else if (std::regex_match(line, m, edge)) {
      if (!g.members.contains(m[1]) || !g.members.contains(m[2])) return g;
      g.edges.emplace_back(m[1], m[2]);
    } else {
      return g;
    }
  }
  g.valid = closed;
  return g;
}

}  // namespace conley::testing
