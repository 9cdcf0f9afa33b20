#include "gcg/graph_io.hpp"

#include <json.hpp>

#include "gcg/error.hpp"

namespace gcg {

std::string to_graph6(const Graph& g) {
  const int n = g.order();
  std::string out;
  if (n <= 62) {
    out += static_cast<char>(63 + n);
  } else if (n <= 258047) {
    out += '~';
    out += static_cast<char>(63 + ((n >> 12) & 63));
    out += static_cast<char>(63 + ((n >> 6) & 63));
    out += static_cast<char>(63 + (n & 63));
  } else {
    throw CapExceeded("graph6 supports at most 258047 vertices");
  }
  int acc = 0, nbits = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
      if (++nbits == 6) {
        out += static_cast<char>(63 + acc);
        acc = nbits = 0;
      }
    }
  if (nbits > 0) out += static_cast<char>(63 + (acc << (6 - nbits)));
  return out;
}

Graph from_graph6(std::string_view text) {
  if (text.starts_with(">>graph6<<")) text.remove_prefix(10);
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) throw InvalidInput("empty graph6 string");
  for (char c : text)
    if (c < 63 || c > 126) throw InvalidInput("graph6 byte out of range");
  std::size_t pos = 0;
  int n;
  if (text[0] != '~') {
    n = text[0] - 63;
    pos = 1;
  } else {
    if (text.size() < 4 || text[1] == '~') throw InvalidInput("unsupported graph6 size header");
    n = ((text[1] - 63) << 12) | ((text[2] - 63) << 6) | (text[3] - 63);
    pos = 4;
  }
  const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
  if (text.size() - pos != (bits + 5) / 6) throw InvalidInput("graph6 body length mismatch");
  Graph g(n);
  std::size_t k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k) {
      const int byte = text[pos + k / 6] - 63;
      if ((byte >> (5 - k % 6)) & 1) g.add_edge(i, j);
    }
  return g;
}

std::string to_dot(const Graph& g, std::string_view name) {
  std::string out = "graph " + std::string(name) + " {\n";
  for (int v = 0; v < g.order(); ++v) {
    std::string label = g.labels().empty() ? std::to_string(v) : g.labels()[v];
    std::string escaped;
    for (char c : label) {
      if (c == '"' || c == '\\') escaped += '\\';
      escaped += c;
    }
    out += "  " + std::to_string(v) + " [label=\"" + escaped + "\"];\n";
  }
  for (auto [u, v] : g.edges()) out += "  " + std::to_string(u) + " -- " + std::to_string(v) + ";\n";
  out += "}\n";
  return out;
}

std::string to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.order();
  j["edges"] = nlohmann::json::array();
  for (auto [u, v] : g.edges()) j["edges"].push_back({u, v});
  return j.dump();
}

Graph from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad graph JSON: ") + e.what());
  }
  if (!j.contains("n") || !j.contains("edges")) throw InvalidInput("graph JSON needs 'n' and 'edges'");
  Graph g(j.at("n").get<int>());
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw InvalidInput("edge must be a pair");
    g.add_edge(e[0].get<int>(), e[1].get<int>());
  }
  return g;
}

}  // namespace gcg
