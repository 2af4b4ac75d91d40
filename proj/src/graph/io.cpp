#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qwalk/error.hpp"
#include "qwalk/graph.hpp"

namespace qwalk {

namespace {

struct Token {
  std::string_view text;
  std::size_t offset;
};

struct PairRecord {
  long long u;
  long long v;
  std::size_t line;
  std::size_t offset;
};

struct RawList {
  std::optional<long long> declared_n;
  std::vector<PairRecord> pairs;
  std::vector<PairRecord> singles;  // isolated-vertex declarations (v unused)
};

long long parse_label(const Token& tok, std::size_t line) {
  long long value = 0;
  const auto* first = tok.text.data();
  const auto* last = first + tok.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || value < 0)
    throw ParseError("invalid vertex label '" + std::string(tok.text) + "'", line, tok.offset);
  return value;
}

RawList read_pair_lines(std::string_view text) {
  RawList raw;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool seen_pair = false;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    ++line_no;
    std::string_view line = text.substr(pos, eol - pos);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      if (i > start) tokens.push_back({line.substr(start, i - start), pos + start});
    }

    if (!tokens.empty()) {
      if (tokens[0].text == "n") {
        if (tokens.size() != 2) throw ParseError("header must be 'n <count>'", line_no, tokens[0].offset);
        if (raw.declared_n || seen_pair) throw ParseError("header must come first and only once", line_no, tokens[0].offset);
        raw.declared_n = parse_label(tokens[1], line_no);
      } else if (tokens.size() == 1) {
        raw.singles.push_back({parse_label(tokens[0], line_no), 0, line_no, tokens[0].offset});
        seen_pair = true;
      } else if (tokens.size() == 2) {
        raw.pairs.push_back(
            {parse_label(tokens[0], line_no), parse_label(tokens[1], line_no), line_no, tokens[0].offset});
        seen_pair = true;
      } else {
        throw ParseError("expected 'u v' on each line", line_no, tokens[2].offset);
      }
    }
    if (eol == text.size()) break;
    pos = eol + 1;
  }
  return raw;
}

// Resolves labels to dense indices and rejects loops and repeated pairs.
template <typename G>
Labelled<G> build_from_list(const RawList& raw, bool oriented) {
  std::map<long long, int> index;
  std::vector<long long> labels;
  int n = 0;
  if (raw.declared_n) {
    if (*raw.declared_n > 1'000'000) throw ParseError("vertex count too large", 1, 0);
    n = static_cast<int>(*raw.declared_n);
    auto check = [&](long long label, const PairRecord& rec) {
      if (label >= n)
        throw ParseError("vertex index " + std::to_string(label) + " >= n = " + std::to_string(n), rec.line,
                         rec.offset);
    };
    for (const auto& rec : raw.pairs) {
      check(rec.u, rec);
      check(rec.v, rec);
    }
    for (const auto& rec : raw.singles) check(rec.u, rec);
    labels.resize(n);
    for (int v = 0; v < n; ++v) {
      labels[v] = v;
      index[v] = v;
    }
  } else {
    std::set<long long> distinct;
    for (const auto& rec : raw.pairs) distinct.insert({rec.u, rec.v});
    for (const auto& rec : raw.singles) distinct.insert(rec.u);
    for (long long label : distinct) {
      index[label] = n++;
      labels.push_back(label);
    }
  }

  std::set<VertexPair> seen;
  std::vector<VertexPair> pairs;
  for (const auto& rec : raw.pairs) {
    if (rec.u == rec.v) throw ParseError("loop at vertex " + std::to_string(rec.u), rec.line, rec.offset);
    const int u = index.at(rec.u);
    const int v = index.at(rec.v);
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
      throw ParseError(std::string(oriented ? "second arc" : "duplicate edge") + " on {" + std::to_string(rec.u) + ", " +
                           std::to_string(rec.v) + "}",
                       rec.line, rec.offset);
    pairs.emplace_back(u, v);
  }
  return {G(n, std::move(pairs)), std::move(labels)};
}

template <typename G>
Labelled<G> parse_json(std::string_view text, const char* key) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), 1, e.byte);
  }
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer())
    throw ParseError("JSON graph needs an integer field \"n\"", 1, 0);
  const long long n = doc["n"].get<long long>();
  if (n < 0 || n > 1'000'000) throw ParseError("invalid vertex count", 1, 0);
  const auto& list = doc.contains(key) ? doc[key] : nlohmann::json::array();
  if (!list.is_array()) throw ParseError(std::string("field \"") + key + "\" must be an array", 1, 0);

  RawList raw;
  raw.declared_n = n;
  std::size_t element = 0;
  for (const auto& item : list) {
    ++element;
    if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() || !item[1].is_number_integer() ||
        item[0].get<long long>() < 0 || item[1].get<long long>() < 0)
      throw ParseError(std::string("element ") + std::to_string(element) + " of \"" + key +
                           "\" is not a pair of vertex indices",
                       1, 0);
    // JSON positions are reported as the element ordinal in the line slot.
    raw.pairs.push_back({item[0].get<long long>(), item[1].get<long long>(), element, 0});
  }
  return build_from_list<G>(raw, std::string_view(key) == "arcs");
}

Labelled<Graph> parse_graph6(std::string_view text) {
  constexpr std::string_view header = ">>graph6<<";
  std::size_t base = 0;
  if (text.substr(0, header.size()) == header) base = header.size();
  std::string_view body = text.substr(base);
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);
  if (body.empty()) throw ParseError("empty graph6 string", 1, base);
  for (std::size_t i = 0; i < body.size(); ++i) {
    const auto c = static_cast<unsigned char>(body[i]);
    if (c < 63 || c > 126) throw ParseError("graph6 byte out of range", 1, base + i);
  }
  if (body[0] == 126) throw ParseError("graph6 with n > 62 is not supported", 1, base);
  const int n = body[0] - 63;
  const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
  const std::size_t bytes = (bits + 5) / 6;
  if (body.size() != 1 + bytes)
    throw ParseError("graph6 length mismatch: expected " + std::to_string(1 + bytes) + " bytes", 1,
                     base + std::min(body.size(), 1 + bytes));

  auto bit = [&](std::size_t k) {
    const int value = body[1 + k / 6] - 63;
    return (value >> (5 - static_cast<int>(k % 6))) & 1;
  };
  for (std::size_t k = bits; k < 6 * bytes; ++k)
    if (bit(k)) throw ParseError("nonzero graph6 padding", 1, base + 1 + k / 6);

  std::vector<VertexPair> edges;
  std::size_t k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k)
      if (bit(k)) edges.emplace_back(i, j);
  Labelled<Graph> out{Graph(n, std::move(edges)), {}};
  for (int v = 0; v < n; ++v) out.labels.push_back(v);
  return out;
}

std::string graph6_encode(const Graph& x) {
  const int n = x.order();
  if (n > 62) throw InvalidArgument("graph6 encoding supports n <= 62");
  const IMatrix a = x.adjacency();
  std::string out(1, static_cast<char>(n + 63));
  int acc = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | a(i, j);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

std::string list_encode(int n, const std::vector<VertexPair>& pairs) {
  std::ostringstream os;
  os << "n " << n << '\n';
  for (const auto& [u, v] : pairs) os << u << ' ' << v << '\n';
  return os.str();
}

std::string json_encode(int n, const std::vector<VertexPair>& pairs, const char* key) {
  nlohmann::json doc;
  doc["n"] = n;
  doc[key] = nlohmann::json::array();
  for (const auto& [u, v] : pairs) doc[key].push_back({u, v});
  return doc.dump() + "\n";
}

}  // namespace

GraphFormat parse_format_name(std::string_view name) {
  if (name == "edge-list" || name == "edgelist" || name == "arc-list" || name == "el") return GraphFormat::edge_list;
  if (name == "graph6" || name == "g6") return GraphFormat::graph6;
  if (name == "json") return GraphFormat::json;
  throw InvalidArgument("unknown graph format '" + std::string(name) + "'");
}

std::string_view format_name(GraphFormat format) noexcept {
  switch (format) {
    case GraphFormat::graph6:
      return "graph6";
    case GraphFormat::json:
      return "json";
    case GraphFormat::edge_list:
      break;
  }
  return "edge-list";
}

Labelled<Graph> parse_graph(std::string_view text, GraphFormat format) {
  switch (format) {
    case GraphFormat::graph6:
      return parse_graph6(text);
    case GraphFormat::json:
      return parse_json<Graph>(text, "edges");
    case GraphFormat::edge_list:
      break;
  }
  return build_from_list<Graph>(read_pair_lines(text), false);
}

Labelled<OrientedGraph> parse_oriented(std::string_view text, GraphFormat format) {
  switch (format) {
    case GraphFormat::graph6:
      throw ParseError("graph6 cannot encode oriented graphs", 1, 0);
    case GraphFormat::json:
      return parse_json<OrientedGraph>(text, "arcs");
    case GraphFormat::edge_list:
      break;
  }
  return build_from_list<OrientedGraph>(read_pair_lines(text), true);
}

std::string serialize_graph(const Graph& x, GraphFormat format) {
  switch (format) {
    case GraphFormat::graph6:
      return graph6_encode(x) + "\n";
    case GraphFormat::json:
      return json_encode(x.order(), x.edges(), "edges");
    case GraphFormat::edge_list:
      break;
  }
  return list_encode(x.order(), x.edges());
}

std::string serialize_oriented(const OrientedGraph& x, GraphFormat format) {
  switch (format) {
    case GraphFormat::graph6:
      throw InvalidArgument("graph6 cannot encode oriented graphs");
    case GraphFormat::json:
      return json_encode(x.order(), x.arcs(), "arcs");
    case GraphFormat::edge_list:
      break;
  }
  return list_encode(x.order(), x.arcs());
}

}  // namespace qwalk
