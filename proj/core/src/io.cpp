#include "ecd/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ecd/error.hpp"

namespace ecd {
namespace {

std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool is_comment_or_blank(const std::vector<std::string_view>& tokens) {
  return tokens.empty() || tokens.front().front() == '#';
}

std::optional<double> parse_double(std::string_view s) {
  double x = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return x;
}

std::optional<std::uint64_t> parse_uint(std::string_view s) {
  std::uint64_t x = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return x;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

VertexId resolve(const SymbolTable& table, std::string_view token, const std::string& source, std::size_t line) {
  auto id = table.find(token);
  if (!id) throw ParseError(source, line, "unknown vertex '" + std::string(token) + "'");
  return *id;
}

/// Dense ids for community tokens in order of first appearance.
class LabelTable {
 public:
  CommunityId intern(std::string_view token) {
    auto [it, inserted] = index_.try_emplace(std::string(token), static_cast<CommunityId>(index_.size()));
    return it->second;
  }
  std::size_t size() const { return index_.size(); }

 private:
  std::unordered_map<std::string, CommunityId> index_;
};

}  // namespace

SymbolTable SymbolTable::from_graph(const Graph& g) {
  SymbolTable t;
  for (VertexId v = 0; v < g.num_vertices(); ++v) t.intern(g.name(v));
  return t;
}

std::optional<VertexId> SymbolTable::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VertexId SymbolTable::intern(std::string_view name) {
  auto [it, inserted] = index_.try_emplace(std::string(name), static_cast<VertexId>(names_.size()));
  if (inserted) names_.emplace_back(name);
  return it->second;
}

EdgeListFile read_edge_list(std::istream& in, const std::string& source_name) {
  struct RawEdge {
    std::string u, v;
    double w;
  };
  std::vector<RawEdge> raw;
  std::string line;
  std::size_t lineno = 0;
  bool all_integer = true;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokenize(line);
    if (is_comment_or_blank(tok)) continue;
    if (tok.size() != 2 && tok.size() != 3) {
      throw ParseError(source_name, lineno, "expected 'u v [w]', got " + std::to_string(tok.size()) + " tokens");
    }
    double w = 1.0;
    if (tok.size() == 3) {
      auto parsed = parse_double(tok[2]);
      if (!parsed || !(*parsed >= 0.0)) {
        throw ParseError(source_name, lineno, "invalid edge weight '" + std::string(tok[2]) + "'");
      }
      w = *parsed;
    }
    all_integer = all_integer && parse_uint(tok[0]) && parse_uint(tok[1]);
    raw.push_back({std::string(tok[0]), std::string(tok[1]), w});
  }
  if (raw.empty()) throw ParseError(source_name, 0, "edge list contains no edges");

  SymbolTable table;
  if (all_integer) {
    std::vector<std::uint64_t> ids;
    ids.reserve(raw.size() * 2);
    for (const auto& e : raw) {
      ids.push_back(*parse_uint(e.u));
      ids.push_back(*parse_uint(e.v));
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (auto id : ids) table.intern(std::to_string(id));
  }
  // Integer tokens with leading zeros ("007") must still resolve.
  auto id_of = [&](const std::string& tok) -> VertexId {
    if (all_integer) return *table.find(std::to_string(*parse_uint(tok)));
    return table.intern(tok);
  };
  std::vector<std::pair<VertexId, VertexId>> ends;
  ends.reserve(raw.size());
  for (const auto& e : raw) {
    const VertexId u = id_of(e.u);  // u before v: ids follow first appearance
    ends.emplace_back(u, id_of(e.v));
  }

  GraphBuilder b(table.size());
  for (std::size_t i = 0; i < raw.size(); ++i) b.add_edge(ends[i].first, ends[i].second, raw[i].w);

  bool identity_names = all_integer;
  for (VertexId v = 0; identity_names && v < table.size(); ++v) identity_names = table.name(v) == std::to_string(v);
  EdgeListFile out;
  out.graph = b.build(identity_names ? std::vector<std::string>{} : table.names());
  out.self_loops_dropped = b.self_loops_dropped();
  out.duplicates_dropped = b.duplicates_dropped();
  if (out.graph.num_edges() == 0) throw ParseError(source_name, 0, "graph has no edges after dropping self-loops");
  return out;
}

EdgeListFile load_edge_list(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_edge_list(in, path.string());
}

void write_edge_list(std::ostream& out, const Graph& g) {
  const bool weighted = g.is_weighted();
  for (const auto& e : g.edges()) {
    out << g.name(e.u) << ' ' << g.name(e.v);
    if (weighted) out << ' ' << format_real(e.weight);
    out << '\n';
  }
}

void save_edge_list(const std::filesystem::path& path, const Graph& g) {
  auto out = open_out(path);
  write_edge_list(out, g);
}

Partition read_partition(std::istream& in, const SymbolTable& table, const std::string& source_name) {
  constexpr auto kUnset = static_cast<CommunityId>(-1);
  std::vector<CommunityId> labels(table.size(), kUnset);
  LabelTable communities;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokenize(line);
    if (is_comment_or_blank(tok)) continue;
    if (tok.size() != 2) throw ParseError(source_name, lineno, "expected 'vertex community'");
    const VertexId v = resolve(table, tok[0], source_name, lineno);
    if (labels[v] != kUnset) {
      throw ParseError(source_name, lineno, "vertex '" + std::string(tok[0]) + "' listed twice");
    }
    labels[v] = communities.intern(tok[1]);
  }
  std::vector<std::string> missing;
  for (VertexId v = 0; v < labels.size(); ++v) {
    if (labels[v] == kUnset) missing.push_back(table.name(v));
  }
  if (!missing.empty()) {
    std::string msg = std::to_string(missing.size()) + " vertices missing from partition:";
    for (std::size_t i = 0; i < std::min<std::size_t>(missing.size(), 20); ++i) msg += " " + missing[i];
    if (missing.size() > 20) msg += " ...";
    throw ParseError(source_name, 0, msg);
  }
  return Partition(std::move(labels));
}

Partition import_partition(const std::filesystem::path& path, const SymbolTable& table) {
  auto in = open_in(path);
  return read_partition(in, table, path.string());
}

void write_partition(std::ostream& out, const Partition& p, const SymbolTable& table) {
  for (VertexId v = 0; v < p.num_vertices(); ++v) out << table.name(v) << ' ' << p.label(v) << '\n';
}

void save_partition(const std::filesystem::path& path, const Partition& p, const SymbolTable& table) {
  auto out = open_out(path);
  write_partition(out, p, table);
}

Cover read_cover(std::istream& in, const SymbolTable& table, const std::string& source_name) {
  std::vector<VertexSet> communities;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokenize(line);
    if (is_comment_or_blank(tok)) continue;
    VertexSet members;
    members.reserve(tok.size());
    for (auto t : tok) members.push_back(resolve(table, t, source_name, lineno));
    communities.push_back(std::move(members));
  }
  try {
    return Cover(table.size(), std::move(communities));
  } catch (const InvalidArgument& e) {
    throw ParseError(source_name, 0, e.what());
  }
}

Cover load_cover(const std::filesystem::path& path, const SymbolTable& table) {
  auto in = open_in(path);
  return read_cover(in, table, path.string());
}

void write_cover(std::ostream& out, const Cover& c, const SymbolTable& table) {
  for (const auto& members : c.communities()) {
    for (std::size_t i = 0; i < members.size(); ++i) out << (i ? " " : "") << table.name(members[i]);
    out << '\n';
  }
}

void save_cover(const std::filesystem::path& path, const Cover& c, const SymbolTable& table) {
  auto out = open_out(path);
  write_cover(out, c, table);
}

FuzzyAssignment read_fuzzy(std::istream& in, const SymbolTable& table, const std::string& source_name) {
  std::vector<FuzzyAssignment::Row> rows(table.size());
  LabelTable communities;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokenize(line);
    if (is_comment_or_blank(tok)) continue;
    if (tok.size() != 3) throw ParseError(source_name, lineno, "expected 'vertex community probability'");
    const VertexId v = resolve(table, tok[0], source_name, lineno);
    auto p = parse_double(tok[2]);
    if (!p) throw ParseError(source_name, lineno, "invalid probability '" + std::string(tok[2]) + "'");
    rows[v].emplace_back(communities.intern(tok[1]), *p);
  }
  try {
    return FuzzyAssignment(communities.size(), std::move(rows));
  } catch (const InvalidArgument& e) {
    throw ParseError(source_name, 0, e.what());
  }
}

FuzzyAssignment load_fuzzy(const std::filesystem::path& path, const SymbolTable& table) {
  auto in = open_in(path);
  return read_fuzzy(in, table, path.string());
}

void write_fuzzy(std::ostream& out, const FuzzyAssignment& f, const SymbolTable& table) {
  for (VertexId v = 0; v < f.num_vertices(); ++v) {
    for (auto [c, p] : f.row(v)) out << table.name(v) << ' ' << c << ' ' << format_real(p) << '\n';
  }
}

void save_fuzzy(const std::filesystem::path& path, const FuzzyAssignment& f, const SymbolTable& table) {
  auto out = open_out(path);
  write_fuzzy(out, f, table);
}

void collect_vertex_names(const std::filesystem::path& path, StructureFormat format, SymbolTable& table) {
  auto in = open_in(path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokenize(line);
    if (is_comment_or_blank(tok)) continue;
    switch (format) {
      case StructureFormat::kPartition:
      case StructureFormat::kFuzzy:
        table.intern(tok[0]);
        break;
      case StructureFormat::kCover:
        for (auto t : tok) table.intern(t);
        break;
    }
  }
}

}  // namespace ecd
