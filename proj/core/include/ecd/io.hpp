#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ecd/community.hpp"
#include "ecd/graph.hpp"

namespace ecd {

/// Bidirectional map between external vertex names and dense ids.
class SymbolTable {
 public:
  SymbolTable() = default;
  static SymbolTable from_graph(const Graph& g);

  std::optional<VertexId> find(std::string_view name) const;
  /// Returns the id of `name`, adding it when absent.
  VertexId intern(std::string_view name);
  const std::string& name(VertexId v) const { return names_[v]; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t size() const noexcept { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> index_;
};

struct EdgeListFile {
  Graph graph;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

/// Parses "u v [w]" lines; '#' starts a comment line, blank lines are skipped.
/// Vertex tokens are arbitrary; when every token is a non-negative integer the
/// dense ids follow numeric order, otherwise order of first appearance.
EdgeListFile read_edge_list(std::istream& in, const std::string& source_name = "<stream>");
EdgeListFile load_edge_list(const std::filesystem::path& path);
void write_edge_list(std::ostream& out, const Graph& g);
void save_edge_list(const std::filesystem::path& path, const Graph& g);

/// "vertex community" lines. Every vertex in `table` must appear exactly once.
Partition read_partition(std::istream& in, const SymbolTable& table, const std::string& source_name = "<stream>");
Partition import_partition(const std::filesystem::path& path, const SymbolTable& table);
void write_partition(std::ostream& out, const Partition& p, const SymbolTable& table);
void save_partition(const std::filesystem::path& path, const Partition& p, const SymbolTable& table);

/// One community per line, whitespace-separated vertex names.
Cover read_cover(std::istream& in, const SymbolTable& table, const std::string& source_name = "<stream>");
Cover load_cover(const std::filesystem::path& path, const SymbolTable& table);
void write_cover(std::ostream& out, const Cover& c, const SymbolTable& table);
void save_cover(const std::filesystem::path& path, const Cover& c, const SymbolTable& table);

/// "vertex community probability" lines.
FuzzyAssignment read_fuzzy(std::istream& in, const SymbolTable& table, const std::string& source_name = "<stream>");
FuzzyAssignment load_fuzzy(const std::filesystem::path& path, const SymbolTable& table);
void write_fuzzy(std::ostream& out, const FuzzyAssignment& f, const SymbolTable& table);
void save_fuzzy(const std::filesystem::path& path, const FuzzyAssignment& f, const SymbolTable& table);

enum class StructureFormat { kPartition, kCover, kFuzzy };

/// Adds every vertex name mentioned in a community file to `table`, so two
/// files can be compared without a graph.
void collect_vertex_names(const std::filesystem::path& path, StructureFormat format, SymbolTable& table);

}  // namespace ecd
