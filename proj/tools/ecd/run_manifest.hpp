#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace ecd::cli {

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Provenance record written next to every command's outputs: the resolved
/// configuration, seeds, hashes of the inputs, wall-clock per stage and the
/// files produced.
class RunManifest {
 public:
  RunManifest(std::string command, std::vector<std::string> argv);

  nlohmann::json& config() { return config_; }
  void set_seed(std::uint64_t seed) { seed_ = seed; }
  void add_derived_seed(const std::string& name, std::uint64_t seed) { derived_seeds_[name] = seed; }
  void add_input(const std::filesystem::path& path);
  void add_output(const std::filesystem::path& path);
  void set_result(const std::string& key, nlohmann::json value) { results_[key] = std::move(value); }

  /// Times fn() under `stage` and returns its result.
  template <typename Fn>
  auto stage(const std::string& name, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      record_stage(name, start);
    } else {
      auto out = fn();
      record_stage(name, start);
      return out;
    }
  }

  nlohmann::json to_json() const;
  void save(const std::filesystem::path& path) const;

 private:
  void record_stage(const std::string& name, std::chrono::steady_clock::time_point start);

  std::string command_;
  std::vector<std::string> argv_;
  std::string started_at_;
  nlohmann::json config_ = nlohmann::json::object();
  std::uint64_t seed_ = 0;
  nlohmann::json derived_seeds_ = nlohmann::json::object();
  nlohmann::json inputs_ = nlohmann::json::array();
  nlohmann::json stages_ = nlohmann::json::array();
  nlohmann::json outputs_ = nlohmann::json::array();
  nlohmann::json results_ = nlohmann::json::object();
};

}  // namespace ecd::cli
