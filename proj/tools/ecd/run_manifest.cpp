#include "run_manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "ecd/error.hpp"

namespace ecd::cli {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
  std::array<char, 1 << 16> buf;
  while (in.read(buf.data(), buf.size()) || in.gcount() > 0) {
    EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

RunManifest::RunManifest(std::string command, std::vector<std::string> argv)
    : command_(std::move(command)), argv_(std::move(argv)) {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream s;
  s << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  started_at_ = s.str();
}

void RunManifest::add_input(const std::filesystem::path& path) {
  inputs_.push_back({{"path", path.string()},
                     {"bytes", std::filesystem::file_size(path)},
                     {"sha256", sha256_file(path)}});
}

void RunManifest::add_output(const std::filesystem::path& path) { outputs_.push_back(path.string()); }

void RunManifest::record_stage(const std::string& name, std::chrono::steady_clock::time_point start) {
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  stages_.push_back({{"name", name}, {"seconds", secs}});
}

nlohmann::json RunManifest::to_json() const {
  return {{"tool", "ecd"},
          {"version", ECD_VERSION},
          {"command", command_},
          {"argv", argv_},
          {"started_at", started_at_},
          {"config", config_},
          {"seed", seed_},
          {"derived_seeds", derived_seeds_},
          {"inputs", inputs_},
          {"stages", stages_},
          {"outputs", outputs_},
          {"results", results_}};
}

void RunManifest::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << to_json().dump(2) << '\n';
}

}  // namespace ecd::cli
