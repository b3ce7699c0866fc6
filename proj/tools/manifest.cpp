#include <fstream>
#include <iterator>
#include <memory>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "experiments.hpp"
#include "scd/version.hpp"

namespace scd::cli {

std::string sha256_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw std::runtime_error("sha256 init failed");
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), md, &len);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", md[i]);
  return hex;
}

std::filesystem::path write_manifest(const RunConfig& cfg, const CommandResult& result, double wall_seconds) {
  nlohmann::json m;
  m["command"] = cfg.command;
  nlohmann::json echo = cfg.params;
  echo["seed"] = cfg.seed;
  echo["workers"] = cfg.workers;
  m["config"] = echo;
  m["library_version"] = kVersion;
  m["wall_time_seconds"] = wall_seconds;
  nlohmann::json outs = nlohmann::json::array();
  for (const auto& f : result.files)
    outs.push_back({{"file", f.filename().string()}, {"sha256", sha256_file(f)}});
  m["outputs"] = outs;
  m["results"] = result.results;
  const auto path = cfg.out_dir / (cfg.command + ".manifest.json");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << m.dump(2) << '\n';
  return path;
}

}  // namespace scd::cli
