#include <fstream>
#include <iomanip>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "adsyn/frontend.hpp"

namespace adsyn::frontend {

using nlohmann::json;

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path.string());
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::InvalidArgument, "sha256 unavailable");
  }
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int{digest[i]};
  return hex.str();
}

void write_manifest(std::ostream& out, const RunManifest& m) {
  json doc;
  doc["command"] = m.command;
  doc["inputs"] = m.inputs;
  doc["spec"] = m.spec;
  doc["seeds"] = m.seeds;
  doc["config"] = m.config.empty() ? json(nullptr) : json::parse(m.config);
  doc["output_dir"] = m.output_dir;
  doc["artifacts"] = m.artifacts;
  out << doc.dump(1) << "\n";
}

RunManifest read_manifest(std::istream& in) {
  try {
    json doc;
    in >> doc;
    RunManifest m;
    m.command = doc.at("command").get<std::vector<std::string>>();
    m.inputs = doc.value("inputs", std::vector<std::string>{});
    m.spec = doc.value("spec", std::string{});
    m.seeds = doc.value("seeds", std::vector<std::uint64_t>{});
    if (doc.contains("config") && !doc.at("config").is_null()) m.config = doc.at("config").dump();
    m.output_dir = doc.value("output_dir", std::string{});
    m.artifacts = doc.at("artifacts").get<std::map<std::string, std::string>>();
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

std::map<std::string, std::string> hash_artifacts(const std::filesystem::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto name = entry.path().filename().string();
    if (name == "manifest.json" || name == "stats.json") continue;
    out[name] = sha256_file(entry.path());
  }
  return out;
}

}  // namespace adsyn::frontend
