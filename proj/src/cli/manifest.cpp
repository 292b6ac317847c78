#include <openssl/evp.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "internal.hpp"
#include "lacunary/cli.hpp"
#include "lacunary/error.hpp"

namespace lacunary::cli {

std::string git_blob_sha1(const std::string& content) {
  const std::string header = "blob " + std::to_string(content.size()) + std::string(1, '\0');
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr);
  EVP_DigestUpdate(ctx, header.data(), header.size());
  EVP_DigestUpdate(ctx, content.data(), content.size());
  EVP_DigestFinal_ex(ctx, digest, &len);
  EVP_MD_CTX_free(ctx);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 15]);
  }
  return out;
}

std::string scratch_dir() {
  const char* dir = std::getenv("LACUNARY_SCRATCH_DIR");
  return dir && *dir ? std::string(dir) : std::string(".");
}

Json manifest_json(const Manifest& m) {
  Json j;
  j["tool"] = "lacunary";
  j["version"] = kToolVersion;
  j["subcommand"] = m.subcommand;
  j["command"] = m.command;
  j["resolved"] = m.resolved;
  j["seed"] = m.seed;
  j["precision"] = m.precision;
  j["threads"] = m.threads;
  j["wall_seconds"] = m.wall_seconds;
  j["output_sha1"] = m.output_sha1;
  return j;
}

Manifest manifest_from_json(const Json& j) {
  Manifest m;
  try {
    if (j.at("tool").get<std::string>() != "lacunary") throw InvalidArgument("cli", "not a lacunary manifest");
    m.command = j.at("command").get<std::vector<std::string>>();
    m.subcommand = j.at("subcommand").get<std::string>();
    m.resolved = j.at("resolved");
    m.seed = j.at("seed").get<std::uint64_t>();
    m.precision = j.at("precision");
    m.threads = j.at("threads").get<unsigned>();
    m.output_sha1 = j.at("output_sha1").get<std::string>();
  } catch (const Json::exception& e) {
    throw InvalidArgument("cli", std::string("malformed manifest: ") + e.what());
  }
  return m;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cli", "cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw InvalidArgument("cli", "write to '" + path + "' failed");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cli", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace lacunary::cli
