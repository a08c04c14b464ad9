#ifndef SPHAVG_CONFIG_HPP_
#define SPHAVG_CONFIG_HPP_

#include <openssl/evp.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sphavg {

inline constexpr const char* kVersion = "0.1.0";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return out.str();
}

// INI experiment file: a [run] section naming the command plus one section per command.
struct ExperimentConfig {
  boost::property_tree::ptree tree;
  std::string text;
  std::string hash;
  std::string path;

  static ExperimentConfig load(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw ConfigError("cannot open config: " + file);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), file);
  }

  static ExperimentConfig parse(const std::string& text, const std::string& origin = "<string>") {
    ExperimentConfig c;
    c.text = text;
    c.path = origin;
    c.hash = sha256_hex(text);
    std::istringstream in(text);
    try {
      boost::property_tree::ini_parser::read_ini(in, c.tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
      throw ConfigError(origin + ":" + std::to_string(e.line()) + ": " + e.message());
    }
    if (!c.tree.get_child_optional("run")) throw ConfigError(origin + ": missing [run] section");
    if (!c.tree.get_optional<std::string>("run.command")) throw ConfigError(origin + ": run.command is required");
    return c;
  }

  std::string command() const { return tree.get<std::string>("run.command"); }

  template <class T>
  T require(const std::string& key) const {
    const auto v = tree.get_optional<T>(key);
    if (!v) throw ConfigError(path + ": missing or malformed key " + key);
    return *v;
  }

  template <class T>
  T value(const std::string& key, const T& fallback) const {
    const auto raw = tree.get_optional<std::string>(key);
    if (!raw) return fallback;
    const auto v = tree.get_optional<T>(key);
    if (!v) throw ConfigError(path + ": malformed value for " + key + ": " + *raw);
    return *v;
  }

  // Comma-separated integers, e.g. "3,4,5,6,7,8".
  std::vector<int> int_list(const std::string& key) const {
    const std::string raw = require<std::string>(key);
    std::vector<int> out;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        out.push_back(std::stoi(item, &used));
      } catch (const std::exception&) {
        throw ConfigError(path + ": " + key + " must be a comma-separated integer list");
      }
    }
    if (out.empty()) throw ConfigError(path + ": " + key + " is empty");
    return out;
  }
};

}  // namespace sphavg

#endif  // SPHAVG_CONFIG_HPP_
