#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "d2nn/network.hpp"

namespace d2nn {

/// Config plus layer stack: everything needed to rebuild a trained network.
struct NetworkModel {
  NetworkConfig config;
  std::vector<DiffractiveLayer> layers;

  bool operator==(const NetworkModel&) const = default;
};

inline constexpr std::uint32_t kNetworkFormatVersion = 1;

/// Binary network document:
///   "D2NN-NET" | u32 version | u8 endianness tag (1 = little) | payload |
///   u64 FNV-1a of everything before it.
/// All integers and IEEE-754 doubles are little-endian; layer arrays are
/// row-major. Round trips are bit-exact.
std::string encode_network(const NetworkModel& model);
/// Throws kFormat naming the problem (magic, version, tag, checksum,
/// truncation) on any malformed input.
NetworkModel decode_network(std::string_view bytes);

void save_network(const std::string& path, const NetworkModel& model);
/// kIo if unreadable, kFormat if malformed.
NetworkModel load_network(const std::string& path);

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

/// Canonical byte encoding of a network config (no layers).
std::string encode_config(const NetworkConfig& config);

/// 16 lowercase hex digits.
std::string hex64(std::uint64_t v);

}  // namespace d2nn
