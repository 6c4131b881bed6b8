#include "d2nn/serialization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bytes.hpp"

namespace d2nn {
namespace detail {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed for " + path);
  return std::move(ss).str();
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

}  // namespace detail

namespace {

constexpr std::string_view kMagic = "D2NN-NET";
constexpr std::uint8_t kLittleEndianTag = 1;

void write_config(detail::ByteWriter& w, const NetworkConfig& c) {
  w.i32(c.grid_n);
  w.f64(c.pitch);
  w.i32(c.num_layers);
  w.f64(c.input_to_first);
  w.f64(c.layer_spacing);
  w.f64(c.last_to_output);
  w.u8(static_cast<std::uint8_t>(c.encoding));
  w.u8(static_cast<std::uint8_t>(c.nonlinearity.kind));
  w.f64(c.nonlinearity.kerr_gamma);
  w.f64(c.nonlinearity.sa_t_min);
  w.f64(c.nonlinearity.sa_t_max);
  w.f64(c.nonlinearity.sa_i_sat);
  for (const DetectorRegion& r : c.detectors.regions) {
    w.i32(r.row);
    w.i32(r.col);
    w.i32(r.height);
    w.i32(r.width);
  }
  w.u32(static_cast<std::uint32_t>(c.gap_override.size()));
  for (double g : c.gap_override) w.f64(g);
}

NetworkConfig read_config(detail::ByteReader& r) {
  NetworkConfig c;
  c.grid_n = r.i32();
  c.pitch = r.f64();
  c.num_layers = r.i32();
  c.input_to_first = r.f64();
  c.layer_spacing = r.f64();
  c.last_to_output = r.f64();
  const auto enc = r.u8();
  if (enc > 1) r.fail("unknown encoding tag " + std::to_string(enc));
  c.encoding = static_cast<Encoding>(enc);
  const auto kind = r.u8();
  if (kind > 2) r.fail("unknown nonlinearity tag " + std::to_string(kind));
  c.nonlinearity.kind = static_cast<NonlinearKind>(kind);
  c.nonlinearity.kerr_gamma = r.f64();
  c.nonlinearity.sa_t_min = r.f64();
  c.nonlinearity.sa_t_max = r.f64();
  c.nonlinearity.sa_i_sat = r.f64();
  for (DetectorRegion& reg : c.detectors.regions) {
    reg.row = r.i32();
    reg.col = r.i32();
    reg.height = r.i32();
    reg.width = r.i32();
  }
  const std::uint32_t gaps = r.u32();
  if (gaps > 1u << 20) r.fail("implausible gap count");
  c.gap_override.resize(gaps);
  for (double& g : c.gap_override) g = r.f64();
  return c;
}

}  // namespace

std::string encode_config(const NetworkConfig& config) {
  detail::ByteWriter w;
  write_config(w, config);
  return w.take();
}

std::string encode_network(const NetworkModel& model) {
  detail::ByteWriter w;
  w.bytes(kMagic);
  w.u32(kNetworkFormatVersion);
  w.u8(kLittleEndianTag);
  write_config(w, model.config);
  w.u32(static_cast<std::uint32_t>(model.layers.size()));
  for (const DiffractiveLayer& layer : model.layers) {
    w.u8(layer.trainable ? 1 : 0);
    w.i32(layer.theta.n());
    for (double v : layer.theta.values()) w.f64(v);
    for (double v : layer.amp.values()) w.f64(v);
  }
  w.u64(fnv1a64(w.str()));
  return w.take();
}

NetworkModel decode_network(std::string_view bytes) {
  detail::ByteReader r(bytes, "network file");
  if (r.bytes(kMagic.size()) != kMagic) r.fail("bad magic (not a d2nn network file)");
  const std::uint32_t version = r.u32();
  if (version != kNetworkFormatVersion) {
    r.fail("unsupported format version " + std::to_string(version) + " (expected " +
           std::to_string(kNetworkFormatVersion) + ")");
  }
  if (r.u8() != kLittleEndianTag) r.fail("unknown endianness tag");
  if (bytes.size() < 8 + r.offset()) r.fail("truncated data");
  const std::uint64_t expected = fnv1a64(bytes.substr(0, bytes.size() - 8));
  detail::ByteReader tail(bytes.substr(bytes.size() - 8), "network file");
  if (tail.u64() != expected) r.fail("checksum mismatch (file corrupted)");

  detail::ByteReader body(bytes.substr(0, bytes.size() - 8), "network file");
  body.bytes(kMagic.size() + 5);
  NetworkModel model;
  model.config = read_config(body);
  if (model.config.grid_n < 2 || model.config.grid_n > 1 << 14) {
    body.fail("implausible grid_n " + std::to_string(model.config.grid_n));
  }
  const std::uint32_t count = body.u32();
  if (count > 4096) body.fail("implausible layer count");
  const std::size_t cells = static_cast<std::size_t>(model.config.grid_n) * model.config.grid_n;
  for (std::uint32_t i = 0; i < count; ++i) {
    DiffractiveLayer layer;
    layer.trainable = body.u8() != 0;
    if (body.i32() != model.config.grid_n) body.fail("layer grid does not match config");
    std::vector<double> theta(cells), amp(cells);
    for (double& v : theta) v = body.f64();
    for (double& v : amp) v = body.f64();
    layer.theta = RealGrid(model.config.grid_n, std::move(theta));
    layer.amp = RealGrid(model.config.grid_n, std::move(amp));
    model.layers.push_back(std::move(layer));
  }
  if (body.remaining() != 0) body.fail("trailing bytes");
  try {
    model.config.validate();
    for (const auto& layer : model.layers) layer.validate(model.config.grid_n);
  } catch (const Error& e) {
    throw Error(ErrorCode::kFormat, "network file holds an invalid network: " + e.message());
  }
  if (model.layers.size() != static_cast<std::size_t>(model.config.num_layers)) {
    throw Error(ErrorCode::kFormat, "network file layer count disagrees with its config");
  }
  return model;
}

void save_network(const std::string& path, const NetworkModel& model) {
  detail::write_file(path, encode_network(model));
}

NetworkModel load_network(const std::string& path) {
  return decode_network(detail::read_file(path));
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (char c : bytes) {
    h ^= static_cast<std::uint8_t>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace d2nn
