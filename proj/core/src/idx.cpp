#include <cstdio>
#include <string>

#include "bytes.hpp"
#include "d2nn/dataset.hpp"

namespace d2nn {
namespace {

class BigEndianCursor {
 public:
  BigEndianCursor(std::string_view data, const char* what) : data_(data), what_(what) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | static_cast<std::uint8_t>(data_[pos_ + i]);
    pos_ += 4;
    return v;
  }
  std::string_view take(std::size_t n) {
    need(n);
    auto s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) {
      throw Error(ErrorCode::kIo, std::string(what_) + " truncated at byte offset " +
                                      std::to_string(data_.size()) + " (needed " +
                                      std::to_string(pos_ + n) + " bytes)");
    }
  }

  std::string_view data_;
  std::size_t pos_ = 0;
  const char* what_;
};

std::string magic_hex(std::uint32_t v) {
  char buf[11];
  std::snprintf(buf, sizeof buf, "0x%08x", v);
  return buf;
}

std::size_t clamp_count(std::size_t count, std::optional<std::size_t> limit) {
  return limit && *limit < count ? *limit : count;
}

}  // namespace

std::vector<RealGrid> parse_idx_images(std::string_view bytes, std::optional<std::size_t> limit) {
  BigEndianCursor cur(bytes, "IDX image file");
  const std::uint32_t magic = cur.u32();
  if (magic != kIdxImageMagic) {
    throw Error(ErrorCode::kFormat, "IDX image file has magic " + magic_hex(magic) +
                                        ", expected " + magic_hex(kIdxImageMagic));
  }
  const std::size_t count = cur.u32();
  const std::uint32_t rows = cur.u32();
  const std::uint32_t cols = cur.u32();
  if (rows != cols || rows == 0) {
    throw Error(ErrorCode::kFormat, "IDX images must be square and non-empty, got " +
                                        std::to_string(rows) + "x" + std::to_string(cols));
  }
  const std::size_t keep = clamp_count(count, limit);
  const std::size_t pixels = static_cast<std::size_t>(rows) * cols;
  std::vector<RealGrid> images;
  images.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    auto raw = cur.take(pixels);
    std::vector<double> px(pixels);
    for (std::size_t p = 0; p < pixels; ++p) px[p] = static_cast<std::uint8_t>(raw[p]) / 255.0;
    images.emplace_back(static_cast<int>(rows), std::move(px));
  }
  return images;
}

std::vector<int> parse_idx_labels(std::string_view bytes, std::optional<std::size_t> limit) {
  BigEndianCursor cur(bytes, "IDX label file");
  const std::uint32_t magic = cur.u32();
  if (magic != kIdxLabelMagic) {
    throw Error(ErrorCode::kFormat, "IDX label file has magic " + magic_hex(magic) +
                                        ", expected " + magic_hex(kIdxLabelMagic));
  }
  const std::size_t count = cur.u32();
  const std::size_t keep = clamp_count(count, limit);
  auto raw = cur.take(keep);
  std::vector<int> labels(keep);
  for (std::size_t i = 0; i < keep; ++i) labels[i] = static_cast<std::uint8_t>(raw[i]);
  return labels;
}

namespace {

std::uint32_t header_count(std::string_view bytes) {
  if (bytes.size() < 8) return 0;
  std::uint32_t v = 0;
  for (int i = 4; i < 8; ++i) v = (v << 8) | static_cast<std::uint8_t>(bytes[i]);
  return v;
}

}  // namespace

Dataset load_idx(const std::string& images_path, const std::string& labels_path,
                 std::optional<std::size_t> limit, std::string name) {
  const std::string image_bytes = detail::read_file(images_path);
  const std::string label_bytes = detail::read_file(labels_path);
  Dataset data;
  data.name = std::move(name);
  try {
    data.images = parse_idx_images(image_bytes, limit);
  } catch (const Error& e) {
    throw Error(e.code(), images_path + ": " + e.message());
  }
  try {
    data.labels = parse_idx_labels(label_bytes, limit);
  } catch (const Error& e) {
    throw Error(e.code(), labels_path + ": " + e.message());
  }
  if (header_count(image_bytes) != header_count(label_bytes)) {
    throw Error(ErrorCode::kConsistency,
                "sample count mismatch: " + images_path + " has " +
                    std::to_string(header_count(image_bytes)) + ", " + labels_path + " has " +
                    std::to_string(header_count(label_bytes)));
  }
  data.validate();
  return data;
}

}  // namespace d2nn
