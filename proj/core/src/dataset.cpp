#include "d2nn/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bytes.hpp"
#include "d2nn/random.hpp"
#include "d2nn/serialization.hpp"

namespace d2nn {

void Dataset::validate() const {
  if (images.size() != labels.size()) {
    throw Error(ErrorCode::kConsistency, "dataset '" + name + "' has " +
                                             std::to_string(images.size()) + " images but " +
                                             std::to_string(labels.size()) + " labels");
  }
  const int n = grid_n();
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].n() != n) {
      throw Error(ErrorCode::kConsistency, "image " + std::to_string(i) + " has a different size");
    }
    if (labels[i] < 0 || labels[i] > 9) {
      throw Error(ErrorCode::kInvalidInput, "label " + std::to_string(labels[i]) +
                                                " out of range at sample " + std::to_string(i));
    }
    for (double v : images[i].values()) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::kInvalidInput,
                    "pixel outside [0,1] in image " + std::to_string(i));
      }
    }
  }
}

namespace {

// W[i][a]: share of output pixel i covered by source pixel a. Computed with
// integer overlap lengths in units of 1/(src*dst) so equal sizes give an
// exact identity.
std::vector<double> box_weights(int src, int dst) {
  std::vector<double> w(static_cast<std::size_t>(dst) * src, 0.0);
  for (int i = 0; i < dst; ++i) {
    const long lo = static_cast<long>(i) * src;
    const long hi = lo + src;
    for (int a = 0; a < src; ++a) {
      const long a_lo = static_cast<long>(a) * dst;
      const long a_hi = a_lo + dst;
      const long overlap = std::min(hi, a_hi) - std::max(lo, a_lo);
      if (overlap > 0) w[static_cast<std::size_t>(i) * src + a] = static_cast<double>(overlap) / src;
    }
  }
  return w;
}

}  // namespace

RealGrid resample(const RealGrid& image, int grid_n) {
  if (grid_n < 8) throw Error(ErrorCode::kInvalidArgument, "resample target must be >= 8");
  const int src = image.n();
  if (src == grid_n) return image;
  const std::vector<double> w = box_weights(src, grid_n);

  // Separable: rows first (grid_n x src), then columns.
  std::vector<double> tmp(static_cast<std::size_t>(grid_n) * src, 0.0);
  for (int i = 0; i < grid_n; ++i) {
    for (int a = 0; a < src; ++a) {
      const double wa = w[static_cast<std::size_t>(i) * src + a];
      if (wa == 0.0) continue;
      for (int b = 0; b < src; ++b) tmp[static_cast<std::size_t>(i) * src + b] += wa * image(a, b);
    }
  }
  RealGrid out(grid_n, 0.0);
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      double acc = 0.0;
      for (int b = 0; b < src; ++b) {
        const double wb = w[static_cast<std::size_t>(j) * src + b];
        if (wb != 0.0) acc += wb * tmp[static_cast<std::size_t>(i) * src + b];
      }
      out(i, j) = std::clamp(acc, 0.0, 1.0);
    }
  }
  return out;
}

Dataset resample(const Dataset& data, int grid_n) {
  Dataset out;
  out.name = data.name;
  out.labels = data.labels;
  out.images.reserve(data.images.size());
  for (const RealGrid& img : data.images) out.images.push_back(resample(img, grid_n));
  return out;
}

Splits split_indices(std::size_t n, const SplitFractions& f, std::uint64_t seed) {
  if (f.train < 0 || f.val < 0 || f.test < 0 || std::abs(f.train + f.val + f.test - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "split fractions must be >= 0 and sum to 1");
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(mix_seed(seed, 0x5eed));
  rng.shuffle(perm.begin(), perm.end());

  const auto n_train = std::min(n, static_cast<std::size_t>(std::llround(f.train * n)));
  const auto n_val = std::min(n - n_train, static_cast<std::size_t>(std::llround(f.val * n)));
  Splits s;
  s.train.assign(perm.begin(), perm.begin() + n_train);
  s.val.assign(perm.begin() + n_train, perm.begin() + n_train + n_val);
  s.test.assign(perm.begin() + n_train + n_val, perm.end());
  if (f.test == 0.0) {
    // Rounding leftovers go to train rather than to a split the caller disabled.
    s.train.insert(s.train.end(), s.test.begin(), s.test.end());
    s.test.clear();
  }
  std::sort(s.val.begin(), s.val.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

std::vector<Batch> epoch_batches(std::span<const std::size_t> split, int batch_size,
                                 std::uint64_t seed, int epoch) {
  if (split.empty()) throw Error(ErrorCode::kEmptySplit, "cannot batch an empty split");
  if (batch_size < 1) throw Error(ErrorCode::kInvalidArgument, "batch_size must be >= 1");
  std::vector<std::size_t> order(split.begin(), split.end());
  Rng rng(mix_seed(seed + static_cast<std::uint64_t>(epoch), 0xba7c));
  rng.shuffle(order.begin(), order.end());
  return ordered_batches(order, batch_size);
}

std::vector<Batch> ordered_batches(std::span<const std::size_t> split, int batch_size) {
  if (split.empty()) throw Error(ErrorCode::kEmptySplit, "cannot batch an empty split");
  if (batch_size < 1) throw Error(ErrorCode::kInvalidArgument, "batch_size must be >= 1");
  std::vector<Batch> batches;
  for (std::size_t i = 0; i < split.size(); i += static_cast<std::size_t>(batch_size)) {
    const std::size_t end = std::min(split.size(), i + static_cast<std::size_t>(batch_size));
    batches.emplace_back(split.begin() + static_cast<std::ptrdiff_t>(i),
                         split.begin() + static_cast<std::ptrdiff_t>(end));
  }
  return batches;
}

Dataset synthetic_two_blob(int n, int grid_n, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "synthetic_two_blob needs n >= 2");
  if (grid_n < 4) throw Error(ErrorCode::kInvalidArgument, "synthetic_two_blob needs grid_n >= 4");
  Rng rng(mix_seed(seed, 0xb10b));
  Dataset data;
  data.name = "two_blob";
  const double sigma = grid_n / 10.0;
  for (int i = 0; i < n; ++i) {
    const int label = i % 2;
    const double cx = grid_n * (label == 0 ? 0.25 : 0.75) + rng.uniform(-0.08, 0.08) * grid_n;
    const double cy = grid_n * 0.5 + rng.uniform(-0.15, 0.15) * grid_n;
    RealGrid img(grid_n, 0.0);
    for (int r = 0; r < grid_n; ++r) {
      for (int c = 0; c < grid_n; ++c) {
        const double dx = c + 0.5 - cx;
        const double dy = r + 0.5 - cy;
        img(r, c) = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
      }
    }
    data.images.push_back(std::move(img));
    data.labels.push_back(label);
  }
  return data;
}

Dataset synthetic_noise(int n, int grid_n, std::uint64_t seed) {
  Rng rng(mix_seed(seed, 0x9015e));
  Dataset data;
  data.name = "noise";
  for (int i = 0; i < n; ++i) {
    RealGrid img(grid_n, 0.0);
    for (double& v : img.values()) v = rng.uniform();
    data.images.push_back(std::move(img));
    data.labels.push_back(static_cast<int>(rng.below(10)));
  }
  return data;
}

namespace {
constexpr std::string_view kDatasetMagic = "D2NN-DSC";
}

std::string encode_dataset(const Dataset& data) {
  detail::ByteWriter w;
  w.bytes(kDatasetMagic);
  w.u32(kDatasetCacheVersion);
  w.u8(1);
  w.u32(static_cast<std::uint32_t>(data.name.size()));
  w.bytes(data.name);
  w.u64(data.size());
  w.i32(data.grid_n());
  for (std::size_t i = 0; i < data.size(); ++i) {
    w.i32(data.labels[i]);
    for (double v : data.images[i].values()) w.f64(v);
  }
  w.u64(fnv1a64(w.str()));
  return w.take();
}

Dataset decode_dataset(std::string_view bytes) {
  detail::ByteReader r(bytes, "dataset cache");
  if (r.bytes(kDatasetMagic.size()) != kDatasetMagic) r.fail("bad magic");
  const std::uint32_t version = r.u32();
  if (version != kDatasetCacheVersion) r.fail("unsupported version " + std::to_string(version));
  if (r.u8() != 1) r.fail("unknown endianness tag");
  if (bytes.size() < r.offset() + 8) r.fail("truncated data");
  detail::ByteReader tail(bytes.substr(bytes.size() - 8), "dataset cache");
  if (tail.u64() != fnv1a64(bytes.substr(0, bytes.size() - 8))) r.fail("checksum mismatch");

  detail::ByteReader body(bytes.substr(0, bytes.size() - 8), "dataset cache");
  body.bytes(kDatasetMagic.size() + 5);
  Dataset data;
  const std::uint32_t name_len = body.u32();
  data.name = std::string(body.bytes(name_len));
  const std::uint64_t count = body.u64();
  const int grid_n = body.i32();
  if (count > 0 && (grid_n < 1 || grid_n > 1 << 14)) body.fail("implausible grid size");
  const std::size_t cells = static_cast<std::size_t>(grid_n < 0 ? 0 : grid_n) * grid_n;
  if (count > 0 && body.remaining() / (4 + 8 * cells) < count) body.fail("truncated data");
  for (std::uint64_t i = 0; i < count; ++i) {
    data.labels.push_back(body.i32());
    std::vector<double> px(cells);
    for (double& v : px) v = body.f64();
    data.images.emplace_back(grid_n, std::move(px));
  }
  if (body.remaining() != 0) body.fail("trailing bytes");
  data.validate();
  return data;
}

void save_dataset_cache(const std::string& path, const Dataset& data) {
  detail::write_file(path, encode_dataset(data));
}

Dataset load_dataset_cache(const std::string& path) {
  return decode_dataset(detail::read_file(path));
}

}  // namespace d2nn
