#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "d2nn/grid.hpp"

namespace d2nn {

/// Labelled square grayscale images with pixels in [0,1].
struct Dataset {
  std::string name;
  std::vector<RealGrid> images;
  std::vector<int> labels;

  std::size_t size() const noexcept { return labels.size(); }
  int grid_n() const noexcept { return images.empty() ? 0 : images.front().n(); }
  /// Throws kConsistency on length or shape mismatch, kInvalidInput on
  /// out-of-range labels or pixels.
  void validate() const;

  bool operator==(const Dataset&) const = default;
};

// IDX (big-endian) parsing.
inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

/// Images as byte/255. Throws kFormat on a wrong magic (naming the value
/// seen) or non-square images, kIo with the byte offset when truncated.
std::vector<RealGrid> parse_idx_images(std::string_view bytes, std::optional<std::size_t> limit = {});
std::vector<int> parse_idx_labels(std::string_view bytes, std::optional<std::size_t> limit = {});

/// Reads an image/label file pair. `limit` keeps the first N samples.
/// kConsistency when the two files disagree on the sample count.
Dataset load_idx(const std::string& images_path, const std::string& labels_path,
                 std::optional<std::size_t> limit = {}, std::string name = "idx");

/// Area-weighted box resampling to grid_n x grid_n (grid_n >= 8). Every
/// source pixel spreads its value over the output pixels it overlaps, so
/// constants and the global mean are preserved.
RealGrid resample(const RealGrid& image, int grid_n);
Dataset resample(const Dataset& data, int grid_n);

struct SplitFractions {
  double train = 1.0;
  double val = 0.0;
  double test = 0.0;

  bool operator==(const SplitFractions&) const = default;
};

/// Index sets into a dataset. val and test are kept in ascending order.
struct Splits {
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
  std::vector<std::size_t> test;
};

/// Seeded permutation cut by the fractions (which must sum to 1 within 1e-9).
Splits split_indices(std::size_t n, const SplitFractions& fractions, std::uint64_t seed);

using Batch = std::vector<std::size_t>;

/// Shuffles `split` with seed + epoch and cuts it into batches; the last
/// batch may be short. Throws kEmptySplit on an empty split.
std::vector<Batch> epoch_batches(std::span<const std::size_t> split, int batch_size,
                                 std::uint64_t seed, int epoch);

/// In-order batches of a split (evaluation; never shuffled).
std::vector<Batch> ordered_batches(std::span<const std::size_t> split, int batch_size);

/// Two classes of Gaussian blobs: class 0 centered in the left half,
/// class 1 in the right half, with seeded position jitter. Labels alternate
/// 0,1,0,1,... so the classes are balanced.
Dataset synthetic_two_blob(int n, int grid_n, std::uint64_t seed);

/// Uniform-noise images with uniformly random labels 0..9 (chance-level
/// fixtures).
Dataset synthetic_noise(int n, int grid_n, std::uint64_t seed);

inline constexpr std::uint32_t kDatasetCacheVersion = 1;

/// Versioned little-endian cache: "D2NN-DSC" | u32 version | u8 endianness |
/// name | count | grid_n | (label, pixels)* | u64 FNV-1a.
std::string encode_dataset(const Dataset& data);
Dataset decode_dataset(std::string_view bytes);
void save_dataset_cache(const std::string& path, const Dataset& data);
Dataset load_dataset_cache(const std::string& path);

}  // namespace d2nn
