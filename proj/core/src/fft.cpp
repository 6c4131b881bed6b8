#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

#include "d2nn/error.hpp"

namespace d2nn::detail {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwDeleter {
  void operator()(std::complex<double>* p) const { fftw_free(p); }
};

fftw_complex* as_fftw(std::span<std::complex<double>> data) {
  return reinterpret_cast<fftw_complex*>(data.data());
}

}  // namespace

std::shared_ptr<const Fft2d> Fft2d::for_size(int n) {
  // Lock first: the mutex must be constructed before (so destroyed after)
  // the cache whose entries lock it on destruction.
  std::lock_guard lock(planner_mutex());
  static std::map<int, std::shared_ptr<const Fft2d>> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::shared_ptr<const Fft2d> plan(new Fft2d(n));
  cache.emplace(n, plan);
  return plan;
}

// Called with planner_mutex held.
Fft2d::Fft2d(int n) : n_(n) {
  if (n < 1) throw Error(ErrorCode::kInvalidGeometry, "fft size must be positive");
  const std::size_t count = static_cast<std::size_t>(n) * n;
  auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * count));
  if (buf == nullptr) throw std::bad_alloc();
  forward_plan_ = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_free(buf);
}

Fft2d::~Fft2d() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void Fft2d::forward(std::span<std::complex<double>> data) const {
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), as_fftw(data), as_fftw(data));
}

void Fft2d::inverse(std::span<std::complex<double>> data) const {
  fftw_execute_dft(static_cast<fftw_plan>(inverse_plan_), as_fftw(data), as_fftw(data));
}

std::span<std::complex<double>> scratch(std::size_t count) {
  thread_local std::unique_ptr<std::complex<double>, FftwDeleter> buffer;
  thread_local std::size_t capacity = 0;
  if (capacity < count) {
    buffer.reset(static_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * count)));
    if (!buffer) throw std::bad_alloc();
    capacity = count;
  }
  return {buffer.get(), count};
}

}  // namespace d2nn::detail
