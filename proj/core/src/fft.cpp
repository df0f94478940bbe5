#include "cgo2d/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace cgo2d {

struct Fft2::Impl {
  int n = 0;
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  std::mutex mtx;
};

Fft2::Fft2(int n) : impl_(new Impl) {
  impl_->n = n;
  impl_->buf = fftw_alloc_complex(std::size_t(n) * n);
  if (!impl_->buf) throw std::bad_alloc();
  // Estimate-only planning: the plan choice is deterministic and input-independent.
  impl_->fwd = fftw_plan_dft_2d(n, n, impl_->buf, impl_->buf, FFTW_FORWARD, FFTW_ESTIMATE);
  impl_->bwd = fftw_plan_dft_2d(n, n, impl_->buf, impl_->buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!impl_->fwd || !impl_->bwd) throw std::runtime_error("Fft2: planning failed");
}

Fft2::~Fft2() {
  fftw_destroy_plan(impl_->fwd);
  fftw_destroy_plan(impl_->bwd);
  fftw_free(impl_->buf);
  delete impl_;
}

const Fft2& Fft2::get(int n) {
  static std::mutex cache_mtx;
  static std::map<int, std::unique_ptr<Fft2>> cache;
  std::lock_guard<std::mutex> lock(cache_mtx);
  auto& slot = cache[n];
  if (!slot) slot.reset(new Fft2(n));
  return *slot;
}

void Fft2::run(bool forward, Field& f) const {
  const int n = impl_->n;
  if (f.rows() != n || f.cols() != n) throw std::invalid_argument("Fft2: size mismatch");
  std::lock_guard<std::mutex> lock(impl_->mtx);
  static_assert(sizeof(fftw_complex) == sizeof(cplx));
  std::memcpy(impl_->buf, f.data(), std::size_t(n) * n * sizeof(cplx));
  fftw_execute(forward ? impl_->fwd : impl_->bwd);
  std::memcpy(f.data(), impl_->buf, std::size_t(n) * n * sizeof(cplx));
}

void Fft2::forward(Field& f) const { run(true, f); }
void Fft2::inverse(Field& f) const { run(false, f); }

Field pad_double(const Field& f) {
  const int N = int(f.rows());
  Field out = Field::Zero(2 * N, 2 * N);
  out.topLeftCorner(N, N) = f;
  return out;
}

Field crop_half(const Field& f) {
  const int n = int(f.rows());
  return f.topLeftCorner(n / 2, n / 2);
}

Eigen::ArrayXd fft_frequencies(int n, double h) {
  Eigen::ArrayXd xi(n);
  const double scale = 2.0 * std::numbers::pi / (n * h);
  for (int m = 0; m < n; ++m) xi[m] = scale * (m < (n + 1) / 2 ? m : m - n);
  return xi;
}

Field convolve_periodic(const Field& a, const Field& kernel_hat) {
  const int n = int(a.rows());
  if (kernel_hat.rows() != n || kernel_hat.cols() != n)
    throw std::invalid_argument("convolve_periodic: size mismatch");
  const Fft2& fft = Fft2::get(n);
  Field work = a;
  fft.forward(work);
  work *= kernel_hat;
  fft.inverse(work);
  work /= double(n) * double(n);
  return work;
}

}  // namespace cgo2d
