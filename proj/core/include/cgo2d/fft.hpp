#pragma once

#include "cgo2d/grid.hpp"

namespace cgo2d {

// Cached complex 2D FFT executor for n x n fields. Plans are created once per
// size with deterministic (estimate-only) planning and reused for the process
// lifetime. Transforms are unnormalized; inverse(forward(f)) == n*n * f.
class Fft2 {
 public:
  static const Fft2& get(int n);

  void forward(Field& f) const;
  void inverse(Field& f) const;

  Fft2(const Fft2&) = delete;
  Fft2& operator=(const Fft2&) = delete;
  ~Fft2();

 private:
  explicit Fft2(int n);
  void run(bool forward, Field& f) const;
  struct Impl;
  Impl* impl_;
};

// Zero-pad an N x N field into the lower-left corner of a 2N x 2N field.
Field pad_double(const Field& f);

// Crop the lower-left N x N corner of a 2N x 2N field.
Field crop_half(const Field& f);

// DFT sample frequencies 2*pi*fftfreq(n, d=h): index m -> 2*pi*m'/(n*h) with
// m' = m for m < n/2 and m - n otherwise.
Eigen::ArrayXd fft_frequencies(int n, double h);

// Circular convolution through the frequency domain: ifft(fft(a) .* kernel_hat),
// normalized. `a` and `kernel_hat` must share the same square size.
Field convolve_periodic(const Field& a, const Field& kernel_hat);

}  // namespace cgo2d
