#include "vq/fft.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vq/error.h"

namespace vq {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

RealFft::RealFft(std::size_t size) : size_(size) {
  if (size < 2 || (size & (size - 1)) != 0) {
    throw Error(ErrorCode::kInvalidArgument, "FFT size must be a power of two >= 2");
  }
  twiddles_.resize(size / 2);
  for (std::size_t k = 0; k < size / 2; ++k) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(size);
    twiddles_[k] = {std::cos(angle), std::sin(angle)};
  }
  bit_reverse_.resize(size);
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < size) ++bits;
  for (std::size_t i = 0; i < size; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b) {
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
    }
    bit_reverse_[i] = r;
  }
}

void RealFft::transform(std::span<const double> input, std::span<std::complex<double>> spectrum) const {
  std::vector<std::complex<double>> buf(size_);
  const std::size_t n_in = std::min(input.size(), size_);
  for (std::size_t i = 0; i < n_in; ++i) buf[bit_reverse_[i]] = input[i];

  for (std::size_t len = 2; len <= size_; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = size_ / len;
    for (std::size_t start = 0; start < size_; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::complex<double> t = twiddles_[k * stride] * buf[start + k + half];
        buf[start + k + half] = buf[start + k] - t;
        buf[start + k] += t;
      }
    }
  }
  std::copy_n(buf.begin(), std::min(bins(), spectrum.size()), spectrum.begin());
}

void RealFft::power(std::span<const double> input, std::span<double> power_out) const {
  std::vector<std::complex<double>> spec(bins());
  transform(input, spec);
  const std::size_t n = std::min(bins(), power_out.size());
  for (std::size_t k = 0; k < n; ++k) power_out[k] = std::norm(spec[k]);
}

}  // namespace vq
