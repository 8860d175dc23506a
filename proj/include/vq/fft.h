#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace vq {

/// Radix-2 FFT of a zero-padded real block. Twiddles are precomputed; a
/// single instance is safe to use from several threads (transform() is const).
class RealFft {
 public:
  explicit RealFft(std::size_t size);

  std::size_t size() const noexcept { return size_; }
  std::size_t bins() const noexcept { return size_ / 2 + 1; }

  /// Writes bins() complex values. `input` shorter than size() is zero-padded.
  void transform(std::span<const double> input, std::span<std::complex<double>> spectrum) const;

  /// |X[k]|^2 for k in [0, bins()).
  void power(std::span<const double> input, std::span<double> power_out) const;

 private:
  std::size_t size_;
  std::vector<std::complex<double>> twiddles_;
  std::vector<std::size_t> bit_reverse_;
};

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace vq
