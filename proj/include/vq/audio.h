#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace vq {

inline constexpr int kCanonicalRate = 16000;

/// Mono PCM in [-1, 1] at a fixed sample rate. Immutable once built.
class AudioSignal {
 public:
  /// Validates: non-empty, finite, |x| <= 1, positive rate.
  AudioSignal(std::vector<double> samples, int sample_rate_hz, std::string source_id = {});

  std::span<const double> samples() const noexcept { return samples_; }
  int sample_rate_hz() const noexcept { return sample_rate_hz_; }
  const std::string& source_id() const noexcept { return source_id_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double duration_s() const noexcept {
    return static_cast<double>(samples_.size()) / sample_rate_hz_;
  }

  /// Copy with every sample multiplied by `gain` (must keep |x| <= 1).
  AudioSignal scaled(double gain) const;
  AudioSignal reversed() const;

 private:
  std::vector<double> samples_;
  int sample_rate_hz_;
  std::string source_id_;
};

/// Raw decoded WAV contents before any conversion.
struct WavData {
  int sample_rate_hz = 0;
  int channels = 0;
  int bits_per_sample = 0;
  bool is_float = false;
  std::vector<std::vector<double>> channel_samples;  ///< per channel, scaled to [-1, 1)
};

enum class WavEncoding { kPcm16, kPcm24, kFloat32 };

WavData read_wav(const std::filesystem::path& path);

void write_wav(const std::filesystem::path& path, std::span<const double> samples,
               int sample_rate_hz, WavEncoding encoding = WavEncoding::kFloat32);
void write_wav_channels(const std::filesystem::path& path,
                        const std::vector<std::vector<double>>& channels, int sample_rate_hz,
                        WavEncoding encoding = WavEncoding::kFloat32);

/// Band-limited (Kaiser-windowed sinc) sample rate conversion. Output length
/// is round(n * to / from).
std::vector<double> resample(std::span<const double> input, int from_rate_hz, int to_rate_hz);

/// Decodes a WAV file, averages channels, resamples to `target_rate` and
/// peak-normalizes only when a sample leaves [-1, 1]. No level normalization.
AudioSignal load_audio(const std::filesystem::path& path, int target_rate = kCanonicalRate);

}  // namespace vq
