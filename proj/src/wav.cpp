#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "vq/audio.h"
#include "vq/error.h"

namespace vq {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xFF));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xFF));
}

double decode_sample(const unsigned char* p, int bits, bool is_float) {
  if (is_float) {
    if (bits == 32) {
      std::uint32_t u = read_u32(p);
      float f;
      std::memcpy(&f, &u, sizeof f);
      return f;
    }
    std::uint64_t u = static_cast<std::uint64_t>(read_u32(p)) |
                      (static_cast<std::uint64_t>(read_u32(p + 4)) << 32);
    double d;
    std::memcpy(&d, &u, sizeof d);
    return d;
  }
  switch (bits) {
    case 8:
      return (static_cast<int>(p[0]) - 128) / 128.0;
    case 16:
      return static_cast<std::int16_t>(read_u16(p)) / 32768.0;
    case 24: {
      std::int32_t v = static_cast<std::int32_t>(p[0] | (p[1] << 8) | (p[2] << 16));
      if (v & 0x800000) v -= 0x1000000;
      return v / 8388608.0;
    }
    case 32:
      return static_cast<std::int32_t>(read_u32(p)) / 2147483648.0;
  }
  return 0.0;
}

}  // namespace

WavData read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  }
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const std::string name = path.string();
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw Error(ErrorCode::kUnsupportedFormat, "not a RIFF/WAVE file: " + name);
  }

  WavData wav;
  std::uint16_t format = 0;
  int block_align = 0;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* chunk = bytes.data() + pos;
    std::size_t size = read_u32(chunk + 4);
    std::size_t body = pos + 8;
    std::size_t available = bytes.size() - body;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || size > available) {
        throw Error(ErrorCode::kUnsupportedFormat, "truncated fmt chunk: " + name);
      }
      const unsigned char* f = bytes.data() + body;
      format = read_u16(f);
      wav.channels = read_u16(f + 2);
      wav.sample_rate_hz = static_cast<int>(read_u32(f + 4));
      block_align = read_u16(f + 12);
      wav.bits_per_sample = read_u16(f + 14);
      if (format == kFormatExtensible && size >= 40) {
        format = read_u16(f + 24);  // first two bytes of the subformat GUID
      }
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = bytes.data() + body;
      // Some writers leave the data size unset when streaming.
      data_size = std::min(size, available);
    }
    pos = body + size + (size & 1);
  }

  if (format == 0) {
    throw Error(ErrorCode::kUnsupportedFormat, "missing fmt chunk: " + name);
  }
  if (data == nullptr) {
    throw Error(ErrorCode::kUnsupportedFormat, "missing data chunk: " + name);
  }
  wav.is_float = format == kFormatFloat;
  const int bits = wav.bits_per_sample;
  const bool supported = (format == kFormatPcm && (bits == 8 || bits == 16 || bits == 24 || bits == 32)) ||
                         (format == kFormatFloat && (bits == 32 || bits == 64));
  if (!supported) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "unsupported encoding (format " + std::to_string(format) + ", " +
                    std::to_string(bits) + " bit): " + name);
  }
  if (wav.channels <= 0 || wav.sample_rate_hz <= 0 || block_align != wav.channels * bits / 8) {
    throw Error(ErrorCode::kUnsupportedFormat, "inconsistent fmt header: " + name);
  }

  const std::size_t frames = data_size / static_cast<std::size_t>(block_align);
  const int width = bits / 8;
  wav.channel_samples.assign(wav.channels, std::vector<double>(frames));
  for (std::size_t i = 0; i < frames; ++i) {
    const unsigned char* frame = data + i * block_align;
    for (int c = 0; c < wav.channels; ++c) {
      wav.channel_samples[c][i] = decode_sample(frame + c * width, bits, wav.is_float);
    }
  }
  return wav;
}

void write_wav_channels(const std::filesystem::path& path,
                        const std::vector<std::vector<double>>& channels, int sample_rate_hz,
                        WavEncoding encoding) {
  if (channels.empty() || sample_rate_hz <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "write_wav: need at least one channel and a positive rate");
  }
  const std::size_t frames = channels.front().size();
  for (const auto& ch : channels) {
    if (ch.size() != frames) throw Error(ErrorCode::kInvalidArgument, "write_wav: ragged channels");
  }
  const int bits = encoding == WavEncoding::kPcm16 ? 16 : encoding == WavEncoding::kPcm24 ? 24 : 32;
  const auto n_channels = static_cast<std::uint16_t>(channels.size());
  const std::uint16_t block_align = static_cast<std::uint16_t>(n_channels * bits / 8);
  const std::uint32_t data_size = static_cast<std::uint32_t>(frames * block_align);

  std::vector<unsigned char> out;
  out.reserve(44 + data_size);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put_u32(out, 36 + data_size);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  put_u32(out, 16);
  put_u16(out, encoding == WavEncoding::kFloat32 ? kFormatFloat : kFormatPcm);
  put_u16(out, n_channels);
  put_u32(out, static_cast<std::uint32_t>(sample_rate_hz));
  put_u32(out, static_cast<std::uint32_t>(sample_rate_hz) * block_align);
  put_u16(out, block_align);
  put_u16(out, static_cast<std::uint16_t>(bits));
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put_u32(out, data_size);

  for (std::size_t i = 0; i < frames; ++i) {
    for (const auto& ch : channels) {
      const double x = ch[i];
      switch (encoding) {
        case WavEncoding::kFloat32: {
          float f = static_cast<float>(x);
          std::uint32_t u;
          std::memcpy(&u, &f, sizeof u);
          put_u32(out, u);
          break;
        }
        case WavEncoding::kPcm16: {
          long v = std::lround(std::clamp(x, -1.0, 1.0) * 32768.0);
          v = std::clamp(v, -32768L, 32767L);
          put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
          break;
        }
        case WavEncoding::kPcm24: {
          long v = std::lround(std::clamp(x, -1.0, 1.0) * 8388608.0);
          v = std::clamp(v, -8388608L, 8388607L);
          const auto u = static_cast<std::uint32_t>(v);
          out.push_back(static_cast<unsigned char>(u & 0xFF));
          out.push_back(static_cast<unsigned char>((u >> 8) & 0xFF));
          out.push_back(static_cast<unsigned char>((u >> 16) & 0xFF));
          break;
        }
      }
    }
  }

  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw Error(ErrorCode::kIo, "cannot write " + path.string());
  }
  file.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!file) {
    throw Error(ErrorCode::kIo, "short write to " + path.string());
  }
}

void write_wav(const std::filesystem::path& path, std::span<const double> samples, int sample_rate_hz,
               WavEncoding encoding) {
  write_wav_channels(path, {std::vector<double>(samples.begin(), samples.end())}, sample_rate_hz, encoding);
}

}  // namespace vq
