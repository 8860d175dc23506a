#include "vq/synth.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "vq/error.h"

namespace vq {

namespace {

constexpr int kPulseHalfWidth = 16;
constexpr double kPulseCutoff = 0.9;
constexpr double kFirstPulseS = 0.004;

// Portable draws: the standard distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double symmetric() { return 2.0 * uniform01() - 1.0; }
  double gaussian() {
    const double u1 = std::max(uniform01(), 1e-300);
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 gen_;
};

void validate(const SynthParams& p) {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kInvalidArgument, "synth: " + msg); };
  if (p.sample_rate_hz < 8000) fail("sample rate must be >= 8000 Hz");
  if (!(p.duration_s >= 0.5) || p.duration_s > 600.0) fail("duration must be in [0.5, 600] s");
  if (!(p.f0_hz >= 55.0 && p.f0_hz <= 1000.0)) fail("f0 must be in [55, 1000] Hz");
  if (!(p.peak > 0.0 && p.peak <= 1.0)) fail("peak must be in (0, 1]");
  if (!(p.amount >= 0.0)) fail("amount must be >= 0");
  if (p.kind == SynthKind::kJittered && p.amount >= 50.0) fail("jitter percent must be < 50");
  if (p.kind == SynthKind::kShimmered && p.amount > 20.0) fail("shimmer must be <= 20 dB");
  if (p.kind == SynthKind::kBreathy && p.amount > 10.0) fail("breathy noise ratio must be <= 10");
  double prev = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    if (!(p.formants_hz[k] > prev && p.formants_hz[k] < 0.5 * p.sample_rate_hz)) {
      fail("formants must be ascending and below Nyquist");
    }
    if (!(p.bandwidths_hz[k] > 0.0)) fail("bandwidths must be positive");
    prev = p.formants_hz[k];
  }
}

void resonate(std::vector<double>& x, double hz, double bw, double sr) {
  const double r = std::exp(-std::numbers::pi * bw / sr);
  const double c = 2.0 * r * std::cos(2.0 * std::numbers::pi * hz / sr);
  const double gain = 1.0 - c + r * r;  // unity gain at DC
  double y1 = 0.0;
  double y2 = 0.0;
  for (double& v : x) {
    const double y = gain * v + c * y1 - r * r * y2;
    y2 = y1;
    y1 = y;
    v = y;
  }
}

}  // namespace

std::string to_string(SynthKind kind) {
  switch (kind) {
    case SynthKind::kClean: return "clean";
    case SynthKind::kJittered: return "jittered";
    case SynthKind::kShimmered: return "shimmered";
    case SynthKind::kBreathy: return "breathy";
  }
  return "clean";
}

SynthKind parse_synth_kind(const std::string& text) {
  for (SynthKind k : {SynthKind::kClean, SynthKind::kJittered, SynthKind::kShimmered, SynthKind::kBreathy}) {
    if (text == to_string(k)) return k;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown synth kind '" + text + "'");
}

double jitter_of_periods(const std::vector<double>& periods) {
  if (periods.size() < 2) return 0.0;
  double diff = 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < periods.size(); ++i) {
    sum += periods[i];
    if (i + 1 < periods.size()) diff += std::abs(periods[i] - periods[i + 1]);
  }
  return (diff / static_cast<double>(periods.size() - 1)) / (sum / static_cast<double>(periods.size()));
}

SynthResult synthesize_vowel(const SynthParams& params) {
  validate(params);
  const double sr = params.sample_rate_hz;
  const auto n = static_cast<std::size_t>(std::llround(params.duration_s * sr));
  Rng rng(params.seed);

  SynthResult out;
  const double base_period = 1.0 / params.f0_hz;
  double t = kFirstPulseS;
  while (t < params.duration_s) {
    out.pulse_times.push_back(t);
    double gain = 1.0;
    if (params.kind == SynthKind::kShimmered) gain = std::pow(10.0, params.amount * rng.symmetric() / 20.0);
    out.pulse_amplitudes.push_back(gain);
    double period = base_period;
    if (params.kind == SynthKind::kJittered) period *= 1.0 + params.amount / 100.0 * rng.symmetric();
    t += period;
  }
  for (std::size_t i = 1; i < out.pulse_times.size(); ++i) {
    out.periods.push_back(out.pulse_times[i] - out.pulse_times[i - 1]);
  }

  // Windowed-sinc pulses placed at fractional sample positions.
  std::vector<double> x(n, 0.0);
  for (std::size_t p = 0; p < out.pulse_times.size(); ++p) {
    const double center = out.pulse_times[p] * sr;
    const auto lo = static_cast<long long>(std::ceil(center - kPulseHalfWidth));
    const auto hi = static_cast<long long>(std::floor(center + kPulseHalfWidth));
    for (long long i = std::max(0LL, lo); i <= std::min(static_cast<long long>(n) - 1, hi); ++i) {
      const double d = static_cast<double>(i) - center;
      const double arg = std::numbers::pi * kPulseCutoff * d;
      const double s = std::abs(d) < 1e-12 ? 1.0 : std::sin(arg) / arg;
      const double w = 0.5 + 0.5 * std::cos(std::numbers::pi * d / kPulseHalfWidth);
      x[static_cast<std::size_t>(i)] += out.pulse_amplitudes[p] * kPulseCutoff * s * w;
    }
  }

  std::array<double, 3> bandwidths = params.bandwidths_hz;
  if (params.kind == SynthKind::kBreathy) bandwidths[0] *= 1.0 + 2.0 * params.amount;
  for (std::size_t k = 0; k < 3; ++k) resonate(x, params.formants_hz[k], bandwidths[k], sr);

  if (params.kind == SynthKind::kBreathy && params.amount > 0.0) {
    double voiced_energy = 0.0;
    for (double v : x) voiced_energy += v * v;
    std::vector<double> noise(n);
    double noise_energy = 0.0;
    for (double& v : noise) {
      v = rng.gaussian();
      noise_energy += v * v;
    }
    const double g = std::sqrt(params.amount * voiced_energy / noise_energy);
    for (std::size_t i = 0; i < n; ++i) x[i] += g * noise[i];
  }

  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  if (peak > 0.0) {
    const double g = params.peak / peak;
    for (double& v : x) v *= g;
  }
  out.samples = std::move(x);
  return out;
}

AudioSignal generate_synthetic(const SynthParams& params) {
  auto result = synthesize_vowel(params);
  return AudioSignal(std::move(result.samples), params.sample_rate_hz,
                     "synth:" + to_string(params.kind) + ":" + std::to_string(params.seed));
}

}  // namespace vq
