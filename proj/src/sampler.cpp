#include "thermalwp/sampler.hpp"

#include "thermalwp/correlation.hpp"

#include <atomic>
#include <thread>

namespace thermalwp {

namespace {

// Fixed-size sample blocks: each block's partial sums are accumulated in
// index order by whichever worker claims it, and block partials are combined
// in block order afterwards. The reduction is therefore bit-identical for
// any worker count.
constexpr std::uint64_t kBlockSize = 8192;

template <class Accumulator, class PerIndex>
Accumulator reduce_indexed(std::uint64_t n_samples, int n_threads, const PerIndex& per_index) {
  const std::uint64_t n_blocks = (n_samples + kBlockSize - 1) / kBlockSize;
  std::vector<Accumulator> partials(n_blocks);
  std::atomic<std::uint64_t> next_block{0};
  auto worker = [&] {
    for (std::uint64_t b = next_block.fetch_add(1); b < n_blocks; b = next_block.fetch_add(1)) {
      Accumulator acc;
      const std::uint64_t end = std::min(n_samples, (b + 1) * kBlockSize);
      for (std::uint64_t i = b * kBlockSize; i < end; ++i) acc.add(per_index(i));
      partials[b] = acc;
    }
  };
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  Accumulator total;
  for (const auto& p : partials) total.merge(p);
  return total;
}

struct RealMoments {
  double sum = 0.0;
  double sum_sq = 0.0;
  void add(double v) {
    sum += v;
    sum_sq += v * v;
  }
  void merge(const RealMoments& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
};

struct ComplexMoments {
  RealMoments re, im;
  void add(cplx v) {
    re.add(v.real());
    im.add(v.imag());
  }
  void merge(const ComplexMoments& o) {
    re.merge(o.re);
    im.merge(o.im);
  }
};

double std_error_of_mean(const RealMoments& m, std::uint64_t n) {
  if (n < 2) return 0.0;
  const double mean = m.sum / static_cast<double>(n);
  const double var = std::max(0.0, m.sum_sq / static_cast<double>(n) - mean * mean);
  return std::sqrt(var / static_cast<double>(n - 1));
}

void require_sample_count(std::uint64_t n_samples) {
  if (n_samples < 2) throw std::domain_error("Monte Carlo estimators need n_samples >= 2");
}

}  // namespace

PacketEnsembleSample sample_ensemble(int n, double box_side, const WidthSplit& split,
                                     const RngStream& rng, std::uint64_t index, double hbar) {
  if (n < 1) throw std::domain_error("sample_ensemble: need at least one particle");
  if (!(box_side > 0.0) || !std::isfinite(box_side))
    throw std::domain_error("sample_ensemble: box_side must be positive and finite");
  const bool degenerate = split.degenerate_momentum();
  const double sigma_p = degenerate ? 0.0 : momentum_sigma(split.lambda_m, hbar);
  PacketEnsembleSample sample;
  sample.draws.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto base = static_cast<std::uint32_t>(6 * i);
    ParticleDraw& d = sample.draws[static_cast<std::size_t>(i)];
    for (int a = 0; a < 3; ++a)
      d.position[a] = (rng.uniform01(index, base + static_cast<std::uint32_t>(a)) - 0.5) * box_side;
    if (degenerate) {
      d.momentum = Vec3::Zero();
    } else {
      for (int a = 0; a < 3; ++a)
        d.momentum[a] = sigma_p * rng.normal01(index, base + 3 + static_cast<std::uint32_t>(a));
    }
  }
  return sample;
}

McEstimateC mc_thermal_g1(const SpacetimePoint& x1, const SpacetimePoint& x2,
                          const ThermalParams& params, double volume, const WidthSplit& split,
                          std::uint64_t n_samples, const RngStream& rng, int n_threads) {
  require_sample_count(n_samples);
  if (!(volume > 0.0) || !std::isfinite(volume))
    throw std::domain_error("mc_thermal_g1: volume must be positive and finite");
  const double lambda = thermal_wavelength(params);
  if (std::abs(split.lambda - lambda) > 1e-12 * lambda)
    throw std::invalid_argument("mc_thermal_g1: split does not belong to these thermal parameters");
  const double box_side = std::cbrt(volume);
  const auto moments = reduce_indexed<ComplexMoments>(n_samples, n_threads, [&](std::uint64_t i) {
    const PacketEnsembleSample s = sample_ensemble(1, box_side, split, rng, i, params.hbar);
    const WavePacket wp(s.draws[0].position, s.draws[0].momentum, split.lambda_s);
    return packet_g1(wp, x1, x2, params);
  });
  McEstimateC est;
  est.n_samples = n_samples;
  const auto n = static_cast<double>(n_samples);
  est.value = cplx(moments.re.sum / n, moments.im.sum / n);
  est.std_error =
      std::max(std_error_of_mean(moments.re, n_samples), std_error_of_mean(moments.im, n_samples));
  return est;
}

McEstimate mc_norm_mean(int n, double box_side, const WidthSplit& split, Statistics statistics,
                        std::uint64_t n_samples, const RngStream& rng, int n_threads,
                        double hbar) {
  require_sample_count(n_samples);
  const auto moments = reduce_indexed<RealMoments>(n_samples, n_threads, [&](std::uint64_t i) {
    const PacketEnsembleSample s = sample_ensemble(n, box_side, split, rng, i, hbar);
    std::vector<WavePacket> packets;
    packets.reserve(s.draws.size());
    for (const ParticleDraw& d : s.draws) packets.emplace_back(d.position, d.momentum, split.lambda_s);
    return state_norm_periodic(PacketSet(std::move(packets), statistics), box_side, hbar);
  });
  McEstimate est;
  est.n_samples = n_samples;
  est.value = moments.sum / static_cast<double>(n_samples);
  est.std_error = std_error_of_mean(moments, n_samples);
  return est;
}

McEstimate partition_mc(int n, double volume, const WidthSplit& split, Statistics statistics,
                        const RngStream& rng, std::uint64_t n_samples, int n_threads) {
  if (!(volume > 0.0) || !std::isfinite(volume))
    throw std::domain_error("partition_mc: volume must be positive and finite");
  McEstimate est = mc_norm_mean(n, std::cbrt(volume), split, statistics, n_samples, rng, n_threads);
  const double z1 = volume / (split.lambda * split.lambda * split.lambda);
  double scale = 1.0;
  for (int i = 1; i <= n; ++i) scale *= z1 / static_cast<double>(i);
  est.value *= scale;
  est.std_error *= scale;
  return est;
}

}  // namespace thermalwp
