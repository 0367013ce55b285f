#include "btq/mc.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "btq/rng.hpp"

namespace btq {

double McEstimate::max_z(const Matrix& target, double floor) const {
  if (target.rows() != mean.rows() || target.cols() != mean.cols())
    throw std::invalid_argument("max_z: target shape mismatch");
  double z = 0.0;
  for (Eigen::Index i = 0; i < mean.rows(); ++i)
    for (Eigen::Index j = 0; j < mean.cols(); ++j) {
      const double dev = std::abs(mean(i, j) - target(i, j));
      const double se = stderr_(i, j);
      if (se < floor) {
        if (dev > 1e-10) return std::numeric_limits<double>::infinity();
        continue;
      }
      z = std::max(z, dev / se);
    }
  return z;
}

namespace {

struct Partial {
  std::vector<Matrix> sum1;             // per integrand: sum of values
  std::vector<Eigen::MatrixXd> sum2;    // per integrand: sum of |value|^2
};

}  // namespace

std::vector<McEstimate> mc_integrate_many(const std::vector<SampleFn>& fs, const DomainSpec& dom,
                                          int N, int n, const McOptions& opt) {
  if (opt.samples < 2) throw std::invalid_argument("mc_integrate: needs at least 2 samples");
  if (fs.empty()) return {};
  const std::uint64_t blocks = (opt.samples + opt.block - 1) / opt.block;
  std::vector<Partial> partials(blocks);

  auto run_block = [&](std::uint64_t b) {
    Partial& p = partials[b];
    const std::uint64_t lo = b * opt.block;
    const std::uint64_t hi = std::min(opt.samples, lo + opt.block);
    for (std::uint64_t i = lo; i < hi; ++i) {
      std::mt19937_64 rng = sample_engine(opt.seed, i);
      const NormalTuple Z = mu_sample(dom, N, n, rng);
      for (std::size_t q = 0; q < fs.size(); ++q) {
        const Matrix v = fs[q](Z);
        if (p.sum1.size() <= q) {
          p.sum1.push_back(Matrix::Zero(v.rows(), v.cols()));
          p.sum2.push_back(Eigen::MatrixXd::Zero(v.rows(), v.cols()));
        }
        p.sum1[q] += v;
        p.sum2[q] += v.cwiseAbs2();
      }
    }
  };

  const int workers = std::max(1, opt.workers);
  if (workers == 1 || blocks == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::uint64_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) run_block(b);
      });
    for (auto& t : pool) t.join();
  }

  // deterministic merge in block index order
  std::vector<McEstimate> out(fs.size());
  for (std::size_t q = 0; q < fs.size(); ++q) {
    Matrix s1 = partials[0].sum1[q];
    Eigen::MatrixXd s2 = partials[0].sum2[q];
    for (std::uint64_t b = 1; b < blocks; ++b) {
      s1 += partials[b].sum1[q];
      s2 += partials[b].sum2[q];
    }
    const double nsamp = static_cast<double>(opt.samples);
    McEstimate est;
    est.samples = opt.samples;
    est.mean = s1 / nsamp;
    est.stderr_.resize(s2.rows(), s2.cols());
    for (Eigen::Index i = 0; i < s2.rows(); ++i)
      for (Eigen::Index j = 0; j < s2.cols(); ++j) {
        const double var =
            std::max(0.0, (s2(i, j) / nsamp - std::norm(est.mean(i, j))) * nsamp / (nsamp - 1.0));
        est.stderr_(i, j) = std::sqrt(var / nsamp);
      }
    out[q] = std::move(est);
  }
  return out;
}

McEstimate mc_integrate(const SampleFn& f, const DomainSpec& dom, int N, int n,
                        const McOptions& opt) {
  return mc_integrate_many({f}, dom, N, n, opt).front();
}

}  // namespace btq
