#include "sbp/mc.hpp"

#include <cmath>
#include <cstdlib>
#include <map>
#include <string>
#include <thread>

#include "sbp/counts.hpp"
#include "sbp/rng.hpp"
#include "sbp/sylow.hpp"

namespace sbp {

unsigned default_thread_count() {
  if (const char* env = std::getenv("SBP_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<unsigned>(value);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace {

void validate(const SimulationConfig& cfg) {
  if (cfg.chains < 1) throw std::invalid_argument("simulation needs at least one chain");
  if (cfg.t_max < 1) throw std::invalid_argument("simulation needs t_max >= 1");
  const SylowContext ctx(cfg.p, cfg.k);
  if (cfg.start && cfg.start->degree() != ctx.n()) {
    throw std::invalid_argument("start permutation has degree " + std::to_string(cfg.start->degree()) + ", expected " +
                                std::to_string(ctx.n()));
  }
}

using Counts = std::vector<std::vector<std::uint64_t>>;

void run_chains(const SylowContext& ctx, const SimulationConfig& cfg, const Permutation& start, std::uint64_t first,
                std::uint64_t last, Counts& counts) {
  for (std::uint64_t b = first; b < last; ++b) {
    Rng rng(derive_seed(cfg.seed, b));
    Permutation sigma = start;
    for (unsigned t = 1; t <= cfg.t_max; ++t) {
      sigma = burnside_step(ctx, sigma, rng);
      ++counts[t - 1][coset_exponent_T(ctx, sigma) - cfg.k];
    }
  }
}

}  // namespace

EmpiricalCurve run_simulation(const SimulationConfig& cfg) {
  validate(cfg);
  const SylowContext ctx(cfg.p, cfg.k);
  const Permutation start = cfg.start ? *cfg.start : identity(ctx.n());
  const std::size_t width = cfg.k + 1;

  std::uint64_t threads = cfg.threads == 0 ? default_thread_count() : cfg.threads;
  if (threads > cfg.chains) threads = cfg.chains;
  std::vector<Counts> partial(threads, Counts(cfg.t_max, std::vector<std::uint64_t>(width, 0)));
  {
    std::vector<std::thread> workers;
    for (std::uint64_t w = 0; w < threads; ++w) {
      const std::uint64_t first = cfg.chains * w / threads;
      const std::uint64_t last = cfg.chains * (w + 1) / threads;
      if (w + 1 == threads) {
        run_chains(ctx, cfg, start, first, last, partial[w]);
      } else {
        workers.emplace_back(
            [&, first, last, w] { run_chains(ctx, cfg, start, first, last, partial[w]); });
      }
    }
    for (auto& worker : workers) worker.join();
  }

  EmpiricalCurve curve;
  curve.p = cfg.p;
  curve.k = cfg.k;
  curve.chains = cfg.chains;
  curve.t_max = cfg.t_max;
  curve.counts.assign(cfg.t_max, std::vector<std::uint64_t>(width, 0));
  for (const auto& part : partial) {
    for (unsigned t = 0; t < cfg.t_max; ++t) {
      for (std::size_t a = 0; a < width; ++a) curve.counts[t][a] += part[t][a];
    }
  }

  const auto table = build_table(cfg.p, cfg.k);
  std::vector<double> pi(width);
  for (std::size_t a = 0; a < width; ++a) {
    BigRational q(table.f[a], table.Z);
    q.canonicalize();
    pi[a] = q.get_d();
  }
  const double chains = static_cast<double>(cfg.chains);
  for (unsigned t = 0; t < cfg.t_max; ++t) {
    std::vector<double> mu(width);
    double tv = 0;
    double se = 0;
    for (std::size_t a = 0; a < width; ++a) {
      mu[a] = static_cast<double>(curve.counts[t][a]) / chains;
      tv += std::fabs(mu[a] - pi[a]);
      se += std::sqrt(mu[a] * (1 - mu[a]) / chains);
    }
    curve.mu_hat.push_back(std::move(mu));
    curve.tv_hat.push_back(tv / 2);
    curve.std_error.push_back(se / 2);
  }
  return curve;
}

SamplerTest test_R_binomial(unsigned p, unsigned k, const Permutation& sigma, std::uint64_t draws, Rng& rng) {
  const SylowContext ctx(p, k);
  if (sigma.degree() != ctx.n()) throw std::invalid_argument("test_R_binomial: σ has the wrong degree");
  const unsigned a = coset_exponent_T(ctx, sigma);
  const unsigned trials = 2 * k - a;
  SamplerTest test;
  test.name = "stabilizer weight ~ Binomial(" + std::to_string(trials) + ", (p-1)/p) at p=" + std::to_string(p) +
              " k=" + std::to_string(k);
  test.draws = draws;
  test.support = trials + 1;
  std::vector<std::uint64_t> observed(trials + 1, 0);
  for (std::uint64_t i = 0; i < draws; ++i) {
    const unsigned r = weight_R(sample_stabilizer(ctx, sigma, rng).g_exponents);
    if (r > trials) {
      ++test.outside;
    } else {
      ++observed[r];
    }
  }
  test.chi = chi_square_gof(observed, binomial_pmf(trials, static_cast<double>(p - 1) / p));
  return test;
}

namespace {

struct FixedPointSearch {
  const Permutation& h;
  std::vector<std::vector<Permutation::point_type>> g_cycles;
  std::vector<Permutation::point_type> image;
  std::vector<bool> used;
  std::vector<Permutation> found;
  std::size_t limit;

  void search(std::size_t cycle) {
    if (cycle == g_cycles.size()) {
      if (found.size() == limit) {
        throw SupportTooLarge("fixed-point set has more than " + std::to_string(limit) + " elements");
      }
      found.push_back(Permutation::from_images(image));
      return;
    }
    const auto& cyc = g_cycles[cycle];
    const std::size_t n = image.size();
    for (Permutation::point_type b = 0; b < n; ++b) {
      // τ(g^i c) = h^i(b); consistent iff the images are unused and h^L b = b.
      std::vector<Permutation::point_type> images;
      Permutation::point_type x = b;
      bool ok = true;
      for (std::size_t i = 0; i < cyc.size() && ok; ++i) {
        if (used[x]) {
          ok = false;
          break;
        }
        for (auto y : images) ok = ok && y != x;
        images.push_back(x);
        x = h[x];
      }
      if (!ok || x != b) continue;
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        image[cyc[i]] = images[i];
        used[images[i]] = true;
      }
      search(cycle + 1);
      for (auto y : images) used[y] = false;
    }
  }
};

}  // namespace

std::vector<Permutation> enumerate_fixed_points(const Permutation& h, const Permutation& g, std::size_t limit) {
  if (h.degree() != g.degree()) throw std::invalid_argument("enumerate_fixed_points: degree mismatch");
  const std::size_t n = g.degree();
  FixedPointSearch s{h, {}, std::vector<Permutation::point_type>(n, 0), std::vector<bool>(n, false), {}, limit};
  std::vector<bool> seen(n, false);
  for (Permutation::point_type c = 0; c < n; ++c) {
    if (seen[c]) continue;
    std::vector<Permutation::point_type> cyc;
    for (auto x = c; !seen[x]; x = g[x]) {
      seen[x] = true;
      cyc.push_back(x);
    }
    s.g_cycles.push_back(std::move(cyc));
  }
  s.search(0);
  return std::move(s.found);
}

SamplerTest test_fixed_point_uniformity(unsigned p, unsigned k, const Permutation& h, const Permutation& g,
                                        std::uint64_t draws, Rng& rng) {
  const SylowContext ctx(p, k);
  if (h.degree() != ctx.n() || g.degree() != ctx.n()) {
    throw std::invalid_argument("test_fixed_point_uniformity: h and g must have degree pk");
  }
  const auto support = enumerate_fixed_points(h, g, 200);
  if (support.empty()) throw std::invalid_argument("test_fixed_point_uniformity: h and g are not conjugate");
  std::map<Permutation, std::size_t> index;
  for (std::size_t i = 0; i < support.size(); ++i) index.emplace(support[i], i);

  SamplerTest test;
  test.name = "fixed-point sampler uniform on " + std::to_string(support.size()) + " states at p=" +
              std::to_string(p) + " k=" + std::to_string(k);
  test.draws = draws;
  test.support = support.size();
  std::vector<std::uint64_t> observed(support.size(), 0);
  for (std::uint64_t i = 0; i < draws; ++i) {
    auto it = index.find(sample_fixed_points(ctx, h, g, rng));
    if (it == index.end()) {
      ++test.outside;
    } else {
      ++observed[it->second];
    }
  }
  test.chi = chi_square_gof(observed, std::vector<double>(support.size(), 1.0 / static_cast<double>(support.size())));
  return test;
}

}  // namespace sbp
