#include "mifkit/walk.hpp"

#include <atomic>
#include <cmath>

#include "mifkit/error.hpp"
#include "mifkit/modp.hpp"
#include "mifkit/primes.hpp"
#include "mifkit/rng.hpp"

namespace mifkit {

GroupElement sample_walk(const GroupSpec& spec, const WalkConfig& cfg, uint64_t trial_index) {
  Rng rng(cfg.seed, trial_index);
  GroupElement acc = ge_identity(spec.d, spec.ctx);
  for (uint64_t step = 0; step < cfg.steps; ++step) {
    if (cfg.beta > 0 && rng.coin(cfg.beta)) continue;
    unsigned j = static_cast<unsigned>(rng.below(spec.sym_size()));
    acc = mat_mul(acc, spec.sym(j));
  }
  return acc;
}

bool word_vanishes_at(const MixedWord& w, const GroupSpec& spec, const GroupElement& gamma,
                      uint64_t probe_prime, uint64_t seed, uint64_t* exact_checks) {
  Specialization phi{probe_prime, {}};
  if (spec.ctx.t > 0) phi = sample_hom(probe_prime, spec, seed, 0xFA57F00D);
  FpMatrix gp = reduce_matrix(gamma, phi);
  FpMatrix wp = evaluate_mod_p(w, spec, gp, phi);
  if (!wp.is_identity()) return false;  // sound: nonidentity mod p
  if (exact_checks) ++*exact_checks;
  return evaluate(w, spec, gamma).mat.is_identity();
}

DecayCurve decay_curve(const GroupSpec& spec, const MixedWord& w, uint64_t kmin, uint64_t kmax,
                       uint64_t trials, uint64_t seed, unsigned threads) {
  if (w.trivial()) fail_domain("decay_curve: word must be nontrivial");
  if (trials < 1) fail_domain("decay_curve: trials must be >= 1");
  if (kmax < kmin) fail_domain("decay_curve: empty k range");

  // one large probe prime per run, derived from the seed
  Rng prng(seed, 0x9B1ED);
  uint64_t probe = *first_prime_in(1'000'000'007ULL + prng.below(1'000'000'000ULL), UINT64_MAX);

  DecayCurve curve;
  const std::size_t nk = static_cast<std::size_t>(kmax - kmin + 1);
  curve.rows.resize(nk);
  std::vector<uint64_t> exact_counts(nk, 0);

  parallel_for(nk, threads, [&](std::size_t slot) {
    uint64_t k = kmin + slot;
    uint64_t hits = 0, exact = 0;
    for (uint64_t trial = 0; trial < trials; ++trial) {
      WalkConfig wc{k, trials, seed, 0.0};
      GroupElement gamma = sample_walk(spec, wc, (k << 32) | trial);
      if (word_vanishes_at(w, spec, gamma, probe, seed, &exact)) ++hits;
    }
    DecayRow row;
    row.k = k;
    row.hits = hits;
    row.trials = trials;
    row.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
    WilsonInterval wi = wilson95(hits, trials);
    row.lo95 = wi.lo;
    row.hi95 = wi.hi;
    curve.rows[slot] = row;
    exact_counts[slot] = exact;
  });

  for (uint64_t c : exact_counts) curve.exact_confirmations += c;
  std::vector<double> xs, ys;
  for (const auto& row : curve.rows) {
    if (row.hits > 0) {
      xs.push_back(static_cast<double>(row.k));
      ys.push_back(std::log(row.p_hat));
    }
  }
  curve.fit = linear_fit(xs, ys);
  return curve;
}

}  // namespace mifkit
