#pragma once

#include <cstdint>
#include <vector>

#include "mifkit/groupspec.hpp"
#include "mifkit/util.hpp"
#include "mifkit/words.hpp"

namespace mifkit {

struct WalkConfig {
  uint64_t steps = 0;
  uint64_t trials = 1;
  uint64_t seed = 0;
  double beta = 0.0;  // lazy-hold probability per step
};

// Product of `steps` iid uniform symmetric generators (holding with
// probability beta). The trace is recorded in the element's word;
// deterministic per (seed, trial_index).
GroupElement sample_walk(const GroupSpec& spec, const WalkConfig& cfg, uint64_t trial_index = 0);

struct DecayRow {
  uint64_t k = 0;
  uint64_t hits = 0;
  uint64_t trials = 0;
  double p_hat = 0.0;
  double lo95 = 0.0;
  double hi95 = 0.0;
};

struct DecayCurve {
  std::vector<DecayRow> rows;
  LinFit fit;           // log p_hat against k, rows with hits > 0
  uint64_t exact_confirmations = 0;  // times the mod-p fast path saw identity
};

// Empirical Pr(w(gamma_k) = 1) for k in [kmin, kmax]. Identity testing uses
// a random large-prime reduction with exact confirmation of every equality
// (soundness: a nonidentity mod p is a certified nonidentity).
DecayCurve decay_curve(const GroupSpec& spec, const MixedWord& w, uint64_t kmin, uint64_t kmax,
                       uint64_t trials, uint64_t seed, unsigned threads = 0);

// true iff w(gamma) is exactly the identity; fast path modulo a large prime,
// exact evaluation whenever the reduction looks like the identity
bool word_vanishes_at(const MixedWord& w, const GroupSpec& spec, const GroupElement& gamma,
                      uint64_t probe_prime, uint64_t seed, uint64_t* exact_checks = nullptr);

}  // namespace mifkit
