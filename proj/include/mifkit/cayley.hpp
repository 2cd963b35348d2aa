#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mifkit/modp.hpp"

namespace mifkit {

// Enumerated finite matrix group: elements[0] is the identity, ordering is
// BFS layer then insertion, and perm[s][i] is the index of elements[i] *
// gens[s] (right multiplication, matching walks that append generators).
struct FiniteGroupTable {
  unsigned d = 0;
  uint64_t p = 0;
  std::vector<FpMatrix> elements;
  std::vector<FpMatrix> gens;
  std::vector<std::vector<uint32_t>> perm;

  uint64_t order() const { return elements.size(); }
  std::optional<uint32_t> index_of(const FpMatrix& m) const;

  // permutation action of an arbitrary group member
  std::vector<uint32_t> permutation_of(const FpMatrix& g) const;
};

// Breadth-first closure of a symmetric generator set. Throws Budget if the
// group outgrows `cap` elements.
FiniteGroupTable bfs_closure(const std::vector<FpMatrix>& sym_gens, uint64_t cap = 2'000'000);

// Same, memoized under $MIFKIT_CACHE when set; cache_key should identify
// (group content hash, p, specialization point).
FiniteGroupTable bfs_closure_cached(const std::vector<FpMatrix>& sym_gens, uint64_t cap,
                                    const std::string& cache_key);

uint64_t sl_order(unsigned d, uint64_t p);  // |SL_d(F_p)|, overflow-checked
bool is_generating(const FiniteGroupTable& table);

enum class SpectralMethod { Auto, Dense, Iterative };

struct SpectralReport {
  std::vector<double> eigenvalues;  // dense: full spectrum desc; iterative: converged Ritz values desc
  double lambda1 = 1.0;
  double lambda2_abs = 1.0;
  double gap = 0.0;  // 1 - |lambda_2|, clamped to [0, 1]
  std::string method;
  double residual_tol = 1e-8;
  bool connected = false;
};

inline constexpr uint64_t kDenseSpectralLimit = 5000;

// Markov spectrum of Cay(table, gens). Dense solver up to
// kDenseSpectralLimit vertices, Lanczos with constant-vector deflation
// above; a disconnected graph reports gap 0.
SpectralReport spectral_gap(const FiniteGroupTable& table, SpectralMethod method = SpectralMethod::Auto);
SpectralReport spectral_gap(const FiniteGroupTable& table, const std::vector<FpMatrix>& gens,
                            SpectralMethod method = SpectralMethod::Auto);

// exact k-step distribution of the walk started at v0
std::vector<double> walk_distribution(const FiniteGroupTable& table,
                                      const std::vector<std::vector<uint32_t>>& perms, uint32_t v0,
                                      uint64_t k);

struct RwCheck {
  double prob = 0.0;
  double bound = 0.0;
  bool pass = false;
  bool k_above_threshold = false;
  double threshold = 0.0;  // -log|V| / log(1 - eps)
};

// Exact Pr(x_k in U) for the walk from v0 versus the 2|U|/|V| expander bound.
RwCheck rw_bound_check(const FiniteGroupTable& table, const std::vector<FpMatrix>& gens,
                       const std::vector<uint32_t>& U, uint64_t k, uint32_t v0, double eps);

struct SubgroupMassReport {
  double max_mass = 0.0;
  uint64_t subgroup_order = 0;   // order of the maximizing cyclic subgroup
  uint64_t subgroups_scanned = 0;
};

// Max of mu_X^k over the cyclic subgroups generated by each element (a
// documented proxy family for "all proper subgroups").
SubgroupMassReport subgroup_escape_mass(const FiniteGroupTable& table,
                                        const std::vector<FpMatrix>& gens, uint64_t k);

}  // namespace mifkit
