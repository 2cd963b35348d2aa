#include "mifkit/cayley.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <set>
#include <unordered_map>

#include "mifkit/error.hpp"
#include "mifkit/util.hpp"

namespace mifkit {

namespace {

// Elements pack into one u64 when p^{d^2} fits; the experiments stay far
// inside that range.
bool packable(unsigned d, uint64_t p) {
  unsigned __int128 acc = 1;
  for (unsigned i = 0; i < d * d; ++i) {
    acc *= p;
    if (acc > UINT64_MAX) return false;
  }
  return true;
}

uint64_t pack(const FpMatrix& m) {
  uint64_t key = 0;
  for (std::size_t i = m.e.size(); i-- > 0;) key = key * m.p + m.e[i];
  return key;
}

struct Index {
  bool packed;
  std::unordered_map<uint64_t, uint32_t> by_key;
  std::map<std::vector<uint64_t>, uint32_t> by_vec;

  explicit Index(unsigned d, uint64_t p) : packed(packable(d, p)) {}

  std::optional<uint32_t> find(const FpMatrix& m) const {
    if (packed) {
      auto it = by_key.find(pack(m));
      return it == by_key.end() ? std::nullopt : std::optional<uint32_t>(it->second);
    }
    auto it = by_vec.find(m.e);
    return it == by_vec.end() ? std::nullopt : std::optional<uint32_t>(it->second);
  }
  void insert(const FpMatrix& m, uint32_t idx) {
    if (packed) {
      by_key.emplace(pack(m), idx);
    } else {
      by_vec.emplace(m.e, idx);
    }
  }
};

Index build_index(const FiniteGroupTable& t) {
  Index ix(t.d, t.p);
  for (uint32_t i = 0; i < t.elements.size(); ++i) ix.insert(t.elements[i], i);
  return ix;
}

std::vector<std::vector<uint32_t>> perms_for(const FiniteGroupTable& table,
                                             const std::vector<FpMatrix>& gens) {
  Index ix = build_index(table);
  std::vector<std::vector<uint32_t>> perms;
  perms.reserve(gens.size());
  for (const FpMatrix& g : gens) {
    std::vector<uint32_t> pi(table.elements.size());
    for (uint32_t i = 0; i < table.elements.size(); ++i) {
      auto idx = ix.find(fp_mul(table.elements[i], g));
      if (!idx) fail_domain("cayley: generator leads outside the enumerated group");
      pi[i] = *idx;
    }
    perms.push_back(std::move(pi));
  }
  return perms;
}

}  // namespace

std::optional<uint32_t> FiniteGroupTable::index_of(const FpMatrix& m) const {
  Index ix = build_index(*this);
  return ix.find(m);
}

std::vector<uint32_t> FiniteGroupTable::permutation_of(const FpMatrix& g) const {
  auto ps = perms_for(*this, {g});
  return ps[0];
}

FiniteGroupTable bfs_closure(const std::vector<FpMatrix>& sym_gens, uint64_t cap) {
  if (sym_gens.empty()) fail_domain("bfs_closure: no generators");
  const unsigned d = sym_gens[0].d;
  const uint64_t p = sym_gens[0].p;
  for (const auto& g : sym_gens) {
    if (g.d != d || g.p != p) fail_domain("bfs_closure: mixed shapes");
    if (fp_det(g) != 1 % p) fail_domain("bfs_closure: generator determinant is not 1");
  }
  FiniteGroupTable t;
  t.d = d;
  t.p = p;
  t.gens = sym_gens;
  Index ix(d, p);
  t.elements.push_back(fp_identity(d, p));
  ix.insert(t.elements[0], 0);
  for (uint32_t head = 0; head < t.elements.size(); ++head) {
    for (const auto& g : sym_gens) {
      FpMatrix next = fp_mul(t.elements[head], g);
      if (!ix.find(next)) {
        if (t.elements.size() >= cap)
          fail_budget("bfs_closure: cap of " + std::to_string(cap) + " elements exceeded");
        ix.insert(next, static_cast<uint32_t>(t.elements.size()));
        t.elements.push_back(std::move(next));
      }
    }
  }
  t.perm = perms_for(t, sym_gens);
  return t;
}

FiniteGroupTable bfs_closure_cached(const std::vector<FpMatrix>& sym_gens, uint64_t cap,
                                    const std::string& cache_key) {
  const char* dir = std::getenv("MIFKIT_CACHE");
  if (!dir || !*dir) return bfs_closure(sym_gens, cap);
  std::filesystem::path path = std::filesystem::path(dir) / ("closure_" + cache_key + ".bin");
  const unsigned d = sym_gens.empty() ? 0 : sym_gens[0].d;
  const uint64_t p = sym_gens.empty() ? 0 : sym_gens[0].p;
  {
    std::ifstream in(path, std::ios::binary);
    if (in) {
      uint64_t magic = 0, fd = 0, fp_ = 0, count = 0;
      in.read(reinterpret_cast<char*>(&magic), 8);
      in.read(reinterpret_cast<char*>(&fd), 8);
      in.read(reinterpret_cast<char*>(&fp_), 8);
      in.read(reinterpret_cast<char*>(&count), 8);
      if (in && magic == 0x4D49464B43414348ULL && fd == d && fp_ == p) {
        FiniteGroupTable t;
        t.d = d;
        t.p = p;
        t.gens = sym_gens;
        t.elements.reserve(count);
        bool ok = true;
        for (uint64_t i = 0; i < count && ok; ++i) {
          FpMatrix m{d, p, std::vector<uint64_t>(static_cast<std::size_t>(d) * d, 0)};
          in.read(reinterpret_cast<char*>(m.e.data()), static_cast<std::streamsize>(8 * m.e.size()));
          ok = static_cast<bool>(in);
          t.elements.push_back(std::move(m));
        }
        if (ok) {
          t.perm = perms_for(t, sym_gens);
          return t;
        }
      }
    }
  }
  FiniteGroupTable t = bfs_closure(sym_gens, cap);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (out) {
    uint64_t magic = 0x4D49464B43414348ULL, fd = d, fp_ = p, count = t.elements.size();
    out.write(reinterpret_cast<const char*>(&magic), 8);
    out.write(reinterpret_cast<const char*>(&fd), 8);
    out.write(reinterpret_cast<const char*>(&fp_), 8);
    out.write(reinterpret_cast<const char*>(&count), 8);
    for (const auto& m : t.elements)
      out.write(reinterpret_cast<const char*>(m.e.data()), static_cast<std::streamsize>(8 * m.e.size()));
  }
  return t;
}

uint64_t sl_order(unsigned d, uint64_t p) {
  // p^{d(d-1)/2} * prod_{i=2..d} (p^i - 1)
  unsigned __int128 acc = 1;
  for (unsigned i = 0; i < d * (d - 1) / 2; ++i) {
    acc *= p;
    if (acc > UINT64_MAX) fail_budget("sl_order: overflow");
  }
  for (unsigned i = 2; i <= d; ++i) {
    unsigned __int128 q = 1;
    for (unsigned j = 0; j < i; ++j) q *= p;
    acc *= (q - 1);
    if (acc > UINT64_MAX) fail_budget("sl_order: overflow");
  }
  return static_cast<uint64_t>(acc);
}

bool is_generating(const FiniteGroupTable& table) {
  return table.order() == sl_order(table.d, table.p);
}

namespace {

bool graph_connected(std::size_t n, const std::vector<std::vector<uint32_t>>& perms) {
  std::vector<char> seen(n, 0);
  std::deque<uint32_t> queue{0};
  seen[0] = 1;
  std::size_t found = 1;
  while (!queue.empty()) {
    uint32_t v = queue.front();
    queue.pop_front();
    for (const auto& pi : perms) {
      uint32_t w = pi[v];
      if (!seen[w]) {
        seen[w] = 1;
        ++found;
        queue.push_back(w);
      }
    }
  }
  return found == n;
}

void markov_apply(const std::vector<std::vector<uint32_t>>& perms, const double* in, double* out,
                  std::size_t n) {
  std::fill(out, out + n, 0.0);
  const double w = 1.0 / static_cast<double>(perms.size());
  for (const auto& pi : perms) {
    for (std::size_t i = 0; i < n; ++i) out[i] += in[pi[i]];
  }
  for (std::size_t i = 0; i < n; ++i) out[i] *= w;
}

// All eigenvalues of a symmetric tridiagonal matrix by Sturm-sequence
// bisection; keeps the iterative route independent of the dense library.
std::vector<double> tridiag_eigenvalues(const std::vector<double>& alpha,
                                        const std::vector<double>& beta) {
  const std::size_t m = alpha.size();
  std::vector<double> eig(m);
  double radius = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double b0 = i > 0 ? std::fabs(beta[i - 1]) : 0.0;
    double b1 = i + 1 < m ? std::fabs(beta[i]) : 0.0;
    radius = std::max(radius, std::fabs(alpha[i]) + b0 + b1);
  }
  radius += 1e-12;
  // count of eigenvalues < x
  auto count_below = [&](double x) {
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      double bb = i > 0 ? beta[i - 1] * beta[i - 1] : 0.0;
      q = alpha[i] - x - (q != 0.0 ? bb / q : bb / 1e-300);
      if (q < 0) ++count;
    }
    return count;
  };
  for (std::size_t j = 0; j < m; ++j) {
    double lo = -radius, hi = radius;
    for (int it = 0; it < 80; ++it) {
      double mid = 0.5 * (lo + hi);
      if (count_below(mid) <= j) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    eig[j] = 0.5 * (lo + hi);
  }
  return eig;
}

// Ritz vector for a converged tridiagonal eigenvalue via a couple of inverse
// iteration sweeps.
std::vector<double> tridiag_eigenvector(const std::vector<double>& alpha,
                                        const std::vector<double>& beta, double lambda) {
  const std::size_t m = alpha.size();
  std::vector<double> v(m, 1.0 / std::sqrt(static_cast<double>(m)));
  for (int sweep = 0; sweep < 3; ++sweep) {
    // solve (T - lambda I) w = v with the Thomas algorithm (regularized)
    std::vector<double> diag(m), rhs = v, sup(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) diag[i] = alpha[i] - lambda + 1e-12;
    for (std::size_t i = 1; i < m; ++i) {
      double w = beta[i - 1] / (diag[i - 1] != 0 ? diag[i - 1] : 1e-300);
      diag[i] -= w * beta[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    std::vector<double> w(m);
    w[m - 1] = rhs[m - 1] / (diag[m - 1] != 0 ? diag[m - 1] : 1e-300);
    for (std::size_t i = m - 1; i-- > 0;) {
      w[i] = (rhs[i] - beta[i] * w[i + 1]) / (diag[i] != 0 ? diag[i] : 1e-300);
    }
    double norm = 0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    if (!(norm > 0) || !std::isfinite(norm)) break;
    for (std::size_t i = 0; i < m; ++i) v[i] = w[i] / norm;
  }
  return v;
}

SpectralReport spectral_dense(std::size_t n, const std::vector<std::vector<uint32_t>>& perms,
                              bool connected) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const double w = 1.0 / static_cast<double>(perms.size());
  for (const auto& pi : perms) {
    for (std::size_t i = 0; i < n; ++i) M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(pi[i])) += w;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail_internal("spectral_gap: dense eigensolver failed");
  SpectralReport rep;
  rep.method = "dense";
  rep.connected = connected;
  rep.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(), std::greater<double>());
  rep.lambda1 = rep.eigenvalues.front();
  if (n == 1) {
    rep.lambda2_abs = 0.0;
  } else {
    rep.lambda2_abs = std::max(std::fabs(rep.eigenvalues[1]), std::fabs(rep.eigenvalues.back()));
  }
  rep.gap = connected ? std::clamp(1.0 - rep.lambda2_abs, 0.0, 1.0) : 0.0;
  return rep;
}

SpectralReport spectral_lanczos(std::size_t n, const std::vector<std::vector<uint32_t>>& perms,
                                bool connected, double tol) {
  SpectralReport rep;
  rep.method = "lanczos";
  rep.connected = connected;
  rep.residual_tol = tol;
  if (n <= 2) {
    // tiny graphs: fall back to the dense route
    SpectralReport d = spectral_dense(n, perms, connected);
    d.method = "lanczos";
    return d;
  }
  const std::size_t max_m = std::min<std::size_t>(n - 1, 420);
  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));

  // deterministic pseudo-random start vector, deflated against the constant
  std::vector<double> v(n);
  {
    uint64_t s = 0x9E3779B97F4A7C15ULL;
    double mean = 0;
    for (std::size_t i = 0; i < n; ++i) {
      s ^= s >> 12;
      s ^= s << 25;
      s ^= s >> 27;
      v[i] = static_cast<double>((s * 0x2545F4914F6CDD1DULL) >> 11) * 0x1.0p-53 - 0.5;
      mean += v[i];
    }
    mean /= static_cast<double>(n);
    double norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] -= mean;
      norm += v[i] * v[i];
    }
    norm = std::sqrt(norm);
    for (auto& x : v) x /= norm;
  }

  std::vector<double> work(n), prev(n, 0.0);
  double beta_prev = 0.0;
  auto orthogonalize = [&](std::vector<double>& y) {
    double dot1 = 0;
    for (double x : y) dot1 += x;
    dot1 *= inv_sqrt_n;
    for (std::size_t i = 0; i < n; ++i) y[i] -= dot1 * inv_sqrt_n;
    for (const auto& b : basis) {
      double d = 0;
      for (std::size_t i = 0; i < n; ++i) d += y[i] * b[i];
      for (std::size_t i = 0; i < n; ++i) y[i] -= d * b[i];
    }
  };

  double lambda_top = 0, lambda_bot = 0;
  for (std::size_t step = 0; step < max_m; ++step) {
    basis.push_back(v);
    markov_apply(perms, v.data(), work.data(), n);
    double a = 0;
    for (std::size_t i = 0; i < n; ++i) a += work[i] * v[i];
    alpha.push_back(a);
    for (std::size_t i = 0; i < n; ++i) work[i] -= a * v[i] + beta_prev * prev[i];
    orthogonalize(work);
    double b = 0;
    for (double x : work) b += x * x;
    b = std::sqrt(b);
    // invariant-subspace exhaustion: the Krylov space closed up
    bool exhausted = b < 1e-13;
    bool check_now = exhausted || (step + 1) % 30 == 0 || step + 1 == max_m;
    if (check_now && !alpha.empty()) {
      std::vector<double> eig = tridiag_eigenvalues(alpha, beta);
      lambda_top = eig.back();
      lambda_bot = eig.front();
      auto residual_of = [&](double lambda) {
        std::vector<double> u = tridiag_eigenvector(alpha, beta, lambda);
        std::vector<double> y(n, 0.0);
        for (std::size_t j = 0; j < basis.size(); ++j) {
          for (std::size_t i = 0; i < n; ++i) y[i] += u[j] * basis[j][i];
        }
        std::vector<double> my(n);
        markov_apply(perms, y.data(), my.data(), n);
        double num = 0, den = 0;
        for (std::size_t i = 0; i < n; ++i) {
          double r = my[i] - lambda * y[i];
          num += r * r;
          den += y[i] * y[i];
        }
        return den > 0 ? std::sqrt(num / den) : 0.0;
      };
      if (exhausted || (residual_of(lambda_top) <= tol && residual_of(lambda_bot) <= tol)) {
        rep.eigenvalues = eig;
        std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(), std::greater<double>());
        break;
      }
      if (step + 1 == max_m) {
        rep.eigenvalues = eig;
        std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(), std::greater<double>());
      }
    }
    if (exhausted) {
      if (rep.eigenvalues.empty()) {
        rep.eigenvalues = tridiag_eigenvalues(alpha, beta);
        std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(), std::greater<double>());
      }
      break;
    }
    beta.push_back(b);
    beta_prev = b;
    prev = v;
    for (std::size_t i = 0; i < n; ++i) v[i] = work[i] / b;
  }
  if (rep.eigenvalues.empty()) {
    rep.eigenvalues = tridiag_eigenvalues(alpha, beta);
    std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(), std::greater<double>());
  }
  rep.lambda1 = 1.0;  // deflated exactly; the trivial eigenvalue is known
  rep.lambda2_abs = std::max(std::fabs(lambda_top), std::fabs(lambda_bot));
  rep.gap = connected ? std::clamp(1.0 - rep.lambda2_abs, 0.0, 1.0) : 0.0;
  return rep;
}

}  // namespace

SpectralReport spectral_gap(const FiniteGroupTable& table, SpectralMethod method) {
  SpectralReport rep;
  bool connected = graph_connected(table.elements.size(), table.perm);
  bool dense = method == SpectralMethod::Dense ||
               (method == SpectralMethod::Auto && table.elements.size() <= kDenseSpectralLimit);
  rep = dense ? spectral_dense(table.elements.size(), table.perm, connected)
              : spectral_lanczos(table.elements.size(), table.perm, connected, 1e-8);
  return rep;
}

SpectralReport spectral_gap(const FiniteGroupTable& table, const std::vector<FpMatrix>& gens,
                            SpectralMethod method) {
  auto perms = perms_for(table, gens);
  bool connected = graph_connected(table.elements.size(), perms);
  bool dense = method == SpectralMethod::Dense ||
               (method == SpectralMethod::Auto && table.elements.size() <= kDenseSpectralLimit);
  return dense ? spectral_dense(table.elements.size(), perms, connected)
               : spectral_lanczos(table.elements.size(), perms, connected, 1e-8);
}

std::vector<double> walk_distribution(const FiniteGroupTable& table,
                                      const std::vector<std::vector<uint32_t>>& perms, uint32_t v0,
                                      uint64_t k) {
  std::size_t n = table.elements.size();
  std::vector<double> mu(n, 0.0), next(n, 0.0);
  mu[v0] = 1.0;
  const double w = 1.0 / static_cast<double>(perms.size());
  for (uint64_t step = 0; step < k; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (const auto& pi : perms) {
      for (std::size_t i = 0; i < n; ++i) next[pi[i]] += mu[i];
    }
    for (std::size_t i = 0; i < n; ++i) next[i] *= w;
    mu.swap(next);
  }
  return mu;
}

RwCheck rw_bound_check(const FiniteGroupTable& table, const std::vector<FpMatrix>& gens,
                       const std::vector<uint32_t>& U, uint64_t k, uint32_t v0, double eps) {
  RwCheck out;
  const double n = static_cast<double>(table.elements.size());
  out.threshold = eps > 0 && eps < 1 ? -std::log(n) / std::log(1.0 - eps) : 0.0;
  out.k_above_threshold = static_cast<double>(k) >= out.threshold;
  auto perms = perms_for(table, gens);
  std::vector<double> mu = walk_distribution(table, perms, v0, k);
  double pr = 0;
  for (uint32_t u : U) pr += mu[u];
  out.prob = pr;
  out.bound = 2.0 * static_cast<double>(U.size()) / n;
  out.pass = pr < out.bound;
  return out;
}

SubgroupMassReport subgroup_escape_mass(const FiniteGroupTable& table,
                                        const std::vector<FpMatrix>& gens, uint64_t k) {
  auto perms = perms_for(table, gens);
  std::vector<double> mu = walk_distribution(table, perms, 0, k);
  Index ix = build_index(table);
  SubgroupMassReport rep;
  std::set<std::vector<uint32_t>> seen;
  for (uint32_t i = 0; i < table.elements.size(); ++i) {
    std::vector<uint32_t> orbit{0};
    FpMatrix g = table.elements[i];
    FpMatrix acc = g;
    while (!acc.is_identity()) {
      orbit.push_back(*ix.find(acc));
      acc = fp_mul(acc, g);
    }
    std::sort(orbit.begin(), orbit.end());
    if (orbit.size() == table.elements.size()) continue;  // not proper
    if (!seen.insert(orbit).second) continue;
    double mass = 0;
    for (uint32_t v : orbit) mass += mu[v];
    if (mass > rep.max_mass) {
      rep.max_mass = mass;
      rep.subgroup_order = orbit.size();
    }
    ++rep.subgroups_scanned;
  }
  return rep;
}

}  // namespace mifkit
