#pragma once

// Shared helpers for the test binaries: independent reference implementations
// ("oracles") that trade speed for obviousness, random fixture builders, and
// scratch directories.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "occ2vec/aggregate.hpp"
#include "occ2vec/catalog.hpp"
#include "occ2vec/scoring.hpp"

namespace testsupport {

namespace fs = std::filesystem;

inline fs::path fixtures() { return fs::path(OCC2VEC_FIXTURES); }

/// Fresh empty directory under the system temp dir, removed on destruction.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string& tag) {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("occ2vec_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ScratchDir(const ScratchDir&) = delete;
  ScratchDir& operator=(const ScratchDir&) = delete;
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const fs::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

// ---------------------------------------------------------------------------
// Linear algebra oracles (no Eigen)

using Mat = std::vector<std::vector<double>>;

/// Solve A x = b by Gaussian elimination with partial pivoting in long double.
inline std::vector<double> solve(Mat a, std::vector<double> b) {
  const std::size_t n = b.size();
  std::vector<std::vector<long double>> m(n, std::vector<long double>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
    m[i][n] = b[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
    std::swap(m[c], m[piv]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const long double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k <= n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(m[i][n] / m[i][i]);
  return x;
}

inline Mat inverse(const Mat& a) {
  const std::size_t n = a.size();
  Mat inv(n, std::vector<double>(n));
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<double> e(n, 0.0);
    e[c] = 1.0;
    const auto col = solve(a, e);
    for (std::size_t r = 0; r < n; ++r) inv[r][c] = col[r];
  }
  return inv;
}

/// Cyclic Jacobi eigen-decomposition of a symmetric matrix. Returns
/// eigenvalues descending and the matching eigenvectors as columns.
inline std::pair<std::vector<double>, Mat> jacobi_eigen(Mat a) {
  const std::size_t n = a.size();
  Mat v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x][x] > a[y][y]; });
  std::vector<double> vals(n);
  Mat vecs(n, std::vector<double>(n));
  for (std::size_t c = 0; c < n; ++c) {
    vals[c] = a[order[c]][order[c]];
    for (std::size_t r = 0; r < n; ++r) vecs[r][c] = v[r][order[c]];
  }
  return {vals, vecs};
}

// ---------------------------------------------------------------------------
// Statistics oracles

inline double pearson_oracle(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  long double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const long double mx = sx / n, my = sy / n;
  long double cxy = 0, cxx = 0, cyy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    cxy += (x[i] - mx) * (y[i] - my);
    cxx += (x[i] - mx) * (x[i] - mx);
    cyy += (y[i] - my) * (y[i] - my);
  }
  return static_cast<double>(cxy / std::sqrt(cxx * cyy));
}

/// Midrank of every value by counting, O(n^2).
inline std::vector<double> ranks_oracle(const std::vector<double>& x) {
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double less = 0, equal = 0;
    for (double v : x) {
      if (v < x[i]) ++less;
      if (v == x[i]) ++equal;
    }
    r[i] = less + (equal + 1.0) / 2.0;
  }
  return r;
}

inline double spearman_oracle(const std::vector<double>& x, const std::vector<double>& y) {
  return pearson_oracle(ranks_oracle(x), ranks_oracle(y));
}

/// Tau-b over all pairs.
inline double kendall_oracle(const std::vector<double>& x, const std::vector<double>& y) {
  long long concordant = 0, discordant = 0, tx = 0, ty = 0, pairs = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      ++pairs;
      const double dx = x[i] - x[j], dy = y[i] - y[j];
      if (dx == 0) ++tx;
      if (dy == 0) ++ty;
      if (dx == 0 || dy == 0) continue;
      (dx * dy > 0 ? concordant : discordant)++;
    }
  return static_cast<double>(concordant - discordant) /
         std::sqrt(static_cast<double>(pairs - tx) * static_cast<double>(pairs - ty));
}

/// Two-sided Student-t p-value by composite Simpson integration of the density
/// over [0, |t|].
inline double t_pvalue_oracle(double t, double df) {
  const double logc = std::lgamma((df + 1) / 2) - std::lgamma(df / 2) - 0.5 * std::log(df * std::numbers::pi);
  auto f = [&](double u) { return std::exp(logc - (df + 1) / 2 * std::log1p(u * u / df)); };
  const int m = 20000;
  const double a = std::abs(t), h = a / m;
  double s = f(0) + f(a);
  for (int i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return 1.0 - 2.0 * s * h / 3.0;
}

struct OlsOracle {
  double coefficient = 0;
  double hc1_se = 0;
  double r2 = 0;
  std::size_t k = 0;
};

/// OLS with an explicit design: constant, measure, and one dummy per group
/// level except the first of each set. Normal equations plus the HC1
/// sandwich n/(n-k) (X'X)^-1 X' diag(e^2) X (X'X)^-1.
inline OlsOracle ols_oracle(const std::vector<double>& y, const std::vector<double>& x,
                            const std::vector<std::vector<std::size_t>>& groups) {
  const std::size_t n = y.size();
  Mat design(n);
  for (std::size_t i = 0; i < n; ++i) design[i] = {1.0, x[i]};
  for (const auto& g : groups) {
    std::map<std::size_t, std::size_t> level;
    for (auto c : g) level.try_emplace(c, level.size());
    for (std::size_t lv = 1; lv < level.size(); ++lv)
      for (std::size_t i = 0; i < n; ++i) design[i].push_back(level[g[i]] == lv ? 1.0 : 0.0);
  }
  const std::size_t k = design[0].size();
  Mat xtx(k, std::vector<double>(k, 0.0));
  std::vector<double> xty(k, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < k; ++a) {
      xty[a] += design[i][a] * y[i];
      for (std::size_t b = 0; b < k; ++b) xtx[a][b] += design[i][a] * design[i][b];
    }
  const auto beta = solve(xtx, xty);
  std::vector<double> e(n);
  double ssr = 0, ym = 0, sst = 0;
  for (double v : y) ym += v;
  ym /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    double fit = 0;
    for (std::size_t a = 0; a < k; ++a) fit += design[i][a] * beta[a];
    e[i] = y[i] - fit;
    ssr += e[i] * e[i];
    sst += (y[i] - ym) * (y[i] - ym);
  }
  const Mat inv = inverse(xtx);
  Mat meat(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) meat[a][b] += design[i][a] * design[i][b] * e[i] * e[i];
  // element (1,1) of inv * meat * inv
  double v11 = 0;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) v11 += inv[1][a] * meat[a][b] * inv[b][1];
  v11 *= static_cast<double>(n) / static_cast<double>(n - k);
  return {beta[1], std::sqrt(v11), 1.0 - ssr / sst, k};
}

/// Tricube-weighted local polynomial fit at `at` over the k nearest points
/// (ties by index), solved through its normal equations.
inline double local_fit_oracle(const std::vector<double>& x, const std::vector<double>& y, double at, int degree,
                               std::size_t k) {
  std::vector<std::size_t> idx(x.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(x[a] - at) < std::abs(x[b] - at); });
  const double h = std::abs(x[idx[k - 1]] - at);
  const std::size_t p = static_cast<std::size_t>(degree) + 1;
  Mat a(p, std::vector<double>(p, 0.0));
  std::vector<double> b(p, 0.0);
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t i = idx[r];
    const double u = std::abs(x[i] - at) / h;
    const double w = u >= 1 ? 0.0 : std::pow(1 - u * u * u, 3);
    std::vector<double> basis(p);
    for (std::size_t c = 0; c < p; ++c) basis[c] = std::pow((x[i] - at) / h, static_cast<double>(c));
    for (std::size_t c = 0; c < p; ++c) {
      b[c] += w * basis[c] * y[i];
      for (std::size_t d = 0; d < p; ++d) a[c][d] += w * basis[c] * basis[d];
    }
  }
  return solve(a, b)[0];
}

inline double mean_of(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double sd_of(const std::vector<double>& v) {
  const double m = mean_of(v);
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

// ---------------------------------------------------------------------------
// Random catalogs

struct RandomCatalog {
  occ2vec::DescriptorCatalog catalog;
  std::vector<std::vector<double>> vectors;  // per descriptor
};

/// Up to `max_occ` occupations, each with a nonempty subset of the first
/// `max_cat` categories; attributes shared, weights random and normalized.
inline RandomCatalog random_catalog(std::mt19937_64& rng, std::size_t max_occ = 10, std::size_t max_cat = 4,
                                    std::size_t max_desc = 6, std::size_t max_dim = 16) {
  using namespace occ2vec;
  std::uniform_int_distribution<std::size_t> n_occ(1, max_occ), n_cat(1, max_cat), n_desc(1, max_desc),
      dim_d(2, max_dim);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal;
  const std::size_t n = n_occ(rng), kcats = n_cat(rng), dim = dim_d(rng);

  std::vector<Occupation> occs;
  for (std::size_t i = 0; i < n; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02zu-%04zu.00", 11 + 2 * (i % 5), 1000 + i);
    occs.push_back({buf, "Occupation " + std::to_string(i), std::string(buf).substr(0, 2), std::nullopt});
  }
  // categories 2.. are attribute categories (shared descriptors)
  std::vector<Descriptor> descs;
  std::map<Category, std::vector<std::size_t>> pool;
  for (std::size_t c = 0; c < kcats; ++c) {
    const Category cat = kAllCategories[2 + c];
    const std::size_t m = n_desc(rng);
    for (std::size_t j = 0; j < m; ++j) {
      pool[cat].push_back(descs.size());
      descs.push_back({std::to_string(c) + "." + std::to_string(j), cat, "descriptor text", DescriptorKind::attribute});
    }
  }
  DescriptorCatalog::BundleMap bundles;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Category> present;
    for (const auto& [cat, ids] : pool)
      if (unit(rng) < 0.7) present.push_back(cat);
    if (present.empty()) present.push_back(pool.begin()->first);
    for (Category cat : present) {
      std::vector<std::size_t> chosen;
      for (auto d : pool[cat])
        if (unit(rng) < 0.6) chosen.push_back(d);
      if (chosen.empty()) chosen.push_back(pool[cat].front());
      std::vector<double> raw;
      for (std::size_t j = 0; j < chosen.size(); ++j) raw.push_back(0.05 + unit(rng));
      const auto w = normalize_weights(raw);
      auto& b = bundles[BundleKey{i, cat}];
      for (std::size_t j = 0; j < chosen.size(); ++j) b.push_back({chosen[j], w[j], raw[j] / 1.05});
    }
  }
  RandomCatalog out;
  out.catalog = DescriptorCatalog::create(std::move(occs), std::move(descs), std::move(bundles));
  for (std::size_t d = 0; d < out.catalog.descriptors().size(); ++d) {
    std::vector<double> v(dim);
    for (auto& x : v) x = normal(rng);
    out.vectors.push_back(v);
  }
  return out;
}

/// (1/K_i) sum_k sum_j W_ikj X_ikj written as one flat loop over bundles.
inline std::vector<double> double_sum_oracle(const occ2vec::DescriptorCatalog& c,
                                             const std::vector<std::vector<double>>& x, std::size_t occupation) {
  const std::size_t dim = x.front().size();
  std::vector<long double> acc(dim, 0.0L);
  std::size_t k = 0;
  for (const auto& [key, bundle] : c.bundles()) {
    if (key.occupation != occupation) continue;
    ++k;
    for (const auto& wd : bundle)
      for (std::size_t t = 0; t < dim; ++t) acc[t] += static_cast<long double>(wd.weight) * x[wd.descriptor][t];
  }
  std::vector<double> out(dim);
  for (std::size_t t = 0; t < dim; ++t) out[t] = static_cast<double>(acc[t] / static_cast<long double>(k));
  return out;
}

/// max_i |a_i - b_i| / max(1, max_i |b_i|)
inline double rel_error(const std::vector<double>& a, const std::vector<double>& b) {
  double err = 0, scale = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    err = std::max(err, std::abs(a[i] - b[i]));
    scale = std::max(scale, std::abs(b[i]));
  }
  return a.size() == b.size() ? err / scale : INFINITY;
}

/// Ten occupations built from random words; the tasks of one of them reuse
/// the characteristic's words. Returns the rank (0 = top) of that occupation
/// and the score table.
struct PlantedTrial {
  std::size_t planted_rank = 0;
  occ2vec::ScoreTable table;
};

inline PlantedTrial planted_trial(std::uint64_t seed, std::size_t dim = 256) {
  using namespace occ2vec;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> word(0, 499);
  auto words = [&](int n) {
    std::string s;
    for (int i = 0; i < n; ++i) s += (i ? " w" : "w") + std::to_string(word(rng));
    return s;
  };
  const std::string characteristic = "cx1 cx2 cx3 cx4 cx5 cx6";
  const std::size_t n = 10, planted = seed % n;

  std::vector<Occupation> occs;
  std::vector<Descriptor> descs;
  DescriptorCatalog::BundleMap bundles;
  for (std::size_t a = 0; a < 5; ++a)
    descs.push_back({"1.A." + std::to_string(a), Category::Abilities, words(5), DescriptorKind::attribute});
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    char soc[16];
    std::snprintf(soc, sizeof soc, "%02zu-%04zu.00", 11 + 2 * i, 1000 + i);
    occs.push_back({soc, "Occupation " + std::to_string(i), std::string(soc).substr(0, 2), std::nullopt});
    bundles[{i, Category::Description}] = {{descs.size(), 1.0, 1.0}};
    descs.push_back({soc, Category::Description, words(10), DescriptorKind::description});
    std::vector<double> raw;
    for (int t = 0; t < 3; ++t) raw.push_back(unit(rng));
    const auto w = normalize_weights(raw);
    for (int t = 0; t < 3; ++t) {
      const std::string body = i == planted ? characteristic + " " + words(2) : words(8);
      bundles[{i, Category::Tasks}].push_back({descs.size(), w[t], raw[t]});
      descs.push_back({std::to_string(100 * i + t), Category::Tasks, body, DescriptorKind::task});
    }
    std::vector<double> araw;
    for (int a = 0; a < 5; ++a) araw.push_back(unit(rng));
    const auto aw = normalize_weights(araw);
    for (std::size_t a = 0; a < 5; ++a) bundles[{i, Category::Abilities}].push_back({a, aw[a], araw[a]});
  }
  const auto catalog = DescriptorCatalog::create(occs, descs, bundles);
  std::vector<Vector> vectors;
  for (const auto& d : catalog.descriptors()) vectors.push_back(hash_embed(d.text, dim, seed));
  const auto emb = embed_occupations(catalog, vectors);
  PlantedTrial out;
  out.table = score_all(emb, hash_embed(characteristic, dim, seed), "planted");
  const auto sorted = sorted_by_score(out.table);
  for (std::size_t r = 0; r < sorted.size(); ++r)
    if (sorted[r].soc_code == catalog.occupations()[planted].soc_code) out.planted_rank = r;
  return out;
}

/// True when a line separates the two labelled point sets with positive
/// margin. Tries the centroid direction first, then a perceptron (which
/// terminates on separable data).
inline bool linearly_separable(const std::vector<std::array<double, 2>>& pts, const std::vector<int>& label) {
  auto separates = [&](double wx, double wy) {
    double lo0 = INFINITY, hi0 = -INFINITY, lo1 = INFINITY, hi1 = -INFINITY;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double s = wx * pts[i][0] + wy * pts[i][1];
      if (label[i]) {
        lo1 = std::min(lo1, s);
        hi1 = std::max(hi1, s);
      } else {
        lo0 = std::min(lo0, s);
        hi0 = std::max(hi0, s);
      }
    }
    return hi0 < lo1 || hi1 < lo0;
  };
  double c[2][2] = {{0, 0}, {0, 0}}, m[2] = {0, 0};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    c[label[i]][0] += pts[i][0];
    c[label[i]][1] += pts[i][1];
    m[label[i]] += 1;
  }
  if (separates(c[1][0] / m[1] - c[0][0] / m[0], c[1][1] / m[1] - c[0][1] / m[0])) return true;
  double w[3] = {0, 0, 0};
  for (int epoch = 0; epoch < 100000; ++epoch) {
    bool clean = true;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double t = label[i] ? 1.0 : -1.0;
      if (t * (w[0] * pts[i][0] + w[1] * pts[i][1] + w[2]) <= 0) {
        w[0] += t * pts[i][0];
        w[1] += t * pts[i][1];
        w[2] += t;
        clean = false;
      }
    }
    if (clean) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// CLI runner

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

inline std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

inline RunResult run_cli(const std::vector<std::string>& args) {
  std::string cmd = shell_quote(OCC2VEC_CLI);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>&1";
  RunResult r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace testsupport
