#include "hypring/bounds.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hypring {

namespace {

struct Grid {
  std::vector<GroupElement> xs, ys;
  std::vector<std::vector<double>> m;  // moduli, xs-major
};

Grid make_grid(const TensorElement& t) {
  Grid g;
  std::map<GroupElement, std::size_t> xi, yi;
  for (const auto& [k, c] : t.support()) {
    xi.emplace(k.first, 0);
    yi.emplace(k.second, 0);
  }
  for (auto& [e, i] : xi) {
    i = g.xs.size();
    g.xs.push_back(e);
  }
  for (auto& [e, i] : yi) {
    i = g.ys.size();
    g.ys.push_back(e);
  }
  g.m.assign(g.xs.size(), std::vector<double>(g.ys.size(), 0.0));
  for (const auto& [k, c] : t.support()) g.m[xi[k.first]][yi[k.second]] = std::abs(c);
  return g;
}

double vec_norm(const SeminormSpec& s, const std::vector<double>& v,
                const std::vector<GroupElement>& basis) {
  switch (s.tag()) {
    case SeminormSpec::Tag::Ell1:
    case SeminormSpec::Tag::Ell1Lambda:
    case SeminormSpec::Tag::WeightedEll1: {
      double sum = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0.0) sum += s.element_weight(basis[i]) * std::abs(v[i]);
      return sum;
    }
    case SeminormSpec::Tag::EllInf: {
      double m = 0.0;
      for (double x : v) m = std::max(m, std::abs(x));
      return m;
    }
    case SeminormSpec::Tag::Sobolev2: {
      double sum = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        double w = std::pow(1.0 + basis[i].length(), s.k()) * v[i];
        sum += w * w;
      }
      return std::sqrt(sum);
    }
  }
  return 0.0;
}

std::vector<double> vec_norming(const SeminormSpec& s, const std::vector<double>& v,
                                const std::vector<GroupElement>& basis) {
  std::vector<double> phi(v.size(), 0.0);
  switch (s.tag()) {
    case SeminormSpec::Tag::Ell1:
    case SeminormSpec::Tag::Ell1Lambda:
    case SeminormSpec::Tag::WeightedEll1:
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] > 0.0) phi[i] = s.element_weight(basis[i]);
      return phi;
    case SeminormSpec::Tag::EllInf: {
      std::size_t best = 0;
      double bv = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] > bv) {
          bv = v[i];
          best = i;
        }
      if (bv > 0.0) phi[best] = 1.0;
      return phi;
    }
    case SeminormSpec::Tag::Sobolev2: {
      double nv = vec_norm(s, v, basis);
      if (nv <= 0.0) return phi;
      for (std::size_t i = 0; i < v.size(); ++i) {
        double w = std::pow(1.0 + basis[i].length(), s.k());
        if (v[i] > 0.0) phi[i] = w * w * v[i] / nv;
      }
      return phi;
    }
  }
  return phi;
}

struct DenseTerm {
  std::vector<double> left, right;
};

double dense_cost(const SeminormSpec& sx, const SeminormSpec& sy,
                  const std::vector<DenseTerm>& terms, const Grid& g) {
  double c = 0.0;
  for (const auto& t : terms) c += vec_norm(sx, t.left, g.xs) * vec_norm(sy, t.right, g.ys);
  return c;
}

bool dense_dominates(const std::vector<DenseTerm>& terms, const Grid& g, double tol) {
  for (std::size_t i = 0; i < g.xs.size(); ++i)
    for (std::size_t j = 0; j < g.ys.size(); ++j) {
      double s = 0.0;
      for (const auto& t : terms) s += t.left[i] * t.right[j];
      if (s + tol < g.m[i][j]) return false;
    }
  return true;
}

// Pairwise join improvement: replace two terms by the entrywise maxima of
// their legs whenever the total still dominates and the cost drops.
void improve_by_joins(const SeminormSpec& sx, const SeminormSpec& sy,
                      std::vector<DenseTerm>& terms, const Grid& g) {
  for (int pass = 0; pass < kImproveIters; ++pass) {
    double best_gain = kImproveTol;
    std::size_t bi = 0, bj = 0;
    DenseTerm best_term;
    bool found = false;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      for (std::size_t j = i + 1; j < terms.size(); ++j) {
        DenseTerm joined;
        joined.left.resize(g.xs.size());
        joined.right.resize(g.ys.size());
        for (std::size_t x = 0; x < g.xs.size(); ++x)
          joined.left[x] = std::max(terms[i].left[x], terms[j].left[x]);
        for (std::size_t y = 0; y < g.ys.size(); ++y)
          joined.right[y] = std::max(terms[i].right[y], terms[j].right[y]);
        double old_cost =
            vec_norm(sx, terms[i].left, g.xs) * vec_norm(sy, terms[i].right, g.ys) +
            vec_norm(sx, terms[j].left, g.xs) * vec_norm(sy, terms[j].right, g.ys);
        double new_cost = vec_norm(sx, joined.left, g.xs) * vec_norm(sy, joined.right, g.ys);
        if (old_cost - new_cost > best_gain) {
          std::vector<DenseTerm> trial;
          for (std::size_t k = 0; k < terms.size(); ++k)
            if (k != i && k != j) trial.push_back(terms[k]);
          trial.push_back(joined);
          if (dense_dominates(trial, g, 1e-12)) {
            best_gain = old_cost - new_cost;
            bi = i;
            bj = j;
            best_term = joined;
            found = true;
          }
        }
      }
    }
    if (!found) break;
    std::vector<DenseTerm> next;
    for (std::size_t k = 0; k < terms.size(); ++k)
      if (k != bi && k != bj) next.push_back(terms[k]);
    next.push_back(best_term);
    terms = std::move(next);
  }
}

std::vector<DenseTerm> row_terms(const Grid& g) {
  std::vector<DenseTerm> terms;
  for (std::size_t i = 0; i < g.xs.size(); ++i) {
    double any = 0.0;
    for (double v : g.m[i]) any += v;
    if (any == 0.0) continue;
    DenseTerm t;
    t.left.assign(g.xs.size(), 0.0);
    t.left[i] = 1.0;
    t.right = g.m[i];
    terms.push_back(std::move(t));
  }
  return terms;
}

std::vector<DenseTerm> col_terms(const Grid& g) {
  std::vector<DenseTerm> terms;
  for (std::size_t j = 0; j < g.ys.size(); ++j) {
    DenseTerm t;
    t.right.assign(g.ys.size(), 0.0);
    t.left.resize(g.xs.size());
    double any = 0.0;
    for (std::size_t i = 0; i < g.xs.size(); ++i) {
      t.left[i] = g.m[i][j];
      any += g.m[i][j];
    }
    if (any == 0.0) continue;
    t.right[j] = 1.0;
    terms.push_back(std::move(t));
  }
  return terms;
}

// Peels whole rows or columns of the residual, largest contribution first.
std::vector<DenseTerm> greedy_peel(const SeminormSpec& sx, const SeminormSpec& sy,
                                   const Grid& g) {
  std::vector<std::vector<double>> r = g.m;
  std::vector<DenseTerm> terms;
  for (;;) {
    double best = 0.0;
    int kind = -1;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < g.xs.size(); ++i) {
      double rn = vec_norm(sy, r[i], g.ys);
      if (rn <= 0.0) continue;
      std::vector<double> e(g.xs.size(), 0.0);
      e[i] = 1.0;
      double c = vec_norm(sx, e, g.xs) * rn;
      if (c > best) {
        best = c;
        kind = 0;
        idx = i;
      }
    }
    for (std::size_t j = 0; j < g.ys.size(); ++j) {
      std::vector<double> col(g.xs.size());
      double any = 0.0;
      for (std::size_t i = 0; i < g.xs.size(); ++i) {
        col[i] = r[i][j];
        any += col[i];
      }
      if (any == 0.0) continue;
      std::vector<double> e(g.ys.size(), 0.0);
      e[j] = 1.0;
      double c = vec_norm(sx, col, g.xs) * vec_norm(sy, e, g.ys);
      if (c > best) {
        best = c;
        kind = 1;
        idx = j;
      }
    }
    if (kind < 0) break;
    DenseTerm t;
    t.left.assign(g.xs.size(), 0.0);
    t.right.assign(g.ys.size(), 0.0);
    if (kind == 0) {
      t.left[idx] = 1.0;
      t.right = r[idx];
      std::fill(r[idx].begin(), r[idx].end(), 0.0);
    } else {
      t.right[idx] = 1.0;
      for (std::size_t i = 0; i < g.xs.size(); ++i) {
        t.left[i] = r[i][idx];
        r[i][idx] = 0.0;
      }
    }
    terms.push_back(std::move(t));
  }
  return terms;
}

std::optional<std::vector<DenseTerm>> rank_one_factorization(const Grid& g) {
  double scale = 0.0;
  std::size_t pi = 0, pj = 0;
  for (std::size_t i = 0; i < g.xs.size(); ++i)
    for (std::size_t j = 0; j < g.ys.size(); ++j)
      if (g.m[i][j] > scale) {
        scale = g.m[i][j];
        pi = i;
        pj = j;
      }
  if (scale == 0.0) return std::vector<DenseTerm>{};
  for (std::size_t i = 0; i < g.xs.size(); ++i)
    for (std::size_t j = 0; j < g.ys.size(); ++j) {
      double det = g.m[i][j] * g.m[pi][pj] - g.m[i][pj] * g.m[pi][j];
      if (std::abs(det) > 1e-10 * scale * scale) return std::nullopt;
    }
  DenseTerm t;
  t.left.resize(g.xs.size());
  t.right.resize(g.ys.size());
  for (std::size_t i = 0; i < g.xs.size(); ++i) t.left[i] = g.m[i][pj];
  for (std::size_t j = 0; j < g.ys.size(); ++j) t.right[j] = g.m[pi][j] / g.m[pi][pj];
  return std::vector<DenseTerm>{t};
}

UcTerm to_sparse(const DenseTerm& t, const Grid& g) {
  UcTerm out;
  for (std::size_t i = 0; i < g.xs.size(); ++i)
    if (t.left[i] > 0.0) out.left[g.xs[i]] = t.left[i];
  for (std::size_t j = 0; j < g.ys.size(); ++j)
    if (t.right[j] > 0.0) out.right[g.ys[j]] = t.right[j];
  return out;
}

// Alternating positive-dual ascent. Every iterate is a valid certified pair;
// for plain l2 legs this is power iteration on the modulus matrix.
std::pair<double, DualPairWitness> dual_ascent(const SeminormSpec& sx, const SeminormSpec& sy,
                                               const Grid& g) {
  const std::size_t nx = g.xs.size(), ny = g.ys.size();
  double best = 0.0;
  DualPairWitness bestw;
  if (nx == 0 || ny == 0) return {0.0, bestw};

  auto run = [&](std::vector<double> psi) {
    double prev = -1.0;
    for (int it = 0; it < kAscentSteps; ++it) {
      std::vector<double> z(nx, 0.0);
      for (std::size_t i = 0; i < nx; ++i)
        for (std::size_t j = 0; j < ny; ++j) z[i] += g.m[i][j] * psi[j];
      std::vector<double> phi = vec_norming(sx, z, g.xs);
      std::vector<double> w(ny, 0.0);
      for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t i = 0; i < nx; ++i) w[j] += phi[i] * g.m[i][j];
      psi = vec_norming(sy, w, g.ys);
      double val = 0.0;
      for (std::size_t j = 0; j < ny; ++j) val += w[j] * psi[j];
      if (val > best) {
        best = val;
        bestw.left.clear();
        bestw.right.clear();
        for (std::size_t i = 0; i < nx; ++i)
          if (phi[i] != 0.0) bestw.left[g.xs[i]] = phi[i];
        for (std::size_t j = 0; j < ny; ++j)
          if (psi[j] != 0.0) bestw.right[g.ys[j]] = psi[j];
      }
      if (std::abs(val - prev) <= kAscentTol) break;
      prev = val;
    }
  };

  std::vector<double> ones(ny, 1.0);
  run(vec_norming(sy, ones, g.ys));
  std::size_t pj = 0;
  double bm = -1.0;
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i)
      if (g.m[i][j] > bm) {
        bm = g.m[i][j];
        pj = j;
      }
  std::vector<double> delta(ny, 0.0);
  delta[pj] = 1.0;
  run(vec_norming(sy, delta, g.ys));
  return {best, bestw};
}

}  // namespace

double projective_norm_l2(const TensorElement& t) {
  if (t.empty()) return 0.0;
  std::map<GroupElement, std::size_t> xi, yi;
  for (const auto& [k, c] : t.support()) {
    xi.emplace(k.first, 0);
    yi.emplace(k.second, 0);
  }
  std::size_t nx = 0, ny = 0;
  for (auto& [e, i] : xi) i = nx++;
  for (auto& [e, i] : yi) i = ny++;
  Eigen::MatrixXcd m =
      Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(nx), static_cast<Eigen::Index>(ny));
  for (const auto& [k, c] : t.support())
    m(static_cast<Eigen::Index>(xi[k.first]), static_cast<Eigen::Index>(yi[k.second])) = c;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().sum();
}

BoundCertificate ucnorm_bounds(const TensorElement& t, const SeminormSpec& sx,
                               const SeminormSpec& sy) {
  BoundCertificate cert;
  cert.kind = CertKind::UcNorm;
  cert.spec_x = sx.label();
  cert.spec_y = sy.label();
  if (t.empty()) return cert;

  Grid g = make_grid(t);

  std::vector<std::vector<DenseTerm>> candidates;
  candidates.push_back(row_terms(g));
  candidates.push_back(col_terms(g));
  candidates.push_back(greedy_peel(sx, sy, g));
  if (auto r1 = rank_one_factorization(g)) candidates.push_back(*r1);

  double best_cost = -1.0;
  std::vector<DenseTerm> best_terms;
  for (auto& cand : candidates) {
    improve_by_joins(sx, sy, cand, g);
    if (!dense_dominates(cand, g, 1e-12)) continue;
    double c = dense_cost(sx, sy, cand, g);
    if (best_cost < 0.0 || c < best_cost) {
      best_cost = c;
      best_terms = cand;
    }
  }
  cert.upper = best_cost;
  for (const auto& dt : best_terms) cert.uc_upper.push_back(to_sparse(dt, g));

  auto [lower, witness] = dual_ascent(sx, sy, g);
  cert.lower = std::min(lower, cert.upper);
  cert.uc_lower = witness;
  return cert;
}

namespace {

// Closed-form sup of ell1_mu over T_n = span(ball(n)) cut to the scaled open
// unit ball of the ambient norm.
struct TnData {
  int n = 0;
  SeminormSpec ambient = SeminormSpec::ell1();
  std::vector<std::size_t> sphere;
  std::vector<double> layer_min_weight;

  double sup_base(double mu) const {
    double m = 0.0;
    switch (ambient.tag()) {
      case SeminormSpec::Tag::Ell1:
      case SeminormSpec::Tag::Ell1Lambda:
      case SeminormSpec::Tag::WeightedEll1:
        for (int j = 0; j <= n; ++j)
          if (sphere[static_cast<std::size_t>(j)] > 0)
            m = std::max(m, std::pow(mu, j) / layer_min_weight[static_cast<std::size_t>(j)]);
        break;
      case SeminormSpec::Tag::EllInf:
        for (int j = 0; j <= n; ++j)
          m += static_cast<double>(sphere[static_cast<std::size_t>(j)]) * std::pow(mu, j);
        break;
      case SeminormSpec::Tag::Sobolev2: {
        double s = 0.0;
        for (int j = 0; j <= n; ++j) {
          double w = std::pow(mu, j) / std::pow(1.0 + j, ambient.k());
          s += static_cast<double>(sphere[static_cast<std::size_t>(j)]) * w * w;
        }
        m = std::sqrt(s);
        break;
      }
    }
    return static_cast<double>(n) / (n + 1.0) * m;
  }
};

TnData make_tn_data(const Group& G, int n, const SeminormSpec& ambient) {
  TnData d;
  d.n = n;
  d.ambient = ambient;
  BallTable B = G.ball(n);
  d.sphere.assign(static_cast<std::size_t>(n) + 1, 0);
  d.layer_min_weight.assign(static_cast<std::size_t>(n) + 1,
                            std::numeric_limits<double>::infinity());
  for (const auto& e : B.elements) {
    auto l = static_cast<std::size_t>(e.length());
    d.sphere[l] += 1;
    if (ambient.is_l1_type())
      d.layer_min_weight[l] = std::min(d.layer_min_weight[l], ambient.element_weight(e));
  }
  return d;
}

// Largest admissible mu (sup <= 1); the sup is nondecreasing in mu.
double admissible_mu_root(const TnData& tn) {
  double hi = 1.0;
  while (tn.sup_base(hi * 2.0) <= 1.0 && hi < 1e6) hi *= 2.0;
  if (tn.sup_base(hi * 2.0) <= 1.0) return hi;  // flat; capped
  double a = hi, b = hi * 2.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (a + b);
    if (tn.sup_base(mid) <= 1.0)
      a = mid;
    else
      b = mid;
  }
  return a;
}

// Best admissible witness norm scale*ell1_mu for a radial length profile.
// squared == true uses scale^2 (one functional per tensor leg).
std::optional<WitnessNormData> best_witness(const TnData& tn,
                                            const std::map<int, double>& length_mass,
                                            bool squared, double* value_out) {
  if (tn.sup_base(1.0) > 1.0 + 1e-12) return std::nullopt;
  double best_val = -1.0;
  WitnessNormData best;
  auto consider = [&](double mu) {
    double s = tn.sup_base(mu);
    if (s > 1.0 + 1e-12 || s <= 0.0) return;
    double scale = 1.0 / s;
    double v = 0.0;
    for (const auto& [l, mass] : length_mass) v += std::pow(mu, l) * mass;
    v *= squared ? scale * scale : scale;
    if (v > best_val) {
      best_val = v;
      best = WitnessNormData{scale, mu, s};
    }
  };
  double root = admissible_mu_root(tn);
  consider(1.0);
  consider(root);
  for (int i = 1; i < 16; ++i) consider(1.0 + (root - 1.0) * i / 16.0);
  if (best_val < 0.0) return std::nullopt;
  *value_out = best_val;
  return best;
}

// Geodesic block factorization of u_g with factors inside T_n; minimizes the
// cost coeff * m^k over the block length.
ProductTerm block_term(const Group& G, const GroupElement& g, double mass, int n, int k,
                       const SeminormSpec& ambient, double* cost_out) {
  const double shrink = static_cast<double>(n) / (n + 1.0);
  if (g.is_identity()) {
    RingElement f = Complex(shrink, 0.0) * RingElement::basis(G.identity());
    double coeff = mass / shrink;
    *cost_out = coeff;
    return ProductTerm{coeff, {f}};
  }
  ProductTerm best;
  double best_cost = -1.0;
  for (int bl = 1; bl <= n; ++bl) {
    const Word& w = g.word();
    std::vector<RingElement> factors;
    double coeff = mass;
    for (std::size_t pos = 0; pos < w.size(); pos += static_cast<std::size_t>(bl)) {
      GroupElement b = G.normalize(w.substr(pos, static_cast<std::size_t>(bl)));
      double scale = shrink / ambient.basis_norm(b);
      factors.push_back(Complex(scale, 0.0) * RingElement::basis(b));
      coeff /= scale;
    }
    double cost = coeff * std::pow(static_cast<double>(factors.size()), k);
    if (best_cost < 0.0 || cost < best_cost) {
      best_cost = cost;
      best = ProductTerm{coeff, std::move(factors)};
    }
  }
  *cost_out = best_cost;
  return best;
}

BoundCertificate product_bounds_core(const Group& G, const RingElement& a, int n, int k,
                                     const SeminormSpec& ambient, CertKind kind) {
  if (n < 1) throw precondition_violation("constrained norm needs n >= 1");
  BoundCertificate cert;
  cert.kind = kind;
  cert.n = n;
  cert.k = k;
  cert.ambient = ambient.label();
  if (a.empty()) return cert;

  std::vector<ProductTerm> terms;
  double cost = 0.0;
  int max_len = 0;
  for (const auto& [g, c] : a.support()) {
    double tc = 0.0;
    terms.push_back(block_term(G, g, std::abs(c), n, k, ambient, &tc));
    cost += tc;
    max_len = std::max(max_len, g.length());
  }
  // single-block candidate covering the whole element
  if (max_len <= n) {
    double na = eval(ambient, a);
    if (na > 0.0) {
      const double shrink = static_cast<double>(n) / (n + 1.0);
      double coeff = na / shrink;
      if (coeff < cost) {
        RingElement f = Complex(shrink / na, 0.0) * a;
        terms.assign(1, ProductTerm{coeff, {std::move(f)}});
        cost = coeff;
      }
    }
  }
  cert.product_upper = std::move(terms);
  cert.upper = cost;

  TnData tn = make_tn_data(G, n, ambient);
  std::map<int, double> mass;
  for (const auto& [g, c] : a.support()) mass[g.length()] += std::abs(c);
  double val = 0.0;
  if (auto w = best_witness(tn, mass, false, &val)) {
    cert.norm_lower = w;
    cert.lower = std::min(val, cert.upper);
  } else {
    cert.lower_fallback = true;
  }
  return cert;
}

}  // namespace

BoundCertificate minimal_norm_bounds(const Group& G, const RingElement& a, int n,
                                     const SeminormSpec& ambient) {
  return product_bounds_core(G, a, n, 0, ambient, CertKind::MinimalRing);
}

BoundCertificate sobolev_minimal_bounds(const Group& G, const RingElement& a, int n, int k,
                                        const SeminormSpec& ambient) {
  if (k < 0) throw precondition_violation("sobolev bounds need k >= 0");
  return product_bounds_core(G, a, n, k, ambient, CertKind::SobolevRing);
}

BoundCertificate sobolev_minimal_bounds_tensor(const Group& G, const TensorElement& t, int n,
                                               int k, const SeminormSpec& ambient) {
  if (n < 1) throw precondition_violation("constrained norm needs n >= 1");
  if (k < 0) throw precondition_violation("sobolev bounds need k >= 0");
  BoundCertificate cert;
  cert.kind = CertKind::SobolevTensor;
  cert.n = n;
  cert.k = k;
  cert.ambient = ambient.label();
  if (t.empty()) return cert;

  double cost = 0.0;
  for (const auto& [key, c] : t.support()) {
    double cl = 0.0, cr = 0.0;
    ProductTerm left = block_term(G, key.first, 1.0, n, 0, ambient, &cl);
    ProductTerm right = block_term(G, key.second, 1.0, n, 0, ambient, &cr);
    TensorProductTerm term;
    term.coeff = std::abs(c) * left.coeff * right.coeff;
    term.left_factors = std::move(left.factors);
    term.right_factors = std::move(right.factors);
    int m = static_cast<int>(term.left_factors.size() + term.right_factors.size());
    cost += term.coeff * std::pow(m, k);
    cert.tensor_upper.push_back(std::move(term));
  }
  cert.upper = cost;

  TnData tn = make_tn_data(G, n, ambient);
  std::map<int, double> mass;
  for (const auto& [key, c] : t.support())
    mass[key.first.length() + key.second.length()] += std::abs(c);
  double val = 0.0;
  if (auto w = best_witness(tn, mass, true, &val)) {
    cert.norm_lower = w;
    cert.lower = std::min(val, cert.upper);
  } else {
    cert.lower_fallback = true;
  }
  return cert;
}

BoundCertificate push_through_mult(const Group& G, const BoundCertificate& tensor_cert) {
  (void)G;
  if (tensor_cert.kind != CertKind::SobolevTensor)
    throw precondition_violation("push_through_mult expects a tensor certificate");
  BoundCertificate cert;
  cert.kind = tensor_cert.k == 0 ? CertKind::MinimalRing : CertKind::SobolevRing;
  cert.n = tensor_cert.n;
  cert.k = tensor_cert.k;
  cert.ambient = tensor_cert.ambient;
  double cost = 0.0;
  for (const auto& t : tensor_cert.tensor_upper) {
    ProductTerm p;
    p.coeff = t.coeff;
    p.factors = t.left_factors;
    p.factors.insert(p.factors.end(), t.right_factors.begin(), t.right_factors.end());
    cost += p.coeff * std::pow(p.arity(), cert.k);
    cert.product_upper.push_back(std::move(p));
  }
  cert.upper = cost;
  cert.lower_fallback = true;
  return cert;
}

BoundCertificate min_combine(const BoundCertificate& a, const BoundCertificate& b) {
  BoundCertificate out = (a.upper <= b.upper) ? a : b;
  const BoundCertificate& lo = (a.lower >= b.lower) ? a : b;
  out.lower = lo.lower;
  out.norm_lower = lo.norm_lower;
  out.lower_fallback = lo.lower_fallback;
  if (out.lower > out.upper) out.lower = out.upper;
  return out;
}

VerifyResult verify_uc_certificate(const BoundCertificate& c, const TensorElement& t,
                                   const SeminormSpec& sx, const SeminormSpec& sy) {
  VerifyResult res;
  std::ostringstream detail;
  Grid g = make_grid(t);

  double cost = 0.0;
  for (const auto& term : c.uc_upper) {
    for (const auto& [e, v] : term.left)
      if (v < 0.0) res.ok = false;
    for (const auto& [e, v] : term.right)
      if (v < 0.0) res.ok = false;
    std::vector<double> l(g.xs.size(), 0.0), r(g.ys.size(), 0.0);
    for (std::size_t i = 0; i < g.xs.size(); ++i) {
      auto it = term.left.find(g.xs[i]);
      if (it != term.left.end()) l[i] = it->second;
    }
    for (std::size_t j = 0; j < g.ys.size(); ++j) {
      auto it = term.right.find(g.ys[j]);
      if (it != term.right.end()) r[j] = it->second;
    }
    cost += vec_norm(sx, l, g.xs) * vec_norm(sy, r, g.ys);
  }
  for (std::size_t i = 0; i < g.xs.size(); ++i)
    for (std::size_t j = 0; j < g.ys.size(); ++j) {
      double s = 0.0;
      for (const auto& term : c.uc_upper) {
        auto li = term.left.find(g.xs[i]);
        auto rj = term.right.find(g.ys[j]);
        if (li != term.left.end() && rj != term.right.end()) s += li->second * rj->second;
      }
      if (s + kCertTol < g.m[i][j]) {
        res.ok = false;
        detail << "domination fails at grid (" << i << "," << j << "); ";
      }
    }
  if (std::abs(cost - c.upper) > kCertTol) {
    res.ok = false;
    detail << "upper replay " << cost << " != " << c.upper << "; ";
  }

  if (c.uc_lower) {
    for (const auto& [e, v] : c.uc_lower->left)
      if (v < -1e-15) res.ok = false;
    for (const auto& [e, v] : c.uc_lower->right)
      if (v < -1e-15) res.ok = false;
    if (dual_norm(sx, c.uc_lower->left) > 1.0 + kCertTol) {
      res.ok = false;
      detail << "left dual norm exceeds one; ";
    }
    if (dual_norm(sy, c.uc_lower->right) > 1.0 + kCertTol) {
      res.ok = false;
      detail << "right dual norm exceeds one; ";
    }
    double val = 0.0;
    for (const auto& [key, cc] : t.support()) {
      auto li = c.uc_lower->left.find(key.first);
      auto rj = c.uc_lower->right.find(key.second);
      if (li != c.uc_lower->left.end() && rj != c.uc_lower->right.end())
        val += li->second * rj->second * std::abs(cc);
    }
    if (val + kCertTol < c.lower) {
      res.ok = false;
      detail << "lower replay " << val << " < " << c.lower << "; ";
    }
  } else if (c.lower > 0.0) {
    res.ok = false;
    detail << "positive lower bound without witness; ";
  }
  if (c.lower > c.upper + kCertTol) {
    res.ok = false;
    detail << "lower exceeds upper; ";
  }
  res.detail = detail.str();
  return res;
}

namespace {

bool factor_in_tn(const RingElement& f, int n, const SeminormSpec& ambient) {
  for (const auto& [g, c] : f.support())
    if (g.length() > n) return false;
  return eval(ambient, f) <= static_cast<double>(n) / (n + 1.0) + kCertTol;
}

void verify_norm_lower(const Group& G, const BoundCertificate& c,
                       const std::map<int, double>& mass, const SeminormSpec& ambient,
                       bool squared, VerifyResult* res) {
  if (!c.norm_lower) {
    if (c.lower > 0.0) {
      res->ok = false;
      res->detail += "positive lower bound without witness; ";
    }
    return;
  }
  TnData tn = make_tn_data(G, c.n, ambient);
  double s = tn.sup_base(c.norm_lower->mu);
  if (std::abs(s - c.norm_lower->sup_tn) > kCertTol) {
    res->ok = false;
    res->detail += "witness sup replay mismatch; ";
  }
  if (s > 1.0 + kCertTol) {
    res->ok = false;
    res->detail += "witness norm not admissible; ";
  }
  if (c.norm_lower->scale < 1.0 - kCertTol) {
    res->ok = false;
    res->detail += "witness scale below one; ";
  }
  double v = 0.0;
  for (const auto& [l, m2] : mass) v += std::pow(c.norm_lower->mu, l) * m2;
  v *= squared ? c.norm_lower->scale * c.norm_lower->scale : c.norm_lower->scale;
  if (v + kCertTol < c.lower) {
    res->ok = false;
    res->detail += "lower replay below stored bound; ";
  }
  if (c.lower > c.upper + kCertTol) {
    res->ok = false;
    res->detail += "lower exceeds upper; ";
  }
}

}  // namespace

VerifyResult verify_product_certificate(const Group& G, const BoundCertificate& c,
                                        const RingElement& a, const SeminormSpec& ambient) {
  VerifyResult res;
  RingElement coverage;
  double cost = 0.0;
  for (const auto& term : c.product_upper) {
    RingElement prod = RingElement::basis(G.identity());
    for (const auto& f : term.factors) {
      if (!factor_in_tn(f, c.n, ambient)) {
        res.ok = false;
        res.detail += "factor outside the constraint set; ";
      }
      prod = convolve(G, prod, absolute(f));
    }
    coverage += Complex(term.coeff, 0.0) * prod;
    cost += term.coeff * std::pow(term.arity(), c.k);
  }
  if (!radial_leq(absolute(a), coverage, kCertTol)) {
    res.ok = false;
    res.detail += "product domination fails; ";
  }
  if (std::abs(cost - c.upper) > kCertTol) {
    res.ok = false;
    res.detail += "upper replay mismatch; ";
  }
  std::map<int, double> mass;
  for (const auto& [g, cc] : a.support()) mass[g.length()] += std::abs(cc);
  verify_norm_lower(G, c, mass, ambient, false, &res);
  return res;
}

VerifyResult verify_tensor_product_certificate(const Group& G, const BoundCertificate& c,
                                               const TensorElement& t,
                                               const SeminormSpec& ambient) {
  VerifyResult res;
  TensorElement coverage;
  double cost = 0.0;
  for (const auto& term : c.tensor_upper) {
    RingElement lp = RingElement::basis(G.identity());
    for (const auto& f : term.left_factors) {
      if (!factor_in_tn(f, c.n, ambient)) {
        res.ok = false;
        res.detail += "left factor outside the constraint set; ";
      }
      lp = convolve(G, lp, absolute(f));
    }
    RingElement rp = RingElement::basis(G.identity());
    for (const auto& f : term.right_factors) {
      if (!factor_in_tn(f, c.n, ambient)) {
        res.ok = false;
        res.detail += "right factor outside the constraint set; ";
      }
      rp = convolve(G, rp, absolute(f));
    }
    TensorElement tp = tensor(lp, rp);
    tp *= Complex(term.coeff, 0.0);
    coverage += tp;
    int m = static_cast<int>(term.left_factors.size() + term.right_factors.size());
    cost += term.coeff * std::pow(m, c.k);
  }
  if (!radial_leq(absolute(t), coverage, kCertTol)) {
    res.ok = false;
    res.detail += "tensor product domination fails; ";
  }
  if (std::abs(cost - c.upper) > kCertTol) {
    res.ok = false;
    res.detail += "upper replay mismatch; ";
  }
  std::map<int, double> mass;
  for (const auto& [key, cc] : t.support())
    mass[key.first.length() + key.second.length()] += std::abs(cc);
  verify_norm_lower(G, c, mass, ambient, true, &res);
  return res;
}

}  // namespace hypring
