#include "uchi/presentation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace uchi {

ElementVec LiePresentation::basis_vec(std::uint32_t i) const {
  ElementVec v(n);
  v[i] = 1;
  return v;
}

ElementVec LiePresentation::bracket(const ElementVec& x, const ElementVec& y) const {
  ElementVec out(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (!x[i]) continue;
    for (std::uint32_t j = 0; j < n; ++j) {
      if (!y[j]) continue;
      fp_t s = F.mul(x[i], y[j]);
      for (auto& [k, c] : br[i][j]) out[k] = F.add(out[k], F.mul(s, c));
    }
  }
  return out;
}

DenseMatFp LiePresentation::ad_basis(std::uint32_t i) const {
  DenseMatFp m(n, n);
  for (std::uint32_t j = 0; j < n; ++j)
    for (auto& [k, c] : br[i][j]) m.set(k, j, c);
  return m;
}

DenseMatFp LiePresentation::ad(const ElementVec& x) const {
  DenseMatFp m(n, n);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (!x[i]) continue;
    for (std::uint32_t j = 0; j < n; ++j)
      for (auto& [k, c] : br[i][j]) m.set(k, j, F.add(m.at(k, j), F.mul(x[i], c)));
  }
  return m;
}

bool LiePresentation::is_cartan_index(std::uint32_t i) const {
  return std::find(cartan.begin(), cartan.end(), i) != cartan.end();
}

bool LiePresentation::is_central_index(std::uint32_t i) const {
  return std::find(central.begin(), central.end(), i) != central.end();
}

namespace {

ElementVec scale_vec(const PrimeField& F, const ElementVec& x, fp_t s) {
  ElementVec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = F.mul(x[i], s);
  return out;
}

ElementVec add_vec(const PrimeField& F, const ElementVec& x, const ElementVec& y) {
  ElementVec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = F.add(x[i], y[i]);
  return out;
}

}  // namespace

ElementVec LiePresentation::p_power(const ElementVec& x) const {
  // support of x; peel one basis term at a time via Jacobson additivity
  std::vector<std::uint32_t> supp;
  for (std::uint32_t i = 0; i < n; ++i)
    if (x[i]) supp.push_back(i);
  if (supp.empty()) return ElementVec(n);
  if (supp.size() == 1) {
    // (a x_i)^{[p]} = a^p x_i^{[p]}
    fp_t ap = F.pow(x[supp[0]], F.p());
    return scale_vec(F, pmap[supp[0]], ap);
  }
  std::uint32_t i0 = supp[0];
  ElementVec u(n);
  u[i0] = x[i0];
  ElementVec v = x;
  v[i0] = 0;
  ElementVec out = add_vec(F, p_power(u), p_power(v));
  // s_i(u,v): i * s_i = coefficient of t^{i-1} in ad(tu+v)^{p-1}(u)
  std::uint32_t p = F.p();
  std::vector<ElementVec> coeff(p, ElementVec(n));  // by t-degree
  coeff[0] = u;
  for (std::uint32_t step = 0; step + 1 < p; ++step) {
    std::vector<ElementVec> next(p, ElementVec(n));
    for (std::uint32_t d = 0; d < p; ++d) {
      if (coeff[d].is_zero()) continue;
      ElementVec bu = bracket(u, coeff[d]);
      if (d + 1 < p) next[d + 1] = add_vec(F, next[d + 1], bu);
      next[d] = add_vec(F, next[d], bracket(v, coeff[d]));
    }
    coeff = std::move(next);
  }
  for (std::uint32_t i = 1; i < p; ++i) {
    ElementVec si = scale_vec(F, coeff[i - 1], F.inv(i % p));
    out = add_vec(F, out, si);
  }
  return out;
}

LinearForm LiePresentation::kappa(const ElementVec& x) const {
  // chi(x_j) = K(x, x_j)
  LinearForm chi(n);
  for (std::uint32_t j = 0; j < n; ++j) {
    fp_t acc = 0;
    for (std::uint32_t i = 0; i < n; ++i) acc = F.add(acc, F.mul(x[i], gram.at(i, j)));
    chi[j] = acc;
  }
  return chi;
}

ElementVec LiePresentation::kappa_inv(const LinearForm& chi) const {
  if (!gram_inv) throw std::domain_error("kappa_inv: trace form is degenerate");
  ElementVec x(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    fp_t acc = 0;
    for (std::uint32_t j = 0; j < n; ++j) acc = F.add(acc, F.mul(gram_inv->at(i, j), chi[j]));
    x[i] = acc;
  }
  return x;
}

void LiePresentation::finalize() {
  if (labels.size() != n || br.size() != n || pmap.size() != n)
    throw std::invalid_argument("presentation: field sizes do not match dimension");
  for (auto& row : br)
    if (row.size() != n) throw std::invalid_argument("presentation: bracket table malformed");
  for (auto& v : pmap)
    if (v.size() != n) throw std::invalid_argument("presentation: p-map vector malformed");
  if (gram.rows() != n || gram.cols() != n)
    throw std::invalid_argument("presentation: gram matrix malformed");
  for (auto c : cartan)
    if (c >= n) throw std::invalid_argument("presentation: cartan index out of range");

  weights.assign(n, std::vector<fp_t>(cartan.size(), 0));
  for (std::size_t t = 0; t < cartan.size(); ++t)
    for (std::uint32_t i = 0; i < n; ++i)
      for (auto& [k, c] : br[cartan[t]][i])
        if (k == i) weights[i][t] = c;

  central.clear();
  for (std::uint32_t i = 0; i < n; ++i) {
    bool zero = true;
    for (std::uint32_t j = 0; j < n && zero; ++j)
      if (!br[i][j].empty()) zero = false;
    if (zero) central.push_back(i);
  }

  gram_inv = dense_inverse(F, gram);
}

ValidationReport validate_presentation(const LiePresentation& g) {
  ValidationReport rep;
  const PrimeField& F = g.F;
  std::uint32_t n = g.n;

  {  // antisymmetry, including [x,x] = 0
    AxiomResult r{"antisymmetry", true, ""};
    for (std::uint32_t i = 0; i < n && r.pass; ++i)
      for (std::uint32_t j = 0; j < n && r.pass; ++j) {
        SparseVec neg = sparse_scale(F, g.br[j][i], F.neg(1));
        if (g.br[i][j] != neg) {
          r.pass = false;
          r.witness = "c[" + std::to_string(i) + "][" + std::to_string(j) + "] != -c[" +
                      std::to_string(j) + "][" + std::to_string(i) + "]";
        }
      }
    rep.checks.push_back(std::move(r));
  }
  {  // Jacobi on all basis triples
    AxiomResult r{"jacobi", true, ""};
    for (std::uint32_t i = 0; i < n && r.pass; ++i)
      for (std::uint32_t j = i + 1; j < n && r.pass; ++j)
        for (std::uint32_t k = j + 1; k < n && r.pass; ++k) {
          ElementVec xi = g.basis_vec(i), xj = g.basis_vec(j), xk = g.basis_vec(k);
          ElementVec s = g.bracket(xi, g.bracket(xj, xk));
          s = add_vec(F, s, g.bracket(xj, g.bracket(xk, xi)));
          s = add_vec(F, s, g.bracket(xk, g.bracket(xi, xj)));
          if (!s.is_zero()) {
            r.pass = false;
            r.witness = "triple (" + std::to_string(i) + "," + std::to_string(j) + "," +
                        std::to_string(k) + ")";
          }
        }
    rep.checks.push_back(std::move(r));
  }
  {  // restrictedness: ad(x_i^{[p]}) = ad(x_i)^p
    AxiomResult r{"restrictedness", true, ""};
    for (std::uint32_t i = 0; i < n && r.pass; ++i) {
      DenseMatFp lhs = g.ad(g.pmap[i]);
      DenseMatFp rhs = g.ad_basis(i).pow(F, F.p());
      if (!(lhs == rhs)) {
        r.pass = false;
        r.witness = "basis element " + g.labels[i];
      }
    }
    rep.checks.push_back(std::move(r));
  }
  {  // gram symmetric
    AxiomResult r{"gram symmetric", true, ""};
    for (std::uint32_t i = 0; i < n && r.pass; ++i)
      for (std::uint32_t j = 0; j < n && r.pass; ++j)
        if (g.gram.at(i, j) != g.gram.at(j, i)) {
          r.pass = false;
          r.witness = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
    rep.checks.push_back(std::move(r));
  }
  {  // gram invariant: K([x,y],z) = K(x,[y,z]) on basis triples
    AxiomResult r{"gram invariant", true, ""};
    for (std::uint32_t i = 0; i < n && r.pass; ++i)
      for (std::uint32_t j = 0; j < n && r.pass; ++j)
        for (std::uint32_t k = 0; k < n && r.pass; ++k) {
          fp_t lhs = 0;
          for (auto& [t, c] : g.br[i][j]) lhs = F.add(lhs, F.mul(c, g.gram.at(t, k)));
          fp_t rhs = 0;
          for (auto& [t, c] : g.br[j][k]) rhs = F.add(rhs, F.mul(c, g.gram.at(i, t)));
          if (lhs != rhs) {
            r.pass = false;
            r.witness = "triple (" + std::to_string(i) + "," + std::to_string(j) + "," +
                        std::to_string(k) + ")";
          }
        }
    rep.checks.push_back(std::move(r));
  }
  {  // gram nondegenerate
    AxiomResult r{"gram nondegenerate", true, ""};
    if (!g.gram_inv) {
      r.pass = false;
      r.witness = "det K = 0";
    }
    rep.checks.push_back(std::move(r));
  }
  {  // toral diagonality with stored weights
    AxiomResult r{"cartan diagonal", true, ""};
    for (std::size_t t = 0; t < g.cartan.size() && r.pass; ++t)
      for (std::uint32_t i = 0; i < n && r.pass; ++i) {
        const SparseVec& b = g.br[g.cartan[t]][i];
        bool ok = b.empty() || (b.size() == 1 && b[0].first == i && b[0].second == g.weights[i][t]);
        if (b.empty() && g.weights[i][t] != 0) ok = false;
        if (!ok) {
          r.pass = false;
          r.witness = "[" + g.labels[g.cartan[t]] + ", " + g.labels[i] + "] not diagonal";
        }
      }
    rep.checks.push_back(std::move(r));
  }
  {  // cartan spans a torus of the declared rank
    AxiomResult r{"cartan size = rank", true, ""};
    if (g.cartan.size() != g.rank) {
      r.pass = false;
      r.witness = "|cartan| = " + std::to_string(g.cartan.size()) + ", rank = " +
                  std::to_string(g.rank);
    }
    rep.checks.push_back(std::move(r));
  }
  {  // labels unique
    AxiomResult r{"labels unique", true, ""};
    std::set<std::string> seen(g.labels.begin(), g.labels.end());
    if (seen.size() != g.labels.size()) {
      r.pass = false;
      r.witness = "duplicate label";
    }
    rep.checks.push_back(std::move(r));
  }
  return rep;
}

CentralizerResult centralizer_of_form(const LiePresentation& g, const LinearForm& chi) {
  // rows j, cols i: chi([x_i, x_j])
  const PrimeField& F = g.F;
  std::vector<Triplet> ts;
  for (std::uint32_t j = 0; j < g.n; ++j)
    for (std::uint32_t i = 0; i < g.n; ++i) {
      fp_t acc = 0;
      for (auto& [k, c] : g.br[i][j]) acc = F.add(acc, F.mul(c, chi[k]));
      if (acc) ts.push_back({j, i, acc});
    }
  SparseMatFp m(g.n, g.n, ts, F);
  KernelResult k = kernel_basis(F, m, KernelBackend::Dense);
  CentralizerResult out;
  out.dim = k.dim;
  for (auto& v : k.basis) {
    ElementVec e(g.n);
    for (auto& [i, c] : v) e[i] = c;
    out.basis.push_back(std::move(e));
  }
  return out;
}

CentralizerResult centralizer_of_element(const LiePresentation& g, const ElementVec& x) {
  const PrimeField& F = g.F;
  DenseMatFp adx = g.ad(x);
  std::vector<Triplet> ts;
  for (std::uint32_t r = 0; r < g.n; ++r)
    for (std::uint32_t c = 0; c < g.n; ++c)
      if (adx.at(r, c)) ts.push_back({r, c, adx.at(r, c)});
  SparseMatFp m(g.n, g.n, ts, F);
  KernelResult k = kernel_basis(F, m, KernelBackend::Dense);
  CentralizerResult out;
  out.dim = k.dim;
  for (auto& v : k.basis) {
    ElementVec e(g.n);
    for (auto& [i, c] : v) e[i] = c;
    out.basis.push_back(std::move(e));
  }
  return out;
}

bool is_regular_form(const LiePresentation& g, const LinearForm& chi) {
  return centralizer_of_form(g, chi).dim == g.rank;
}

LinearForm zero_central_part(const LiePresentation& g, const LinearForm& chi) {
  // adaptedness: every bracket must avoid central coordinates, and the
  // non-central basis vectors must span [g,g]
  const PrimeField& F = g.F;
  std::vector<char> is_central(g.n, 0);
  for (auto c : g.central) is_central[c] = 1;
  std::vector<SparseVec> derived;
  for (std::uint32_t i = 0; i < g.n; ++i)
    for (std::uint32_t j = i + 1; j < g.n; ++j) {
      if (g.br[i][j].empty()) continue;
      for (auto& [k, c] : g.br[i][j])
        if (is_central[k])
          throw std::domain_error("basis not adapted to z(g) + [g,g]");
      derived.push_back(g.br[i][j]);
    }
  std::uint32_t dim_derived =
      static_cast<std::uint32_t>(rref_rows(F, std::move(derived), g.n).size());
  std::uint32_t non_central = g.n - static_cast<std::uint32_t>(g.central.size());
  if (dim_derived != non_central)
    throw std::domain_error("basis not adapted to z(g) + [g,g]");
  LinearForm out = chi;
  for (auto c : g.central) out[c] = 0;
  return out;
}

JordanPair verify_jordan(const LiePresentation& g, const LinearForm& chi_s,
                         const LinearForm& chi_n) {
  const PrimeField& F = g.F;
  ElementVec xs = g.kappa_inv(chi_s);
  ElementVec xn = g.kappa_inv(chi_n);

  FpPoly m = minimal_polynomial(F, g.ad(xs));
  if (!is_squarefree(F, m))
    throw CertificationError("semisimple part not semisimple",
                             "ad of kappa^{-1}(chi_s) has a non-squarefree minimal polynomial");
  if (!splits_distinct_over_fp(F, m))
    throw CertificationError(
        "extension field required",
        "semisimple part has eigenvalues outside F_p; field extensions are not supported");

  FpPoly mn = minimal_polynomial(F, g.ad(xn));
  bool ad_nilpotent = true;
  for (std::size_t i = 0; i + 1 < mn.c.size(); ++i)
    if (mn.c[i]) ad_nilpotent = false;
  if (!ad_nilpotent)
    throw CertificationError("nilpotent part not ad-nilpotent",
                             "ad of kappa^{-1}(chi_n) is not nilpotent");
  ElementVec y = xn;
  bool reaches_zero = y.is_zero();
  for (std::uint32_t it = 0; it <= g.n && !reaches_zero; ++it) {
    y = g.p_power(y);
    reaches_zero = y.is_zero();
  }
  if (!reaches_zero)
    throw CertificationError("nilpotent part not p-nilpotent",
                             "iterated p-th powers of kappa^{-1}(chi_n) do not reach zero");

  if (!g.bracket(xs, xn).is_zero())
    throw CertificationError("parts do not commute",
                             "[kappa^{-1}(chi_s), kappa^{-1}(chi_n)] != 0");

  return JordanPair{chi_s, chi_n, true};
}

LeviResult levi_subalgebra(const LiePresentation& g, const ElementVec& x_s) {
  const PrimeField& F = g.F;
  FpPoly m = minimal_polynomial(F, g.ad(x_s));
  if (!is_squarefree(F, m))
    throw CertificationError("semisimple part not semisimple",
                             "levi_subalgebra: element is not semisimple");
  if (!splits_distinct_over_fp(F, m))
    throw CertificationError("extension field required",
                             "levi_subalgebra: element is not F_p-split");

  DenseMatFp adx = g.ad(x_s);
  // reuse original basis vectors lying in the centralizer
  std::vector<std::int64_t> reused;
  std::vector<ElementVec> chosen;
  for (std::uint32_t i = 0; i < g.n; ++i) {
    bool in_ker = true;
    for (std::uint32_t r = 0; r < g.n && in_ker; ++r)
      if (adx.at(r, i)) in_ker = false;
    if (in_ker) {
      chosen.push_back(g.basis_vec(i));
      reused.push_back(i);
    }
  }
  // extend with kernel vectors that add rank
  CentralizerResult ker = centralizer_of_element(g, x_s);
  {
    std::vector<SparseVec> rows;
    auto to_sparse = [&](const ElementVec& e) {
      SparseVec v;
      for (std::uint32_t i = 0; i < g.n; ++i)
        if (e[i]) v.emplace_back(i, e[i]);
      return v;
    };
    for (auto& e : chosen) rows.push_back(to_sparse(e));
    std::uint32_t cur_rank = static_cast<std::uint32_t>(rref_rows(F, rows, g.n).size());
    for (auto& cand : ker.basis) {
      if (chosen.size() == ker.dim) break;
      auto trial = rows;
      trial.push_back(to_sparse(cand));
      std::uint32_t r2 = static_cast<std::uint32_t>(rref_rows(F, trial, g.n).size());
      if (r2 > cur_rank) {
        chosen.push_back(cand);
        reused.push_back(-1);
        rows.push_back(to_sparse(cand));
        cur_rank = r2;
      }
    }
    if (chosen.size() != ker.dim)
      throw std::logic_error("levi basis selection failed to reach centralizer dimension");
  }

  std::uint32_t m_dim = static_cast<std::uint32_t>(chosen.size());
  DenseMatFp B(g.n, m_dim);
  for (std::uint32_t a = 0; a < m_dim; ++a)
    for (std::uint32_t r = 0; r < g.n; ++r) B.set(r, a, chosen[a][r]);

  auto expand = [&](const ElementVec& v) -> ElementVec {
    auto sol = solve_dense(F, B, v);
    if (!sol) throw std::logic_error("centralizer not closed: expansion failed");
    // verify exactly (solve_dense zero-fills free variables)
    ElementVec back(g.n);
    for (std::uint32_t r = 0; r < g.n; ++r) {
      fp_t acc = 0;
      for (std::uint32_t a = 0; a < m_dim; ++a) acc = F.add(acc, F.mul(B.at(r, a), (*sol)[a]));
      back[r] = acc;
    }
    if (!(back == v)) throw std::logic_error("centralizer not closed: expansion inconsistent");
    return *sol;
  };

  LiePresentation levi(F);
  levi.n = m_dim;
  for (std::uint32_t a = 0; a < m_dim; ++a)
    levi.labels.push_back(reused[a] >= 0 ? g.labels[static_cast<std::size_t>(reused[a])]
                                         : "y" + std::to_string(a));
  levi.br.assign(m_dim, std::vector<SparseVec>(m_dim));
  for (std::uint32_t a = 0; a < m_dim; ++a)
    for (std::uint32_t b = 0; b < m_dim; ++b) {
      ElementVec w = g.bracket(chosen[a], chosen[b]);
      ElementVec coeffs = expand(w);
      SparseVec sv;
      for (std::uint32_t k = 0; k < m_dim; ++k)
        if (coeffs[k]) sv.emplace_back(k, coeffs[k]);
      levi.br[a][b] = std::move(sv);
    }
  for (std::uint32_t a = 0; a < m_dim; ++a) levi.pmap.push_back(expand(g.p_power(chosen[a])));
  levi.gram = DenseMatFp(m_dim, m_dim);
  for (std::uint32_t a = 0; a < m_dim; ++a)
    for (std::uint32_t b = 0; b < m_dim; ++b) {
      fp_t acc = 0;
      for (std::uint32_t r = 0; r < g.n; ++r)
        for (std::uint32_t s = 0; s < g.n; ++s)
          acc = F.add(acc, F.mul(F.mul(chosen[a][r], chosen[b][s]), g.gram.at(r, s)));
      levi.gram.set(a, b, acc);
    }
  levi.rank = g.rank;
  for (std::uint32_t a = 0; a < m_dim; ++a)
    if (reused[a] >= 0 && g.is_cartan_index(static_cast<std::uint32_t>(reused[a])))
      levi.cartan.push_back(a);
  if (levi.cartan.size() != levi.rank)
    throw std::domain_error(
        "levi_subalgebra: Cartan of g is not inherited (non-toral semisimple part is unsupported)");
  levi.finalize();
  if (!levi.gram_inv)
    throw std::domain_error(
        "levi_subalgebra: restricted trace form is degenerate (p is not very good for this Levi)");
  if (g.rep) {
    Realization r;
    r.dim = g.rep->dim;
    for (std::uint32_t a = 0; a < m_dim; ++a) {
      DenseMatFp mat(r.dim, r.dim);
      for (std::uint32_t i = 0; i < g.n; ++i)
        if (chosen[a][i])
          for (std::uint32_t rr = 0; rr < r.dim; ++rr)
            for (std::uint32_t cc = 0; cc < r.dim; ++cc)
              mat.set(rr, cc,
                      F.add(mat.at(rr, cc), F.mul(chosen[a][i], g.rep->mats[i].at(rr, cc))));
      r.mats.push_back(std::move(mat));
    }
    levi.rep = std::move(r);
  }
  return LeviResult{std::move(levi), std::move(B), std::move(reused)};
}

LinearForm restrict_form(const LeviResult& lr, const LinearForm& chi) {
  const LiePresentation& levi = lr.levi;
  LinearForm out(levi.n);
  for (std::uint32_t a = 0; a < levi.n; ++a) {
    fp_t acc = 0;
    for (std::uint32_t r = 0; r < lr.embedding.rows(); ++r)
      acc = levi.F.add(acc, levi.F.mul(lr.embedding.at(r, a), chi[r]));
    out[a] = acc;
  }
  return out;
}

InducedOrbit induced_orbit_dim(const LiePresentation& g, const LeviResult& lr,
                               const ElementVec& e0_levi) {
  const LiePresentation& levi = lr.levi;
  const PrimeField& F = g.F;
  FpPoly mn = minimal_polynomial(F, levi.ad(e0_levi));
  for (std::size_t i = 0; i + 1 < mn.c.size(); ++i)
    if (mn.c[i])
      throw std::domain_error("induced_orbit_dim: e0 is not nilpotent in the Levi");
  ElementVec y = e0_levi;
  bool zero = y.is_zero();
  for (std::uint32_t it = 0; it <= levi.n && !zero; ++it) {
    y = levi.p_power(y);
    zero = y.is_zero();
  }
  if (!zero) throw std::domain_error("induced_orbit_dim: e0 is not nilpotent in the Levi");

  std::uint32_t d0 = centralizer_of_element(levi, e0_levi).dim;
  InducedOrbit out;
  out.orbit_dim = g.n - d0;
  out.codim_nilcone = (g.n - g.rank) - out.orbit_dim;
  out.codim_nilcone_levi = (levi.n - levi.rank) - (levi.n - d0);
  out.codim_check = out.codim_nilcone == out.codim_nilcone_levi;
  return out;
}

LiePresentation permute_presentation(const LiePresentation& g,
                                     const std::vector<std::uint32_t>& perm) {
  if (perm.size() != g.n) throw std::invalid_argument("permutation size mismatch");
  std::vector<std::uint32_t> inv(g.n);
  for (std::uint32_t k = 0; k < g.n; ++k) inv[perm[k]] = k;
  LiePresentation out(g.F);
  out.n = g.n;
  out.rank = g.rank;
  for (std::uint32_t k = 0; k < g.n; ++k) out.labels.push_back(g.labels[perm[k]]);
  out.br.assign(g.n, std::vector<SparseVec>(g.n));
  for (std::uint32_t a = 0; a < g.n; ++a)
    for (std::uint32_t b = 0; b < g.n; ++b) {
      SparseVec sv;
      for (auto& [k, c] : g.br[perm[a]][perm[b]]) sv.emplace_back(inv[k], c);
      std::sort(sv.begin(), sv.end());
      out.br[a][b] = std::move(sv);
    }
  for (std::uint32_t a = 0; a < g.n; ++a) {
    ElementVec v(g.n);
    for (std::uint32_t k = 0; k < g.n; ++k) v[inv[k]] = g.pmap[perm[a]][k];
    out.pmap.push_back(std::move(v));
  }
  out.gram = DenseMatFp(g.n, g.n);
  for (std::uint32_t a = 0; a < g.n; ++a)
    for (std::uint32_t b = 0; b < g.n; ++b) out.gram.set(a, b, g.gram.at(perm[a], perm[b]));
  for (auto c : g.cartan) out.cartan.push_back(inv[c]);
  std::sort(out.cartan.begin(), out.cartan.end());
  if (g.rep) {
    Realization r;
    r.dim = g.rep->dim;
    for (std::uint32_t a = 0; a < g.n; ++a) r.mats.push_back(g.rep->mats[perm[a]]);
    out.rep = std::move(r);
  }
  out.finalize();
  return out;
}

}  // namespace uchi
