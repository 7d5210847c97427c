#include "uchi/poly.hpp"

#include <stdexcept>

namespace uchi {

FpPoly poly_trim(const PrimeField& F, std::vector<fp_t> c) {
  for (auto& v : c) v %= F.p();
  while (!c.empty() && c.back() == 0) c.pop_back();
  return FpPoly{std::move(c)};
}

FpPoly poly_add(const PrimeField& F, const FpPoly& a, const FpPoly& b) {
  std::vector<fp_t> c(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) c[i] = a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) c[i] = F.add(c[i], b.c[i]);
  return poly_trim(F, std::move(c));
}

FpPoly poly_mul(const PrimeField& F, const FpPoly& a, const FpPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<fp_t> c(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j)
      c[i + j] = F.add(c[i + j], F.mul(a.c[i], b.c[j]));
  return poly_trim(F, std::move(c));
}

FpPoly poly_mod(const PrimeField& F, const FpPoly& a, const FpPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  std::vector<fp_t> r = a.c;
  fp_t lead_inv = F.inv(b.c.back());
  while (r.size() >= b.c.size()) {
    fp_t f = F.mul(r.back(), lead_inv);
    std::size_t shift = r.size() - b.c.size();
    if (f)
      for (std::size_t i = 0; i < b.c.size(); ++i)
        r[shift + i] = F.sub(r[shift + i], F.mul(f, b.c[i]));
    r.pop_back();
    while (!r.empty() && r.back() == 0) r.pop_back();
  }
  return FpPoly{std::move(r)};
}

FpPoly poly_derivative(const PrimeField& F, const FpPoly& a) {
  std::vector<fp_t> c;
  for (std::size_t i = 1; i < a.c.size(); ++i)
    c.push_back(F.mul(static_cast<fp_t>(i % F.p()), a.c[i]));
  return poly_trim(F, std::move(c));
}

FpPoly poly_monic(const PrimeField& F, const FpPoly& a) {
  if (a.is_zero()) return a;
  fp_t inv = F.inv(a.c.back());
  FpPoly out = a;
  for (auto& v : out.c) v = F.mul(v, inv);
  return out;
}

FpPoly poly_gcd(const PrimeField& F, FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = poly_mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(F, a);
}

bool is_squarefree(const PrimeField& F, const FpPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("is_squarefree: zero polynomial");
  if (f.degree() == 0) return true;
  FpPoly d = poly_derivative(F, f);
  if (d.is_zero()) return false;  // f = g(t^p), a p-th power up to factors
  return poly_gcd(F, f, d).degree() == 0;
}

bool splits_distinct_over_fp(const PrimeField& F, const FpPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("splits_distinct_over_fp: zero polynomial");
  if (f.degree() == 0) return true;
  // t^p - t mod f
  std::vector<fp_t> tp(F.p() + 1, 0);
  tp[F.p()] = 1;
  tp[1] = F.sub(tp[1], 1);
  return poly_mod(F, FpPoly{std::move(tp)}, f).is_zero();
}

DenseMatFp poly_eval(const PrimeField& F, const FpPoly& f, const DenseMatFp& M) {
  std::uint32_t n = M.rows();
  DenseMatFp acc(n, n);
  DenseMatFp power = DenseMatFp::identity(n);
  for (std::size_t i = 0; i < f.c.size(); ++i) {
    if (f.c[i])
      for (std::uint32_t r = 0; r < n; ++r)
        for (std::uint32_t c = 0; c < n; ++c)
          acc.set(r, c, F.add(acc.at(r, c), F.mul(f.c[i], power.at(r, c))));
    if (i + 1 < f.c.size()) power = power.mul(F, M);
  }
  return acc;
}

FpPoly minimal_polynomial(const PrimeField& F, const DenseMatFp& M) {
  if (M.rows() != M.cols()) throw std::invalid_argument("minimal_polynomial: square matrix required");
  std::uint32_t n = M.rows();
  std::size_t dim = std::size_t(n) * n;
  // flattened powers I, M, M^2, ... as columns; stop at first dependence
  std::vector<std::vector<fp_t>> pows;
  DenseMatFp cur = DenseMatFp::identity(n);
  for (std::uint32_t k = 0;; ++k) {
    std::vector<fp_t> flat(dim);
    for (std::uint32_t r = 0; r < n; ++r)
      for (std::uint32_t c = 0; c < n; ++c) flat[std::size_t(r) * n + c] = cur.at(r, c);
    if (!pows.empty()) {
      DenseMatFp A(static_cast<std::uint32_t>(dim), static_cast<std::uint32_t>(pows.size()));
      for (std::uint32_t col = 0; col < pows.size(); ++col)
        for (std::uint32_t row = 0; row < dim; ++row) A.set(row, col, pows[col][row]);
      auto sol = solve_dense(F, A, ElementVec(std::vector<fp_t>(flat)));
      if (sol) {
        // M^k = sum sol_i M^i  =>  m(t) = t^k - sum sol_i t^i
        std::vector<fp_t> c(k + 1, 0);
        for (std::uint32_t i = 0; i < k; ++i) c[i] = F.neg((*sol)[i]);
        c[k] = 1;
        return FpPoly{std::move(c)};
      }
    }
    pows.push_back(std::move(flat));
    cur = cur.mul(F, M);
    if (k > n) throw std::logic_error("minimal polynomial exceeded dimension bound");
  }
}

}  // namespace uchi
