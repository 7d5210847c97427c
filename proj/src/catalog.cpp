#include "uchi/catalog.hpp"
#include <array>

#include <stdexcept>

namespace uchi {

namespace {

DenseMatFp unit_mat(const PrimeField& F, std::uint32_t d, std::uint32_t r, std::uint32_t c,
                    std::int64_t v) {
  DenseMatFp m(d, d);
  m.set(r, c, F.reduce(v));
  return m;
}

DenseMatFp commutator(const PrimeField& F, const DenseMatFp& a, const DenseMatFp& b) {
  DenseMatFp ab = a.mul(F, b);
  DenseMatFp ba = b.mul(F, a);
  DenseMatFp m(a.rows(), a.cols());
  for (std::uint32_t i = 0; i < a.rows(); ++i)
    for (std::uint32_t j = 0; j < a.cols(); ++j) m.set(i, j, F.sub(ab.at(i, j), ba.at(i, j)));
  return m;
}

fp_t trace_of_product(const PrimeField& F, const DenseMatFp& a, const DenseMatFp& b) {
  fp_t acc = 0;
  for (std::uint32_t i = 0; i < a.rows(); ++i)
    for (std::uint32_t k = 0; k < a.cols(); ++k)
      acc = F.add(acc, F.mul(a.at(i, k), b.at(k, i)));
  return acc;
}

// Assemble a presentation from a faithful realization: structure constants,
// p-map and Gram all come from the matrices, expanded via the trace form.
LiePresentation from_realization(const PrimeField& F, std::vector<std::string> labels,
                                 std::vector<DenseMatFp> mats, std::uint32_t rank,
                                 std::vector<std::uint32_t> cartan, CatalogMeta meta) {
  std::uint32_t n = static_cast<std::uint32_t>(mats.size());
  LiePresentation g(F);
  g.n = n;
  g.labels = std::move(labels);
  g.rank = rank;
  g.cartan = std::move(cartan);

  g.gram = DenseMatFp(n, n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) g.gram.set(i, j, trace_of_product(F, mats[i], mats[j]));
  auto gram_inv = dense_inverse(F, g.gram);
  if (!gram_inv)
    throw std::invalid_argument("catalog: trace form degenerate for " + meta.name + " at p = " +
                                std::to_string(F.p()));

  auto expand = [&](const DenseMatFp& X) -> ElementVec {
    // coefficients solve  K c = (tr(X m_j))_j
    ElementVec rhs(n);
    for (std::uint32_t j = 0; j < n; ++j) rhs[j] = trace_of_product(F, X, mats[j]);
    ElementVec c = gram_inv->apply(F, rhs);
    // exactness check: the expansion must reproduce X
    DenseMatFp back(X.rows(), X.cols());
    for (std::uint32_t i = 0; i < n; ++i)
      if (c[i])
        for (std::uint32_t r = 0; r < X.rows(); ++r)
          for (std::uint32_t s = 0; s < X.cols(); ++s)
            back.set(r, s, F.add(back.at(r, s), F.mul(c[i], mats[i].at(r, s))));
    if (!(back == X)) throw std::logic_error("catalog: realization is not closed");
    return c;
  };

  g.br.assign(n, std::vector<SparseVec>(n));
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      ElementVec c = expand(commutator(F, mats[i], mats[j]));
      SparseVec sv;
      for (std::uint32_t k = 0; k < n; ++k)
        if (c[k]) sv.emplace_back(k, c[k]);
      g.br[i][j] = std::move(sv);
    }
  for (std::uint32_t i = 0; i < n; ++i) g.pmap.push_back(expand(mats[i].pow(F, F.p())));

  Realization r;
  r.dim = mats.empty() ? 0 : mats[0].rows();
  r.mats = std::move(mats);
  g.rep = std::move(r);
  g.meta = std::move(meta);
  g.finalize();
  return g;
}

LiePresentation make_sl_or_gl(bool with_center, std::uint32_t k, std::uint32_t p) {
  PrimeField F(p);
  if (k < 2) throw std::invalid_argument("sl/gl needs size >= 2");
  if (k % p == 0)
    throw std::invalid_argument("p = " + std::to_string(p) + " divides " + std::to_string(k) +
                                ": p is not very good for " + (with_center ? "gl_" : "sl_") +
                                std::to_string(k));
  std::vector<std::string> labels;
  std::vector<DenseMatFp> mats;
  // negative root vectors E_{ji}, i < j
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = i + 1; j < k; ++j) {
      labels.push_back("f" + std::to_string(j + 1) + std::to_string(i + 1));
      mats.push_back(unit_mat(F, k, j, i, 1));
    }
  std::vector<std::uint32_t> cartan;
  for (std::uint32_t i = 0; i + 1 < k; ++i) {
    labels.push_back("h" + std::to_string(i + 1));
    cartan.push_back(static_cast<std::uint32_t>(mats.size()));
    DenseMatFp h(k, k);
    h.set(i, i, 1);
    h.set(i + 1, i + 1, F.neg(1));
    mats.push_back(std::move(h));
  }
  if (with_center) {
    labels.push_back("I");
    cartan.push_back(static_cast<std::uint32_t>(mats.size()));
    mats.push_back(DenseMatFp::identity(k));
  }
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = i + 1; j < k; ++j) {
      labels.push_back("e" + std::to_string(i + 1) + std::to_string(j + 1));
      mats.push_back(unit_mat(F, k, i, j, 1));
    }
  std::string fam = with_center ? "gl" : "sl";
  CatalogMeta meta{fam, k, fam + std::to_string(k)};
  return from_realization(F, std::move(labels), std::move(mats),
                          with_center ? k : k - 1, std::move(cartan), std::move(meta));
}

LiePresentation make_sp4(std::uint32_t p) {
  PrimeField F(p);
  const std::uint32_t d = 4;
  // symplectic form [[0, I], [-I, 0]]; short simple root a1 = eps1 - eps2,
  // long simple root a2 = 2 eps2; positive roots a1, a2, a1+a2, 2a1+a2
  auto pm = [&](std::initializer_list<std::array<int, 3>> cells) {
    DenseMatFp m(d, d);
    for (auto& cell : cells)
      m.set(static_cast<std::uint32_t>(cell[0]), static_cast<std::uint32_t>(cell[1]),
            F.reduce(cell[2]));
    return m;
  };
  DenseMatFp ea1 = pm({{0, 1, 1}, {3, 2, -1}});
  DenseMatFp ea2 = pm({{1, 3, 1}});
  DenseMatFp ea3 = pm({{0, 3, 1}, {1, 2, 1}});
  DenseMatFp ea4 = pm({{0, 2, 1}});
  DenseMatFp fa1 = pm({{1, 0, 1}, {2, 3, -1}});
  DenseMatFp fa2 = pm({{3, 1, 1}});
  DenseMatFp fa3 = pm({{3, 0, 1}, {2, 1, 1}});
  DenseMatFp fa4 = pm({{2, 0, 1}});
  DenseMatFp h1 = pm({{0, 0, 1}, {1, 1, -1}, {2, 2, -1}, {3, 3, 1}});
  DenseMatFp h2 = pm({{1, 1, 1}, {3, 3, -1}});

  std::vector<std::string> labels = {"fa1", "fa2", "fa3", "fa4", "h1",
                                     "h2",  "ea1", "ea2", "ea3", "ea4"};
  std::vector<DenseMatFp> mats = {fa1, fa2, fa3, fa4, h1, h2, ea1, ea2, ea3, ea4};
  CatalogMeta meta{"sp4", 4, "sp4"};
  return from_realization(F, std::move(labels), std::move(mats), 2, {4, 5}, std::move(meta));
}

LiePresentation make_torus(std::uint32_t dsize, std::uint32_t p) {
  PrimeField F(p);
  if (dsize < 1) throw std::invalid_argument("torus needs size >= 1");
  std::vector<std::string> labels;
  std::vector<DenseMatFp> mats;
  std::vector<std::uint32_t> cartan;
  for (std::uint32_t i = 0; i < dsize; ++i) {
    labels.push_back("t" + std::to_string(i + 1));
    mats.push_back(unit_mat(F, dsize, i, i, 1));
    cartan.push_back(i);
  }
  CatalogMeta meta{"torus", dsize, "torus" + std::to_string(dsize)};
  return from_realization(F, std::move(labels), std::move(mats), dsize, std::move(cartan),
                          std::move(meta));
}

}  // namespace

LiePresentation make_catalog_algebra(const std::string& family, std::uint32_t size,
                                     std::uint32_t p) {
  if (family == "sl") return make_sl_or_gl(false, size, p);
  if (family == "gl") return make_sl_or_gl(true, size, p);
  if (family == "sp4") return make_sp4(p);
  if (family == "torus") return make_torus(size, p);
  throw std::invalid_argument("unknown catalog family: " + family);
}

LiePresentation direct_sum(const LiePresentation& a, const LiePresentation& b) {
  if (!(a.F == b.F)) throw std::invalid_argument("direct_sum: mismatched primes");
  const PrimeField& F = a.F;
  LiePresentation g(F);
  g.n = a.n + b.n;
  for (auto& l : a.labels) g.labels.push_back("g1:" + l);
  for (auto& l : b.labels) g.labels.push_back("g2:" + l);
  g.br.assign(g.n, std::vector<SparseVec>(g.n));
  for (std::uint32_t i = 0; i < a.n; ++i)
    for (std::uint32_t j = 0; j < a.n; ++j) g.br[i][j] = a.br[i][j];
  for (std::uint32_t i = 0; i < b.n; ++i)
    for (std::uint32_t j = 0; j < b.n; ++j) {
      SparseVec sv;
      for (auto& [k, c] : b.br[i][j]) sv.emplace_back(k + a.n, c);
      g.br[a.n + i][a.n + j] = std::move(sv);
    }
  for (std::uint32_t i = 0; i < a.n; ++i) {
    ElementVec v(g.n);
    for (std::uint32_t k = 0; k < a.n; ++k) v[k] = a.pmap[i][k];
    g.pmap.push_back(std::move(v));
  }
  for (std::uint32_t i = 0; i < b.n; ++i) {
    ElementVec v(g.n);
    for (std::uint32_t k = 0; k < b.n; ++k) v[a.n + k] = b.pmap[i][k];
    g.pmap.push_back(std::move(v));
  }
  g.gram = DenseMatFp(g.n, g.n);
  for (std::uint32_t i = 0; i < a.n; ++i)
    for (std::uint32_t j = 0; j < a.n; ++j) g.gram.set(i, j, a.gram.at(i, j));
  for (std::uint32_t i = 0; i < b.n; ++i)
    for (std::uint32_t j = 0; j < b.n; ++j) g.gram.set(a.n + i, a.n + j, b.gram.at(i, j));
  g.rank = a.rank + b.rank;
  for (auto c : a.cartan) g.cartan.push_back(c);
  for (auto c : b.cartan) g.cartan.push_back(c + a.n);
  if (a.rep && b.rep) {
    Realization r;
    r.dim = a.rep->dim + b.rep->dim;
    for (std::uint32_t i = 0; i < a.n; ++i) {
      DenseMatFp m(r.dim, r.dim);
      for (std::uint32_t rr = 0; rr < a.rep->dim; ++rr)
        for (std::uint32_t cc = 0; cc < a.rep->dim; ++cc) m.set(rr, cc, a.rep->mats[i].at(rr, cc));
      r.mats.push_back(std::move(m));
    }
    for (std::uint32_t i = 0; i < b.n; ++i) {
      DenseMatFp m(r.dim, r.dim);
      for (std::uint32_t rr = 0; rr < b.rep->dim; ++rr)
        for (std::uint32_t cc = 0; cc < b.rep->dim; ++cc)
          m.set(a.rep->dim + rr, a.rep->dim + cc, b.rep->mats[i].at(rr, cc));
      r.mats.push_back(std::move(m));
    }
    g.rep = std::move(r);
  }
  std::string aname = a.meta ? a.meta->name : "custom";
  std::string bname = b.meta ? b.meta->name : "custom";
  g.meta = CatalogMeta{"sum", g.n, aname + "+" + bname};
  g.finalize();
  return g;
}

LiePresentation algebra_from_name(const std::string& name, std::uint32_t p) {
  auto plus = name.find('+');
  if (plus != std::string::npos) {
    LiePresentation a = algebra_from_name(name.substr(0, plus), p);
    LiePresentation b = algebra_from_name(name.substr(plus + 1), p);
    return direct_sum(a, b);
  }
  auto parse_sized = [&](const std::string& fam) -> std::optional<std::uint32_t> {
    if (name.rfind(fam, 0) != 0 || name.size() <= fam.size()) return std::nullopt;
    std::uint32_t v = 0;
    for (std::size_t i = fam.size(); i < name.size(); ++i) {
      if (name[i] < '0' || name[i] > '9') return std::nullopt;
      v = v * 10 + static_cast<std::uint32_t>(name[i] - '0');
    }
    return v;
  };
  if (name == "sp4") return make_catalog_algebra("sp4", 4, p);
  if (auto k = parse_sized("sl")) return make_catalog_algebra("sl", *k, p);
  if (auto k = parse_sized("gl")) return make_catalog_algebra("gl", *k, p);
  if (auto k = parse_sized("torus")) return make_catalog_algebra("torus", *k, p);
  throw std::invalid_argument("unknown algebra name: " + name);
}

}  // namespace uchi
