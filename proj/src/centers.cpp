#include "uchi/centers.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <future>
#include <random>
#include <sstream>
#include <unordered_map>

#include "uchi/catalog.hpp"

namespace uchi {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

std::uint64_t pow_u64(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= b;
  return r;
}

// Sparse vectors over 64-bit monomial codes.
using CodeVec = std::vector<std::pair<mono_t, fp_t>>;


// Intersect kernels of the non-toral ad operators restricted to a starting
// monomial span, iteratively.
struct ToralPipeline {
  const UchiContext& ctx;
  const CenterOptions& opts;
  std::vector<CodeVec> basis;

  ToralPipeline(const UchiContext& c, const CenterOptions& o, const std::vector<mono_t>& start)
      : ctx(c), opts(o) {
    basis.reserve(start.size());
    for (mono_t m : start) basis.push_back(CodeVec{{m, 1}});
  }

  void restrict_by(std::uint32_t op) {
    if (basis.empty()) return;
    const PrimeField& F = ctx.g().F;
    // images of the current basis vectors, with per-monomial ad caching
    std::unordered_map<mono_t, TermMap> cache;
    cache.reserve(1024);
    std::unordered_map<mono_t, std::uint32_t> row_ids;
    std::vector<SparseVec> cols(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
      TermMap img;
      for (auto& [m, c] : basis[j]) {
        auto it = cache.find(m);
        if (it == cache.end()) {
          UchiElement e = ctx.ad_apply(op, ctx.monomial(m));
          it = cache.emplace(m, std::move(e.terms)).first;
        }
        if (!c) continue;
        for (auto& [code, v] : it->second) {
          auto [jt, inserted] = img.emplace(code, F.mul(c, v));
          if (!inserted) {
            jt->second = F.add(jt->second, F.mul(c, v));
            if (!jt->second) img.erase(jt);
          }
        }
      }
      SparseVec col;
      col.reserve(img.size());
      for (auto& [code, v] : img) {
        auto [it2, ins] = row_ids.emplace(code, static_cast<std::uint32_t>(row_ids.size()));
        col.emplace_back(it2->second, v);
      }
      std::sort(col.begin(), col.end());
      cols[j] = std::move(col);
    }
    std::vector<SparseVec> rows(row_ids.size());
    for (std::uint32_t j = 0; j < cols.size(); ++j)
      for (auto& [r, v] : cols[j]) rows[r].emplace_back(j, v);
    for (auto& r : rows) std::sort(r.begin(), r.end());
    SparseMatFp restricted(static_cast<std::uint32_t>(basis.size()), std::move(rows));
    KernelResult combos = kernel_basis(ctx.g().F, restricted, opts.backend);
    std::vector<CodeVec> next;
    next.reserve(combos.dim);
    for (auto& lam : combos.basis) {
      std::map<mono_t, fp_t> acc;
      for (auto& [j, l] : lam)
        for (auto& [code, v] : basis[j]) {
          auto [it, inserted] = acc.emplace(code, F.mul(l, v));
          if (!inserted) {
            it->second = F.add(it->second, F.mul(l, v));
            if (!it->second) acc.erase(it);
          }
        }
      CodeVec nv(acc.begin(), acc.end());
      next.push_back(std::move(nv));
    }
    basis = std::move(next);
  }

  // canonical RREF over the union support, for order-independent output
  void canonicalize() {
    const PrimeField& F = ctx.g().F;
    std::vector<mono_t> support;
    for (auto& v : basis)
      for (auto& [code, c] : v) support.push_back(code);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    std::unordered_map<mono_t, std::uint32_t> col_of;
    for (std::uint32_t i = 0; i < support.size(); ++i) col_of.emplace(support[i], i);
    std::vector<SparseVec> rows;
    rows.reserve(basis.size());
    for (auto& v : basis) {
      SparseVec r;
      r.reserve(v.size());
      for (auto& [code, c] : v) r.emplace_back(col_of[code], c);
      std::sort(r.begin(), r.end());
      rows.push_back(std::move(r));
    }
    rows = rref_rows(F, std::move(rows), static_cast<std::uint32_t>(support.size()));
    std::vector<CodeVec> out;
    out.reserve(rows.size());
    for (auto& r : rows) {
      CodeVec v;
      v.reserve(r.size());
      for (auto& [i, c] : r) v.emplace_back(support[i], c);
      out.push_back(std::move(v));
    }
    basis = std::move(out);
  }
};

std::vector<TermMap> to_termmaps(const std::vector<CodeVec>& vs) {
  std::vector<TermMap> out;
  out.reserve(vs.size());
  for (auto& v : vs) out.emplace_back(v.begin(), v.end());
  return out;
}

}  // namespace

CenterComputation center_dimension(const LiePresentation& g, const LinearForm& chi,
                                   const CenterOptions& opts) {
  UchiContext ctx(g, chi, opts.matrix_budget);
  std::uint64_t N = ctx.monomial_count();

  if (!opts.force_dense && !g.cartan.empty()) {
    WeightZeroSpan span = weight_zero_subspace(ctx, opts.enum_budget);
    ToralPipeline pipe(ctx, opts, span.codes);
    for (std::uint32_t i = 0; i < g.n; ++i) {
      if (g.is_cartan_index(i)) continue;  // diagonal on monomials; kernel = the span itself
      pipe.restrict_by(i);
      if (pipe.basis.empty()) break;
    }
    pipe.canonicalize();
    CenterComputation out;
    out.dim = pipe.basis.size();
    if (opts.store_basis) out.basis = to_termmaps(pipe.basis);
    return out;
  }

  if (N > opts.matrix_budget)
    throw BudgetError("center_dimension: N = " + std::to_string(N) + " exceeds the budget " +
                      std::to_string(opts.matrix_budget) +
                      " and no Cartan indices are available for the toral reduction");
  // full-matrix path: iterative restriction over all generators
  std::vector<mono_t> all;
  all.reserve(N);
  for (std::uint64_t idx = 0; idx < N; ++idx) all.push_back(ctx.from_lex_index(idx));
  ToralPipeline pipe(ctx, opts, all);
  for (std::uint32_t i = 0; i < g.n; ++i) {
    pipe.restrict_by(i);
    if (pipe.basis.empty()) break;
  }
  pipe.canonicalize();
  CenterComputation out;
  out.dim = pipe.basis.size();
  if (opts.store_basis) out.basis = to_termmaps(pipe.basis);
  return out;
}

CenterComputation center_dimension_dense(const LiePresentation& g, const LinearForm& chi) {
  const std::uint64_t cap = 19683;  // 3^9
  UchiContext ctx(g, chi, cap);
  std::uint64_t N = ctx.monomial_count();
  if (N > cap)
    throw BudgetError("dense oracle: N = " + std::to_string(N) + " exceeds 3^9");
  std::vector<SparseMatFp> mats;
  mats.reserve(g.n);
  for (std::uint32_t i = 0; i < g.n; ++i) mats.push_back(ad_chi_matrix(ctx, i));
  KernelResult k = stacked_kernel(g.F, mats, StackMode::PhysicalStack, KernelBackend::Dense);
  CenterComputation out;
  out.dim = k.dim;
  std::vector<TermMap> basis;
  for (auto& v : k.basis) {
    TermMap t;
    for (auto& [col, c] : v) t.emplace(ctx.from_lex_index(col), c);
    basis.push_back(std::move(t));
  }
  out.basis = std::move(basis);
  return out;
}

CenterReport center_report(const LiePresentation& g, const LinearForm& chi,
                           const std::string& label, const CenterOptions& opts) {
  auto t0 = Clock::now();
  CenterReport r;
  r.label = label;
  r.chi = chi;
  r.algebra = g.meta ? g.meta->name : "custom";
  r.p = g.F.p();
  r.dim_g = g.n;
  r.rank = g.rank;
  CentralizerResult stab = centralizer_of_form(g, chi);
  r.dim_stab = stab.dim;
  r.regular = stab.dim == g.rank;
  r.surjective_predicted = r.regular;
  CenterComputation c = center_dimension(g, chi, opts);
  r.dim_center = c.dim;
  r.p_to_ell = pow_u64(g.F.p(), g.rank);
  r.consistent = (r.dim_center == r.p_to_ell) == r.regular;
  if (opts.store_basis) r.basis = c.basis;
  if (!r.consistent) {
    // build-breaking alert: dump the inputs needed to reproduce
    std::ostringstream os;
    os << "consistency alert: dim_center = " << r.dim_center << ", p^ell = " << r.p_to_ell
       << ", dim_stab = " << r.dim_stab << ", rank = " << r.rank << "; chi = [";
    for (std::size_t i = 0; i < chi.size(); ++i) os << (i ? "," : "") << chi[i];
    os << "]; stabilizer basis:";
    for (auto& b : stab.basis) {
      os << " [";
      for (std::size_t i = 0; i < b.size(); ++i) os << (i ? "," : "") << b[i];
      os << "]";
    }
    r.diagnostic = os.str();
  }
  r.elapsed_ms = ms_since(t0);
  return r;
}

KWReport kw_check(const LiePresentation& g, const JordanPair& jp, const CenterOptions& opts) {
  if (!jp.certified) throw std::invalid_argument("kw_check requires a certified Jordan pair");
  const PrimeField& F = g.F;
  ElementVec xs = g.kappa_inv(jp.chi_s);
  LeviResult levi = levi_subalgebra(g, xs);
  KWReport out;
  out.dim_levi = levi.levi.n;
  if ((g.n - levi.levi.n) % 2)
    throw std::logic_error("kw_check: odd codimension of a Levi centralizer");
  out.d = (g.n - levi.levi.n) / 2;
  out.size_check = 2 * out.d + levi.levi.n == g.n;
  LinearForm chi(g.n);
  for (std::uint32_t i = 0; i < g.n; ++i) chi[i] = F.add(jp.chi_s[i], jp.chi_n[i]);
  out.dim_center_g = center_dimension(g, chi, opts).dim;
  LinearForm chi_n_levi = restrict_form(levi, jp.chi_n);
  out.dim_center_levi = center_dimension(levi.levi, chi_n_levi, opts).dim;
  out.match = out.dim_center_g == out.dim_center_levi;
  return out;
}

bool support_lemma_check(const LiePresentation& g, const LinearForm& chi,
                         const CenterOptions& opts) {
  LinearForm chi2 = zero_central_part(g, chi);
  return center_dimension(g, chi, opts).dim == center_dimension(g, chi2, opts).dim;
}

SweepOutcome theorem_sweep(const LiePresentation& g, const std::vector<RepSpec>& reps,
                           const CenterOptions& opts, unsigned threads) {
  SweepOutcome out;
  auto run_one = [&](const RepSpec& spec)
      -> std::variant<CenterReport, std::pair<std::string, std::string>> {
    try {
      LinearForm chi(g.n);
      if (std::holds_alternative<LinearForm>(spec.chi)) {
        chi = std::get<LinearForm>(spec.chi);
      } else {
        const JordanPair& jp = std::get<JordanPair>(spec.chi);
        for (std::uint32_t i = 0; i < g.n; ++i) chi[i] = g.F.add(jp.chi_s[i], jp.chi_n[i]);
      }
      return center_report(g, chi, spec.label, opts);
    } catch (const std::exception& e) {
      return std::make_pair(spec.label, std::string(e.what()));
    }
  };

  std::vector<std::variant<CenterReport, std::pair<std::string, std::string>>> results(
      reps.size());
  if (threads <= 1 || reps.size() <= 1) {
    for (std::size_t i = 0; i < reps.size(); ++i) results[i] = run_one(reps[i]);
  } else {
    std::vector<std::future<void>> futs;
    std::atomic<std::size_t> next{0};
    unsigned nw = std::min<unsigned>(threads, static_cast<unsigned>(reps.size()));
    for (unsigned w = 0; w < nw; ++w)
      futs.push_back(std::async(std::launch::async, [&]() {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= reps.size()) return;
          results[i] = run_one(reps[i]);
        }
      }));
    for (auto& f : futs) f.get();
  }
  for (auto& r : results) {
    if (std::holds_alternative<CenterReport>(r)) {
      CenterReport& rep = std::get<CenterReport>(r);
      if (!rep.consistent) out.all_consistent = false;
      out.reports.push_back(std::move(rep));
    } else {
      out.errors.push_back(std::get<std::pair<std::string, std::string>>(r));
    }
  }
  std::sort(out.reports.begin(), out.reports.end(),
            [](const CenterReport& a, const CenterReport& b) { return a.label < b.label; });
  std::sort(out.errors.begin(), out.errors.end());
  return out;
}

LineProbe line_probe(const LiePresentation& g, const LinearForm& chi0, const LinearForm& psi,
                     const CenterOptions& opts) {
  const PrimeField& F = g.F;
  LineProbe out;
  for (fp_t t = 0; t < F.p(); ++t) {
    LinearForm chi(g.n);
    for (std::uint32_t i = 0; i < g.n; ++i) chi[i] = F.add(chi0[i], F.mul(t, psi[i]));
    out.dims.emplace_back(t, center_dimension(g, chi, opts).dim);
  }
  std::uint64_t base = out.dims[0].second;
  std::uint64_t mn = UINT64_MAX, mx = 0;
  for (std::size_t i = 1; i < out.dims.size(); ++i) {
    mn = std::min(mn, out.dims[i].second);
    mx = std::max(mx, out.dims[i].second);
  }
  out.base_geq_min = base >= mn;
  out.base_geq_all = base >= mx;
  return out;
}

CensusReport census(const LiePresentation& g, const CensusMode& mode,
                    std::uint64_t exhaustive_cap) {
  const PrimeField& F = g.F;
  CensusReport out;
  out.mode = mode;
  // dim g_chi = n - rank of the contraction B[j][i] = chi([x_i, x_j])
  auto stab_dim = [&](const LinearForm& chi) -> std::uint32_t {
    DenseMatFp B(g.n, g.n);
    for (std::uint32_t j = 0; j < g.n; ++j)
      for (std::uint32_t i = 0; i < g.n; ++i) {
        fp_t acc = 0;
        for (auto& [k, c] : g.br[i][j]) acc = F.add(acc, F.mul(c, chi[k]));
        B.set(j, i, acc);
      }
    return g.n - dense_rank(F, std::move(B));
  };

  if (mode.exhaustive) {
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < g.n; ++i) {
      total *= F.p();
      if (total > exhaustive_cap)
        throw BudgetError("census: exhaustive mode needs p^n <= " +
                          std::to_string(exhaustive_cap));
    }
    LinearForm chi(g.n);
    for (std::uint64_t it = 0;; ++it) {
      out.histogram[stab_dim(chi)]++;
      std::int64_t pos = g.n - 1;
      while (pos >= 0 && chi[pos] + 1 == F.p()) chi[pos--] = 0;
      if (pos < 0) break;
      chi[pos]++;
    }
    out.total = total;
  } else {
    std::mt19937_64 rng(mode.seed);
    for (std::uint64_t s = 0; s < mode.samples; ++s) {
      LinearForm chi(g.n);
      for (std::uint32_t i = 0; i < g.n; ++i) chi[i] = static_cast<fp_t>(rng() % F.p());
      out.histogram[stab_dim(chi)]++;
    }
    out.total = mode.samples;
  }
  out.min_is_rank = !out.histogram.empty() && out.histogram.begin()->first == g.rank;
  out.parity_ok = true;
  for (auto& [d, c] : out.histogram)
    if ((d % 2) != (g.rank % 2)) out.parity_ok = false;
  return out;
}

bool tensor_factor_check(const LiePresentation& g1, const LiePresentation& g2,
                         const LinearForm& chi_sum, const CenterOptions& opts) {
  LiePresentation g = direct_sum(g1, g2);
  if (chi_sum.size() != g.n) throw std::invalid_argument("tensor_factor_check: chi length");
  LinearForm c1(g1.n), c2(g2.n);
  for (std::uint32_t i = 0; i < g1.n; ++i) c1[i] = chi_sum[i];
  for (std::uint32_t i = 0; i < g2.n; ++i) c2[i] = chi_sum[g1.n + i];
  std::uint64_t whole = center_dimension(g, chi_sum, opts).dim;
  std::uint64_t d1 = center_dimension(g1, c1, opts).dim;
  std::uint64_t d2 = center_dimension(g2, c2, opts).dim;
  return whole == d1 * d2;
}

std::string reports_to_csv(const std::vector<CenterReport>& reports, bool include_timing) {
  std::ostringstream os;
  os << "label,p,algebra,dim_g,rank,dim_stab,regular,dim_center,p_to_ell,consistent";
  if (include_timing) os << ",elapsed_ms";
  os << "\n";
  for (auto& r : reports) {
    os << r.label << "," << r.p << "," << r.algebra << "," << r.dim_g << "," << r.rank << ","
       << r.dim_stab << "," << (r.regular ? "true" : "false") << "," << r.dim_center << ","
       << r.p_to_ell << "," << (r.consistent ? "true" : "false");
    if (include_timing) os << "," << r.elapsed_ms;
    os << "\n";
  }
  return os.str();
}

std::string reports_to_json(const std::vector<CenterReport>& reports, bool include_timing) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (auto& r : reports) {
    nlohmann::ordered_json j;
    j["label"] = r.label;
    j["p"] = r.p;
    j["algebra"] = r.algebra;
    j["dim_g"] = r.dim_g;
    j["rank"] = r.rank;
    j["chi"] = r.chi.c;
    j["dim_stab"] = r.dim_stab;
    j["regular"] = r.regular;
    j["surjective_predicted"] = r.surjective_predicted;
    j["dim_center"] = r.dim_center;
    j["p_to_ell"] = r.p_to_ell;
    j["consistent"] = r.consistent;
    if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
    if (include_timing) j["elapsed_ms"] = r.elapsed_ms;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string census_to_csv(const CensusReport& report) {
  std::ostringstream os;
  os << "dim_stab,count\n";
  for (auto& [d, c] : report.histogram) os << d << "," << c << "\n";
  return os.str();
}

std::string probe_to_csv(const LineProbe& probe) {
  std::ostringstream os;
  os << "t,dim_center\n";
  for (auto& [t, d] : probe.dims) os << t << "," << d << "\n";
  return os.str();
}

}  // namespace uchi
