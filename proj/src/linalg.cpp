#include "uchi/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <unordered_set>

namespace uchi {

SparseVec sparse_scale(const PrimeField& F, const SparseVec& x, fp_t s) {
  SparseVec out;
  if (s == 0) return out;
  out.reserve(x.size());
  for (auto& [i, v] : x) out.emplace_back(i, F.mul(v, s));
  return out;
}

SparseVec sparse_axpy(const PrimeField& F, const SparseVec& y, fp_t s, const SparseVec& x) {
  if (s == 0) return y;
  SparseVec out;
  out.reserve(y.size() + x.size());
  std::size_t a = 0, b = 0;
  while (a < y.size() || b < x.size()) {
    if (b == x.size() || (a < y.size() && y[a].first < x[b].first)) {
      out.push_back(y[a++]);
    } else if (a == y.size() || x[b].first < y[a].first) {
      out.emplace_back(x[b].first, F.mul(s, x[b].second));
      ++b;
    } else {
      fp_t v = F.add(y[a].second, F.mul(s, x[b].second));
      if (v) out.emplace_back(y[a].first, v);
      ++a;
      ++b;
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](auto& e) { return e.second == 0; }),
            out.end());
  return out;
}

SparseMatFp::SparseMatFp(std::uint32_t rows, std::uint32_t cols,
                         const std::vector<Triplet>& entries, const PrimeField& F)
    : rows_(rows), cols_(cols), row_data_(rows) {
  (void)F;
  for (const auto& t : entries) {
    if (t.row >= rows || t.col >= cols)
      throw std::invalid_argument("sparse matrix entry out of range");
    if (t.val == 0) throw std::invalid_argument("sparse matrix stores no zeros");
    if (t.val >= F.p()) throw std::invalid_argument("sparse matrix entry not reduced mod p");
    row_data_[t.row].emplace_back(t.col, t.val);
  }
  for (auto& r : row_data_) {
    std::sort(r.begin(), r.end());
    for (std::size_t i = 1; i < r.size(); ++i)
      if (r[i].first == r[i - 1].first)
        throw std::invalid_argument("duplicate sparse matrix coordinate");
  }
}

SparseMatFp::SparseMatFp(std::uint32_t cols, std::vector<SparseVec> rows)
    : rows_(static_cast<std::uint32_t>(rows.size())), cols_(cols), row_data_(std::move(rows)) {}

std::size_t SparseMatFp::nnz() const {
  std::size_t n = 0;
  for (auto& r : row_data_) n += r.size();
  return n;
}

SparseVec SparseMatFp::apply(const PrimeField& F, const SparseVec& x) const {
  SparseVec out;
  for (std::uint32_t r = 0; r < rows_; ++r) {
    fp_t acc = 0;
    const SparseVec& row = row_data_[r];
    std::size_t a = 0, b = 0;
    while (a < row.size() && b < x.size()) {
      if (row[a].first < x[b].first)
        ++a;
      else if (x[b].first < row[a].first)
        ++b;
      else {
        acc = F.add(acc, F.mul(row[a].second, x[b].second));
        ++a;
        ++b;
      }
    }
    if (acc) out.emplace_back(r, acc);
  }
  return out;
}

DenseMatFp DenseMatFp::identity(std::uint32_t n) {
  DenseMatFp m(n, n);
  for (std::uint32_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

DenseMatFp DenseMatFp::from_sparse(const SparseMatFp& s) {
  DenseMatFp m(s.rows(), s.cols());
  for (std::uint32_t r = 0; r < s.rows(); ++r)
    for (auto& [c, v] : s.row(r)) m.set(r, c, v);
  return m;
}

DenseMatFp DenseMatFp::mul(const PrimeField& F, const DenseMatFp& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("dense matrix shape mismatch");
  DenseMatFp out(rows_, o.cols_);
  for (std::uint32_t i = 0; i < rows_; ++i)
    for (std::uint32_t k = 0; k < cols_; ++k) {
      fp_t aik = at(i, k);
      if (!aik) continue;
      for (std::uint32_t j = 0; j < o.cols_; ++j) {
        fp_t v = o.at(k, j);
        if (v) out.set(i, j, F.add(out.at(i, j), F.mul(aik, v)));
      }
    }
  return out;
}

ElementVec DenseMatFp::apply(const PrimeField& F, const ElementVec& x) const {
  if (cols_ != x.size()) throw std::invalid_argument("dense apply shape mismatch");
  ElementVec out(rows_);
  for (std::uint32_t i = 0; i < rows_; ++i) {
    fp_t acc = 0;
    for (std::uint32_t j = 0; j < cols_; ++j) acc = F.add(acc, F.mul(at(i, j), x[j]));
    out[i] = acc;
  }
  return out;
}

DenseMatFp DenseMatFp::pow(const PrimeField& F, std::uint64_t e) const {
  if (rows_ != cols_) throw std::invalid_argument("matrix power requires a square matrix");
  DenseMatFp acc = identity(rows_);
  DenseMatFp base = *this;
  while (e) {
    if (e & 1) acc = acc.mul(F, base);
    base = base.mul(F, base);
    e >>= 1;
  }
  return acc;
}

bool DenseMatFp::is_zero() const {
  for (auto v : a_)
    if (v) return false;
  return true;
}

namespace {

// Sparse Gauss-Jordan elimination state. Pivots are chosen Markowitz-style:
// cheapest active row, then its column of least fill. Column incidence is
// kept incrementally so updates stay proportional to touched entries.
struct SparseElim {
  const PrimeField& F;
  std::uint32_t cols;
  std::vector<SparseVec> rows;
  std::vector<std::unordered_set<std::uint32_t>> col_rows;
  std::vector<char> processed;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pivots;  // (row, col)
  // lazy min-nnz buckets of candidate pivot rows
  std::vector<std::vector<std::uint32_t>> buckets;

  SparseElim(const PrimeField& f, std::uint32_t c, std::vector<SparseVec> rs)
      : F(f), cols(c), rows(std::move(rs)), col_rows(c), processed(rows.size(), 0) {
    for (std::uint32_t r = 0; r < rows.size(); ++r)
      for (auto& [cc, v] : rows[r]) col_rows[cc].insert(r);
    for (std::uint32_t r = 0; r < rows.size(); ++r) enqueue(r);
  }

  void enqueue(std::uint32_t r) {
    std::size_t n = rows[r].size();
    if (buckets.size() <= n) buckets.resize(n + 1);
    buckets[n].push_back(r);
  }

  // pop an unprocessed nonempty row of minimal current nnz; stale bucket
  // entries are skipped (every size change enqueues a fresh one)
  std::int64_t pop_candidate() {
    for (std::size_t n = 1; n < buckets.size(); ++n) {
      auto& b = buckets[n];
      while (!b.empty()) {
        std::uint32_t r = b.back();
        b.pop_back();
        if (!processed[r] && rows[r].size() == n) return r;
      }
    }
    return -1;
  }

  void run() {
    for (;;) {
      std::int64_t cand = pop_candidate();
      if (cand < 0) break;
      auto r = static_cast<std::uint32_t>(cand);
      // pivot column: least column count, ties to the left
      std::uint32_t pc = rows[r][0].first;
      std::size_t best = col_rows[pc].size();
      for (auto& [c, v] : rows[r]) {
        std::size_t cnt = col_rows[c].size();
        if (cnt < best || (cnt == best && c < pc)) {
          best = cnt;
          pc = c;
        }
      }
      pivot(r, pc);
    }
  }

  fp_t value_at(std::uint32_t r, std::uint32_t c) const {
    auto it = std::lower_bound(rows[r].begin(), rows[r].end(), c,
                               [](const auto& e, std::uint32_t cc) { return e.first < cc; });
    return (it != rows[r].end() && it->first == c) ? it->second : 0;
  }

  void replace_row(std::uint32_t r, SparseVec next) {
    for (auto& [c, v] : rows[r]) col_rows[c].erase(r);
    rows[r] = std::move(next);
    for (auto& [c, v] : rows[r]) col_rows[c].insert(r);
  }

  void pivot(std::uint32_t r, std::uint32_t pc) {
    fp_t pv = value_at(r, pc);
    assert(pv != 0);
    if (pv != 1) replace_row(r, sparse_scale(F, rows[r], F.inv(pv)));
    std::vector<std::uint32_t> touched(col_rows[pc].begin(), col_rows[pc].end());
    std::sort(touched.begin(), touched.end());
    for (std::uint32_t s : touched) {
      if (s == r) continue;
      fp_t f = value_at(s, pc);
      if (!f) continue;
      SparseVec next = sparse_axpy(F, rows[s], F.neg(f), rows[r]);
      replace_row(s, std::move(next));
      if (!processed[s]) enqueue(s);
    }
    processed[r] = 1;
    pivots.emplace_back(r, pc);
  }
};

// Kernel from a fully Jordan-reduced system: each pivot row has a 1 at its
// pivot column and support otherwise only on free columns.
std::vector<SparseVec> kernel_from_elim(const PrimeField& F, const SparseElim& e) {
  std::vector<std::int64_t> pivot_col_of_row(e.rows.size(), -1);
  std::vector<char> is_pivot_col(e.cols, 0);
  for (auto& [r, c] : e.pivots) {
    is_pivot_col[c] = 1;
    pivot_col_of_row[r] = c;
  }
  std::vector<SparseVec> out;
  for (std::uint32_t f = 0; f < e.cols; ++f) {
    if (is_pivot_col[f]) continue;
    SparseVec v;
    v.emplace_back(f, 1);
    for (std::uint32_t r : e.col_rows[f]) {
      // after full reduction every nonempty row is a pivot row
      std::int64_t c = pivot_col_of_row[r];
      if (c < 0) continue;
      fp_t a = e.value_at(r, f);
      if (a) v.emplace_back(static_cast<std::uint32_t>(c), F.neg(a));
    }
    std::sort(v.begin(), v.end());
    out.push_back(std::move(v));
  }
  return out;
}

std::pair<std::vector<SparseVec>, std::uint32_t> raw_kernel_sparse(const PrimeField& F,
                                                                   const SparseMatFp& M) {
  SparseElim e(F, M.cols(), M.row_data());
  e.run();
  return {kernel_from_elim(F, e), static_cast<std::uint32_t>(e.pivots.size())};
}

struct DenseElim {
  DenseMatFp m;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pivots;  // (row, col)
};

// Plain left-to-right Gauss-Jordan; deterministic and independent of the
// sparse path on purpose.
DenseElim dense_rref(const PrimeField& F, DenseMatFp m) {
  DenseElim out{std::move(m), {}};
  DenseMatFp& a = out.m;
  std::uint32_t r = 0;
  for (std::uint32_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::uint32_t piv = r;
    while (piv < a.rows() && a.at(piv, c) == 0) ++piv;
    if (piv == a.rows()) continue;
    if (piv != r)
      for (std::uint32_t j = 0; j < a.cols(); ++j) {
        fp_t t = a.at(r, j);
        a.set(r, j, a.at(piv, j));
        a.set(piv, j, t);
      }
    fp_t inv = F.inv(a.at(r, c));
    if (inv != 1)
      for (std::uint32_t j = 0; j < a.cols(); ++j) a.set(r, j, F.mul(a.at(r, j), inv));
    for (std::uint32_t i = 0; i < a.rows(); ++i) {
      if (i == r) continue;
      fp_t f = a.at(i, c);
      if (!f) continue;
      for (std::uint32_t j = 0; j < a.cols(); ++j)
        a.set(i, j, F.sub(a.at(i, j), F.mul(f, a.at(r, j))));
    }
    out.pivots.emplace_back(r, c);
    ++r;
  }
  return out;
}

std::pair<std::vector<SparseVec>, std::uint32_t> raw_kernel_dense(const PrimeField& F,
                                                                  const SparseMatFp& M) {
  DenseElim e = dense_rref(F, DenseMatFp::from_sparse(M));
  std::vector<char> is_pivot_col(M.cols(), 0);
  for (auto& [r, c] : e.pivots) is_pivot_col[c] = 1;
  std::vector<SparseVec> out;
  for (std::uint32_t f = 0; f < M.cols(); ++f) {
    if (is_pivot_col[f]) continue;
    SparseVec v;
    v.emplace_back(f, 1);
    for (auto& [r, c] : e.pivots) {
      fp_t a = e.m.at(r, f);
      if (a) v.emplace_back(c, F.neg(a));
    }
    std::sort(v.begin(), v.end());
    out.push_back(std::move(v));
  }
  return {out, static_cast<std::uint32_t>(e.pivots.size())};
}

}  // namespace

std::vector<SparseVec> rref_rows(const PrimeField& F, std::vector<SparseVec> rows,
                                 std::uint32_t cols) {
  (void)cols;
  std::vector<SparseVec> done;
  std::vector<SparseVec> work = std::move(rows);
  for (;;) {
    // leftmost leading column among remaining rows
    std::size_t best = work.size();
    std::uint32_t best_col = 0;
    for (std::size_t i = 0; i < work.size(); ++i) {
      if (work[i].empty()) continue;
      if (best == work.size() || work[i][0].first < best_col) {
        best = i;
        best_col = work[i][0].first;
      }
    }
    if (best == work.size()) break;
    SparseVec piv = std::move(work[best]);
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(best));
    piv = sparse_scale(F, piv, F.inv(piv[0].second));
    for (auto& w : work) {
      if (w.empty()) continue;
      fp_t f = 0;
      auto it = std::lower_bound(w.begin(), w.end(), best_col,
                                 [](const auto& e, std::uint32_t cc) { return e.first < cc; });
      if (it != w.end() && it->first == best_col) f = it->second;
      if (f) w = sparse_axpy(F, w, F.neg(f), piv);
    }
    for (auto& d : done) {
      fp_t f = 0;
      auto it = std::lower_bound(d.begin(), d.end(), best_col,
                                 [](const auto& e, std::uint32_t cc) { return e.first < cc; });
      if (it != d.end() && it->first == best_col) f = it->second;
      if (f) d = sparse_axpy(F, d, F.neg(f), piv);
    }
    done.push_back(std::move(piv));
  }
  std::sort(done.begin(), done.end(),
            [](const SparseVec& a, const SparseVec& b) { return a[0].first < b[0].first; });
  return done;
}

std::uint32_t rank(const PrimeField& F, const SparseMatFp& M, KernelBackend backend) {
  if (backend == KernelBackend::Dense)
    return static_cast<std::uint32_t>(dense_rref(F, DenseMatFp::from_sparse(M)).pivots.size());
  SparseElim e(F, M.cols(), M.row_data());
  e.run();
  return static_cast<std::uint32_t>(e.pivots.size());
}

KernelResult kernel_basis(const PrimeField& F, const SparseMatFp& M, KernelBackend backend) {
  auto [raw, r] = backend == KernelBackend::Dense ? raw_kernel_dense(F, M)
                                                  : raw_kernel_sparse(F, M);
  if (raw.size() + r != M.cols())
    throw std::logic_error("rank-nullity violated: elimination bug");
  KernelResult out;
  out.basis = rref_rows(F, std::move(raw), M.cols());
  out.dim = static_cast<std::uint32_t>(out.basis.size());
  if (out.dim + r != M.cols()) throw std::logic_error("kernel canonicalization lost rank");
  return out;
}

KernelResult stacked_kernel(const PrimeField& F, const std::vector<SparseMatFp>& Ms,
                            StackMode mode, KernelBackend backend) {
  if (Ms.empty()) throw std::invalid_argument("stacked_kernel needs at least one matrix");
  std::uint32_t cols = Ms[0].cols();
  for (auto& m : Ms)
    if (m.cols() != cols)
      throw std::invalid_argument("stacked_kernel: mismatched column counts");

  if (mode == StackMode::PhysicalStack) {
    std::vector<SparseVec> rows;
    for (auto& m : Ms)
      for (auto& r : m.row_data()) rows.push_back(r);
    SparseMatFp big(cols, std::move(rows));
    return kernel_basis(F, big, backend);
  }

  // Iterative restriction: kernel of the first, then restrict each next
  // operator to the running intersection.
  std::vector<SparseVec> basis;
  bool first = true;
  for (auto& m : Ms) {
    if (first) {
      basis = (backend == KernelBackend::Dense ? raw_kernel_dense(F, m) : raw_kernel_sparse(F, m))
                  .first;
      first = false;
      continue;
    }
    if (basis.empty()) break;
    // col-major view of m for fast application to sparse vectors
    std::vector<std::vector<std::pair<std::uint32_t, fp_t>>> colmaj(cols);
    for (std::uint32_t r = 0; r < m.rows(); ++r)
      for (auto& [c, v] : m.row(r)) colmaj[c].emplace_back(r, v);
    std::vector<SparseVec> image_rows(m.rows());
    for (std::uint32_t j = 0; j < basis.size(); ++j) {
      // y = m * basis[j], scattered into rows of the restriction matrix
      std::vector<fp_t> acc(m.rows(), 0);
      std::vector<std::uint32_t> touched;
      for (auto& [c, xc] : basis[j])
        for (auto& [r, v] : colmaj[c]) {
          if (!acc[r]) touched.push_back(r);
          acc[r] = F.add(acc[r], F.mul(v, xc));
        }
      for (std::uint32_t r : touched)
        if (acc[r]) image_rows[r].emplace_back(j, acc[r]);
    }
    std::vector<SparseVec> nonzero_rows;
    for (auto& r : image_rows) {
      if (r.empty()) continue;
      std::sort(r.begin(), r.end());
      nonzero_rows.push_back(std::move(r));
    }
    SparseMatFp restricted(static_cast<std::uint32_t>(basis.size()), std::move(nonzero_rows));
    std::vector<SparseVec> combos = (backend == KernelBackend::Dense
                                         ? raw_kernel_dense(F, restricted)
                                         : raw_kernel_sparse(F, restricted))
                                        .first;
    // new basis vectors as combinations of the old
    std::vector<SparseVec> next;
    next.reserve(combos.size());
    for (auto& lam : combos) {
      std::vector<fp_t> acc(cols, 0);
      for (auto& [j, l] : lam)
        for (auto& [c, v] : basis[j]) acc[c] = F.add(acc[c], F.mul(l, v));
      SparseVec nv;
      for (std::uint32_t c = 0; c < cols; ++c)
        if (acc[c]) nv.emplace_back(c, acc[c]);
      next.push_back(std::move(nv));
    }
    basis = std::move(next);
  }

  KernelResult out;
  out.basis = rref_rows(F, std::move(basis), cols);
  out.dim = static_cast<std::uint32_t>(out.basis.size());
  return out;
}

std::optional<ElementVec> solve_dense(const PrimeField& F, const DenseMatFp& A,
                                      const ElementVec& b) {
  if (A.rows() != b.size()) throw std::invalid_argument("solve_dense shape mismatch");
  DenseMatFp aug(A.rows(), A.cols() + 1);
  for (std::uint32_t i = 0; i < A.rows(); ++i) {
    for (std::uint32_t j = 0; j < A.cols(); ++j) aug.set(i, j, A.at(i, j));
    aug.set(i, A.cols(), b[i]);
  }
  DenseElim e = dense_rref(F, std::move(aug));
  ElementVec x(A.cols());
  for (auto& [r, c] : e.pivots) {
    if (c == A.cols()) return std::nullopt;  // pivot in the rhs column: inconsistent
    x[c] = e.m.at(r, A.cols());
  }
  return x;
}

std::optional<DenseMatFp> dense_inverse(const PrimeField& F, const DenseMatFp& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("dense_inverse requires square");
  std::uint32_t n = A.rows();
  DenseMatFp aug(n, 2 * n);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) aug.set(i, j, A.at(i, j));
    aug.set(i, n + i, 1);
  }
  DenseElim e = dense_rref(F, std::move(aug));
  std::uint32_t r = 0;
  for (auto& [row, col] : e.pivots)
    if (col < n) ++r;
  if (r != n) return std::nullopt;
  DenseMatFp inv(n, n);
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) inv.set(i, j, e.m.at(i, n + j));
  return inv;
}

std::uint32_t dense_rank(const PrimeField& F, DenseMatFp A) {
  return static_cast<std::uint32_t>(dense_rref(F, std::move(A)).pivots.size());
}

}  // namespace uchi
