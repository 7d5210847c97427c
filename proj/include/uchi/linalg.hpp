#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "uchi/fp.hpp"

namespace uchi {

// Sparse vector: (index, value) pairs sorted by index, no zero values.
using SparseVec = std::vector<std::pair<std::uint32_t, fp_t>>;

// y += s * x, exact over F_p, canonical output.
SparseVec sparse_axpy(const PrimeField& F, const SparseVec& y, fp_t s, const SparseVec& x);
SparseVec sparse_scale(const PrimeField& F, const SparseVec& x, fp_t s);

struct Triplet {
  std::uint32_t row, col;
  fp_t val;
};

// Exact sparse matrix over F_p. Immutable after construction; no stored
// zeros, no duplicate coordinates.
class SparseMatFp {
 public:
  SparseMatFp() : rows_(0), cols_(0) {}
  SparseMatFp(std::uint32_t rows, std::uint32_t cols, const std::vector<Triplet>& entries,
              const PrimeField& F);
  // Rows given directly; each row must be sorted, in range, zero-free.
  SparseMatFp(std::uint32_t cols, std::vector<SparseVec> rows);

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }
  const SparseVec& row(std::uint32_t r) const { return row_data_[r]; }
  const std::vector<SparseVec>& row_data() const { return row_data_; }
  std::size_t nnz() const;

  SparseVec apply(const PrimeField& F, const SparseVec& x) const;  // M * x

 private:
  std::uint32_t rows_, cols_;
  std::vector<SparseVec> row_data_;
};

// Dense byte-per-entry matrix over F_p; the oracle backend for kernels.
class DenseMatFp {
 public:
  DenseMatFp() : rows_(0), cols_(0) {}
  DenseMatFp(std::uint32_t rows, std::uint32_t cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, 0) {}

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }
  fp_t at(std::uint32_t r, std::uint32_t c) const { return a_[std::size_t(r) * cols_ + c]; }
  void set(std::uint32_t r, std::uint32_t c, fp_t v) { a_[std::size_t(r) * cols_ + c] = static_cast<std::uint8_t>(v); }

  static DenseMatFp identity(std::uint32_t n);
  static DenseMatFp from_sparse(const SparseMatFp& m);

  DenseMatFp mul(const PrimeField& F, const DenseMatFp& o) const;
  ElementVec apply(const PrimeField& F, const ElementVec& x) const;
  DenseMatFp pow(const PrimeField& F, std::uint64_t e) const;
  bool is_zero() const;
  bool operator==(const DenseMatFp& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

 private:
  std::uint32_t rows_, cols_;
  std::vector<std::uint8_t> a_;
};

enum class KernelBackend { Sparse, Dense };

struct KernelResult {
  std::uint32_t dim = 0;
  // Basis of {v : Mv = 0} as rows in reduced row echelon form (canonical for
  // the subspace: unique pivots at the earliest independent coordinates).
  std::vector<SparseVec> basis;
};

// Rank of M by Gaussian elimination.
std::uint32_t rank(const PrimeField& F, const SparseMatFp& M, KernelBackend backend = KernelBackend::Sparse);

// Canonical kernel basis; rank-nullity (dim + rank = cols) is checked
// internally and a violation throws (it would be an elimination bug).
KernelResult kernel_basis(const PrimeField& F, const SparseMatFp& M,
                          KernelBackend backend = KernelBackend::Sparse);

// Reduced row echelon form of a list of sparse row vectors over coordinates
// [0, cols); returns an RREF basis of their span.
std::vector<SparseVec> rref_rows(const PrimeField& F, std::vector<SparseVec> rows, std::uint32_t cols);

enum class StackMode { IterativeRestriction, PhysicalStack };

// dim and canonical basis of the intersection of ker(M_i); all matrices must
// share the column count.
KernelResult stacked_kernel(const PrimeField& F, const std::vector<SparseMatFp>& Ms,
                            StackMode mode = StackMode::IterativeRestriction,
                            KernelBackend backend = KernelBackend::Sparse);

// Solve A x = b where A is given by dense columns; nullopt when inconsistent.
std::optional<ElementVec> solve_dense(const PrimeField& F, const DenseMatFp& A, const ElementVec& b);

// Inverse of a square dense matrix; nullopt when singular.
std::optional<DenseMatFp> dense_inverse(const PrimeField& F, const DenseMatFp& A);

std::uint32_t dense_rank(const PrimeField& F, DenseMatFp A);

}  // namespace uchi
