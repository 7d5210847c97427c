#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace uchi {

// Residue in [0, p). The modulus lives in PrimeField, not in the scalar.
using fp_t = std::uint32_t;

class FieldError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Arithmetic context for F_p with p an odd prime. All operations are exact;
// there is no floating point anywhere downstream of this class.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t p() const { return p_; }

  fp_t reduce(std::int64_t x) const {
    std::int64_t r = x % static_cast<std::int64_t>(p_);
    return static_cast<fp_t>(r < 0 ? r + p_ : r);
  }

  fp_t add(fp_t a, fp_t b) const {
    fp_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  fp_t sub(fp_t a, fp_t b) const { return a >= b ? a - b : a + p_ - b; }
  fp_t neg(fp_t a) const { return a == 0 ? 0 : p_ - a; }
  fp_t mul(fp_t a, fp_t b) const {
    return static_cast<fp_t>((static_cast<std::uint64_t>(a) * b) % p_);
  }

  // Multiplicative inverse; signals division by zero on a = 0.
  fp_t inv(fp_t a) const;

  fp_t pow(fp_t a, std::uint64_t e) const;

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

  static bool is_odd_prime(std::uint32_t p);

 private:
  std::uint32_t p_;
};

// Dense coefficient vector of a Lie algebra element in the fixed basis.
struct ElementVec {
  std::vector<fp_t> c;

  ElementVec() = default;
  explicit ElementVec(std::size_t n) : c(n, 0) {}
  explicit ElementVec(std::vector<fp_t> v) : c(std::move(v)) {}

  std::size_t size() const { return c.size(); }
  fp_t& operator[](std::size_t i) { return c[i]; }
  fp_t operator[](std::size_t i) const { return c[i]; }
  bool is_zero() const {
    for (fp_t v : c)
      if (v) return false;
    return true;
  }
  bool operator==(const ElementVec& o) const { return c == o.c; }
};

// A p-character chi in g*; coefficient i is chi(x_i).
struct LinearForm {
  std::vector<fp_t> c;

  LinearForm() = default;
  explicit LinearForm(std::size_t n) : c(n, 0) {}
  explicit LinearForm(std::vector<fp_t> v) : c(std::move(v)) {}

  std::size_t size() const { return c.size(); }
  fp_t& operator[](std::size_t i) { return c[i]; }
  fp_t operator[](std::size_t i) const { return c[i]; }
  bool is_zero() const {
    for (fp_t v : c)
      if (v) return false;
    return true;
  }
  bool operator==(const LinearForm& o) const { return c == o.c; }
};

}  // namespace uchi
