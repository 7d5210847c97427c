#include "uchi/fp.hpp"

namespace uchi {

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p == 2)
    throw std::invalid_argument("p = 2 is not supported; the modulus must be an odd prime");
  if (!is_odd_prime(p))
    throw std::invalid_argument("modulus " + std::to_string(p) + " is not an odd prime");
}

bool PrimeField::is_odd_prime(std::uint32_t p) {
  if (p < 3 || p % 2 == 0) return false;
  for (std::uint32_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

fp_t PrimeField::inv(fp_t a) const {
  if (a == 0) throw FieldError("division by zero in F_" + std::to_string(p_));
  // extended Euclid on (a, p)
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p_, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  return reduce(t);
}

fp_t PrimeField::pow(fp_t a, std::uint64_t e) const {
  fp_t r = 1;
  fp_t b = a % p_;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

}  // namespace uchi
