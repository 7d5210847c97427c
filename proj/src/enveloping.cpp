#include "uchi/enveloping.hpp"

#include <json.hpp>

#include <bit>
#include <stdexcept>

namespace uchi {

UchiContext::UchiContext(const LiePresentation& g, LinearForm chi, std::uint64_t matrix_budget)
    : g_(&g), chi_(std::move(chi)), matrix_budget_(matrix_budget) {
  if (chi_.size() != g.n) throw std::invalid_argument("chi has the wrong length");
  std::uint32_t p = g.F.p();
  bits_ = std::bit_width(p - 1);
  if (static_cast<std::uint64_t>(bits_) * g.n > 64)
    throw BudgetError("exponent packing exceeds 64 bits: n = " + std::to_string(g.n) +
                      ", p = " + std::to_string(p));
  field_mask_ = (std::uint64_t(1) << bits_) - 1;
  shift_.resize(g.n);
  step_.resize(g.n);
  mask_above_.assign(g.n, 0);
  mask_below_.assign(g.n, 0);
  for (std::uint32_t i = 0; i < g.n; ++i) {
    shift_[i] = bits_ * (g.n - 1 - i);
    step_[i] = mono_t(1) << shift_[i];
  }
  for (std::uint32_t i = 0; i < g.n; ++i)
    for (std::uint32_t j = 0; j < g.n; ++j) {
      if (j > i) mask_above_[i] |= field_mask_ << shift_[j];
      if (j < i) mask_below_[i] |= field_mask_ << shift_[j];
    }
  chi_pow_p_.resize(g.n);
  for (std::uint32_t i = 0; i < g.n; ++i) chi_pow_p_[i] = g.F.pow(chi_[i], p);
  nmono_ = 1;
  for (std::uint32_t i = 0; i < g.n; ++i) {
    if (nmono_ > (std::uint64_t(1) << 62) / p) {
      nmono_ = std::uint64_t(1) << 63;
      break;
    }
    nmono_ *= p;
  }
  append_suffix_memo_.resize(g.n);
  prepend_prefix_memo_.resize(g.n);
}

mono_t UchiContext::encode(const std::vector<std::uint8_t>& exps) const {
  if (exps.size() != g_->n) throw std::invalid_argument("exponent vector has the wrong length");
  mono_t code = 0;
  for (std::uint32_t i = 0; i < g_->n; ++i) {
    if (exps[i] >= g_->F.p()) throw std::invalid_argument("exponent out of range [0, p)");
    code |= mono_t(exps[i]) << shift_[i];
  }
  return code;
}

std::vector<std::uint8_t> UchiContext::decode(mono_t code) const {
  std::vector<std::uint8_t> exps(g_->n);
  for (std::uint32_t i = 0; i < g_->n; ++i)
    exps[i] = static_cast<std::uint8_t>((code >> shift_[i]) & field_mask_);
  return exps;
}

std::uint32_t UchiContext::total_degree(mono_t code) const {
  std::uint32_t d = 0;
  for (std::uint32_t i = 0; i < g_->n; ++i) d += exp_at(code, i);
  return d;
}

std::uint64_t UchiContext::lex_index(mono_t code) const {
  std::uint64_t idx = 0;
  for (std::uint32_t i = 0; i < g_->n; ++i) idx = idx * g_->F.p() + exp_at(code, i);
  return idx;
}

mono_t UchiContext::from_lex_index(std::uint64_t idx) const {
  mono_t code = 0;
  for (std::uint32_t i = g_->n; i-- > 0;) {
    code |= mono_t(idx % g_->F.p()) << shift_[i];
    idx /= g_->F.p();
  }
  return code;
}

UchiElement UchiContext::one() const { return monomial(0, 1); }

UchiElement UchiContext::monomial(mono_t code, fp_t coeff) const {
  UchiElement e{this, {}};
  if (coeff) e.terms.emplace(code, coeff);
  return e;
}

UchiElement UchiContext::generator(std::uint32_t i) const { return monomial(step_[i], 1); }

void UchiContext::add_term(TermMap& m, mono_t code, fp_t c) const {
  if (!c) return;
  auto [it, inserted] = m.emplace(code, c);
  if (!inserted) {
    it->second = g_->F.add(it->second, c);
    if (!it->second) m.erase(it);
  }
}

void UchiContext::add_scaled(TermMap& dst, const TermMap& src, fp_t s) const {
  if (!s) return;
  for (auto& [code, c] : src) add_term(dst, code, g_->F.mul(s, c));
}

UchiElement UchiContext::add(const UchiElement& u, const UchiElement& v) const {
  if (u.ctx != this || v.ctx != this) throw std::invalid_argument("context mismatch");
  UchiElement out{this, u.terms};
  add_scaled(out.terms, v.terms, 1);
  return out;
}

UchiElement UchiContext::scale(const UchiElement& u, fp_t s) const {
  UchiElement out{this, {}};
  add_scaled(out.terms, u.terms, s);
  return out;
}

// x^high * x_i where high only has letters above i; the memoized swap products
const TermMap& UchiContext::append_suffix(mono_t high, std::uint32_t i) const {
  auto& memo = append_suffix_memo_[i];
  auto it = memo.find(high);
  if (it != memo.end()) return it->second;
  // j = largest letter present in high: lowest set bit field
  std::uint32_t tz = static_cast<std::uint32_t>(std::countr_zero(high));
  std::uint32_t j = g_->n - 1 - tz / bits_;
  mono_t a2 = high - step_[j];
  TermMap out;
  {  // main branch: (x^{a2} * x_i) * x_j
    TermMap t1 = mul_mono_gen(a2, i);
    out = mul_terms_gen(t1, j);
  }
  // correction: x^{a2} * [x_j, x_i]
  for (auto& [k, ck] : g_->br[j][i]) {
    TermMap t2 = mul_mono_gen(a2, k);
    add_scaled(out, t2, ck);
  }
  return memo.emplace(high, std::move(out)).first->second;
}

TermMap UchiContext::mul_mono_gen(mono_t a, std::uint32_t i) const {
  const PrimeField& F = g_->F;
  mono_t high = a & mask_above_[i];
  if (high == 0) {
    std::uint32_t ai = exp_at(a, i);
    if (ai + 1 < F.p()) {
      TermMap out;
      out.emplace(a + step_[i], 1);
      return out;
    }
    // x_i^p -> x_i^{[p]} + chi(x_i)^p
    mono_t base = a & ~(field_mask_ << shift_[i]);
    TermMap out;
    add_term(out, base, chi_pow_p_[i]);
    const ElementVec& pp = g_->pmap[i];
    for (std::uint32_t k = 0; k < g_->n; ++k) {
      if (!pp[k]) continue;
      TermMap t = mul_mono_gen(base, k);
      add_scaled(out, t, pp[k]);
    }
    return out;
  }
  const TermMap& R = append_suffix(high, i);
  mono_t low = a & ~mask_above_[i];
  if (low == 0) return R;
  TermMap out;
  for (auto& [b, c] : R) {
    TermMap t = mul_mono_mono(low, b);
    add_scaled(out, t, c);
  }
  return out;
}

// x_i * x^low where low only has letters below i
const TermMap& UchiContext::prepend_prefix(mono_t low, std::uint32_t i) const {
  auto& memo = prepend_prefix_memo_[i];
  auto it = memo.find(low);
  if (it != memo.end()) return it->second;
  // j = smallest letter present in low: highest set bit field
  std::uint32_t hb = 63 - static_cast<std::uint32_t>(std::countl_zero(low));
  std::uint32_t j = g_->n - 1 - hb / bits_;
  mono_t a2 = low - step_[j];
  TermMap out;
  {  // main branch: x_j * (x_i * x^{a2})
    TermMap t1 = prepend_mono_gen(a2, i);
    out = prepend_terms_gen(t1, j);
  }
  // correction: [x_i, x_j] * x^{a2}
  for (auto& [k, ck] : g_->br[i][j]) {
    TermMap t2 = prepend_mono_gen(a2, k);
    add_scaled(out, t2, ck);
  }
  return memo.emplace(low, std::move(out)).first->second;
}

TermMap UchiContext::prepend_mono_gen(mono_t a, std::uint32_t i) const {
  const PrimeField& F = g_->F;
  mono_t low = a & mask_below_[i];
  if (low == 0) {
    std::uint32_t ai = exp_at(a, i);
    if (ai + 1 < F.p()) {
      TermMap out;
      out.emplace(a + step_[i], 1);
      return out;
    }
    mono_t rest = a & ~(field_mask_ << shift_[i]);
    TermMap out;
    add_term(out, rest, chi_pow_p_[i]);
    const ElementVec& pp = g_->pmap[i];
    for (std::uint32_t k = 0; k < g_->n; ++k) {
      if (!pp[k]) continue;
      TermMap t = prepend_mono_gen(rest, k);
      add_scaled(out, t, pp[k]);
    }
    return out;
  }
  const TermMap& R = prepend_prefix(low, i);
  mono_t rest = a & ~mask_below_[i];
  if (rest == 0) return R;
  TermMap out;
  for (auto& [b, c] : R) {
    TermMap t = mul_mono_mono(b, rest);
    add_scaled(out, t, c);
  }
  return out;
}

TermMap UchiContext::mul_terms_gen(const TermMap& e, std::uint32_t i) const {
  TermMap out;
  for (auto& [a, c] : e) {
    TermMap t = mul_mono_gen(a, i);
    add_scaled(out, t, c);
  }
  return out;
}

TermMap UchiContext::prepend_terms_gen(const TermMap& e, std::uint32_t i) const {
  TermMap out;
  for (auto& [a, c] : e) {
    TermMap t = prepend_mono_gen(a, i);
    add_scaled(out, t, c);
  }
  return out;
}

TermMap UchiContext::mul_mono_mono(mono_t a, mono_t b) const {
  TermMap cur;
  cur.emplace(a, 1);
  for (std::uint32_t i = 0; i < g_->n; ++i) {
    std::uint32_t reps = exp_at(b, i);
    for (std::uint32_t r = 0; r < reps; ++r) cur = mul_terms_gen(cur, i);
  }
  return cur;
}

UchiElement UchiContext::multiply(const UchiElement& u, const UchiElement& v) const {
  if (u.ctx != this || v.ctx != this) throw std::invalid_argument("context mismatch");
  UchiElement out{this, {}};
  for (auto& [a, ca] : u.terms)
    for (auto& [b, cb] : v.terms) {
      TermMap t = mul_mono_mono(a, b);
      add_scaled(out.terms, t, g_->F.mul(ca, cb));
    }
  return out;
}

UchiElement UchiContext::ad_apply(std::uint32_t i, const UchiElement& u) const {
  if (u.ctx != this) throw std::invalid_argument("context mismatch");
  const PrimeField& F = g_->F;
  UchiElement out{this, {}};
  for (auto& [a, c] : u.terms) {
    TermMap left = prepend_mono_gen(a, i);
    add_scaled(out.terms, left, c);
    TermMap right = mul_mono_gen(a, i);
    add_scaled(out.terms, right, F.neg(c));
  }
  return out;
}

std::uint32_t UchiContext::max_total_degree(const UchiElement& u) const {
  std::uint32_t d = 0;
  for (auto& [a, c] : u.terms) d = std::max(d, total_degree(a));
  return d;
}

void UchiContext::clear_memos() const {
  for (auto& m : append_suffix_memo_) m.clear();
  for (auto& m : prepend_prefix_memo_) m.clear();
}

std::string UchiContext::to_json(const UchiElement& u) const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (auto& [code, c] : u.terms) {
    nlohmann::ordered_json exps = nlohmann::ordered_json::array();
    for (auto e : decode(code)) exps.push_back(static_cast<int>(e));
    arr.push_back({exps, c});
  }
  return arr.dump();
}

SparseMatFp ad_chi_matrix(const UchiContext& ctx, std::uint32_t i) {
  std::uint64_t N = ctx.monomial_count();
  if (N > ctx.matrix_budget())
    throw BudgetError("ad_chi_matrix needs N = " + std::to_string(N) +
                      " columns, over the cap " + std::to_string(ctx.matrix_budget()));
  std::vector<Triplet> ts;
  for (std::uint64_t col = 0; col < N; ++col) {
    mono_t m = ctx.from_lex_index(col);
    UchiElement img = ctx.ad_apply(i, ctx.monomial(m));
    for (auto& [code, c] : img.terms)
      ts.push_back({static_cast<std::uint32_t>(ctx.lex_index(code)),
                    static_cast<std::uint32_t>(col), c});
  }
  return SparseMatFp(static_cast<std::uint32_t>(N), static_cast<std::uint32_t>(N), ts,
                     ctx.g().F);
}

WeightZeroSpan weight_zero_subspace(const UchiContext& ctx, std::uint64_t enum_budget) {
  const LiePresentation& g = ctx.g();
  std::uint64_t N = ctx.monomial_count();
  if (N > enum_budget)
    throw BudgetError("weight-zero enumeration needs " + std::to_string(N) +
                      " monomials, over the cap " + std::to_string(enum_budget));
  std::uint32_t p = g.F.p();
  std::size_t ncart = g.cartan.size();
  WeightZeroSpan out;
  // odometer over exponents with incremental weight bookkeeping
  std::vector<std::uint8_t> exps(g.n, 0);
  std::vector<std::uint32_t> wt(ncart, 0);
  for (;;) {
    bool zero = true;
    for (std::size_t t = 0; t < ncart; ++t)
      if (wt[t] % p) {
        zero = false;
        break;
      }
    if (zero) out.codes.push_back(ctx.encode(exps));
    // increment, rightmost digit fastest (keeps codes lexicographic)
    std::int64_t pos = g.n - 1;
    while (pos >= 0) {
      if (exps[pos] + 1u < p) {
        exps[pos]++;
        for (std::size_t t = 0; t < ncart; ++t) wt[t] += g.weights[pos][t];
        break;
      }
      for (std::size_t t = 0; t < ncart; ++t)
        wt[t] -= static_cast<std::uint32_t>(exps[pos]) * g.weights[pos][t];
      exps[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  std::sort(out.codes.begin(), out.codes.end());
  out.dim = out.codes.size();
  return out;
}

PCenterCheck p_center_relation_check(const UchiContext& ctx) {
  const LiePresentation& g = ctx.g();
  const PrimeField& F = g.F;
  PCenterCheck out;
  for (std::uint32_t i = 0; i < g.n; ++i) {
    UchiElement pw = ctx.one();
    UchiElement xi = ctx.generator(i);
    for (std::uint32_t k = 0; k < F.p(); ++k) pw = ctx.multiply(pw, xi);
    // x_i^{[p]} + chi(x_i)^p * 1
    UchiElement expect = ctx.monomial(0, F.pow(ctx.chi()[i], F.p()));
    for (std::uint32_t k = 0; k < g.n; ++k)
      if (g.pmap[i][k]) expect = ctx.add(expect, ctx.scale(ctx.generator(k), g.pmap[i][k]));
    if (!(pw == expect)) {
      out.ok = false;
      out.failures.push_back("generator " + g.labels[i]);
    }
  }
  return out;
}

}  // namespace uchi
