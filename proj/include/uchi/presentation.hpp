#pragma once

#include <optional>
#include <string>
#include <vector>

#include "uchi/fp.hpp"
#include "uchi/linalg.hpp"
#include "uchi/poly.hpp"

namespace uchi {

class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Certification failure; `clause` names the failed requirement.
class CertificationError : public std::domain_error {
 public:
  CertificationError(std::string clause_, const std::string& msg)
      : std::domain_error(msg), clause(std::move(clause_)) {}
  std::string clause;
};

// Faithful matrix realization of the basis (defining representation);
// carried by catalog algebras for oracle checks, absent on imports.
struct Realization {
  std::uint32_t dim = 0;
  std::vector<DenseMatFp> mats;
};

struct CatalogMeta {
  std::string family;  // sl, gl, sp4, torus, sum
  std::uint32_t size = 0;
  std::string name;  // e.g. "sl2", "sl2+torus1"
};

// A restricted Lie algebra over F_p given by structure constants, p-mapping
// on basis vectors, the Gram matrix of an invariant trace form, and the
// reductive rank. Immutable after finalize().
struct LiePresentation {
  PrimeField F;
  std::uint32_t n = 0;
  std::vector<std::string> labels;
  // br[i][j] = [x_i, x_j] as a sparse coefficient vector over basis indices
  std::vector<std::vector<SparseVec>> br;
  std::vector<ElementVec> pmap;  // x_i^{[p]} in the basis
  DenseMatFp gram;
  std::uint32_t rank = 0;
  std::vector<std::uint32_t> cartan;  // basis indices spanning the fixed maximal torus

  // derived by finalize()
  std::vector<std::vector<fp_t>> weights;  // weights[i][t] = wt(x_i) at cartan[t]
  std::vector<std::uint32_t> central;      // basis indices with ad = 0
  std::optional<DenseMatFp> gram_inv;
  std::optional<Realization> rep;
  std::optional<CatalogMeta> meta;

  explicit LiePresentation(PrimeField f) : F(f) {}

  ElementVec basis_vec(std::uint32_t i) const;
  ElementVec bracket(const ElementVec& x, const ElementVec& y) const;
  DenseMatFp ad(const ElementVec& x) const;
  DenseMatFp ad_basis(std::uint32_t i) const;
  bool is_cartan_index(std::uint32_t i) const;
  bool is_central_index(std::uint32_t i) const;

  // Jacobson's formula extended from the stored basis p-powers.
  ElementVec p_power(const ElementVec& x) const;

  LinearForm kappa(const ElementVec& x) const;
  ElementVec kappa_inv(const LinearForm& chi) const;

  // Completes derived fields; throws on structural impossibilities
  // (dimension mismatches). Axiom violations are left to validation.
  void finalize();
};

struct AxiomResult {
  std::string axiom;
  bool pass;
  std::string witness;  // empty when passing
};

struct ValidationReport {
  std::vector<AxiomResult> checks;
  bool ok() const {
    for (auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::string first_failure() const {
    for (auto& c : checks)
      if (!c.pass) return c.axiom + ": " + c.witness;
    return {};
  }
};

ValidationReport validate_presentation(const LiePresentation& g);

struct CentralizerResult {
  std::uint32_t dim = 0;
  std::vector<ElementVec> basis;
};

// g_chi = {x : chi([x, g]) = 0}
CentralizerResult centralizer_of_form(const LiePresentation& g, const LinearForm& chi);
CentralizerResult centralizer_of_element(const LiePresentation& g, const ElementVec& x);
bool is_regular_form(const LiePresentation& g, const LinearForm& chi);

// chi' agreeing with chi on [g,g] basis vectors, vanishing on central ones;
// requires a basis adapted to z(g) + [g,g].
LinearForm zero_central_part(const LiePresentation& g, const LinearForm& chi);

struct JordanPair {
  LinearForm chi_s;
  LinearForm chi_n;
  bool certified = false;
};

// Certifies (chi_s, chi_n): kappa^{-1}(chi_s) split semisimple,
// kappa^{-1}(chi_n) nilpotent (ad-nilpotent and p-power-nilpotent), and the
// preimages commute. Throws CertificationError naming the failed clause;
// the non-split case signals clause "extension field required".
JordanPair verify_jordan(const LiePresentation& g, const LinearForm& chi_s,
                         const LinearForm& chi_n);

struct LeviResult {
  LiePresentation levi;
  DenseMatFp embedding;            // n x m, columns = Levi basis in g coordinates
  std::vector<std::int64_t> reused;  // reused[a] = g basis index, or -1 for synthesized
};

// Centralizer of a split semisimple element, as a restricted presentation
// with restricted trace form and inherited Cartan.
LeviResult levi_subalgebra(const LiePresentation& g, const ElementVec& x_s);

// Restriction of a form along the Levi embedding.
LinearForm restrict_form(const LeviResult& levi, const LinearForm& chi);

struct InducedOrbit {
  std::uint32_t orbit_dim = 0;       // dim g - dim (levi)_{e0}
  std::uint32_t codim_nilcone = 0;   // inside N(g)
  std::uint32_t codim_nilcone_levi = 0;  // inside N(levi)
  bool codim_check = false;          // the two codimensions agree
};

InducedOrbit induced_orbit_dim(const LiePresentation& g, const LeviResult& levi,
                               const ElementVec& e0_levi);

// Basis reordering: new basis k = old basis perm[k]. Used by the
// order-invariance tests.
LiePresentation permute_presentation(const LiePresentation& g,
                                     const std::vector<std::uint32_t>& perm);

}  // namespace uchi
