#include "uchi/reps.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

namespace uchi {

namespace {

// Versioned representative data. Nilpotent representatives are sums of the
// listed basis vectors (then transported by kappa); "levis" store toral
// coefficient vectors over the algebra's Cartan list.
const char* kCatalogJson = R"json({
  "version": 1,
  "algebras": {
    "sl2":    {"e": ["e12"], "h": ["h1"], "regnilp": ["e12"],
               "levis": {"torus": [1]}},
    "sl3":    {"e": ["e12"], "h": ["h1"], "regnilp": ["e12", "e23"], "subregnilp": ["e12"],
               "levis": {"gl2levi": [1, 2]}},
    "sl4":    {"e": ["e12"], "h": ["h1"], "regnilp": ["e12", "e23", "e34"], "subregnilp": ["e12", "e23"],
               "levis": {"gl3levi": [1, 2, 3]}},
    "gl2":    {"e": ["e12"], "h": ["h1"], "regnilp": ["e12"],
               "levis": {"torus": [1, 0]}},
    "gl3":    {"e": ["e12"], "h": ["h1"], "regnilp": ["e12", "e23"], "subregnilp": ["e12"],
               "levis": {"gl2levi": [1, 2, 0]}},
    "sp4":    {"e": ["ea1"], "h": ["h1"], "regnilp": ["ea1", "ea2"], "subregnilp": ["ea2", "ea4"],
               "levis": {"rank1levi": [1, 2]}},
    "torus1": {"h": ["t1"]},
    "torus2": {"h": ["t1"]},
    "torus3": {"h": ["t1"]}
  }
})json";

const nlohmann::json& catalog() {
  static const nlohmann::json j = nlohmann::json::parse(kCatalogJson);
  return j;
}

ElementVec element_from_labels(const LiePresentation& g, const std::vector<std::string>& labels) {
  ElementVec x(g.n);
  for (auto& l : labels) {
    auto it = std::find(g.labels.begin(), g.labels.end(), l);
    if (it == g.labels.end())
      throw std::invalid_argument("representative catalog names unknown basis label " + l);
    x[static_cast<std::uint32_t>(it - g.labels.begin())] = 1;
  }
  return x;
}

const nlohmann::json* entry_for(const LiePresentation& g) {
  if (!g.meta) return nullptr;
  auto& algs = catalog().at("algebras");
  auto it = algs.find(g.meta->name);
  if (it == algs.end()) return nullptr;
  return &*it;
}

// Deterministic search of the fixed maximal torus. Split semisimple elements
// are all conjugate into it, and stabilizer dimensions are conjugation
// invariants, so an empty search proves nonexistence over F_p.
LinearForm regular_split_semisimple(const LiePresentation& g) {
  const PrimeField& F = g.F;
  std::uint32_t ncart = static_cast<std::uint32_t>(g.cartan.size());
  std::vector<fp_t> coeff(ncart, 0);
  for (;;) {
    ElementVec x(g.n);
    bool nonzero = false;
    for (std::uint32_t t = 0; t < ncart; ++t) {
      x[g.cartan[t]] = coeff[t];
      if (coeff[t]) nonzero = true;
    }
    if (nonzero && centralizer_of_element(g, x).dim == g.rank) return g.kappa(x);
    std::int64_t pos = ncart - 1;
    while (pos >= 0 && coeff[pos] + 1 == F.p()) coeff[pos--] = 0;
    if (pos < 0) break;
    coeff[pos]++;
  }
  std::string name = g.meta ? g.meta->name : "this algebra";
  throw std::invalid_argument(
      "no regular split semisimple element exists over F_" + std::to_string(F.p()) + " for " +
      name + ": every toral element has stabilizer dimension > rank");
}

ElementVec toral_from_coeffs(const LiePresentation& g, const std::vector<fp_t>& coeffs) {
  if (coeffs.size() != g.cartan.size())
    throw std::invalid_argument("levi coefficient vector has the wrong length");
  ElementVec x(g.n);
  for (std::size_t t = 0; t < coeffs.size(); ++t) x[g.cartan[t]] = coeffs[t] % g.F.p();
  return x;
}

JordanPair mixed_pair(const LiePresentation& g, const std::string& levi_name,
                      const std::string& nilp_name) {
  const nlohmann::json* ent = entry_for(g);
  if (!ent || !ent->contains("levis") || !ent->at("levis").contains(levi_name))
    throw std::invalid_argument("unknown Levi name: " + levi_name);
  std::vector<fp_t> coeffs = ent->at("levis").at(levi_name).get<std::vector<fp_t>>();
  ElementVec xs = toral_from_coeffs(g, coeffs);
  LinearForm chi_s = g.kappa(xs);
  LinearForm chi_n(g.n);
  if (nilp_name == "zero") {
    // nothing
  } else if (nilp_name == "regnilp") {
    LeviResult lr = levi_subalgebra(g, xs);
    // the Levi's positive root vectors are the reused basis vectors from the
    // positive block of g
    std::uint32_t max_cartan = *std::max_element(g.cartan.begin(), g.cartan.end());
    std::vector<std::uint32_t> pos;
    for (std::size_t a = 0; a < lr.reused.size(); ++a)
      if (lr.reused[a] >= 0 && static_cast<std::uint32_t>(lr.reused[a]) > max_cartan)
        pos.push_back(static_cast<std::uint32_t>(lr.reused[a]));
    if (pos.size() != 1)
      throw std::invalid_argument(
          "mixed representatives are shipped for semisimple-rank-1 Levis only");
    ElementVec xn(g.n);
    xn[pos[0]] = 1;
    chi_n = g.kappa(xn);
  } else {
    throw std::invalid_argument("unknown Levi nilpotent name: " + nilp_name +
                                " (expected zero or regnilp)");
  }
  return verify_jordan(g, chi_s, chi_n);
}

ChiSpec inline_chi(const LiePresentation& g, const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  auto read_vec = [&](const nlohmann::json& arr) -> LinearForm {
    if (!arr.is_array() || arr.size() != g.n)
      throw std::invalid_argument("chi coefficient vector must have length " +
                                  std::to_string(g.n));
    LinearForm chi(g.n);
    for (std::uint32_t i = 0; i < g.n; ++i) {
      std::int64_t v = arr[i].get<std::int64_t>();
      chi[i] = g.F.reduce(v);
    }
    return chi;
  };
  if (j.contains("coeffs")) return read_vec(j.at("coeffs"));
  if (j.contains("chi_s") && j.contains("chi_n"))
    return verify_jordan(g, read_vec(j.at("chi_s")), read_vec(j.at("chi_n")));
  throw std::invalid_argument(
      R"(chi JSON must contain "coeffs" or both "chi_s" and "chi_n")");
}

}  // namespace

const std::string& representative_catalog_json() {
  static const std::string s = kCatalogJson;
  return s;
}

ChiSpec parse_chi(const LiePresentation& g, const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("empty chi specification");
  if (spec[0] == '{' || spec[0] == '[') return inline_chi(g, spec);
  if (spec == "zero") return LinearForm(g.n);
  if (spec.rfind("mixed:", 0) == 0) {
    std::string rest = spec.substr(6);
    auto colon = rest.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("mixed representative must be mixed:<levi>:<nilp>");
    return mixed_pair(g, rest.substr(0, colon), rest.substr(colon + 1));
  }
  if (spec == "regss") return regular_split_semisimple(g);
  const nlohmann::json* ent = entry_for(g);
  if (!ent)
    throw std::invalid_argument("named representative '" + spec +
                                "' needs a catalog algebra (got a custom presentation)");
  if (!ent->contains(spec))
    throw std::invalid_argument("unknown representative '" + spec + "' for " + g.meta->name);
  std::vector<std::string> labels = ent->at(spec).get<std::vector<std::string>>();
  return g.kappa(element_from_labels(g, labels));
}

LinearForm chi_of(const LiePresentation& g, const ChiSpec& spec) {
  if (std::holds_alternative<LinearForm>(spec)) return std::get<LinearForm>(spec);
  const JordanPair& jp = std::get<JordanPair>(spec);
  LinearForm chi(g.n);
  for (std::uint32_t i = 0; i < g.n; ++i) chi[i] = g.F.add(jp.chi_s[i], jp.chi_n[i]);
  return chi;
}

std::vector<std::string> default_sweep_labels(const LiePresentation& g) {
  if (!g.meta) return {"zero"};
  const std::string& fam = g.meta->family;
  if (fam == "torus" || fam == "sum") return {"zero"};
  if ((fam == "sl" || fam == "gl") && g.meta->size == 2) return {"e", "h", "zero"};
  if (fam == "sl" || fam == "gl")
    return {"regnilp", "subregnilp", "zero", "regss", "mixed:gl2levi:zero"};
  if (fam == "sp4") return {"regnilp", "subregnilp", "zero", "regss", "mixed:rank1levi:zero"};
  return {"zero"};
}

std::vector<RepSpec> resolve_reps(const LiePresentation& g,
                                  const std::vector<std::string>& labels) {
  std::vector<RepSpec> out;
  for (auto& l : labels) {
    ChiSpec spec = parse_chi(g, l);
    if (std::holds_alternative<LinearForm>(spec))
      out.push_back(RepSpec{l, std::get<LinearForm>(spec)});
    else
      out.push_back(RepSpec{l, std::get<JordanPair>(spec)});
  }
  return out;
}

SweepOutcome sweep_by_labels(const LiePresentation& g, const std::vector<std::string>& labels,
                             const CenterOptions& opts, unsigned threads) {
  std::vector<RepSpec> reps;
  std::vector<std::pair<std::string, std::string>> resolution_errors;
  for (auto& l : labels) {
    try {
      ChiSpec spec = parse_chi(g, l);
      if (std::holds_alternative<LinearForm>(spec))
        reps.push_back(RepSpec{l, std::get<LinearForm>(spec)});
      else
        reps.push_back(RepSpec{l, std::get<JordanPair>(spec)});
    } catch (const std::exception& e) {
      resolution_errors.emplace_back(l, e.what());
    }
  }
  SweepOutcome out = theorem_sweep(g, reps, opts, threads);
  for (auto& e : resolution_errors) out.errors.push_back(e);
  std::sort(out.errors.begin(), out.errors.end());
  return out;
}

}  // namespace uchi
