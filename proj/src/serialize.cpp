#include "uchi/serialize.hpp"

#include <json.hpp>

namespace uchi {

using ordered_json = nlohmann::ordered_json;

std::string presentation_to_json(const LiePresentation& g) {
  ordered_json j;
  j["p"] = g.F.p();
  j["n"] = g.n;
  j["labels"] = g.labels;
  ordered_json brackets = ordered_json::array();
  for (std::uint32_t i = 0; i < g.n; ++i)
    for (std::uint32_t jj = i + 1; jj < g.n; ++jj) {
      if (g.br[i][jj].empty()) continue;
      ordered_json terms = ordered_json::array();
      for (auto& [k, c] : g.br[i][jj]) terms.push_back({k, c});
      brackets.push_back({i, jj, terms});
    }
  j["brackets"] = std::move(brackets);
  ordered_json pm = ordered_json::array();
  for (std::uint32_t i = 0; i < g.n; ++i) {
    if (g.pmap[i].is_zero()) continue;
    ordered_json terms = ordered_json::array();
    for (std::uint32_t k = 0; k < g.n; ++k)
      if (g.pmap[i][k]) terms.push_back({k, g.pmap[i][k]});
    pm.push_back({i, terms});
  }
  j["pmap"] = std::move(pm);
  ordered_json gram = ordered_json::array();
  for (std::uint32_t r = 0; r < g.n; ++r) {
    ordered_json row = ordered_json::array();
    for (std::uint32_t c = 0; c < g.n; ++c) row.push_back(g.gram.at(r, c));
    gram.push_back(std::move(row));
  }
  j["gram"] = std::move(gram);
  j["rank"] = g.rank;
  j["cartan"] = g.cartan;
  return j.dump(2) + "\n";
}

LiePresentation presentation_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  PrimeField F(j.at("p").get<std::uint32_t>());
  LiePresentation g(F);
  g.n = j.at("n").get<std::uint32_t>();
  g.labels = j.at("labels").get<std::vector<std::string>>();
  g.br.assign(g.n, std::vector<SparseVec>(g.n));
  for (auto& entry : j.at("brackets")) {
    std::uint32_t i = entry.at(0).get<std::uint32_t>();
    std::uint32_t jj = entry.at(1).get<std::uint32_t>();
    if (i >= g.n || jj >= g.n || i >= jj)
      throw std::invalid_argument("presentation json: bad bracket indices");
    SparseVec sv;
    for (auto& t : entry.at(2)) {
      std::uint32_t k = t.at(0).get<std::uint32_t>();
      fp_t c = t.at(1).get<fp_t>();
      if (k >= g.n || c == 0 || c >= F.p())
        throw std::invalid_argument("presentation json: bad bracket term");
      sv.emplace_back(k, c);
    }
    std::sort(sv.begin(), sv.end());
    g.br[i][jj] = sv;
    g.br[jj][i] = sparse_scale(F, sv, F.neg(1));
  }
  g.pmap.assign(g.n, ElementVec(g.n));
  for (auto& entry : j.at("pmap")) {
    std::uint32_t i = entry.at(0).get<std::uint32_t>();
    if (i >= g.n) throw std::invalid_argument("presentation json: bad pmap index");
    for (auto& t : entry.at(1)) {
      std::uint32_t k = t.at(0).get<std::uint32_t>();
      fp_t c = t.at(1).get<fp_t>();
      if (k >= g.n || c >= F.p()) throw std::invalid_argument("presentation json: bad pmap term");
      g.pmap[i][k] = c;
    }
  }
  g.gram = DenseMatFp(g.n, g.n);
  auto& gram = j.at("gram");
  if (gram.size() != g.n) throw std::invalid_argument("presentation json: bad gram shape");
  for (std::uint32_t r = 0; r < g.n; ++r) {
    if (gram[r].size() != g.n) throw std::invalid_argument("presentation json: bad gram shape");
    for (std::uint32_t c = 0; c < g.n; ++c) {
      fp_t v = gram[r][c].get<fp_t>();
      if (v >= F.p()) throw std::invalid_argument("presentation json: gram entry not reduced");
      g.gram.set(r, c, v);
    }
  }
  g.rank = j.at("rank").get<std::uint32_t>();
  g.cartan = j.at("cartan").get<std::vector<std::uint32_t>>();
  g.finalize();
  return g;
}

}  // namespace uchi
