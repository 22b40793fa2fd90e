#include "hamcoh/algebra_io.hpp"

#include "hamcoh/error.hpp"

namespace hamcoh {

nlohmann::json spec_to_json(const AlgebraSpec& spec) {
  return {{"family", std::string(to_string(spec.family))},
          {"n", spec.n},
          {"p", spec.p},
          {"grading", std::string(to_string(spec.grading))}};
}

AlgebraSpec spec_from_json(const nlohmann::json& j) {
  try {
    AlgebraSpec spec;
    spec.family = parse_family(j.at("family").get<std::string>());
    spec.n = j.at("n").get<unsigned>();
    spec.p = j.at("p").get<std::uint32_t>();
    spec.grading = parse_grading(j.value("grading", std::string("symmetric")));
    spec.validate();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed algebra spec: ") + e.what());
  }
}

nlohmann::json algebra_to_json(const LiePAlgebra& L) {
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& m : L.basis()) basis.push_back(to_string(m));
  nlohmann::json brackets = nlohmann::json::array();
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = i + 1; j < L.dim(); ++j) {
      const auto v = L.bracket_vector(i, j);
      if (v.empty()) continue;
      nlohmann::json terms = nlohmann::json::array();
      for (const auto& e : v) terms.push_back({{"k", e.index}, {"c", e.value}});
      brackets.push_back({{"i", i}, {"j", j}, {"terms", terms}});
    }
  return {{"spec", spec_to_json(L.spec())},
          {"basis", basis},
          {"grades",
           {{"standard", L.grades(Grading::standard)},
            {"symmetric", L.grades(Grading::symmetric)}}},
          {"brackets", brackets}};
}

LiePAlgebra algebra_from_json(const nlohmann::json& j) {
  const auto spec = spec_from_json(j.at("spec"));
  try {
    std::vector<Monomial> basis;
    for (const auto& s : j.at("basis"))
      basis.push_back(parse_monomial(s.get<std::string>(), spec.n));
    const std::size_t n = basis.size();
    std::vector<std::vector<BracketTerm>> pairs(n * (n ? n - 1 : 0) / 2);
    for (const auto& b : j.at("brackets")) {
      const auto i = b.at("i").get<std::size_t>();
      const auto jj = b.at("j").get<std::size_t>();
      if (i >= jj || jj >= n) throw ContractError("bracket entry needs i < j < dim");
      auto& slot = pairs[i * (2 * n - i - 1) / 2 + (jj - i - 1)];
      for (const auto& t : b.at("terms"))
        slot.push_back({t.at("k").get<std::uint32_t>(),
                        t.at("c").get<std::uint32_t>() % spec.p});
      std::erase_if(slot, [](const BracketTerm& t) { return t.coeff == 0; });
      std::sort(slot.begin(), slot.end(),
                [](const auto& x, const auto& y) { return x.index < y.index; });
    }
    return LiePAlgebra(spec, std::move(basis), pairs);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed algebra JSON: ") + e.what());
  }
}

}  // namespace hamcoh
