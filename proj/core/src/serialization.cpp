#include "malign/serialization.hpp"

#include <stdexcept>

namespace malign {

using nlohmann::json;

namespace {

json edges_to_json(const EdgeSet& set, const EdgeIndex& edges) {
  json out = json::array();
  for (EdgeId e : set.ids()) out.push_back({edges.pair(e).u + 1, edges.pair(e).v + 1});
  return out;
}

EdgeSet edges_from_json(const json& doc, const EdgeIndex& edges) {
  EdgeSet out(edges.size());
  for (const auto& pair : doc) {
    const int u = pair.at(0).get<int>(), v = pair.at(1).get<int>();
    const auto n = static_cast<int>(edges.vertex_count());
    if (u < 1 || v < 1 || u > n || v > n) throw std::invalid_argument("sample JSON: edge endpoint out of range");
    out.insert(edges.index(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1)));
  }
  return out;
}

void require_model(const json& doc, const char* model) {
  if (doc.at("model").get<std::string>() != model) {
    throw std::invalid_argument(std::string("sample JSON: expected model '") + model + "'");
  }
}

}  // namespace

json alignment_to_json(const Alignment& a) {
  json out = json::array();
  for (const auto& perm : a.perms()) out.push_back(perm.to_one_based());
  return out;
}

Alignment alignment_from_json(const json& doc) {
  std::vector<Permutation> perms;
  for (const auto& row : doc) {
    const auto images = row.get<std::vector<int>>();
    perms.push_back(Permutation::from_one_based(images));
  }
  return Alignment(std::move(perms));
}

json to_json(const GaussianSample& sample) {
  return json{{"model", "gaussian"},
              {"params", {{"n", sample.params.n}, {"p", sample.params.p}, {"rho", sample.params.rho}}},
              {"truth", alignment_to_json(sample.truth)},
              {"latent", sample.latent},
              {"observed", sample.observed.weights}};
}

json to_json(const ErSample& sample) {
  const EdgeIndex edges(sample.params.n);
  json children = json::array(), observed = json::array();
  for (const auto& c : sample.children) children.push_back(edges_to_json(c, edges));
  for (const auto& g : sample.observed.graphs) observed.push_back(edges_to_json(g, edges));
  return json{{"model", "er"},
              {"params",
               {{"n", sample.params.n}, {"p", sample.params.p}, {"lambda", sample.params.lambda}, {"s", sample.params.s}}},
              {"truth", alignment_to_json(sample.truth)},
              {"master", edges_to_json(sample.master, edges)},
              {"children", children},
              {"observed", observed}};
}

GaussianSample gaussian_sample_from_json(const json& doc) {
  require_model(doc, "gaussian");
  GaussianSample s;
  const auto& params = doc.at("params");
  s.params = {params.at("n").get<std::size_t>(), params.at("p").get<std::size_t>(), params.at("rho").get<double>()};
  s.params.validate();
  s.truth = alignment_from_json(doc.at("truth"));
  s.observed = {s.params.n, s.params.p, doc.at("observed").get<WeightTable>()};
  if (doc.contains("latent")) s.latent = doc.at("latent").get<WeightTable>();
  const auto m = static_cast<std::size_t>(choose2(static_cast<std::int64_t>(s.params.n)));
  if (s.truth.n() != s.params.n || s.truth.p() != s.params.p || s.observed.weights.size() != s.params.p) {
    throw std::invalid_argument("sample JSON: dimensions do not match params");
  }
  for (const auto& row : s.observed.weights) {
    if (row.size() != m) throw std::invalid_argument("sample JSON: observed row has the wrong edge count");
  }
  return s;
}

ErSample er_sample_from_json(const json& doc) {
  require_model(doc, "er");
  ErSample s;
  const auto& params = doc.at("params");
  s.params = {params.at("n").get<std::size_t>(), params.at("p").get<std::size_t>(),
              params.at("lambda").get<double>(), params.at("s").get<double>()};
  s.params.validate();
  const EdgeIndex edges(s.params.n);
  s.truth = alignment_from_json(doc.at("truth"));
  if (s.truth.n() != s.params.n || s.truth.p() != s.params.p) {
    throw std::invalid_argument("sample JSON: truth does not match params");
  }
  s.master = doc.contains("master") ? edges_from_json(doc.at("master"), edges) : EdgeSet(edges.size());
  if (doc.contains("children")) {
    for (const auto& c : doc.at("children")) s.children.push_back(edges_from_json(c, edges));
  }
  s.observed = {s.params.n, s.params.p, {}};
  for (const auto& g : doc.at("observed")) s.observed.graphs.push_back(edges_from_json(g, edges));
  if (s.observed.graphs.size() != s.params.p) throw std::invalid_argument("sample JSON: wrong number of observed graphs");
  return s;
}

}  // namespace malign
