#ifndef SPARSITY_SERIALIZE_HPP
#define SPARSITY_SERIALIZE_HPP

#include <string>

#include "json.hpp"
#include "sparsity/decomp.hpp"
#include "sparsity/graph.hpp"
#include "sparsity/oracle.hpp"

namespace sparsity {

using Json = nlohmann::ordered_json;

Json to_json(const Graph& g);
Graph graph_from_json(const Json& j);

Json to_json(const VertexSubset& s);
Json to_json(const Layering& l);
Layering layering_from_json(const Json& j);

Json to_json(const MinorModel& m);
MinorModel model_from_json(const Json& j);
Json to_json(const SubgraphFamily& f);
SubgraphFamily family_from_json(const Json& j);

Json to_json(const VertexOrdering& o);
VertexOrdering ordering_from_json(const Json& j);
Json to_json(const Coloring& c);
Coloring coloring_from_json(const Json& j);
Json to_json(const WeightFunction& w);
WeightFunction weights_from_json(const Json& j);
Json to_json(const FragilityWitness& w);
FragilityWitness fragility_from_json(const Json& j);
Json to_json(const EliminationForest& f);

// kind-tagged envelope shared by all certificate types
Json to_json(const TreeDecomposition& d);
Json to_json(const PathDecomposition& d);
Json to_json(const TreePartition& d);
Json to_json(const RootedForestDecomposition& d);
Json to_json(const LayeredRSDecomposition& d);
Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
Json load_json(const std::string& path);

} // namespace sparsity

#endif
