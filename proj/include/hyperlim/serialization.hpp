#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "hyperlim/generators.hpp"
#include "hyperlim/hypergraph.hpp"
#include "hyperlim/hypergraphon.hpp"
#include "hyperlim/measures.hpp"
#include "hyperlim/profiles.hpp"
#include "hyperlim/spaces.hpp"
#include "hyperlim/tensors.hpp"

namespace hyperlim {

using Json = nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"dimension": d, "atoms": [{"point": [...], "mass": m}, ...]}
Json to_json(const DiscreteMeasure& mu);
DiscreteMeasure measure_from_json(const Json& j);

// {"space": {"n", "s", "family"}, "values": {"1,2": v, ...}}; keys are 1-based
// sorted tuples. Missing keys read as 0.
Json to_json(const TestFunction& f);
TestFunction test_function_from_json(const Json& j, const Hypergraph* h = nullptr);

// "n <count>" then one edge per line, 1-based. '#' starts a comment.
void write_hypergraph(std::ostream& os, const Hypergraph& h);
Hypergraph read_hypergraph(std::istream& is);

// "r n" then "i_1 ... i_r value" per nonzero, sorted 1-based indices.
void write_tensor(std::ostream& os, const SymmetricTensor& t);
SymmetricTensor read_tensor(std::istream& is);

// "k m" (or "k m_1 ... m_{k-1}" for per-level resolutions), then
// "cell-index value" per canonical orbit.
void write_hypergraphon(std::ostream& os, const StepHypergraphon& w);
StepHypergraphon read_hypergraphon(std::istream& is);

// Sidecar for generated hypergraphs: spec, seed and auxiliary structure.
Json aux_to_json(const ModelSpec& spec, std::uint64_t seed, const GeneratedHypergraph& g);

Json to_json(const ProfileSample& p);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace hyperlim
