#pragma once

#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>

#include "symcone/funceq.hpp"
#include "symcone/lukacs.hpp"
#include "symcone/wishart.hpp"

namespace symcone {

using json = nlohmann::json;

/// {"kind": "SYM_REAL", "r_or_n": 3}
json to_json(const Algebra& algebra);
Algebra algebra_from_json(const json& j);

/// {"algebra": {...}, "coords": [...]}; doubles round-trip exactly.
json to_json(const Element& x);
Element element_from_json(const json& j);

/// {"algebra", "p", "scale", "seed", "stream", "count", "samples": [[...], ...]}
json to_json(const SampleBatch& batch);
SampleBatch sample_batch_from_json(const json& j);

/// CSV with '#'-prefixed metadata lines (algebra, p, scale, seed, stream),
/// a c0..c{dim-1} header and one row per sample. Numbers use the shortest
/// representation that round-trips.
void write_csv(std::ostream& os, const SampleBatch& batch);
SampleBatch read_csv(std::istream& is);

json to_json(const IndependenceReport& report);
json to_json(const ResidualStats& stats);
json to_json(const FactorizationReport& report);

/// Shortest decimal form of a finite double that parses back to the same bits.
std::string format_double(double v);
double parse_double(const std::string& s);

}  // namespace symcone
