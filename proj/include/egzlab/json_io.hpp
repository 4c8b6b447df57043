#pragma once

// JSON (de)serialization for every artifact the CLI reads or writes, plus
// atomic file output. Vectors always appear as coordinate arrays (little
// endian: coordinate 0 first), never as raw canonical indices, so artifacts
// diff cleanly and survive schema-ignorant tooling.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "egzlab/bounds.hpp"
#include "egzlab/construct.hpp"
#include "egzlab/cycles.hpp"
#include "egzlab/decompose.hpp"
#include "egzlab/fp.hpp"
#include "egzlab/search.hpp"
#include "egzlab/sumfree.hpp"

namespace egz::io {

using json = nlohmann::json;

// [c_0, ..., c_{n-1}] for the vector with this canonical index.
json coords_of(const Modulus& m, std::int64_t index);
// Inverse; throws std::invalid_argument on wrong arity or out-of-range entry.
std::int64_t index_of(const Modulus& m, const json& coords);

// {"schema":1, "p":..., "n":..., "elements":[[coords]...]}
json point_set_to_json(const PointSet& a);
PointSet point_set_from_json(const json& j);

// {"schema":1, "p":..., "n":..., "k":..., "tuples":[[[coords]...k]...L]}
json collection_to_json(const SumFreeCollection& c);
SumFreeCollection collection_from_json(const json& j);

json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const json& j);

json flags_to_json(const CertificateFlags& f);
CertificateFlags flags_from_json(const json& j);

json verdict_to_json(const SumFreeVerdict& v);
json theorem7_to_json(const Theorem7Verdict& v);
json bound_report_to_json(const BoundReport& r);
json theorem_bounds_to_json(const TheoremBound& b);
json reference_values_to_json(const ReferenceValues& r);
// Witnesses are rendered through the group's coordinate encoding.
json search_result_to_json(const SearchResult& r, const CyclicGroup& g);

std::string read_text(const std::filesystem::path& path);
json load_json(const std::filesystem::path& path);

// Write to a sibling temp file, then rename into place; an interrupted run
// never leaves a truncated artifact at the target path.
void atomic_write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace egz::io
