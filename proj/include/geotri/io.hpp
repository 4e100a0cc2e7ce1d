#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "geotri/complex.hpp"
#include "geotri/pachner.hpp"
#include "geotri/subdivision.hpp"

namespace geotri {

using Json = nlohmann::ordered_json;

Json to_json(const Simplex& s);
Simplex simplex_from_json(const Json& j);

/// `{"dimension", "vertices", "maximal_simplexes"}` with everything sorted.
Json to_json(const Complex& k);
/// Closes the maximal simplexes under faces and checks the declared dimension
/// and vertex list against them. Throws InputError on any mismatch.
Complex complex_from_json(const Json& j);

/// Compact dump of `to_json(k)`; two complexes serialize identically iff
/// their simplex sets are equal.
std::string canonical_serialization(const Complex& k);
/// FNV-1a 64 of the canonical serialization, as 16 hex digits.
std::string digest(const Complex& k);

/// Complex fields plus "parent" (a complex) and "carrier": [[child, parent], ...]
/// with one entry per vertex of the subdivision.
Json to_json(const SubdividedComplex& s);
SubdividedComplex subdivision_from_json(const Json& j);

Json to_json(const PachnerMove& m);
PachnerMove move_from_json(const Json& j);
Json to_json(const MoveSequence& seq);
MoveSequence sequence_from_json(const Json& j);

/// Reads a file and parses it; InputError on I/O or syntax failure.
Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);

}  // namespace geotri
