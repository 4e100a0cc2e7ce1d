#include "geotri/io.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "geotri/errors.hpp"

namespace geotri {

namespace {

VertexId vertex_from_json(const Json& j) {
    if (!j.is_number_integer() || j.get<long long>() < 0 ||
        j.get<long long>() > static_cast<long long>(std::numeric_limits<VertexId>::max() - 1))
        throw InputError("vertex labels must be non-negative integers, got " + j.dump());
    return static_cast<VertexId>(j.get<long long>());
}

const Json& field(const Json& j, const char* name) {
    if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

std::vector<Simplex> simplex_list(const Json& j) {
    if (!j.is_array()) throw InputError("expected a list of simplexes");
    std::vector<Simplex> out;
    out.reserve(j.size());
    for (const auto& s : j) out.push_back(simplex_from_json(s));
    return out;
}

}  // namespace

Json to_json(const Simplex& s) {
    Json j = Json::array();
    for (VertexId v : s) j.push_back(v);
    return j;
}

Simplex simplex_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw InputError("a simplex must be a nonempty list of vertex labels");
    std::vector<VertexId> v;
    for (const auto& x : j) v.push_back(vertex_from_json(x));
    return Simplex(v);
}

Json to_json(const Complex& k) {
    Json j;
    j["dimension"] = k.dimension();
    j["vertices"] = k.vertices();
    Json tops = Json::array();
    for (const auto& m : k.maximal_simplexes()) tops.push_back(to_json(m));
    j["maximal_simplexes"] = std::move(tops);
    return j;
}

Complex complex_from_json(const Json& j) {
    const auto tops = simplex_list(field(j, "maximal_simplexes"));
    Complex k = close_under_faces(tops);
    const Json& dim = field(j, "dimension");
    if (!dim.is_number_integer() || dim.get<int>() != k.dimension())
        throw InputError("declared dimension " + dim.dump() + " does not match the simplexes (" +
                         std::to_string(k.dimension()) + ")");
    std::set<VertexId> declared;
    for (const auto& v : field(j, "vertices")) declared.insert(vertex_from_json(v));
    const auto actual = k.vertices();
    if (declared != std::set<VertexId>(actual.begin(), actual.end()))
        throw InputError("vertex list does not match the vertices of the maximal simplexes");
    return k;
}

std::string canonical_serialization(const Complex& k) { return to_json(k).dump(); }

std::string digest(const Complex& k) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical_serialization(k)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json to_json(const SubdividedComplex& s) {
    Json j = to_json(s.complex);
    j["parent"] = to_json(s.parent);
    Json carrier = Json::array();
    for (VertexId v : s.complex.vertices()) carrier.push_back(Json::array({Json::array({v}), to_json(s.carrier.of_vertex(v))}));
    j["carrier"] = std::move(carrier);
    return j;
}

SubdividedComplex subdivision_from_json(const Json& j) {
    SubdividedComplex s;
    s.complex = complex_from_json(j);
    s.parent = complex_from_json(field(j, "parent"));
    const Json& carrier = field(j, "carrier");
    if (!carrier.is_array()) throw InputError("\"carrier\" must be a list of [child, parent] pairs");
    for (const auto& pair : carrier) {
        if (!pair.is_array() || pair.size() != 2) throw InputError("carrier entries must be [child, parent] pairs");
        const Simplex child = simplex_from_json(pair[0]);
        const Simplex parent = simplex_from_json(pair[1]);
        if (child.size() != 1) continue;  // simplex carriers are implied by the vertex carriers
        s.carrier.assign(child.front(), parent);
    }
    try {
        s.validate();
    } catch (const InvariantError& e) {
        throw InputError(std::string("invalid subdivision: ") + e.what());
    }
    s.complex.reserve_labels_below(s.parent.next_free_label());
    return s;
}

Json to_json(const PachnerMove& m) {
    Json j;
    j["A"] = to_json(m.source);
    j["B"] = to_json(m.target);
    j["fresh"] = m.fresh;
    return j;
}

PachnerMove move_from_json(const Json& j) {
    PachnerMove m{simplex_from_json(field(j, "A")), simplex_from_json(field(j, "B")), {}};
    for (const auto& v : field(j, "fresh")) m.fresh.push_back(vertex_from_json(v));
    return m;
}

Json to_json(const MoveSequence& seq) {
    Json j;
    j["start_digest"] = seq.start_digest;
    j["end_digest"] = seq.end_digest;
    Json moves = Json::array();
    for (const auto& m : seq.moves) moves.push_back(to_json(m));
    j["moves"] = std::move(moves);
    return j;
}

MoveSequence sequence_from_json(const Json& j) {
    MoveSequence seq;
    const Json& start = field(j, "start_digest");
    const Json& end = field(j, "end_digest");
    if (!start.is_string() || !end.is_string()) throw InputError("digests must be strings");
    seq.start_digest = start.get<std::string>();
    seq.end_digest = end.get<std::string>();
    const Json& moves = field(j, "moves");
    if (!moves.is_array()) throw InputError("\"moves\" must be a list");
    for (const auto& m : moves) seq.moves.push_back(move_from_json(m));
    return seq;
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path.string() + ": malformed JSON: " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw InputError("write failed for " + path.string());
}

}  // namespace geotri
