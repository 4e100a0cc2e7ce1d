#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "generators.hpp"
#include "geotri/errors.hpp"
#include "geotri/fixtures.hpp"
#include "geotri/io.hpp"

using namespace geotri;

TEST_CASE("complex JSON round trip") {
    const auto k = fixtures::octahedron();
    const auto j = to_json(k);
    CHECK(j["dimension"] == 2);
    CHECK(j["vertices"].size() == 6);
    CHECK(j["maximal_simplexes"].size() == 8);
    CHECK(complex_from_json(j) == k);
    CHECK(canonical_serialization(complex_from_json(j)) == canonical_serialization(k));
}

TEST_CASE("complex loader validates its input") {
    CHECK_THROWS_AS(complex_from_json(Json::parse(R"({"dimension": 1, "vertices": [1,2,3], "maximal_simplexes": [[1,2,3]]})")),
                    InputError);
    CHECK_THROWS_AS(complex_from_json(Json::parse(R"({"dimension": 2, "vertices": [1,2], "maximal_simplexes": [[1,2,3]]})")),
                    InputError);
    CHECK_THROWS_AS(complex_from_json(Json::parse(R"({"dimension": 1, "vertices": [1,2], "maximal_simplexes": [[1,1]]})")),
                    InputError);
    CHECK_THROWS_AS(complex_from_json(Json::parse(R"({"vertices": [1]})")), InputError);
    CHECK_THROWS_AS(complex_from_json(Json::parse(R"([1,2])")), InputError);
    // non-maximal entries are accepted and absorbed by the closure
    const auto k = complex_from_json(Json::parse(R"({"dimension": 2, "vertices": [1,2,3], "maximal_simplexes": [[1,2,3],[1,2]]})"));
    CHECK(k == close_under_faces({Simplex{1, 2, 3}}));
}

TEST_CASE("digests are stable and label-sensitive") {
    const auto a = fixtures::sphere_boundary(2);
    const auto b = close_under_faces({Simplex{1, 2, 3}, Simplex{0, 1, 2}, Simplex{0, 2, 3}, Simplex{0, 1, 3}});
    CHECK(digest(a) == digest(b));
    CHECK(digest(a).size() == 16);
    const auto c = relabel(a, {{0, 10}, {1, 1}, {2, 2}, {3, 3}});
    CHECK(digest(a) != digest(c));
}

TEST_CASE("subdivision JSON round trip") {
    const auto s = barycentric(fixtures::simplex(2));
    const auto back = subdivision_from_json(to_json(s));
    CHECK(back.complex == s.complex);
    CHECK(back.parent == s.parent);
    for (VertexId v : s.complex.vertices()) CHECK(back.carrier.of_vertex(v) == s.carrier.of_vertex(v));
    auto broken = to_json(s);
    broken["carrier"].erase(broken["carrier"].begin());
    CHECK_THROWS_AS(subdivision_from_json(broken), InputError);
}

TEST_CASE("move and sequence JSON") {
    const PachnerMove m{Simplex{1, 2, 3}, Simplex{5}, {5}};
    const auto j = to_json(m);
    CHECK(j["A"] == Json::array({1, 2, 3}));
    CHECK(j["B"] == Json::array({5}));
    CHECK(j["fresh"] == Json::array({5}));
    CHECK(move_from_json(j) == m);

    testsupport::Rng rng(3);
    auto k = fixtures::sphere_boundary(2);
    const auto start = k;
    const auto moves = testsupport::random_walk(k, 30, rng);
    const auto seq = make_sequence(start, moves, k);
    const auto back = sequence_from_json(to_json(seq));
    CHECK(back.moves == seq.moves);
    CHECK(back.start_digest == digest(start));
    CHECK(back.end_digest == digest(k));
    // replay determinism at the byte level
    CHECK(canonical_serialization(apply_sequence(start, back)) == canonical_serialization(k));
}

TEST_CASE("file helpers") {
    const auto dir = std::filesystem::temp_directory_path() / "geotri_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "k.json";
    write_json_file(path, to_json(fixtures::octahedron()));
    CHECK(complex_from_json(read_json_file(path)) == fixtures::octahedron());
    {
        std::ofstream(dir / "bad.json") << "{ not json";
    }
    CHECK_THROWS_AS(read_json_file(dir / "bad.json"), InputError);
    CHECK_THROWS_AS(read_json_file(dir / "missing.json"), InputError);
    std::filesystem::remove_all(dir);
}
