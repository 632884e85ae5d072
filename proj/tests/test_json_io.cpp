#include <cstdio>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "doctest.h"
#include "qcx/errors.hpp"
#include "qcx/json_io.hpp"
#include "qcx/splitflow.hpp"

using namespace qcx;
using nlohmann::json;

namespace {

MapExpr sample_expr() {
    return make_seq({make_leaf(make_tent(Rect{0.5, 0.0, 1.5, 1.0}, Axis::Horizontal,
                                         0.25, 0.75)),
                     make_leaf(Similarity{-1, Point(0.125, -3.5)})});
}

}  // namespace

TEST_CASE("bijection serialization round-trips exactly") {
    const IntBijection tail = make_identity_tail(-2, 1, {1, 0, -2, -1});
    const json jt = bijection_to_json(tail);
    CHECK(jt["kind"] == "identity_tail");
    CHECK(jt["lo"] == -2);
    CHECK(jt["hi"] == 1);
    CHECK(jt["values"] == json::array({1, 0, -2, -1}));
    const IntBijection tail2 = bijection_from_json(jt);
    const auto& t = std::get<IdentityTail>(tail2.form);
    CHECK(t.lo == -2);
    CHECK(t.hi == 1);
    CHECK(t.values == std::vector<int>{1, 0, -2, -1});

    const IntBijection per = make_periodic(3, {1, -1, 0});
    const json jp = bijection_to_json(per);
    CHECK(jp["kind"] == "periodic");
    CHECK(jp["period"] == 3);
    CHECK(jp["disp"] == json::array({1, -1, 0}));
    const IntBijection per2 = bijection_from_json(jp);
    const auto& p = std::get<PeriodicDisplacement>(per2.form);
    CHECK(p.period == 3);
    CHECK(p.disp == std::vector<int>{1, -1, 0});
}

TEST_CASE("auto input carries the optional negation flag") {
    const AutoInput plain{make_identity_tail(0, 1, {1, 0}), false};
    const json jp = auto_input_to_json(plain);
    CHECK_FALSE(jp.contains("negated"));
    CHECK_FALSE(auto_input_from_json(jp).negated);

    const AutoInput flipped{plain.base, true};
    const json jf = auto_input_to_json(flipped);
    CHECK(jf["negated"] == true);
    const AutoInput back = auto_input_from_json(jf);
    CHECK(back.negated);
    CHECK(bijection_eval(back.base, 0) == 1);
    CHECK(auto_eval(back, 0) == -1);
}

TEST_CASE("monotone sequence round-trip is lossless") {
    const MonotoneSeq e = make_monotone_seq(
        -1, 2, {-0.1, 1.0 / 3.0, 0.7548776662466927, 2.0000000000000004}, 0.1, 1e3);
    const MonotoneSeq back = seq_from_json(seq_to_json(e));
    CHECK(back.lo == e.lo);
    CHECK(back.hi == e.hi);
    CHECK(back.values == e.values);  // bitwise, shortest-repr doubles
    CHECK(back.left_slope == e.left_slope);
    CHECK(back.right_slope == e.right_slope);
}

TEST_CASE("expression serialization round-trips structurally") {
    const MapExpr tent = make_leaf(make_tent(Rect{-1.0, 2.0, 2.0, 0.5},
                                             Axis::Vertical, -0.2, 0.3));
    const MapExpr dis = make_disjoint({
        make_leaf(make_tent(Rect{-3.0, 0.0, 1.0, 1.0}, Axis::Horizontal, -0.25, 0.25)),
        make_leaf(make_tent(Rect{3.0, 0.0, 1.0, 1.0}, Axis::Horizontal, 0.5, -0.5)),
    });
    for (const MapExpr& e : {tent, sample_expr(), dis, make_inv(sample_expr()),
                             make_identity()}) {
        const json j = expr_to_json(e);
        CHECK(expr_to_json(expr_from_json(j)) == j);
    }

    // Rebuilt expressions evaluate identically (same arithmetic path).
    const MapExpr e = sample_expr();
    const MapExpr back = expr_from_json(expr_to_json(e));
    for (const Point z : {Point(0.3, 0.4), Point(-1.0, 0.25), Point(2.0, -2.0)})
        CHECK(expr_eval(back, z) == expr_eval(e, z));
    CHECK(expr_dilatation_bound(back) == expr_dilatation_bound(e));
}

TEST_CASE("embedding input round-trip") {
    const EmbeddingInput in{
        make_monotone_seq(0, 2, {0.0, 1.5, 2.25}, 0.5, 2.0),
        AutoInput{make_identity_tail(0, 1, {1, 0}), true}};
    const EmbeddingInput back = embedding_input_from_json(embedding_input_to_json(in));
    CHECK(back.image.values == in.image.values);
    CHECK(back.assignment.negated);
    CHECK(bijection_eval(back.assignment.base, 1) == 0);
}

TEST_CASE("embedding handle reproduces the map") {
    const MonotoneSeq e = make_monotone_seq(0, 2, {0.0, 1.0, 3.0}, 1.0, 1.0);
    const EmbeddingMap m = extend_embedding(e, make_identity_tail(0, 1, {1, 0}), 1.0);
    const json j = embedding_to_json(m);
    CHECK(j["kind"] == "embedding");
    const EmbeddingMap back = embedding_from_json(j);
    for (const Point z : {Point(0.0, 0.0), Point(1.0, 0.0), Point(0.3, 0.8),
                          Point(-2.5, -1.5), Point(4.0, 3.0)})
        CHECK(embedding_eval(back, z) == embedding_eval(m, z));
}

TEST_CASE("exp lattice handle reproduces the map") {
    const ExpLatticeMap m = extend_exp_automorphism(make_identity_tail(0, 1, {1, 0}));
    const json j = explattice_to_json(m);
    CHECK(j["kind"] == "explattice");
    const ExpLatticeMap back = explattice_from_json(j);
    CHECK(std::get<IdentityTail>(back.a.form).values == std::vector<int>{1, 0});
    for (const Point w : {Point(1.0, 0.0), Point(2.71828, 0.1), Point(-5.0, 0.0),
                          Point(0.25, -0.5)})
        CHECK(exp_eval(back, w) == exp_eval(m, w));
}

TEST_CASE("schema violations carry context") {
    CHECK_THROWS_WITH_AS((void)bijection_from_json(json{{"lo", 0}}),
                         doctest::Contains("bijection: missing field 'kind'"),
                         InputError);
    CHECK_THROWS_WITH_AS(
        (void)bijection_from_json(json{{"kind", "identity_tail"}, {"lo", 0}, {"hi", 0}}),
        doctest::Contains("missing field 'values'"), InputError);
    CHECK_THROWS_WITH_AS(
        (void)bijection_from_json(json{{"kind", "periodic"}, {"period", 2}}),
        doctest::Contains("missing field 'disp'"), InputError);
    CHECK_THROWS_WITH_AS((void)bijection_from_json(json{{"kind", "spline"}}),
                         doctest::Contains("unknown kind 'spline'"), InputError);
    CHECK_THROWS_WITH_AS((void)bijection_from_json(json::array()),
                         doctest::Contains("expected an object"), InputError);

    // Type mismatches are wrapped with the field name.
    CHECK_THROWS_WITH_AS(
        (void)bijection_from_json(
            json{{"kind", "identity_tail"}, {"lo", 0}, {"hi", 0}, {"values", "x"}}),
        doctest::Contains("field 'values'"), InputError);

    json bad_axis = expr_to_json(make_leaf(make_tent(Rect{0, 0, 1, 1},
                                                     Axis::Horizontal, 0.0, 0.5)));
    bad_axis["axis"] = "d";
    CHECK_THROWS_WITH_AS((void)expr_from_json(bad_axis),
                         doctest::Contains("axis must be 'h' or 'v'"), InputError);

    json bad_shift{{"kind", "sim"}, {"sign", 1}, {"shift", {1.0, 2.0, 3.0}}};
    CHECK_THROWS_WITH_AS((void)expr_from_json(bad_shift),
                         doctest::Contains("shift must be [re, im]"), InputError);

    CHECK_THROWS_WITH_AS((void)embedding_from_json(json{{"kind", "explattice"}}),
                         doctest::Contains("kind must be 'embedding'"), InputError);
    CHECK_THROWS_WITH_AS((void)explattice_from_json(json{{"kind", "embedding"}}),
                         doctest::Contains("kind must be 'explattice'"), InputError);
}

TEST_CASE("parsed structures still run factory validation") {
    // Overlapping disjoint children are rejected when rebuilt.
    json overlap{{"kind", "disjoint"}, {"children", json::array()}};
    const json tent = expr_to_json(
        make_leaf(make_tent(Rect{0, 0, 1, 1}, Axis::Horizontal, 0.0, 0.5)));
    overlap["children"].push_back(tent);
    overlap["children"].push_back(tent);
    CHECK_THROWS_WITH_AS((void)expr_from_json(overlap),
                         doctest::Contains("supports overlap"), InputError);

    json shrunk = seq_to_json(make_monotone_seq(0, 1, {0.0, 1.0}, 1.0, 1.0));
    shrunk["values"] = json::array({1.0, 0.5});
    CHECK_THROWS_WITH_AS((void)seq_from_json(shrunk),
                         doctest::Contains("strictly increasing"), InputError);

    json dup = bijection_to_json(make_identity_tail(0, 1, {1, 0}));
    dup["values"] = json::array({1, 1});
    CHECK_THROWS_AS((void)bijection_from_json(dup), InputError);
}

TEST_CASE("file persistence and parse diagnostics") {
    const std::string path = "json_io_roundtrip_tmp.json";
    const json doc = bijection_to_json(make_identity_tail(-1, 1, {0, 1, -1}));
    save_json_file(path, doc);
    CHECK(load_json_file(path) == doc);

    {
        std::ofstream out(path, std::ios::binary);
        out << "{\"kind\": \"identity_tail\", }";
    }
    CHECK_THROWS_WITH_AS((void)load_json_file(path),
                         doctest::Contains(("malformed JSON in " + path).c_str()),
                         InputError);
    std::remove(path.c_str());

    CHECK_THROWS_WITH_AS((void)load_json_file("does_not_exist_998877.json"),
                         doctest::Contains("cannot open input file"), InputError);
}
