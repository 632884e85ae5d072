#include "qcx/json_io.hpp"

#include <fstream>

#include "qcx/errors.hpp"

namespace qcx {

namespace {

const nlohmann::json& field(const nlohmann::json& j, const char* name,
                            const char* ctx) {
    auto it = j.find(name);
    if (it == j.end())
        throw InputError(std::string(ctx) + ": missing field '" + name + "'");
    return *it;
}

template <typename T>
T field_as(const nlohmann::json& j, const char* name, const char* ctx) {
    try {
        return field(j, name, ctx).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string(ctx) + ": field '" + name + "': " + e.what());
    }
}

std::string kind_of(const nlohmann::json& j, const char* ctx) {
    if (!j.is_object()) throw InputError(std::string(ctx) + ": expected an object");
    return field_as<std::string>(j, "kind", ctx);
}

}  // namespace

nlohmann::json bijection_to_json(const IntBijection& a) {
    nlohmann::json j;
    if (const auto* t = std::get_if<IdentityTail>(&a.form)) {
        j["kind"] = "identity_tail";
        j["lo"] = t->lo;
        j["hi"] = t->hi;
        j["values"] = t->values;
    } else {
        const auto& p = std::get<PeriodicDisplacement>(a.form);
        j["kind"] = "periodic";
        j["period"] = p.period;
        j["disp"] = p.disp;
    }
    return j;
}

IntBijection bijection_from_json(const nlohmann::json& j) {
    const std::string kind = kind_of(j, "bijection");
    if (kind == "identity_tail")
        return make_identity_tail(field_as<int>(j, "lo", "bijection"),
                                  field_as<int>(j, "hi", "bijection"),
                                  field_as<std::vector<int>>(j, "values", "bijection"));
    if (kind == "periodic")
        return make_periodic(field_as<int>(j, "period", "bijection"),
                             field_as<std::vector<int>>(j, "disp", "bijection"));
    throw InputError("bijection: unknown kind '" + kind + "'");
}

nlohmann::json auto_input_to_json(const AutoInput& a) {
    nlohmann::json j = bijection_to_json(a.base);
    if (a.negated) j["negated"] = true;
    return j;
}

AutoInput auto_input_from_json(const nlohmann::json& j) {
    AutoInput a{bijection_from_json(j), false};
    if (j.contains("negated")) a.negated = field_as<bool>(j, "negated", "bijection");
    return a;
}

nlohmann::json seq_to_json(const MonotoneSeq& e) {
    return nlohmann::json{{"lo", e.lo},
                          {"hi", e.hi},
                          {"values", e.values},
                          {"left_slope", e.left_slope},
                          {"right_slope", e.right_slope}};
}

MonotoneSeq seq_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("monotone_seq: expected an object");
    return make_monotone_seq(field_as<int>(j, "lo", "monotone_seq"),
                             field_as<int>(j, "hi", "monotone_seq"),
                             field_as<std::vector<double>>(j, "values", "monotone_seq"),
                             field_as<double>(j, "left_slope", "monotone_seq"),
                             field_as<double>(j, "right_slope", "monotone_seq"));
}

nlohmann::json expr_to_json(const MapExpr& e) {
    nlohmann::json j;
    switch (e.node.index()) {
        case 0: {
            const auto& t = std::get<TentSlide>(e.node);
            j["kind"] = "tent";
            j["rect"] = {{"cx", t.rect.cx}, {"cy", t.rect.cy}, {"hw", t.rect.hw},
                         {"hh", t.rect.hh}};
            j["axis"] = (t.axis == Axis::Horizontal) ? "h" : "v";
            j["p"] = t.p;
            j["q"] = t.q;
            break;
        }
        case 1: {
            const auto& s = std::get<Similarity>(e.node);
            j["kind"] = "sim";
            j["sign"] = s.sign;
            j["shift"] = {s.shift.real(), s.shift.imag()};
            break;
        }
        case 2: {
            j["kind"] = "seq";
            auto arr = nlohmann::json::array();
            for (const MapExpr& c : std::get<SeqNode>(e.node).children)
                arr.push_back(expr_to_json(c));
            j["children"] = std::move(arr);
            break;
        }
        case 3: {
            j["kind"] = "disjoint";
            auto arr = nlohmann::json::array();
            for (const MapExpr& c : std::get<DisjointNode>(e.node).children)
                arr.push_back(expr_to_json(c));
            j["children"] = std::move(arr);
            break;
        }
        default:
            j["kind"] = "inv";
            j["child"] = expr_to_json(std::get<InvNode>(e.node).child.front());
    }
    return j;
}

MapExpr expr_from_json(const nlohmann::json& j) {
    const std::string kind = kind_of(j, "expr");
    if (kind == "tent") {
        const nlohmann::json& r = field(j, "rect", "expr");
        const Rect rect{field_as<double>(r, "cx", "expr.rect"),
                        field_as<double>(r, "cy", "expr.rect"),
                        field_as<double>(r, "hw", "expr.rect"),
                        field_as<double>(r, "hh", "expr.rect")};
        const std::string axis = field_as<std::string>(j, "axis", "expr");
        if (axis != "h" && axis != "v")
            throw InputError("expr: axis must be 'h' or 'v'");
        return make_leaf(make_tent(rect, axis == "h" ? Axis::Horizontal : Axis::Vertical,
                                   field_as<double>(j, "p", "expr"),
                                   field_as<double>(j, "q", "expr")));
    }
    if (kind == "sim") {
        const auto shift = field_as<std::vector<double>>(j, "shift", "expr");
        if (shift.size() != 2) throw InputError("expr: shift must be [re, im]");
        return make_leaf(
            Similarity{field_as<int>(j, "sign", "expr"), Point(shift[0], shift[1])});
    }
    if (kind == "seq" || kind == "disjoint") {
        const nlohmann::json& arr = field(j, "children", "expr");
        if (!arr.is_array()) throw InputError("expr: children must be an array");
        std::vector<MapExpr> children;
        for (const auto& c : arr) children.push_back(expr_from_json(c));
        return kind == "seq" ? make_seq(std::move(children))
                             : make_disjoint(std::move(children));
    }
    if (kind == "inv") return make_inv(expr_from_json(field(j, "child", "expr")));
    throw InputError("expr: unknown kind '" + kind + "'");
}

nlohmann::json embedding_input_to_json(const EmbeddingInput& in) {
    return nlohmann::json{{"image", seq_to_json(in.image)},
                          {"assignment", auto_input_to_json(in.assignment)}};
}

EmbeddingInput embedding_input_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("embedding input: expected an object");
    return EmbeddingInput{seq_from_json(field(j, "image", "embedding input")),
                          auto_input_from_json(field(j, "assignment", "embedding input"))};
}

nlohmann::json embedding_to_json(const EmbeddingMap& m) {
    MonotoneSeq e;
    e.lo = int(m.ba.h.breakpoints.front());
    e.hi = int(m.ba.h.breakpoints.back());
    e.values = m.ba.h.values;
    e.left_slope = m.ba.h.left_slope;
    e.right_slope = m.ba.h.right_slope;
    return nlohmann::json{{"kind", "embedding"},
                          {"image", seq_to_json(e)},
                          {"auto", expr_to_json(m.automorphism)}};
}

EmbeddingMap embedding_from_json(const nlohmann::json& j) {
    if (kind_of(j, "embedding") != "embedding")
        throw InputError("embedding: kind must be 'embedding'");
    return EmbeddingMap{make_ba(pl_interpolant(seq_from_json(field(j, "image", "embedding")))),
                        expr_from_json(field(j, "auto", "embedding"))};
}

nlohmann::json explattice_to_json(const ExpLatticeMap& m) {
    return nlohmann::json{{"kind", "explattice"},
                          {"strip", expr_to_json(m.g)},
                          {"base", bijection_to_json(m.a)}};
}

ExpLatticeMap explattice_from_json(const nlohmann::json& j) {
    if (kind_of(j, "explattice") != "explattice")
        throw InputError("explattice: kind must be 'explattice'");
    return ExpLatticeMap{expr_from_json(field(j, "strip", "explattice")),
                         bijection_from_json(field(j, "base", "explattice"))};
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open input file: " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
}

void save_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open output file: " + path);
    out << j.dump(2) << '\n';
    if (!out) throw InputError("failed writing output file: " + path);
}

}  // namespace qcx
