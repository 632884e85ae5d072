#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcx/embed.hpp"
#include "qcx/errors.hpp"
#include "qcx/explattice.hpp"
#include "qcx/gridrender.hpp"
#include "qcx/intbijection.hpp"
#include "qcx/json_io.hpp"
#include "qcx/mapexpr.hpp"
#include "qcx/monotone_seq.hpp"
#include "qcx/splitflow.hpp"

namespace {

using nlohmann::json;
using namespace qcx;

struct Options {
    std::string in_path;
    std::string out_path;
    double delta = 1.0;
    int horizon = 40;
    std::string grid;
    bool verify = false;
    double tol = -1.0;  // command-specific default when negative
    std::string at;
    int cmax = 0;  // 0 = derive from the three-point constant
};

struct Run {
    std::string command;
    json outcomes = json::array();
    std::vector<std::string> artifacts;
    std::string digest = "fnv1a:0000000000000000";
    bool failed = false;

    void outcome(const std::string& name, bool pass, json extra = json::object()) {
        extra["name"] = name;
        extra["pass"] = pass;
        outcomes.push_back(std::move(extra));
        if (!pass) failed = true;
    }
    int finish() {
        json rep{{"command", command},
                 {"inputs_digest", digest},
                 {"outcomes", outcomes},
                 {"artifacts", artifacts}};
        std::cout << rep.dump(2) << '\n';
        return failed ? 1 : 0;
    }
};

std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx", (unsigned long long)h);
    return buf;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json load_input(const Options& opt, Run& run) {
    if (opt.in_path.empty()) throw InputError("--in is required");
    const std::string bytes = slurp(opt.in_path);
    run.digest = fnv1a_digest(bytes);
    try {
        return json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw InputError("malformed JSON in " + opt.in_path + ": " + e.what());
    }
}

int auto_window(const IntBijection& a) { return std::max(structure_reach(a), 10) + 5; }

int pinned_horizon(const IntBijection& a, int requested) {
    return std::max(requested, structure_reach(a) + 2 * max_displacement(a) + 1);
}

json witness_json(const std::array<int, 3>& w) { return json{w[0], w[1], w[2]}; }

int cmd_check3pc(const Options& opt) {
    Run run{"check3pc"};
    const AutoInput in = auto_input_from_json(load_input(opt, run));
    const ThreePointReport rep =
        three_point_lambda(in.base, pinned_horizon(in.base, opt.horizon));
    run.outcome("bijective", is_bijective(in.base));
    run.outcome("three_point_lambda", true,
                {{"lambda_empirical", rep.lambda_empirical},
                 {"lambda_certified", rep.lambda_certified},
                 {"witness", witness_json(rep.witness)},
                 {"horizon", rep.horizon}});
    run.outcome("limit_classification", true,
                {{"value", limit_classification(in) == LimitClass::SameDirection
                               ? "same_direction"
                               : "mirrored"}});
    return run.finish();
}

int cmd_split(const Options& opt) {
    Run run{"split"};
    const AutoInput in = auto_input_from_json(load_input(opt, run));
    const ThreePointReport rep =
        three_point_lambda(in.base, pinned_horizon(in.base, opt.horizon));
    int cmax = opt.cmax;
    if (cmax <= 0) cmax = int(std::ceil(2.0 * rep.lambda_certified + 3.0 - 1e-9));
    const int horizon = std::max(opt.horizon, structure_reach(in.base));
    const auto dec = find_split_decomposition(in.base, cmax, horizon);
    if (!dec) {
        run.outcome("split_decomposition", false,
                    {{"reason", "no splitting interval"}, {"c_max", cmax}});
        return run.finish();
    }
    run.outcome("split_decomposition", true,
                {{"bound_c", dec->bound_c},
                 {"c_max", cmax},
                 {"coverage", json{dec->coverage.first, dec->coverage.second}},
                 {"cuts", dec->cuts}});
    return run.finish();
}

void emit_verify(Run& run, const ExtensionReport& rep) {
    run.outcome("integers_match", rep.integers_ok,
                {{"max_residual", rep.max_integer_residual},
                 {"worst_integer", rep.worst_integer}});
    run.outcome("identity_outside_strip", rep.outside_ok,
                {{"max_residual", rep.max_outside_residual}});
    run.outcome("injective_on_grid", rep.injective_ok,
                {{"collisions", rep.injective_failures},
                 {"orientation_failures", rep.orientation_failures}});
    run.outcome("dilatation", true,
                {{"bound", rep.dilatation_bound}, {"max_k_local", rep.max_k_local}});
}

int cmd_extend_auto(const Options& opt) {
    Run run{"extend-auto"};
    const AutoInput in = auto_input_from_json(load_input(opt, run));
    const MapExpr expr = extend_automorphism(in, opt.delta);
    if (!opt.out_path.empty()) {
        save_json_file(opt.out_path, expr_to_json(expr));
        run.artifacts.push_back(opt.out_path);
    }
    run.outcome("extended", true,
                {{"dilatation_bound", expr_dilatation_bound(expr)},
                 {"delta", opt.delta}});
    if (opt.verify) {
        const double tol = opt.tol > 0 ? opt.tol : 1e-9;
        emit_verify(run, verify_extension(expr, in, auto_window(in.base), tol));
    }
    return run.finish();
}

int cmd_extend_embed(const Options& opt) {
    Run run{"extend-embed"};
    const EmbeddingInput in = embedding_input_from_json(load_input(opt, run));
    if (in.assignment.negated)
        throw InputError("extend-embed: mirrored assignments reverse orientation on "
                         "the line and are not supported");
    const EmbeddingMap map = extend_embedding(in.image, in.assignment.base, opt.delta);
    if (!opt.out_path.empty()) {
        save_json_file(opt.out_path, embedding_to_json(map));
        run.artifacts.push_back(opt.out_path);
    }
    const ImageReport image = characterize_image(
        in.image, std::max(opt.horizon, std::max(1, in.image.hi - in.image.lo)), 1e9);
    run.outcome("image_m_ratio", true, {{"m_constant", image.m_constant}});
    if (opt.verify) {
        const double tol = opt.tol > 0 ? opt.tol : 1e-8;
        double worst = 0.0;
        int worst_n = 0;
        const int w = auto_window(in.assignment.base);
        for (int n = -w; n <= w; ++n) {
            const double want = seq_eval(in.image, bijection_eval(in.assignment.base, n));
            const double got =
                std::abs(embedding_eval(map, Point(double(n), 0.0)) - Point(want, 0.0));
            if (got > worst) {
                worst = got;
                worst_n = n;
            }
        }
        run.outcome("embedding_values_match", worst <= tol,
                    {{"max_residual", worst}, {"worst_integer", worst_n}});
    }
    return run.finish();
}

int cmd_explattice(const Options& opt) {
    Run run{"explattice"};
    const AutoInput in = auto_input_from_json(load_input(opt, run));
    const ExpLatticeReport rep = log_conjugate(in);
    run.outcome("log_conjugate", true,
                {{"lambda_b", rep.lambda_b},
                 {"c_lambda", rep.c_lambda},
                 {"lambda_a", rep.lambda_a},
                 {"witness", witness_json(rep.witness)}});
    run.outcome("inversion_gap_bound",
                check_lemma_3_4(in.base, rep.lambda_b, rep.horizon));
    const ExpLatticeMap map = extend_exp_automorphism(in.base);
    if (!opt.out_path.empty()) {
        save_json_file(opt.out_path, explattice_to_json(map));
        run.artifacts.push_back(opt.out_path);
    }
    if (opt.verify) {
        const double tol = opt.tol > 0 ? opt.tol : 1e-9;
        double worst = 0.0;
        const int reach = structure_reach(in.base);
        for (int n = -reach - 3; n <= reach + 3; ++n) {
            const double want = std::exp(double(bijection_eval(in.base, n)));
            const Point got = exp_eval(map, std::exp(Point(double(n), 0.0)));
            worst = std::max(worst, std::abs(got - Point(want, 0.0)) / want);
        }
        run.outcome("lattice_values_match", worst <= tol, {{"max_relative", worst}});
        bool neg_axis = true;
        for (double x : {-0.5, -1.0, -5.0, -12.25})
            if (exp_eval(map, Point(x, 0.0)) != Point(x, 0.0)) neg_axis = false;
        run.outcome("negative_axis_fixed", neg_axis);
    }
    return run.finish();
}

struct HandleMap {
    PointMap f;
    bool puncture = false;  // exp lattice maps cannot evaluate w = 0
};

HandleMap handle_from_json(const json& j) {
    const std::string kind = j.is_object() && j.contains("kind")
                                 ? j["kind"].get<std::string>()
                                 : std::string();
    if (kind == "embedding") {
        auto m = std::make_shared<EmbeddingMap>(embedding_from_json(j));
        return {[m](Point z) { return embedding_eval(*m, z); }, false};
    }
    if (kind == "explattice") {
        auto m = std::make_shared<ExpLatticeMap>(explattice_from_json(j));
        return {[m](Point z) { return exp_eval(*m, z); }, true};
    }
    auto e = std::make_shared<MapExpr>(expr_from_json(j));
    return {[e](Point z) { return expr_eval(*e, z); }, false};
}

int cmd_eval(const Options& opt) {
    Run run{"eval"};
    const HandleMap h = handle_from_json(load_input(opt, run));
    double x = 0, y = 0;
    if (std::sscanf(opt.at.c_str(), "%lf,%lf", &x, &y) != 2)
        throw InputError("--at must be 'x,y'");
    const Point w = h.f(Point(x, y));
    run.outcome("eval", true, {{"at", json{x, y}}, {"value", json{w.real(), w.imag()}}});
    return run.finish();
}

int cmd_grid(const Options& opt) {
    Run run{"grid"};
    const HandleMap h = handle_from_json(load_input(opt, run));
    if (opt.grid.empty()) throw InputError("--grid is required");
    if (opt.out_path.empty()) throw InputError("--out is required");
    const GridSpec spec = parse_grid_spec(opt.grid);

    std::vector<std::pair<int, Point>> markers;
    for (int n = int(std::ceil(spec.x0)); n <= int(std::floor(spec.x1)); ++n) {
        if (h.puncture && n == 0) continue;
        markers.emplace_back(n, h.f(Point(double(n), 0.0)));
    }
    if (h.puncture && spec.x0 <= 0.0 && 0.0 <= spec.x1)
        throw InputError("grid: the x range must avoid the puncture at w = 0");

    std::string base = opt.out_path;
    if (base.size() > 4 && base.substr(base.size() - 4) == ".csv")
        base = base.substr(0, base.size() - 4);
    const std::string csv_path = base + ".csv", svg_path = base + ".svg";
    {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw InputError("cannot open output file: " + csv_path);
        out << render_grid_csv(h.f, spec);
    }
    {
        std::ofstream out(svg_path, std::ios::binary);
        if (!out) throw InputError("cannot open output file: " + svg_path);
        out << render_grid_svg(h.f, spec, markers);
    }
    run.artifacts.push_back(csv_path);
    run.artifacts.push_back(svg_path);
    run.outcome("grid", true, {{"rows", spec.nx * spec.ny}});
    return run.finish();
}

int cmd_report(const Options& opt) {
    Run run{"report"};
    const json j = load_input(opt, run);
    if (j.is_object() && j.contains("image")) {
        const EmbeddingInput in = embedding_input_from_json(j);
        const int horizon =
            std::max(opt.horizon, std::max(1, in.image.hi - in.image.lo));
        const ImageReport image = characterize_image(in.image, horizon, 1e9);
        run.outcome("image_m_ratio", true,
                    {{"m_constant", image.m_constant},
                     {"witness", json{image.witness.first, image.witness.second}}});
        const ThreePointReport rep = three_point_lambda(
            in.assignment.base, pinned_horizon(in.assignment.base, opt.horizon));
        run.outcome("assignment_three_point", true,
                    {{"lambda_certified", rep.lambda_certified}});
        return run.finish();
    }
    const AutoInput in = auto_input_from_json(j);
    run.outcome("bijective", is_bijective(in.base));
    const ThreePointReport rep =
        three_point_lambda(in.base, pinned_horizon(in.base, opt.horizon));
    run.outcome("three_point_lambda", true,
                {{"lambda_empirical", rep.lambda_empirical},
                 {"lambda_certified", rep.lambda_certified},
                 {"witness", witness_json(rep.witness)}});
    run.outcome("limit_classification", true,
                {{"value", limit_classification(in) == LimitClass::SameDirection
                               ? "same_direction"
                               : "mirrored"}});
    const int cmax = opt.cmax > 0
                         ? opt.cmax
                         : int(std::ceil(2.0 * rep.lambda_certified + 3.0 - 1e-9));
    const auto dec = find_split_decomposition(
        in.base, cmax, std::max(opt.horizon, structure_reach(in.base)));
    json split{{"c_max", cmax}, {"found", bool(dec)}};
    if (dec) split["bound_c"] = dec->bound_c;
    run.outcome("split_decomposition", true, split);
    return run.finish();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quasiconformal strip extensions of integer data"};
    app.require_subcommand(1);

    Options opt;
    std::string command;
    for (const auto& name : {"check3pc", "split", "extend-auto", "extend-embed",
                             "explattice", "eval", "grid", "report"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--in", opt.in_path, "input JSON path");
        sub->add_option("--out", opt.out_path, "output path");
        sub->add_option("--delta", opt.delta, "strip half-height");
        sub->add_option("--horizon", opt.horizon, "scan horizon");
        sub->add_option("--grid", opt.grid, "grid spec x0:x1:nx,y0:y1:ny");
        sub->add_flag("--verify", opt.verify, "run verification checks");
        sub->add_option("--tol", opt.tol, "verification tolerance");
        sub->add_option("--at", opt.at, "evaluation point 'x,y'");
        sub->add_option("--cmax", opt.cmax, "split block bound");
        sub->callback([&command, name] { command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << nlohmann::json{{"error", e.what()}}.dump() << '\n';
        return 2;
    }

    try {
        if (command == "check3pc") return cmd_check3pc(opt);
        if (command == "split") return cmd_split(opt);
        if (command == "extend-auto") return cmd_extend_auto(opt);
        if (command == "extend-embed") return cmd_extend_embed(opt);
        if (command == "explattice") return cmd_explattice(opt);
        if (command == "eval") return cmd_eval(opt);
        if (command == "grid") return cmd_grid(opt);
        if (command == "report") return cmd_report(opt);
        std::cerr << nlohmann::json{{"error", "unknown command"}}.dump() << '\n';
        return 2;
    } catch (const InputError& e) {
        std::cerr << nlohmann::json{{"error", e.what()}}.dump() << '\n';
        return 2;
    } catch (const CheckError& e) {
        std::cerr << nlohmann::json{{"error", e.what()}}.dump() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", e.what()}}.dump() << '\n';
        return 1;
    }
}
