#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "susyms/classical.hpp"
#include "susyms/classify.hpp"
#include "susyms/elliptic.hpp"
#include "susyms/errors.hpp"
#include "susyms/exports.hpp"
#include "susyms/parse.hpp"
#include "susyms/reduce.hpp"

using namespace susyms;

namespace {

int fail(const std::string& msg) {
    nlohmann::json j;
    j["schema"] = 1;
    j["error"] = msg;
    std::cerr << j.dump(2) << "\n";
    return 1;
}

std::string render_table(const TableView& t, const std::string& format) {
    if (format == "json")
        return table_to_json(t);
    if (format == "latex")
        return table_to_latex(t);
    if (format == "markdown")
        return table_to_markdown(t);
    return table_to_text(t);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    f << text;
}

std::vector<RepresentativeClass> cached_full_classification() {
    const char* dir = std::getenv("SUSYMS_CACHE_DIR");
    std::string path;
    if (dir && *dir)
        path = std::string(dir) + "/classification_full.v1.json";
    if (!path.empty()) {
        std::ifstream in(path);
        if (in) {
            nlohmann::json j;
            try {
                in >> j;
            } catch (...) {
                j = nlohmann::json::object();
            }
            if (j.value("schema", 0) == 1 && j.value("count", 0) == 255) {
                auto stage_of = [](const std::string& s) {
                    if (s == "s1")
                        return Stage::S1;
                    if (s == "s2")
                        return Stage::S2;
                    if (s == "s")
                        return Stage::S;
                    if (s == "tilde-s")
                        return Stage::TildeS;
                    return Stage::Full;
                };
                std::vector<RepresentativeClass> out;
                int label = 1;
                for (const auto& e : j["classes"])
                    out.push_back({label++, stage_of(e.value("stage", "full")),
                                   parse_pattern(e["generators"].get<std::string>()), true});
                return out;
            }
        }
    }
    auto full = classify_stage_full();
    if (!path.empty()) {
        std::ofstream outf(path);
        if (outf)
            outf << classification_to_json(full, "full", false);
    }
    return full;
}

int run_classify(const std::string& stage, bool dedupe, bool count_only,
                 const std::string& out_path) {
    std::vector<RepresentativeClass> classes;
    if (stage == "s1")
        classes = classify_stage_s1();
    else if (stage == "s")
        classes = classify_stage_s();
    else if (stage == "tilde-s")
        classes = classify_stage_tilde_s();
    else if (stage == "full")
        classes = cached_full_classification();
    else
        throw UsageError("unknown stage '" + stage + "'");
    bool deduped = false;
    if (dedupe) {
        if (stage != "full")
            throw UsageError("--dedupe-reflection requires --stage full");
        classes = reflect_and_dedupe(classes).classes;
        deduped = true;
    }
    if (count_only) {
        emit(std::to_string(classes.size()) + "\n", out_path);
        return 0;
    }
    emit(classification_to_json(classes, stage, deduped), out_path);
    return 0;
}

NumericEnv parse_sets(const std::vector<std::string>& sets) {
    NumericEnv env;
    // generic defaults for the catalog constants; explicit --set wins
    for (const char* n : {"A", "B", "C", "K", "M", "N", "a", "k", "l", "m", "c1", "c2",
                          "C3e", "C4e", "C1", "C2", "C7", "C8", "s0"})
        env.set(n, 1.0);
    env.set("eps", 1.0);
    env.set("k0", 0.0);
    for (const auto& s : sets) {
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw UsageError("--set expects name=value");
        env.set(s.substr(0, eq), std::stod(s.substr(eq + 1)));
    }
    return env;
}

int run_verify_solution(const std::string& file, const std::string& name, bool numeric,
                        const std::string& grid_spec, const std::vector<std::string>& sets,
                        const std::string& out_path) {
    GradedExpr phi;
    std::string label = name;
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in)
            throw UsageError("cannot open '" + file + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        phi = parse_expression(ss.str());
        label = file;
    } else if (!name.empty()) {
        phi = named_solution(name);
    } else {
        throw UsageError("verify-solution needs --file or --name");
    }
    if (!numeric) {
        SolutionReport rep = verify_susy_solution(phi);
        emit(solution_report_to_json(label, rep), out_path);
        return rep.status == SolutionReport::Status::Zero ? 0 : 1;
    }
    GridSpec grid;
    if (!grid_spec.empty()) {
        double v[4];
        int n[2];
        if (std::sscanf(grid_spec.c_str(), "%lf,%lf,%lf,%lf,%d,%d", &v[0], &v[1], &v[2], &v[3],
                        &n[0], &n[1]) != 6)
            throw UsageError("--grid expects x0,x1,y0,y1,nx,ny");
        grid.x0 = v[0];
        grid.x1 = v[1];
        grid.y0 = v[2];
        grid.y1 = v[3];
        grid.nx = n[0];
        grid.ny = n[1];
    }
    NumericReport rep = verify_susy_solution_numeric(phi, grid, parse_sets(sets));
    emit(numeric_report_to_json(label, rep, grid), out_path);
    return rep.max_abs < 1e-9 ? 0 : 1;
}

int run_reduce(const std::string& label, const std::string& out_path) {
    if (label == "e4" || label == "e4+me3") {
        auto red = reduce_classical(label);
        emit(red.lhs.str() + " = 0\n" + red.pretty + "\n", out_path);
        return 0;
    }
    auto ode = reduce_bodiless(label);
    emit(ode.pretty + "\n", out_path);
    return 0;
}

int run_verify_extension(const std::string& out_path) {
    GradedExpr diff = expand_superfield(susy_ms_residual(ResidualForm::Operator)) -
                      expand_superfield(susy_ms_residual(ResidualForm::Component));
    nlohmann::json j;
    j["schema"] = 1;
    j["check"] = "operator form vs component form after theta expansion";
    j["difference"] = diff.str();
    j["equal"] = diff.is_zero();
    emit(j.dump(2) + "\n", out_path);
    return diff.is_zero() ? 0 : 1;
}

int run_verify_identities(const std::string& out_path) {
    emit(identities_to_json(), out_path);
    for (const auto& r : check_operator_identities())
        if (!r.holds)
            return 1;
    return 0;
}

int run_classical(const std::string& what, const std::string& sub, const std::string& out_path) {
    if (what == "symmetries") {
        nlohmann::json j;
        j["schema"] = 1;
        nlohmann::json arr = nlohmann::json::array();
        auto basis = classical_basis();
        auto names = classical_basis_names();
        bool all_ok = true;
        for (size_t i = 0; i < basis.size(); ++i) {
            GradedExpr res = prolong2_symmetry_check(basis[i]);
            nlohmann::json e;
            e["name"] = names[i];
            e["on_shell_residual"] = res.str();
            all_ok = all_ok && res.is_zero();
            arr.push_back(std::move(e));
        }
        j["symmetries"] = std::move(arr);
        emit(j.dump(2) + "\n", out_path);
        return all_ok ? 0 : 1;
    }
    if (what == "classify") {
        auto c = classical_classify();
        nlohmann::json j;
        j["schema"] = 1;
        j["count"] = c.labels.size();
        j["classes"] = c.labels;
        j["su2_killing_negative_definite"] = c.killing_negative_definite;
        emit(j.dump(2) + "\n", out_path);
        return c.killing_negative_definite ? 0 : 1;
    }
    if (what == "reduce")
        return run_reduce(sub.empty() ? "e4" : sub, out_path);
    if (what == "verify") {
        auto el = euler_lagrange_check();
        auto abel = e4_abel_residual(1.0, 0.0);
        auto ann = e4_annulus_residual(1.0, 0.0);
        auto me3 = e4me3_abel_residual(1.0, 0.5);
        nlohmann::json j;
        j["schema"] = 1;
        j["divergence_form_matches"] = el.divergence_matches;
        j["euler_lagrange"] = el.euler_lagrange;
        j["wick_signs"] = el.wick_signs;
        j["wick_involution"] = el.wick_involution;
        j["rotational_solution"] = {
            {"abel_max_residual", format_double(abel.max_residual)},
            {"annulus_max_relative_residual", format_double(ann.max_relative)}};
        j["log_pair_solution"] = {
            {"abel_max_real_residual", format_double(me3.max_real_residual)},
            {"abel_max_imag_residual", format_double(me3.max_imag_residual)}};
        emit(j.dump(2) + "\n", out_path);
        bool ok = el.divergence_matches && el.euler_lagrange && el.wick_signs &&
                  el.wick_involution && abel.max_residual < 1e-8 && ann.max_relative < 1e-6;
        return ok ? 0 : 1;
    }
    throw UsageError("unknown classical subcommand '" + what + "'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"computer algebra for the supersymmetric minimal-surface equation"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "write output to a file instead of stdout");

    auto* tables = app.add_subcommand("tables", "export the symmetry bracket tables");
    std::string algebra = "susy", format = "text";
    tables->add_option("--algebra", algebra, "susy|classical");
    tables->add_option("--format", format, "text|json|latex|markdown");

    auto* vext =
        app.add_subcommand("verify-extension", "check the operator and component forms agree");
    auto* vid = app.add_subcommand("verify-identities", "check the covariant-derivative algebra");

    auto* cls = app.add_subcommand("classify", "one-dimensional subalgebra classification");
    std::string stage = "full";
    bool dedupe = false, count_only = false;
    cls->add_option("--stage", stage, "s1|s|tilde-s|full");
    cls->add_flag("--dedupe-reflection", dedupe, "identify reflection partners");
    cls->add_flag("--count-only", count_only, "print only the class count");

    auto* red = app.add_subcommand("reduce", "symmetry reduction to an ODE");
    std::string sub, ansatz = "bodiless";
    red->add_option("--subalgebra", sub, "L74|G136|L72|e4|e4+me3")->required();
    red->add_option("--ansatz", ansatz, "bodiless");

    auto* vsol = app.add_subcommand("verify-solution", "residual of a candidate solution");
    std::string file, name, grid_spec;
    bool numeric = false;
    std::vector<std::string> sets;
    vsol->add_option("--file", file, "expression file");
    vsol->add_option("--name", name, "built-in solution name");
    vsol->add_flag("--numeric", numeric, "evaluate the residual on a grid");
    vsol->add_option("--grid", grid_spec, "x0,x1,y0,y1,nx,ny");
    vsol->add_option("--set", sets, "constant values name=value");

    auto* cla = app.add_subcommand("classical", "classical minimal-surface analysis");
    std::string what;
    std::string csub;
    cla->add_option("what", what, "symmetries|classify|reduce|verify")->required();
    cla->add_option("--subalgebra", csub, "e4|e4+me3");

    auto* ell = app.add_subcommand("elliptic", "incomplete elliptic integrals");
    std::string kind;
    double phi_v = 0.0, k_v = 0.0;
    ell->add_option("kind", kind, "F|E")->required();
    ell->add_option("--phi", phi_v, "amplitude")->required();
    ell->add_option("--k", k_v, "modulus")->required();

    for (auto* s : app.get_subcommands({}))
        s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // malformed invocations exit 2; --help exits 0
    }

    try {
        if (tables->parsed()) {
            TableView t = algebra == "classical" ? classical_table_view() : susy_table_view();
            emit(render_table(t, format), out_path);
            return 0;
        }
        if (vext->parsed())
            return run_verify_extension(out_path);
        if (vid->parsed())
            return run_verify_identities(out_path);
        if (cls->parsed())
            return run_classify(stage, dedupe, count_only, out_path);
        if (red->parsed()) {
            if (ansatz != "bodiless")
                throw UsageError("unknown ansatz '" + ansatz + "'");
            return run_reduce(sub, out_path);
        }
        if (vsol->parsed())
            return run_verify_solution(file, name, numeric, grid_spec, sets, out_path);
        if (cla->parsed())
            return run_classical(what, csub, out_path);
        if (ell->parsed()) {
            if (kind != "F" && kind != "E")
                throw UsageError("elliptic kind must be F or E");
            double v = kind == "E" ? elliptic_e(phi_v, k_v) : elliptic_f(phi_v, k_v);
            emit(format_double(v) + "\n", out_path);
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedSubalgebra& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const SyntaxError& e) {
        std::cerr << "syntax error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        return fail(e.what());
    }
    return 2;
}
