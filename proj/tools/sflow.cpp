// Command-line front end for the signal-flow diagram library.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "sflow/blackbox.hpp"
#include "sflow/contflow.hpp"
#include "sflow/equations.hpp"
#include "sflow/json.hpp"
#include "sflow/pendulum.hpp"
#include "sflow/statebox.hpp"
#include "sflow/synth.hpp"

using namespace sflow;

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2;

struct UsageError : Error {
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// One diagram per file; '#' starts a comment that runs to end of line.
TermPtr read_diagram(const std::string& path, const Field& f) {
    std::string raw = read_file(path), text;
    bool comment = false;
    for (char ch : raw) {
        if (ch == '#') comment = true;
        if (ch == '\n') comment = false;
        text += comment ? ' ' : ch;
    }
    return term_parse(text, f);
}

Json read_json(const std::string& path) {
    try {
        return Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
        throw UsageError(path + ": " + e.what());
    }
}

IntegratorMode parse_mode(const std::string& s) {
    if (s == "symbolic") return IntegratorMode::Symbolic;
    if (s == "zero") return IntegratorMode::Zeroed;
    if (s == "cut") return IntegratorMode::Cut;
    throw UsageError("unknown integrator mode: " + s + " (expected symbolic, zero, or cut)");
}

BigRat parse_rat(const std::string& s) {
    return parse_scalar(Field::q(), s).rat();
}

void emit(bool as_json, const Json& j, const std::string& text) {
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text << "\n";
}

std::string contflow_diagnosis(const Extraction& e) {
    auto why = [](const LinRel& r) {
        return rel_dom_rank(r) < r.dom() ? std::string("not total")
                                         : std::string("not single-valued");
    };
    if (!e.d_map) return "D(f) " + why(e.relD);
    if (!e.a_map) return "A(f) " + why(e.relA);
    if (!e.b_map) return "B(f) " + why(e.relB);
    if (!e.c_map) return "C(f) " + why(e.relC);
    return "";
}

int run(int argc, char** argv) {
    CLI::App app{"signal-flow diagrams over exact fields"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");
    std::string field_name = "q", int_mode = "zero";
    std::string file_a, file_b;

    auto add_field = [&](CLI::App* c) {
        c->add_option("--field", field_name, "q, gf:<p>, or qs")->capture_default_str();
    };

    CLI::App* check = app.add_subcommand("check", "parse and arity-check a diagram");
    check->add_option("file", file_a)->required();
    add_field(check);

    CLI::App* bbox = app.add_subcommand("blackbox", "print the denoted linear relation");
    bbox->add_option("file", file_a)->required();
    add_field(bbox);
    bbox->add_option("--int", int_mode, "symbolic, zero, or cut")->capture_default_str();

    CLI::App* equal = app.add_subcommand("equal", "compare two diagrams semantically");
    equal->add_option("a", file_a)->required();
    equal->add_option("b", file_b)->required();
    add_field(equal);
    equal->add_option("--int", int_mode, "symbolic, zero, or cut")->capture_default_str();

    CLI::App* dag = app.add_subcommand("dagger", "print the daggered diagram");
    dag->add_option("file", file_a)->required();
    add_field(dag);

    CLI::App* star = app.add_subcommand("star", "print the star-dual diagram");
    star->add_option("file", file_a)->required();
    add_field(star);

    CLI::App* synth = app.add_subcommand("synth", "diagram realizing a matrix (JSON)");
    synth->add_option("file", file_a)->required();

    CLI::App* synthrel = app.add_subcommand("synth-rel", "diagram realizing a relation (JSON)");
    synthrel->add_option("file", file_a)->required();

    CLI::App* st = app.add_subcommand("stateful", "state-space system operations");
    std::string st_op;
    st->add_option("op", st_op, "compose|tensor|transfer|ctrb|obsv|dual")->required();
    st->add_option("f", file_a)->required();
    st->add_option("g", file_b);

    CLI::App* cf = app.add_subcommand("contflow", "extract a state-space reading");
    cf->add_option("file", file_a)->required();
    add_field(cf);

    CLI::App* vs = app.add_subcommand("verify-square",
                                      "check black-boxing against the extracted system");
    vs->add_option("file", file_a)->required();

    CLI::App* ve = app.add_subcommand("verify-equations", "check the whole equation library");
    add_field(ve);

    CLI::App* ex = app.add_subcommand("example", "worked examples");
    std::string ex_name;
    std::string pM = "2", pm = "1", pg = "10", pl = "1";
    ex->add_option("name", ex_name, "pendulum")->required();
    ex->add_option("--M", pM, "cart mass")->capture_default_str();
    ex->add_option("--m", pm, "bob mass")->capture_default_str();
    ex->add_option("--g", pg, "gravity")->capture_default_str();
    ex->add_option("--l", pl, "rod length")->capture_default_str();

    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    Field field = Field::parse(field_name);

    if (check->parsed()) {
        TermPtr t = read_diagram(file_a, field);
        emit(as_json,
             Json{{"ok", true}, {"dom", t->dom()}, {"cod", t->cod()}},
             "ok: " + std::to_string(t->dom()) + " -> " + std::to_string(t->cod()));
        return kOk;
    }

    if (bbox->parsed()) {
        TermPtr t = read_diagram(file_a, field);
        LinRel r = blackbox(t, field, parse_mode(int_mode));
        emit(as_json, rel_to_json(r), rel_to_json(r).dump(2));
        return kOk;
    }

    if (equal->parsed()) {
        IntegratorMode mode = parse_mode(int_mode);
        LinRel ra = blackbox(read_diagram(file_a, field), field, mode);
        LinRel rb = blackbox(read_diagram(file_b, field), field, mode);
        bool eq = ra == rb;
        emit(as_json, Json{{"equal", eq}}, eq ? "equal" : "not equal");
        return eq ? kOk : kFail;
    }

    if (dag->parsed() || star->parsed()) {
        TermPtr t = read_diagram(file_a, field);
        TermPtr r = dag->parsed() ? dagger_term(t) : star_term(t, field);
        emit(as_json, Json{{"diagram", term_print(r)}}, term_print(r));
        return kOk;
    }

    if (synth->parsed()) {
        TermPtr t = synth_map_diagram(matrix_from_json(read_json(file_a)));
        emit(as_json, Json{{"diagram", term_print(t)}}, term_print(t));
        return kOk;
    }

    if (synthrel->parsed()) {
        TermPtr t = synth_rel_diagram(rel_from_json(read_json(file_a)));
        emit(as_json, Json{{"diagram", term_print(t)}}, term_print(t));
        return kOk;
    }

    if (st->parsed()) {
        StatefulMorphism f = stateful_from_json(read_json(file_a));
        if (st_op == "compose" || st_op == "tensor") {
            if (file_b.empty()) throw UsageError("stateful " + st_op + " needs two systems");
            StatefulMorphism g = stateful_from_json(read_json(file_b));
            StatefulMorphism r =
                st_op == "compose" ? st_compose(g, f) : st_tensor(f, g);
            std::cout << stateful_to_json(r).dump(2) << "\n";
            return kOk;
        }
        if (st_op == "transfer" || st_op == "ctrb" || st_op == "obsv") {
            Matrix r = st_op == "transfer" ? st_transfer(f)
                       : st_op == "ctrb"   ? ctrb_matrix(f)
                                           : obsv_matrix(f);
            Json j = matrix_to_json(r);
            if (st_op == "ctrb") j["controllable"] = is_controllable(f);
            if (st_op == "obsv") j["observable"] = is_observable(f);
            std::cout << j.dump(2) << "\n";
            return kOk;
        }
        if (st_op == "dual") {
            std::cout << stateful_to_json(kalman_dual(f)).dump(2) << "\n";
            return kOk;
        }
        throw UsageError("unknown stateful operation: " + st_op);
    }

    if (cf->parsed()) {
        Extraction e = extract(read_diagram(file_a, field), field);
        Json j = extraction_to_json(e);
        if (e.all_maps()) {
            emit(as_json, j, j.dump(2));
            return kOk;
        }
        std::string why = contflow_diagnosis(e);
        j["diagnosis"] = why;
        emit(as_json, j, "not a state-realizable diagram: " + why);
        return kFail;
    }

    if (vs->parsed()) {
        TermPtr t = read_diagram(file_a, Field::q());
        Extraction e = extract(t, Field::q());
        if (!e.all_maps()) {
            std::string why = contflow_diagnosis(e);
            emit(as_json, Json{{"ok", false}, {"diagnosis", why}},
                 "not a state-realizable diagram: " + why);
            return kFail;
        }
        bool ok = verify_square(t);
        emit(as_json, Json{{"ok", ok}}, ok ? "square commutes" : "square FAILS");
        return ok ? kOk : kFail;
    }

    if (ve->parsed()) {
        IntegratorMode mode =
            field.kind == FieldKind::QS ? IntegratorMode::Symbolic : IntegratorMode::Zeroed;
        bool all_ok = true;
        Json rules = Json::array();
        for (const Equation& e : equation_library(field)) {
            bool ok = blackbox(e.lhs, field, mode) == blackbox(e.rhs, field, mode);
            all_ok = all_ok && ok;
            rules.push_back(Json{{"id", e.id},
                                 {"lhs", term_print(e.lhs)},
                                 {"rhs", term_print(e.rhs)},
                                 {"ok", ok}});
            if (!as_json)
                std::cout << (ok ? "ok   " : "FAIL ") << e.id << ": " << term_print(e.lhs)
                          << " = " << term_print(e.rhs) << "\n";
        }
        if (as_json) std::cout << Json{{"ok", all_ok}, {"rules", rules}}.dump(2) << "\n";
        return all_ok ? kOk : kFail;
    }

    if (ex->parsed()) {
        if (ex_name != "pendulum") throw UsageError("unknown example: " + ex_name);
        BigRat M = parse_rat(pM), m = parse_rat(pm), g = parse_rat(pg), l = parse_rat(pl);
        TermPtr comp = pendulum_composite_diagram(M, m, g, l);
        TermPtr fried = pendulum_friedland_diagram(M, m, g, l);
        Field qs = Field::qs();
        bool eq = blackbox(comp, qs, IntegratorMode::Symbolic) ==
                  blackbox(fried, qs, IntegratorMode::Symbolic);
        Json j{{"composite", term_print(comp)},
               {"friedland", term_print(fried)},
               {"equal", eq}};
        emit(as_json, j,
             "composite: " + term_print(comp) + "\nfriedland: " + term_print(fried) + "\n" +
                 (eq ? "diagrams black-box equal" : "diagrams DIFFER"));
        return eq ? kOk : kFail;
    }

    throw UsageError("no subcommand");
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const SyntaxError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ArityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const NotContFlow& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
