// Command line front end: enumeration, graph export, clique census, apartment
// generation/recognition, inexactness machinery, bijection classification,
// reconstruction, and the built-in verification experiments.
//
// Exit codes: 0 pass, 1 fail (with a witness on stdout), 2 usage error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "grassmann/experiments.hpp"

using namespace grassmann;
using json = nlohmann::ordered_json;

namespace {

struct FieldOpts {
    unsigned q = 0;       // shorthand: prime order
    unsigned p = 0, e = 1;
    std::vector<unsigned> modulus;

    Field make() const {
        if (q) {
            // accept prime powers through the shorthand too
            unsigned pp = q, ee = 0;
            for (unsigned d = 2; d <= pp; ++d) {
                if (pp % d == 0) {
                    unsigned m = pp;
                    ee = 0;
                    while (m % d == 0) { m /= d; ++ee; }
                    if (m != 1) throw CLI::ValidationError("--q", "not a prime power");
                    return Field(d, ee, modulus);
                }
            }
            throw CLI::ValidationError("--q", "not a prime power");
        }
        if (!p) throw CLI::ValidationError("field", "give --q or --p/--e");
        return Field(p, e, modulus);
    }
};

void add_field_opts(CLI::App* cmd, FieldOpts& f) {
    cmd->add_option("-q,--q", f.q, "field order (prime power)");
    cmd->add_option("--p", f.p, "field characteristic");
    cmd->add_option("--e", f.e, "extension degree");
    cmd->add_option("--modulus", f.modulus,
                    "irreducible modulus, little-endian coefficients over F_p");
}

json read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        json j;
        std::cin >> j;
        return j;
    }
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--input", "cannot open " + path);
    json j;
    in >> j;
    return j;
}

void emit(const json& j, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite Grassmannian apartment toolkit"};
    app.require_subcommand(1);

    unsigned n = 0, k = 0;
    std::uint64_t seed = 0, guard_elements = 200000;
    std::string input, output, format = "json";

    // --- enum ---------------------------------------------------------------
    auto* c_enum = app.add_subcommand("enum", "enumerate the k-subspaces of F_q^n");
    FieldOpts f_enum;
    add_field_opts(c_enum, f_enum);
    c_enum->add_option("-n", n)->required();
    c_enum->add_option("-k", k)->required();
    c_enum->add_option("--guard-elements", guard_elements);
    c_enum->add_option("--output", output);
    c_enum->callback([&] {
        Field F = f_enum.make();
        Grassmannian G(F, n, k, guard_elements);
        json arr = json::array();
        for (std::size_t i = 0; i < G.size(); ++i) arr.push_back(G.at(i).to_json());
        emit({{"field", F.to_json()}, {"count", G.size()}, {"elements", arr}}, output);
    });

    // --- graph --------------------------------------------------------------
    auto* c_graph = app.add_subcommand("graph", "export the Grassmann graph");
    FieldOpts f_graph;
    add_field_opts(c_graph, f_graph);
    bool dot = false;
    c_graph->add_option("-n", n)->required();
    c_graph->add_option("-k", k)->required();
    c_graph->add_option("--guard-elements", guard_elements);
    c_graph->add_flag("--dot", dot, "emit graphviz instead of json");
    c_graph->add_option("--output", output);
    c_graph->callback([&] {
        Field F = f_graph.make();
        Grassmannian G(F, n, k, guard_elements);
        GrassmannGraph graph(G);
        if (dot) {
            if (output.empty() || output == "-") std::cout << graph.to_dot();
            else std::ofstream(output) << graph.to_dot();
        } else {
            emit(graph.to_json(), output);
        }
    });

    // --- cliques ------------------------------------------------------------
    auto* c_cliq = app.add_subcommand("cliques", "maximal cliques with star/top classification");
    FieldOpts f_cliq;
    add_field_opts(c_cliq, f_cliq);
    c_cliq->add_option("-n", n)->required();
    c_cliq->add_option("-k", k)->required();
    c_cliq->add_option("--guard-elements", guard_elements);
    c_cliq->add_option("--output", output);
    c_cliq->callback([&] {
        Field F = f_cliq.make();
        Grassmannian G(F, n, k, guard_elements);
        GrassmannGraph graph(G);
        json arr = json::array();
        for (const auto& c : graph.classified_maximal_cliques()) {
            json members = json::array();
            c.members.for_each([&](std::size_t i) { members.push_back(i); });
            json e = {{"members", members}};
            switch (c.kind) {
                case CliqueKind::Star: e["kind"] = "star"; break;
                case CliqueKind::Top: e["kind"] = "top"; break;
                case CliqueKind::Other: e["kind"] = "other"; break;
            }
            if (c.kind != CliqueKind::Other) e["witness"] = c.witness.to_json();
            arr.push_back(std::move(e));
        }
        emit({{"n", n}, {"k", k}, {"q", F.q()}, {"cliques", arr}}, output);
    });

    // --- apartment gen / recognize -------------------------------------------
    auto* c_ap = app.add_subcommand("apartment", "apartment generation and recognition");
    c_ap->require_subcommand(1);

    auto* c_gen = c_ap->add_subcommand("gen", "apartment of a random or given frame");
    FieldOpts f_gen;
    add_field_opts(c_gen, f_gen);
    c_gen->add_option("-n", n)->required();
    c_gen->add_option("-k", k)->required();
    c_gen->add_option("--seed", seed);
    c_gen->add_option("--input", input, "frame json (omit for a random frame)");
    c_gen->add_option("--output", output);
    c_gen->callback([&] {
        Field F = f_gen.make();
        Rng rng(seed);
        Frame fr = input.empty() ? Frame::random(F, n, rng)
                                 : Frame::from_json(F, read_input(input));
        Apartment A(F, fr, k);
        json elems = json::array();
        for (Label l : A.labels()) {
            json labels1 = json::array();
            for (unsigned i : label_indices(l)) labels1.push_back(i + 1);
            elems.push_back({{"label", labels1}, {"subspace", A.subspace_of(l).to_json()}});
        }
        emit({{"frame", fr.to_json()}, {"k", k}, {"elements", elems}}, output);
    });

    auto* c_rec = c_ap->add_subcommand("recognize", "decide whether subspaces form an apartment");
    FieldOpts f_rec;
    add_field_opts(c_rec, f_rec);
    c_rec->add_option("-n", n)->required();
    c_rec->add_option("-k", k)->required();
    c_rec->add_option("--input", input, "json array of subspaces");
    c_rec->add_option("--output", output);
    c_rec->callback([&] {
        Field F = f_rec.make();
        json j = read_input(input);
        std::vector<Subspace> elems;
        for (const auto& s : j) elems.push_back(Subspace::from_json(F, s));
        auto fr = recognize_apartment(F, n, k, elems);
        if (fr) {
            emit({{"apartment", true}, {"frame", fr->to_json()}}, output);
        } else {
            emit({{"apartment", false}}, output);
            throw CLI::RuntimeError(1);
        }
    });

    // --- inexact ------------------------------------------------------------
    auto* c_inx = app.add_subcommand("inexact", "maximal inexact subsets of one apartment");
    FieldOpts f_inx;
    add_field_opts(c_inx, f_inx);
    bool brute = false;
    c_inx->add_option("-n", n)->required();
    c_inx->add_option("-k", k)->required();
    c_inx->add_option("--seed", seed);
    c_inx->add_flag("--bruteforce", brute, "exhaustive subset scan instead of the construction");
    c_inx->add_option("--input", input, "frame json (omit for the standard frame)");
    c_inx->add_option("--output", output);
    c_inx->callback([&] {
        Field F = f_inx.make();
        Frame fr = input.empty() ? Frame::standard(F, n) : Frame::from_json(F, read_input(input));
        Apartment A(F, fr, k);
        auto sets = brute ? maximal_inexact_subsets_bruteforce(A) : structural_maximal_inexact(A);
        json arr = json::array();
        for (const auto& s : sets) arr.push_back(labeled_subset_to_json(s));
        emit({{"mode", brute ? "bruteforce" : "structural"}, {"count", sets.size()},
              {"sets", arr}}, output);
    });

    // --- classify -----------------------------------------------------------
    auto* c_cls = app.add_subcommand("classify", "classify an apartment bijection");
    FieldOpts f_cls;
    add_field_opts(c_cls, f_cls);
    std::string method = "matching";
    c_cls->add_option("--method", method, "matching | procedure")
        ->check(CLI::IsMember({"matching", "procedure"}));
    c_cls->add_option("--input", input, "bijection json");
    c_cls->add_option("--output", output);
    c_cls->callback([&] {
        Field F = f_cls.make();
        ApartmentBijection g = ApartmentBijection::from_json(F, read_input(input));
        if (!is_special(g)) {
            emit({{"special", false}}, output);
            throw CLI::RuntimeError(1);
        }
        auto cls = method == "matching" ? classify_by_matching(g) : classify_by_procedure(g);
        emit({{"special", true}, {"class", cls.to_json()},
              {"graph_isomorphism", special_is_graph_isomorphism(g, cls)}}, output);
    });

    // --- random-map ---------------------------------------------------------
    auto* c_rand = app.add_subcommand("random-map", "random invertible semilinear map and its action");
    FieldOpts f_rand;
    add_field_opts(c_rand, f_rand);
    c_rand->add_option("-n", n)->required();
    c_rand->add_option("-k", k)->required();
    c_rand->add_option("--seed", seed);
    c_rand->add_option("--guard-elements", guard_elements);
    c_rand->add_option("--output", output);
    c_rand->callback([&] {
        Field F = f_rand.make();
        Rng rng(seed);
        SemilinearMap l = random_semilinear(F, n, rng);
        Grassmannian G(F, n, k, guard_elements);
        GrassmannianBijection f = bijection_from_semilinear(G, l);
        emit({{"map", l.to_json()}, {"bijection", f.to_json(F)}}, output);
    });

    // --- reconstruct --------------------------------------------------------
    auto* c_rc = app.add_subcommand("reconstruct", "reconstruct a semilinear map from a bijection");
    FieldOpts f_rc;
    add_field_opts(c_rc, f_rc);
    std::string mode = "sampled";
    std::size_t samples = 200;
    c_rc->add_option("--mode", mode, "sampled | exhaustive")
        ->check(CLI::IsMember({"sampled", "exhaustive"}));
    c_rc->add_option("--samples", samples);
    c_rc->add_option("--seed", seed);
    c_rc->add_option("--guard-elements", guard_elements);
    c_rc->add_option("--input", input, "bijection json {n, k, q, perm}");
    c_rc->add_option("--output", output);
    c_rc->callback([&] {
        Field F = f_rc.make();
        json j = read_input(input);
        GrassmannianBijection f = GrassmannianBijection::from_json(j);
        Tower T(F, f.n, std::max(f.k, 1u), guard_elements);
        Rng rng(seed);
        try {
            auto r = reconstruct(T, f,
                                 mode == "sampled" ? ApartmentCheckMode::Sampled
                                                   : ApartmentCheckMode::Exhaustive,
                                 &rng, samples);
            emit(reconstruction_result_to_json(r), output);
        } catch (const ReconstructionError& err) {
            emit({{"error", err.what()}, {"stage", err.stage}}, output);
            throw CLI::RuntimeError(1);
        }
    });

    // --- verify -------------------------------------------------------------
    auto* c_ver = app.add_subcommand("verify", "run a built-in verification experiment");
    std::string experiment, all_format = "table";
    bool list = false;
    c_ver->add_option("id", experiment, "experiment id, or 'all'");
    c_ver->add_flag("--list", list, "list experiment ids");
    c_ver->add_option("--format", all_format, "table | json | csv")
        ->check(CLI::IsMember({"table", "json", "csv"}));
    c_ver->add_option("--output", output);
    c_ver->callback([&] {
        auto reg = experiment_registry();
        if (list) {
            for (const auto& [id, fn] : reg) std::cout << id << "\n";
            return;
        }
        if (experiment.empty())
            throw CLI::ValidationError("id", "give an experiment id or --list");
        std::vector<ExperimentReport> reports;
        if (experiment == "all") {
            for (const auto& [id, fn] : reg) reports.push_back(fn());
        } else {
            auto it = reg.find(experiment);
            if (it == reg.end()) throw CLI::ValidationError("id", "unknown experiment");
            reports.push_back(it->second());
        }
        bool all_pass = true;
        if (all_format == "json") {
            json arr = json::array();
            for (const auto& r : reports) arr.push_back(r.to_json());
            emit(arr, output);
        } else if (all_format == "csv") {
            std::ostringstream os;
            os << "name,pass,seconds\n";
            for (const auto& r : reports)
                os << r.name << "," << (r.pass ? 1 : 0) << "," << r.seconds << "\n";
            if (output.empty() || output == "-") std::cout << os.str();
            else std::ofstream(output) << os.str();
        } else {
            for (const auto& r : reports) std::cout << r.table_line() << "\n";
        }
        for (const auto& r : reports)
            if (!r.pass) {
                std::cout << "witness: " << r.details.dump() << "\n";
                all_pass = false;
            }
        if (!all_pass) throw CLI::RuntimeError(1);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::RuntimeError&) {
        return 1;  // checks failed; witness already emitted
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& ex) {
        std::cout << "witness: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
