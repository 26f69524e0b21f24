// Command-line front end for the q-Brauer kernel.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <qbrauer/cellular.hpp>
#include <qbrauer/diagrams.hpp>
#include <qbrauer/qbrauer.hpp>
#include <qbrauer/verify.hpp>

using nlohmann::json;
using namespace qbr;

namespace {

struct Options {
    int n = 4;
    int k = 0;
    int N = 0;  // 0: generic r
    std::string field = "Q";
    std::string q0, r0;
    std::string sigma;
    std::string order = "largest";
    std::string suite;
    std::string x_file, y_file;
    std::string diagram;
    std::string format = "text";
    std::string output;
    long samples = 0;
    std::uint64_t seed = 1;
};

int fail_input(const std::string& code, const std::string& msg) {
    std::cerr << json{{"error", code}, {"message", msg}}.dump() << "\n";
    return 2;
}

AlgebraContext make_ctx(const Options& o) {
    return o.N == 0 ? AlgebraContext::generic(o.n) : AlgebraContext::integral(o.n, o.N);
}

Field parse_field(const std::string& s) {
    if (s == "Q" || s == "rationals" || s == "0") return Field::rationals();
    std::string t = s.rfind("F_", 0) == 0 ? s.substr(2) : s;
    for (char c : t)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw qbr::ParseError("bad field '" + s + "'");
    unsigned long p = std::stoul(t);
    if (p < 2) throw qbr::ParseError("bad field '" + s + "'");
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw qbr::ParseError("field characteristic " + t + " is not prime");
    return Field::prime(p);
}

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qbr::ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw qbr::ParseError(path + ": " + e.what());
    }
}

/// Diagram from a JSON file or an inline JSON string.
Diagram read_diagram(const std::string& arg) {
    json j;
    std::ifstream in(arg);
    try {
        j = in ? json::parse(in) : json::parse(arg);
    } catch (const json::exception& e) {
        throw qbr::ParseError("diagram: " + std::string(e.what()));
    }
    return diagram_from_json(j);
}

std::string scalar_csv(const Scalar& s) {
    std::string t = s.to_string();
    return "\"" + t + "\"";
}

int cmd_dim(const Options& o, std::ostream& out) {
    const int n = o.n;
    mpz_class total = double_factorial_odd(n);
    std::vector<long> counted(n / 2 + 1, 0);
    for (auto& d : DiagramIndex::get(n).all()) ++counted[d.layer()];
    json layers = json::array();
    for (int k = 0; 2 * k <= n; ++k) {
        mpz_class t = transversal_count(n, k), f = 1;
        for (int i = 2; i <= n - 2 * k; ++i) f *= i;
        layers.push_back({{"k", k}, {"transversal", t.get_str()}, {"hecke", f.get_str()},
                          {"count", mpz_class(t * t * f).get_str()}, {"enumerated", counted[k]}});
    }
    if (o.format == "json") {
        out << json{{"n", n}, {"dim", total.get_str()}, {"layers", layers}}.dump(2) << "\n";
        return 0;
    }
    out << total.get_str() << "\n";
    for (auto& l : layers)
        out << "k=" << l["k"].get<int>() << " transversal=" << l["transversal"].get<std::string>()
            << " hecke=" << l["hecke"].get<std::string>() << " count=" << l["count"].get<std::string>()
            << " enumerated=" << l["enumerated"].get<long>() << "\n";
    return 0;
}

int cmd_mul(const Options& o, std::ostream& out) {
    json jx = read_json(o.x_file), jy = read_json(o.y_file);
    AlgebraContext ctx = context_from_json(jx);
    if (context_from_json(jy).version_json() != ctx.version_json()) throw SizeMismatch("element versions differ");
    QBrauerElement z = product(ctx, element_from_json(jx), element_from_json(jy));
    out << element_to_json(ctx, z).dump(2) << "\n";
    return 0;
}

int cmd_table(const Options& o, std::ostream& out) {
    AlgebraContext ctx = make_ctx(o);
    out << "left,right,out,coeff\n";
    for (auto& e : structure_table(ctx))
        out << e.left << "," << e.right << "," << e.out << "," << scalar_csv(e.coeff) << "\n";
    return 0;
}

int cmd_straighten(const Options& o, std::ostream& out) {
    AlgebraContext ctx = make_ctx(o);
    Perm sigma = parse_perm(o.n, o.sigma);
    DescentOrder ord = o.order == "smallest" ? DescentOrder::Smallest : DescentOrder::Largest;
    auto terms = straighten(ctx, sigma, o.k, ord);
    if (o.format == "json") {
        json a = json::array();
        for (auto& t : terms)
            a.push_back({{"coeff", to_json(t.coeff)}, {"w", chain_string(t.w)}, {"pi", chain_string(t.pi)}});
        out << json{{"n", o.n}, {"k", o.k}, {"sigma", chain_string(sigma)}, {"terms", a}}.dump(2) << "\n";
        return 0;
    }
    for (auto& t : terms)
        out << t.coeff.to_string() << " | " << chain_string(t.w) << " | " << chain_string(t.pi) << "\n";
    return 0;
}

int cmd_decompose(const Options& o, std::ostream& out) {
    Diagram d = read_diagram(o.diagram);
    ReducedExpression re = decompose(d);
    json j{{"n", d.n()},
           {"k", re.k},
           {"w1", chain_string(re.w1)},
           {"wd", chain_string(re.wd)},
           {"w2", chain_string(re.w2)},
           {"lengths", {re.w1.length(), re.wd.length(), re.w2.length()}},
           {"length", re.length()}};
    if (o.format == "json") {
        out << j.dump(2) << "\n";
        return 0;
    }
    out << d.ascii() << "k=" << re.k << "\nw1=" << j["w1"].get<std::string>() << " (" << re.w1.length() << ")\n"
        << "wd=" << j["wd"].get<std::string>() << " (" << re.wd.length() << ")\n"
        << "w2=" << j["w2"].get<std::string>() << " (" << re.w2.length() << ")\n"
        << "length=" << re.length() << "\n";
    return 0;
}

int cmd_phi(const Options& o, std::ostream& out) {
    AlgebraContext ctx = make_ctx(o);
    if (o.k < 0 || 2 * o.k > o.n) throw RangeError("k out of range");
    out << "row,col,value\n";
    for (auto& e : phi_table(ctx, o.k)) {
        std::string v = hecke_to_json(e.value).dump();
        std::string esc;
        for (char c : v) esc += c == '"' ? std::string("\"\"") : std::string(1, c);
        out << e.row << "," << e.col << ",\"" << esc << "\"\n";
    }
    return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
    std::vector<Report> reps;
    if (o.suite == "relations") reps.push_back(relations_suite(make_ctx(o)));
    else if (o.suite == "lemmas") reps.push_back(lemmas_suite(make_ctx(o)));
    else if (o.suite == "oracle") {
        if (o.N == 0) throw RangeError("the oracle suite needs --N");
        reps.push_back(oracle_suite(o.n, o.N, o.samples, o.seed));
    } else if (o.suite == "cell") reps = cell_suite(make_ctx(o), o.samples, o.seed);
    else if (o.suite == "involution") reps = involution_suite(make_ctx(o), o.samples, o.seed);
    else throw qbr::ParseError("unknown suite '" + o.suite + "'");
    bool ok = true;
    json all = json::array();
    for (auto& r : reps) {
        ok = ok && r.ok();
        all.push_back(r.to_json());
    }
    if (o.format == "json") {
        out << (all.size() == 1 ? all[0] : all).dump(2) << "\n";
    } else {
        for (auto& r : reps) {
            out << r.text() << "\n";
            if (r.params.contains("identities"))
                for (auto& [name, v] : r.params["identities"].items())
                    out << "  " << name << ": " << v["tested"].get<long>() - v["failed"].get<long>() << "/"
                        << v["tested"].get<long>() << "\n";
            if (r.params.contains("informational"))
                for (auto& [name, v] : r.params["informational"].items())
                    out << "  [info] " << name << " holds " << v["holds"].get<long>() << "/"
                        << v["tested"].get<long>() << "\n";
            for (auto& f : r.failures) out << "  failure " << f.dump() << "\n";
        }
    }
    return ok ? 0 : 1;
}

int cmd_qh(const Options& o, std::ostream& out) {
    Field f = parse_field(o.field);
    FieldValue q0 = FieldValue::parse(f, o.q0);
    QhResult res = o.N != 0 ? is_quasi_hereditary_integral(o.n, q0, o.N)
                            : is_quasi_hereditary(o.n, q0, FieldValue::parse(f, o.r0));
    if (o.format == "json") {
        out << json{{"n", o.n}, {"field", f.name()}, {"quasi_hereditary", res.value},
                    {"e", res.e ? json(*res.e) : json(nullptr)}, {"cap", res.cap}, {"explanation", res.explanation}}
                   .dump(2)
            << "\n";
        return 0;
    }
    out << res.explanation << "\n";
    return 0;
}

int cmd_simples(const Options& o, std::ostream& out) {
    Field f = parse_field(o.field);
    FieldValue q0 = FieldValue::parse(f, o.q0);
    auto e = e_of_q(q0, o.n + 1);
    auto idx = simple_module_index(o.n, q0);
    if (o.format == "json") {
        json a = json::array();
        for (auto& c : idx) a.push_back({{"vertical", o.n - 2 * c.k}, {"k", c.k}, {"lambda", c.lambda}});
        out << json{{"n", o.n}, {"e", e ? json(*e) : json(nullptr)}, {"indices", a}}.dump(2) << "\n";
        return 0;
    }
    out << (e ? "e(q)=" + std::to_string(*e) : "e(q) > " + std::to_string(o.n + 1)) << "\n";
    for (auto& c : idx) out << index_string(o.n, c) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact kernel for the q-Brauer algebra Br_n(r,q)"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* s) {
        s->add_option("-n,--n", o.n, "number of strands")->check(CLI::Range(1, kMaxN));
        s->add_option("--N", o.N, "integral version r = q^N (0: generic r)");
        s->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        s->add_option("-o,--output", o.output, "output file (default stdout)");
    };
    auto* dim = app.add_subcommand("dim", "dimension and layer counts");
    common(dim);
    auto* mul = app.add_subcommand("mul", "product of two element JSON files");
    mul->add_option("x", o.x_file)->required();
    mul->add_option("y", o.y_file)->required();
    common(mul);
    auto* table = app.add_subcommand("table", "structure constants as CSV");
    common(table);
    auto* str = app.add_subcommand("straighten", "expand g_sigma e_(k) in the basis");
    common(str);
    str->add_option("--sigma", o.sigma, "permutation, chain notation or one-line")->required();
    str->add_option("-k,--k", o.k, "layer")->required();
    str->add_option("--order", o.order, "descent order")->check(CLI::IsMember({"largest", "smallest"}));
    auto* dec = app.add_subcommand("decompose", "reduced expression of a diagram");
    common(dec);
    dec->add_option("diagram", o.diagram, "diagram JSON file or inline JSON")->required();
    auto* phi = app.add_subcommand("phi", "phi_k table as CSV");
    common(phi);
    phi->add_option("-k,--k", o.k, "layer")->required();
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    common(ver);
    ver->add_option("suite", o.suite, "relations|lemmas|oracle|cell|involution")
        ->required()
        ->check(CLI::IsMember({"relations", "lemmas", "oracle", "cell", "involution"}));
    ver->add_option("--samples", o.samples, "random pairs (0: exhaustive)");
    ver->add_option("--seed", o.seed, "seed for sampled suites");
    auto* qh = app.add_subcommand("qh", "quasi-heredity decision");
    common(qh);
    qh->add_option("--field", o.field, "Q or a prime p");
    qh->add_option("--q0", o.q0)->required();
    qh->add_option("--r0", o.r0);
    auto* sim = app.add_subcommand("simples", "simple-module index set");
    common(sim);
    sim->add_option("--field", o.field, "Q or a prime p");
    sim->add_option("--q0", o.q0)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail_input("UsageError", e.what());
    }

    std::ofstream file;
    if (!o.output.empty()) {
        file.open(o.output);
        if (!file) return fail_input("IOError", "cannot open " + o.output);
    }
    std::ostream& out = o.output.empty() ? std::cout : file;
    try {
        if (*dim) return cmd_dim(o, out);
        if (*mul) return cmd_mul(o, out);
        if (*table) return cmd_table(o, out);
        if (*str) return cmd_straighten(o, out);
        if (*dec) return cmd_decompose(o, out);
        if (*phi) return cmd_phi(o, out);
        if (*ver) return cmd_verify(o, out);
        if (*qh) {
            if (o.N == 0 && o.r0.empty()) throw qbr::ParseError("qh needs --r0 (or --N)");
            return cmd_qh(o, out);
        }
        if (*sim) return cmd_simples(o, out);
    } catch (const qbr::Error& e) {
        return fail_input(e.code(), e.what());
    } catch (const json::exception& e) {
        return fail_input("ParseError", e.what());
    } catch (const std::invalid_argument& e) {
        return fail_input("ParseError", e.what());
    } catch (const std::out_of_range& e) {
        return fail_input("RangeError", e.what());
    }
    return 0;
}
