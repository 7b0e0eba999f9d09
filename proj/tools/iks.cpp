// iks: command-line front end.
//
// Exit codes: 0 pass (or plain computation), 1 failed assertion,
// 2 usage / parse / domain error, 3 budget refusal.

#include "iks/error.hpp"
#include "iks/expsum.hpp"
#include "iks/gf.hpp"
#include "iks/laurent.hpp"
#include "iks/lfun.hpp"
#include "iks/polytope.hpp"
#include "iks/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace iks;
using nlohmann::json;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kBudget = 3 };

struct Flags {
    std::uint32_t p = 0;
    unsigned a = 1;
    unsigned n = 1;
    unsigned k = 1;
    Elem b = 1;
    std::vector<std::int64_t> chi;
    std::string poly;
    std::string vertices;
    std::optional<unsigned> kmax;
    std::string out = "table";
    unsigned threads = default_threads();
    bool force = false;
    double budget = kDefaultEnumerationBudget;
    bool timing = false;
    // verify grids
    std::vector<std::uint32_t> primes;
    std::vector<unsigned> ns;
    std::optional<Elem> vb;
    std::string suite;
};

EnumOptions enum_options(const Flags& f) {
    EnumOptions o;
    o.budget = f.budget;
    o.force = f.force;
    o.threads = std::max(1u, f.threads);
    return o;
}

json field_json(const FieldTable& F) {
    return {{"p", F.characteristic()}, {"a", F.degree()}, {"q", F.order()}, {"modulus", F.modulus()},
            {"generator", F.generator()}};
}

std::string field_line(const FieldTable& F) {
    std::ostringstream os;
    os << "F_" << F.characteristic();
    if (F.degree() > 1) os << "^" << F.degree();
    os << "  modulus [";
    for (std::size_t i = 0; i < F.modulus().size(); ++i) os << (i ? " " : "") << F.modulus()[i];
    os << "] (constant term first)  g = " << F.generator();
    return os.str();
}

json value_json(const SumValue& v) {
    json terms = json::array();
    const std::uint32_t p = v.additive_conductor(), m = v.multiplicative_conductor();
    for (std::uint32_t t = 0; t < p; ++t) {
        for (std::uint32_t j = 0; j < m; ++j) {
            if (v.at(t, j) != 0) terms.push_back({t, j, v.at(t, j).get_str()});
        }
    }
    const auto z = v.embed();
    json out{{"additive_conductor", p}, {"multiplicative_conductor", m}, {"terms", terms}, {"complex", {z.real(), z.imag()}},
             {"abs", std::abs(z)}};
    if (m == 1) {
        const CycloRational c = reduce_mod_phi(v);
        json basis = json::array();
        for (const auto& x : c.coefficients()) basis.push_back(x.get_str());
        out["zeta_basis"] = basis;
        if (c.is_rational()) out["integer"] = c.coefficients()[0].get_str();
    }
    return out;
}

std::string value_text(const SumValue& v) {
    std::ostringstream os;
    const auto z = v.embed();
    os << std::setprecision(12) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << " i  (|.| = " << std::abs(z)
       << ")";
    if (v.multiplicative_conductor() == 1) {
        const CycloRational c = reduce_mod_phi(v);
        if (c.is_rational()) os << "  exact " << c.coefficients()[0].get_str();
    }
    return os.str();
}

void print_value(const Flags& f, json j, const SumValue& v, const std::string& title) {
    if (f.out == "json") {
        j["value"] = value_json(v);
        std::cout << j.dump() << "\n";
    } else if (f.out == "csv") {
        std::cout << "t,j,count\n";
        for (std::uint32_t t = 0; t < v.additive_conductor(); ++t) {
            for (std::uint32_t s = 0; s < v.multiplicative_conductor(); ++s) {
                if (v.at(t, s) != 0) std::cout << t << "," << s << "," << v.at(t, s).get_str() << "\n";
            }
        }
    } else {
        std::cout << title << " = " << value_text(v) << "\n";
    }
}

FieldPtr base_field(const Flags& f) {
    if (f.p == 0) throw DomainError("--p is required");
    return make_field(f.p, f.a);
}

CharacterTuple characters(const FieldTable& F, const Flags& f, std::size_t count) {
    if (f.chi.empty()) return CharacterTuple::trivial(count);
    if (f.chi.size() != count) {
        throw DomainError("--chi needs " + std::to_string(count) + " generator exponents, got " + std::to_string(f.chi.size()));
    }
    return CharacterTuple::from(F, f.chi);
}

Elem check_b(const FieldTable& F, Elem b) {
    if (b == 0 || b >= F.order()) throw DomainError("--b must encode a nonzero element of F_" + std::to_string(F.order()));
    return b;
}

void estimate(const Flags& f, double points, const std::string& what) {
    if (f.out != "json") std::cerr << "estimate: " << what << " visits " << points << " points\n";
}

std::string read_source(const std::string& s) {
    std::ifstream in(s);
    if (!in) return s;
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int cmd_field(const Flags& f) {
    const FieldPtr F = base_field(f);
    json j = field_json(*F);
    if (f.k > 1) {
        const ExtensionMaps maps = field_maps(F, f.k);
        j["extension"] = field_json(maps.ext());
        j["extension"]["norm_log_factor"] = maps.norm_log_factor();
    }
    if (f.out == "json") {
        std::cout << j.dump() << "\n";
    } else {
        std::cout << field_line(*F) << "\n";
        if (f.k > 1) {
            const ExtensionMaps maps = field_maps(F, f.k);
            std::cout << "extension " << field_line(maps.ext()) << "  N(G) = g^" << maps.norm_log_factor() << "\n";
        }
    }
    return kPass;
}

int cmd_gauss(const Flags& f) {
    const FieldPtr F = base_field(f);
    const CharacterTuple chi = characters(*F, f, 1);
    const SumValue g = gauss_sum(*F, chi.index[0]);
    json j{{"field", field_json(*F)}, {"chi", chi.index}};
    print_value(f, j, g, "G(chi_" + std::to_string(chi.index[0]) + ")");
    return kPass;
}

int cmd_sum(const Flags& f) {
    const FieldPtr F = base_field(f);
    check_b(*F, f.b);
    const CharacterTuple chi = characters(*F, f, f.n + 1);
    const ExtensionMaps maps = field_maps(F, f.k);
    estimate(f, std::pow(static_cast<double>(maps.ext().order()) - 1, f.n), "enumeration");
    const SumValue s = kloosterman_sum(maps, f.n, f.b, chi, enum_options(f));
    json j{{"field", field_json(*F)}, {"n", f.n}, {"k", f.k}, {"b", f.b}, {"chi", chi.index}};
    if (f.out == "table") std::cout << field_line(*F) << "\n";
    print_value(f, j, s, "S_" + std::to_string(f.n) + " over F_" + std::to_string(maps.ext().order()));
    return kPass;
}

int cmd_toric(const Flags& f) {
    const FieldPtr F = base_field(f);
    LaurentPoly poly;
    if (f.poly.empty()) {
        poly = inverted_kloosterman_laurent(*F, f.n, check_b(*F, f.b));
    } else {
        poly = parse_laurent(read_source(f.poly), *F);
    }
    const CharacterTuple chi = characters(*F, f, poly.n_vars);
    const ExtensionMaps maps = field_maps(F, f.k);
    const double pts = std::pow(static_cast<double>(maps.ext().order()) - 1, poly.n_vars);
    SumValue s;
    if (f.poly.empty() && chi.all_trivial() && pts > kDefaultEnumerationBudget) {
        estimate(f, std::pow(static_cast<double>(maps.ext().order()) - 1, f.n), "fibered enumeration");
        s = inverted_kloosterman_toric_sum(maps, f.n, f.b, enum_options(f));
    } else {
        estimate(f, pts, "enumeration");
        s = toric_sum(maps, poly, chi, enum_options(f));
    }
    json j{{"field", field_json(*F)}, {"k", f.k}, {"poly", json::parse(to_json(poly))}, {"chi", chi.index}};
    if (f.out == "table") std::cout << field_line(*F) << "\nf = " << to_text(poly) << "\n";
    print_value(f, j, s, "S*_" + std::to_string(f.k));
    return kPass;
}

int cmd_lfun(const Flags& f) {
    const FieldPtr F = base_field(f);
    check_b(*F, f.b);
    const EnumOptions opts = enum_options(f);
    estimate(f, std::pow(std::pow(static_cast<double>(F->order()), 2 * f.n) - 1, f.n), "largest enumeration (k = 2n)");
    const LFactorization L = compute_lfunction(F, f.n, f.b, opts);
    std::vector<unsigned> extra;
    if (f.kmax) {
        for (unsigned k = 2 * f.n + 1; k <= *f.kmax; ++k) extra.push_back(k);
    }
    const auto held = heldout_check(L, F, extra, opts);
    bool ok = true;
    for (const auto& h : held) ok = ok && h.match;
    if (f.out == "json") {
        json j = json::parse(to_json(L, held));
        j["field"] = field_json(*F);
        std::cout << j.dump() << "\n";
    } else if (f.out == "csv") {
        std::cout << "x,y,y_exact\n";
        for (const auto& v : L.newton_polygon) std::cout << v.x << "," << v.y.get_d() << "," << v.y.get_str() << "\n";
    } else {
        std::cout << field_line(*F) << "\n";
        std::cout << "n = " << f.n << "  b = " << f.b << "  L^" << (L.sign > 0 ? "+1" : "-1") << " = ";
        for (const auto& t : L.trivial) std::cout << "(1 - " << t.root.get_str() << "T)^" << t.multiplicity << " ";
        std::cout << "P(T)\nP(T) coefficients:";
        for (const auto& c : L.P) {
            if (c.is_rational()) {
                std::cout << " " << c.coefficients()[0].get_str();
            } else {
                const auto z = c.embed();
                std::cout << " (" << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i)";
            }
        }
        std::cout << "\nslopes:";
        for (const auto& s : L.slopes) std::cout << " " << s.slope.get_str() << " x" << s.length;
        std::cout << "\n|alpha|:";
        for (auto z : L.complex_roots) std::cout << " " << std::abs(z);
        std::cout << "  (q^{n/2} = " << std::pow(static_cast<double>(L.q), f.n / 2.0) << ")\n";
        for (const auto& h : held) std::cout << "held-out k = " << h.k << ": " << (h.match ? "match" : "MISMATCH") << "\n";
    }
    return ok ? kPass : kFail;
}

int cmd_polytope(const Flags& f) {
    PolytopeData P;
    std::optional<IkPolytope> ik;
    if (!f.vertices.empty()) {
        P = build_polytope(parse_vertices_json(read_source(f.vertices)));
    } else if (!f.poly.empty()) {
        const FieldPtr F = base_field(f);
        P = build_polytope(parse_laurent(read_source(f.poly), *F));
    } else {
        ik = ik_polytope(f.n);
        P = ik->poly;
    }
    const HodgeData h = hodge_data(P, f.kmax, kDefaultBoxBudget * (f.force ? 1e6 : 1), std::max(1u, f.threads));
    json j = json::parse(to_json(P, h));
    if (ik) {
        j["det_M1"] = determinant(ik->M1).get_str();
        j["det_M2"] = determinant(ik->M2).get_str();
        if (f.p != 0) {
            const FieldPtr F = base_field(f);
            const auto r = facial_ordinary(inverted_kloosterman_laurent(*F, f.n, 1), f.p);
            j["p"] = f.p;
            j["nondegenerate"] = (f.n + 1) % f.p != 0;
            j["ordinary"] = r.ordinary;
        }
    }
    if (f.out == "json") {
        std::cout << j.dump() << "\n";
    } else if (f.out == "csv") {
        std::cout << polygon_csv(h);
    } else {
        std::cout << "dim " << P.dim << "  vertices " << P.vertices.size() << "  facets " << P.facets.size() << "  D = " << h.D
                  << "\n";
        for (const auto& fc : P.facets) {
            std::cout << "  facet normal [";
            for (std::size_t i = 0; i < fc.normal.size(); ++i) std::cout << (i ? " " : "") << fc.normal[i];
            std::cout << "] <= " << fc.offset << (P.simplicial(fc) ? "  simplicial" : "") << "\n";
        }
        std::cout << "W:";
        for (const auto& w : h.W) std::cout << " " << w.get_str();
        std::cout << "\nH:";
        for (const auto& x : h.H) std::cout << " " << x.get_str();
        std::cout << "\n(dim)! Vol = " << h.normalized_volume.get_str() << "\n";
        if (j.contains("det_M1")) std::cout << "det M1 = " << j["det_M1"].get<std::string>() << "  det M2 = " << j["det_M2"].get<std::string>() << "\n";
        if (j.contains("ordinary")) {
            std::cout << "p = " << f.p << ": " << (j["nondegenerate"].get<bool>() ? "non-degenerate" : "degenerate") << ", "
                      << (j["ordinary"].get<bool>() ? "ordinary" : "not ordinary") << "\n";
        }
    }
    return kPass;
}

int cmd_verify(const Flags& f) {
    VerifyOptions o;
    o.primes = f.primes;
    o.ns = f.ns;
    o.b = f.vb;
    o.kmax = f.kmax;
    o.enumeration = enum_options(f);
    o.timing = f.timing;
    const VerifyReport r = run_suite(f.suite, o);
    if (f.out == "json") {
        std::cout << to_json(r, f.timing) << "\n";
    } else if (f.out == "csv") {
        std::cout << to_csv(r, f.timing);
    } else {
        std::cout << to_table(r, f.timing);
    }
    return r.passed() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact inverted Kloosterman sums, their L-functions and Newton polyhedra"};
    app.require_subcommand(1);
    Flags f;

    auto common = [&](CLI::App* s) {
        s->add_option("--out", f.out, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
        s->add_option("--threads", f.threads, "Worker threads");
        s->add_flag("--force", f.force, "Ignore the enumeration budget");
        s->add_option("--budget", f.budget, "Largest number of points one enumeration may visit");
    };
    auto field_opts = [&](CLI::App* s, bool required) {
        auto* o = s->add_option("--p", f.p, "Characteristic");
        if (required) o->required();
        s->add_option("--a", f.a, "Degree of the base field over F_p");
    };

    auto* field = app.add_subcommand("field", "Field tables: modulus, generator, extension data");
    field_opts(field, true);
    field->add_option("--k", f.k, "Also build F_{q^k}");
    common(field);

    auto* gauss = app.add_subcommand("gauss", "Gauss sum G(chi)");
    field_opts(gauss, true);
    gauss->add_option("--chi", f.chi, "Generator exponent of chi")->delimiter(',');
    common(gauss);

    auto* sum = app.add_subcommand("sum", "Inverted Kloosterman sum S_n(chi, b) over F_{q^k}");
    field_opts(sum, true);
    sum->add_option("--n", f.n, "Number of free variables")->check(CLI::PositiveNumber);
    sum->add_option("--k", f.k, "Extension degree")->check(CLI::PositiveNumber);
    sum->add_option("--b", f.b, "Encoded nonzero element of F_q");
    sum->add_option("--chi", f.chi, "n+1 generator exponents, comma separated")->delimiter(',');
    common(sum);

    auto* toric = app.add_subcommand("toric", "Toric exponential sum of a Laurent polynomial");
    field_opts(toric, true);
    toric->add_option("--poly", f.poly, "Polynomial (text or JSON, inline or file); default the auxiliary polynomial");
    toric->add_option("--n", f.n, "n for the auxiliary polynomial")->check(CLI::PositiveNumber);
    toric->add_option("--b", f.b, "b for the auxiliary polynomial");
    toric->add_option("--k", f.k, "Extension degree")->check(CLI::PositiveNumber);
    toric->add_option("--chi", f.chi, "One generator exponent per variable")->delimiter(',');
    common(toric);

    auto* lfun = app.add_subcommand("lfun", "L-function of the untwisted sums S_{k,n}(b)");
    field_opts(lfun, true);
    lfun->add_option("--n", f.n, "n")->check(CLI::PositiveNumber);
    lfun->add_option("--b", f.b, "Encoded nonzero element of F_q");
    lfun->add_option("--kmax", f.kmax, "Check held-out power sums for k = 2n+1..kmax");
    common(lfun);

    auto* polytope = app.add_subcommand("polytope", "Newton polyhedron, weights and Hodge numbers");
    field_opts(polytope, false);
    polytope->add_option("--n", f.n, "Auxiliary polytope for this n (default)")->check(CLI::PositiveNumber);
    polytope->add_option("--poly", f.poly, "Newton polyhedron of this polynomial (needs --p)");
    polytope->add_option("--vertices", f.vertices, "Points as {\"vertices\": [...]} (inline or file)");
    polytope->add_option("--kmax", f.kmax, "Largest weight numerator k to count");
    common(polytope);

    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", f.suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
    verify->add_option("--p", f.primes, "Primes, comma separated")->delimiter(',');
    verify->add_option("--n", f.ns, "Values of n, comma separated")->delimiter(',');
    verify->add_option("--b", f.vb, "Restrict to one b");
    verify->add_option("--kmax", f.kmax, "Largest k (extension or held-out degree)");
    verify->add_flag("--timing", f.timing, "Report per-case runtimes");
    common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    try {
        if (*field) return cmd_field(f);
        if (*gauss) return cmd_gauss(f);
        if (*sum) return cmd_sum(f);
        if (*toric) return cmd_toric(f);
        if (*lfun) return cmd_lfun(f);
        if (*polytope) return cmd_polytope(f);
        if (*verify) return cmd_verify(f);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kBudget;
    } catch (const VerificationFailure& e) {
        std::cerr << "verification failed: " << e.what() << "\n";
        return kFail;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
