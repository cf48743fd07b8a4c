#include "dectk/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dectk/chain_complex.hpp"
#include "dectk/errors.hpp"
#include "dectk/hodge.hpp"
#include "dectk/homology.hpp"
#include "dectk/mesh.hpp"
#include "dectk/poisson.hpp"
#include "dectk/serialize.hpp"
#include "dectk/verify.hpp"
#include "dectk/whitney.hpp"

namespace dectk::cli {

namespace {

struct Config {
    std::string mesh;
    std::string hodge = "galerkin";
    int degree = -1;
    double tol = 0.0;  // 0 keeps each command's default
    int levels = 4;
    bool json = false;
    std::string out_path;
    std::string solution = "sine";
    double min_rate = -1.0;
    std::string cochain_a;
    std::string cochain_b;
};

std::string join_sizes(const std::vector<std::size_t>& v)
{
    std::ostringstream s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s << (i ? " " : "") << v[i];
    }
    return s.str();
}

std::string chain_text(const AbstractComplex& ac, int p, const IntChain& chain)
{
    std::ostringstream s;
    bool first = true;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        if (chain[i] == 0) {
            continue;
        }
        s << (first ? "" : " ") << (chain[i] > 0 ? "+" : "-");
        const Integer mag = chain[i] > 0 ? chain[i] : Integer(-chain[i]);
        if (mag != 1) {
            s << mag;
        }
        s << '[';
        const auto& simplex = ac.simplex(p, i);
        for (std::size_t k = 0; k < simplex.size(); ++k) {
            s << (k ? " " : "") << simplex[k];
        }
        s << ']';
        first = false;
    }
    return first ? "0" : s.str();
}

nlohmann::json chain_json(const IntChain& chain)
{
    nlohmann::json a = nlohmann::json::array();
    for (const auto& v : chain) {
        a.push_back(v.convert_to<long long>());
    }
    return a;
}

// Writes to --out when given, otherwise to the report stream.
void emit(const Config& cfg, std::ostream& out, const std::string& text)
{
    if (cfg.out_path.empty()) {
        out << text;
        if (!text.empty() && text.back() != '\n') {
            out << '\n';
        }
        return;
    }
    std::ofstream f(cfg.out_path);
    if (!f) {
        throw ValidationError("cannot write " + cfg.out_path);
    }
    f << text;
    if (!text.empty() && text.back() != '\n') {
        f << '\n';
    }
}

void check_degree(const AbstractComplex& ac, int p)
{
    if (p < 0 || p > ac.dim()) {
        throw IndexError("degree " + std::to_string(p) + " outside [0, " + std::to_string(ac.dim()) + "]");
    }
}

int cmd_info(const Config& cfg, std::ostream& out)
{
    const GeometricComplex gc = load_mesh_file(cfg.mesh);
    const AbstractComplex ac = abstr(gc);
    std::vector<std::size_t> counts;
    for (int p = 0; p <= ac.dim(); ++p) {
        counts.push_back(ac.count(p));
    }
    if (cfg.json) {
        nlohmann::json j{{"mesh", cfg.mesh},
                         {"dimension", ac.dim()},
                         {"embedding_dimension", gc.embed_dim()},
                         {"counts", counts},
                         {"euler_characteristic", ac.euler_characteristic()},
                         {"mesh_size", mesh_size(gc, ac)},
                         {"fingerprint", fingerprint_hex(ac.fingerprint())}};
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    out << "mesh: " << cfg.mesh << '\n';
    out << "dimension " << ac.dim() << " in R^" << gc.embed_dim() << '\n';
    out << "simplices:";
    for (int p = 0; p <= ac.dim(); ++p) {
        out << ' ' << p << ": " << counts[p];
    }
    out << '\n';
    out << "Euler characteristic: " << ac.euler_characteristic() << '\n';
    out << "mesh size: " << mesh_size(gc, ac) << '\n';
    out << "fingerprint: " << fingerprint_hex(ac.fingerprint()) << '\n';
    return kExitOk;
}

int cmd_betti(const Config& cfg, std::ostream& out)
{
    const AbstractComplex ac = abstr(load_mesh_file(cfg.mesh));
    const ComplexMatrices cm(ac);
    const HomologySummary hs = homology_summary(cm, false);
    if (cfg.json) {
        nlohmann::json torsion = nlohmann::json::array();
        for (const auto& t : hs.torsion) {
            nlohmann::json row = nlohmann::json::array();
            for (const auto& v : t) {
                row.push_back(v.convert_to<long long>());
            }
            torsion.push_back(row);
        }
        out << nlohmann::json{{"betti", hs.betti}, {"torsion", torsion}}.dump(2) << '\n';
        return kExitOk;
    }
    std::ostringstream tors;
    for (std::size_t p = 0; p < hs.torsion.size(); ++p) {
        if (hs.torsion[p].empty()) {
            continue;
        }
        tors << (tors.tellp() > 0 ? ", " : "") << 'H' << p << " = ";
        for (std::size_t k = 0; k < hs.torsion[p].size(); ++k) {
            tors << (k ? " + " : "") << "Z/" << hs.torsion[p][k];
        }
    }
    out << "β = " << join_sizes(hs.betti) << ", torsion: " << (tors.tellp() > 0 ? tors.str() : "none") << '\n';
    return kExitOk;
}

int cmd_generators(const Config& cfg, std::ostream& out)
{
    const AbstractComplex ac = abstr(load_mesh_file(cfg.mesh));
    const ComplexMatrices cm(ac);
    int lo = 0, hi = ac.dim();
    if (cfg.degree >= 0) {
        check_degree(ac, cfg.degree);
        lo = hi = cfg.degree;
    }
    nlohmann::json j = nlohmann::json::array();
    for (int p = lo; p <= hi; ++p) {
        const HomologyGroup g = homology_group(cm, p);
        if (cfg.json) {
            nlohmann::json entry{{"degree", p}, {"betti", g.betti}};
            entry["free"] = nlohmann::json::array();
            for (const auto& c : g.free_generators) {
                entry["free"].push_back(chain_json(c));
            }
            entry["torsion"] = nlohmann::json::array();
            for (std::size_t k = 0; k < g.torsion.size(); ++k) {
                entry["torsion"].push_back(
                    {{"order", g.torsion[k].convert_to<long long>()}, {"chain", chain_json(g.torsion_generators[k])}});
            }
            j.push_back(entry);
            continue;
        }
        out << "H" << p << ": " << g.betti << " free";
        if (!g.torsion.empty()) {
            out << ", " << g.torsion.size() << " torsion";
        }
        out << '\n';
        for (std::size_t k = 0; k < g.free_generators.size(); ++k) {
            out << "  z" << k << " = " << chain_text(ac, p, g.free_generators[k]) << '\n';
        }
        for (std::size_t k = 0; k < g.torsion.size(); ++k) {
            out << "  t" << k << " (order " << g.torsion[k] << ") = " << chain_text(ac, p, g.torsion_generators[k])
                << '\n';
        }
    }
    if (cfg.json) {
        out << j.dump(2) << '\n';
    }
    return kExitOk;
}

int cmd_harmonic(const Config& cfg, std::ostream& out)
{
    const GeometricComplex gc = load_mesh_file(cfg.mesh);
    const AbstractComplex ac = abstr(gc);
    const HodgeComplex hodges(ac, gc, parse_hodge_kind(cfg.hodge));
    int lo = 0, hi = ac.dim();
    if (cfg.degree >= 0) {
        check_degree(ac, cfg.degree);
        lo = hi = cfg.degree;
    }
    std::vector<Cochain> all;
    nlohmann::json dims = nlohmann::json::object();
    for (int p = lo; p <= hi; ++p) {
        const HarmonicBasis hb = cfg.tol > 0.0 ? harmonic_basis(hodges, p, cfg.tol) : harmonic_basis(hodges, p);
        dims[std::to_string(p)] = hb.vectors.size();
        if (!cfg.json) {
            out << "harmonic " << p << "-cochains (" << cfg.hodge << "): dimension " << hb.vectors.size() << '\n';
        }
        all.insert(all.end(), hb.vectors.begin(), hb.vectors.end());
    }
    if (cfg.json) {
        out << nlohmann::json{{"hodge", cfg.hodge}, {"dimensions", dims}}.dump(2) << '\n';
    }
    if (!cfg.out_path.empty()) {
        emit(cfg, out, cochain_basis_json(all, ac));
    }
    return kExitOk;
}

int cmd_hodge(const Config& cfg, std::ostream& out)
{
    const GeometricComplex gc = load_mesh_file(cfg.mesh);
    const AbstractComplex ac = abstr(gc);
    check_degree(ac, cfg.degree);
    const HodgeKind kind = parse_hodge_kind(cfg.hodge);
    const DiscreteHodge h =
        kind == HodgeKind::Galerkin ? galerkin_mass_matrix(ac, gc, cfg.degree) : diagonal_hodge(ac, gc, cfg.degree);
    std::ostringstream s;
    write_coo(s, h.matrix);
    emit(cfg, out, s.str());
    return kExitOk;
}

ManufacturedSolution pick_solution(const std::string& name, int dim)
{
    if (name == "sine") {
        return ManufacturedSolution::sine();
    }
    if (name == "affine") {
        Eigen::VectorXd c(dim);
        for (int i = 0; i < dim; ++i) {
            c[i] = 1.0 + i;
        }
        return ManufacturedSolution::affine_field(0.5, c);
    }
    throw ValidationError("unknown manufactured solution \"" + name + "\" (expected sine or affine)");
}

int cmd_solve(const Config& cfg, std::ostream& out)
{
    const GeometricComplex gc = load_mesh_file(cfg.mesh);
    const AbstractComplex ac = abstr(gc);
    const ManufacturedSolution m = pick_solution(cfg.solution, gc.embed_dim());
    const PoissonSolution sol =
        solve_poisson(ac, gc, parse_hodge_kind(cfg.hodge), m, cfg.tol > 0.0 ? cfg.tol : 1e-12);
    const double l2 = l2_error(ac, gc, sol.values, m.u);
    const double energy = energy_error(ac, gc, sol.values, m.grad);
    if (cfg.json) {
        out << nlohmann::json{{"solution", m.name},       {"hodge", cfg.hodge},     {"dofs", sol.dofs},
                              {"iterations", sol.iterations}, {"residual", sol.residual}, {"l2_error", l2},
                              {"energy_error", energy}}
                   .dump(2)
            << '\n';
    } else {
        out << "u = " << m.name << ", hodge " << cfg.hodge << '\n';
        out << "dofs " << sol.dofs << ", CG iterations " << sol.iterations << ", residual " << sol.residual << '\n';
        out << "L2 error " << l2 << '\n';
        out << "energy error " << energy << '\n';
    }
    if (!cfg.out_path.empty()) {
        emit(cfg, out, cochain_json({0, sol.values}, ac));
    }
    return kExitOk;
}

int cmd_converge(const Config& cfg, std::ostream& out)
{
    const GeometricComplex gc = load_mesh_file(cfg.mesh);
    const HodgeKind kind = parse_hodge_kind(cfg.hodge);
    const ManufacturedSolution m = pick_solution(cfg.solution, gc.embed_dim());
    const ConvergenceReport report = convergence_study(gc, cfg.levels, m, kind, cfg.tol > 0.0 ? cfg.tol : 1e-12);
    out << (cfg.json ? report.json() + "\n" : report.table());
    if (cfg.min_rate < 0.0 || m.affine) {
        return kExitOk;
    }
    const auto& last = report.l2_rates.back();
    if (!last || *last < cfg.min_rate) {
        out << "final L2 rate below " << cfg.min_rate << '\n';
        return kExitFailure;
    }
    return kExitOk;
}

int cmd_cup(const Config& cfg, std::ostream& out)
{
    const GeometricComplex gc = load_mesh_file(cfg.mesh);
    const AbstractComplex ac = abstr(gc);
    const Cochain a = load_cochain_file(cfg.cochain_a, ac);
    const Cochain b = load_cochain_file(cfg.cochain_b, ac);
    emit(cfg, out, cochain_json(cup_product(ac, gc, a, b), ac));
    return kExitOk;
}

int cmd_verify(const Config& cfg, std::ostream& out)
{
    const GeometricComplex gc = load_mesh_file(cfg.mesh);
    VerifyOptions opts;
    if (cfg.tol > 0.0) {
        opts.rw_tol = opts.stokes_tol = opts.stiffness_tol = opts.leibniz_tol = opts.adjoint_tol = cfg.tol;
    }
    const auto results = run_verification(gc, opts);
    const bool ok = std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
    if (cfg.json) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : results) {
            j.push_back({{"check", r.name},
                         {"passed", r.passed},
                         {"measured", r.measured},
                         {"tolerance", r.tolerance},
                         {"detail", r.detail}});
        }
        out << nlohmann::json{{"mesh", cfg.mesh}, {"passed", ok}, {"checks", j}}.dump(2) << '\n';
    } else {
        for (const auto& r : results) {
            out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << std::setprecision(3) << r.measured
                << " (tolerance " << r.tolerance << ")";
            if (!r.detail.empty()) {
                out << " [" << r.detail << "]";
            }
            out << '\n';
        }
        out << (ok ? "all checks passed" : "verification failed") << '\n';
    }
    return ok ? kExitOk : kExitFailure;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Discrete exterior calculus on simplicial meshes", "dectk"};
    app.require_subcommand(1);
    Config cfg;

    auto add_mesh = [&](CLI::App* sub) { sub->add_option("mesh", cfg.mesh, "mesh file (.json or text)")->required(); };
    auto add_hodge = [&](CLI::App* sub) {
        sub->add_option("--hodge", cfg.hodge, "galerkin or diagonal")
            ->check(CLI::IsMember({"galerkin", "diagonal"}));
    };
    auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", cfg.json, "JSON output"); };
    auto add_out = [&](CLI::App* sub) { sub->add_option("--out", cfg.out_path, "output file"); };
    auto add_tol = [&](CLI::App* sub) {
        sub->add_option("--tol", cfg.tol, "tolerance override")->check(CLI::PositiveNumber);
    };

    auto* info = app.add_subcommand("info", "face counts and Euler characteristic");
    add_mesh(info);
    add_json(info);

    auto* betti = app.add_subcommand("betti", "Betti numbers and torsion");
    add_mesh(betti);
    add_json(betti);

    auto* gens = app.add_subcommand("generators", "representative cycles of integer homology");
    add_mesh(gens);
    gens->add_option("--degree", cfg.degree, "homology degree (default: all)")->check(CLI::NonNegativeNumber);
    add_json(gens);

    auto* harm = app.add_subcommand("harmonic", "dimension and basis of harmonic cochains");
    add_mesh(harm);
    harm->add_option("--degree", cfg.degree, "cochain degree (default: all)")->check(CLI::NonNegativeNumber);
    add_hodge(harm);
    add_tol(harm);
    add_json(harm);
    add_out(harm);

    auto* hodge = app.add_subcommand("hodge", "export a Hodge matrix as a coordinate list");
    add_mesh(hodge);
    hodge->add_option("--degree", cfg.degree, "cochain degree")->required()->check(CLI::NonNegativeNumber);
    add_hodge(hodge);
    add_out(hodge);

    auto* solve = app.add_subcommand("solve", "Poisson problem with a manufactured solution");
    add_mesh(solve);
    add_hodge(solve);
    add_tol(solve);
    solve->add_option("--solution", cfg.solution, "sine or affine")->check(CLI::IsMember({"sine", "affine"}));
    add_json(solve);
    add_out(solve);

    auto* conv = app.add_subcommand("converge", "uniform refinement convergence study");
    add_mesh(conv);
    add_hodge(conv);
    add_tol(conv);
    conv->add_option("--levels", cfg.levels, "number of refinements (>= 3)")->check(CLI::Range(3, 12));
    conv->add_option("--solution", cfg.solution, "sine or affine")->check(CLI::IsMember({"sine", "affine"}));
    conv->add_option("--min-rate", cfg.min_rate, "fail if the final L2 rate is lower");
    add_json(conv);

    auto* cup = app.add_subcommand("cup", "cup product of two cochain files");
    add_mesh(cup);
    cup->add_option("a", cfg.cochain_a, "first cochain (JSON)")->required();
    cup->add_option("b", cfg.cochain_b, "second cochain (JSON)")->required();
    add_out(cup);

    auto* verify = app.add_subcommand("verify", "run the invariant suite on a mesh");
    add_mesh(verify);
    add_tol(verify);
    add_json(verify);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*info) {
            return cmd_info(cfg, out);
        }
        if (*betti) {
            return cmd_betti(cfg, out);
        }
        if (*gens) {
            return cmd_generators(cfg, out);
        }
        if (*harm) {
            return cmd_harmonic(cfg, out);
        }
        if (*hodge) {
            return cmd_hodge(cfg, out);
        }
        if (*solve) {
            return cmd_solve(cfg, out);
        }
        if (*conv) {
            return cmd_converge(cfg, out);
        }
        if (*cup) {
            return cmd_cup(cfg, out);
        }
        return cmd_verify(cfg, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

} // namespace dectk::cli
