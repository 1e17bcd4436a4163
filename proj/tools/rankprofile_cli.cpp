// Command line front end: rank profile matrices, decompositions, generators,
// the small-ring laboratory and the base-case benchmark.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <rankprofile/rankprofile.hpp>

namespace rp = rankprofile;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitBudget = 4;

struct Common {
    std::string input = "-";
    std::uint64_t prime = 65521;
    std::string strategy = "lex,rot,rot";
    std::size_t threshold = 64;
    std::string base = "crout";
    std::uint64_t seed = 1;
};

void print_rpm(const rp::SubPermutationMatrix& r) {
    std::cout << r.rank() << '\n';
    for (const auto& [i, j] : r.pivots()) std::cout << i + 1 << ' ' << j + 1 << '\n';
}

void print_perm(const rp::Permutation& p) {
    for (std::size_t s = 0; s < p.size(); ++s) std::cout << (s ? " " : "") << p[s] + 1;
    std::cout << '\n';
}

void print_dense(const rp::ConstMatrixView a, std::uint64_t p) { rp::io::write_dense(std::cout, a, p); }

rp::BlockConfig block_config(const Common& c) {
    return rp::BlockConfig{c.threshold, rp::parse_schedule(c.base), false};
}

rp::PluqDecomposition eliminate(const rp::PrimeField& f, const rp::DenseMatrix& a, const std::string& engine,
                                const Common& c) {
    if (engine == "iterative") return rp::iterative_pluq(f, a, rp::parse_strategy(c.strategy));
    if (engine == "crout") return rp::crout_pluq(f, a);
    if (engine == "tile") return rp::tile_recursive_pluq(f, a, block_config(c));
    throw rp::ParseError("unknown elimination engine '" + engine + "'");
}

void add_input(CLI::App* cmd, Common& c) {
    cmd->add_option("input", c.input, "matrix file (dense or SMS), '-' for stdin")->required();
    cmd->add_option("--prime", c.prime, "modulus for SMS input");
}

void add_elimination(CLI::App* cmd, Common& c) {
    cmd->add_option("--strategy", c.strategy, "search,row-perm,col-perm e.g. lex,rot,rot");
    cmd->add_option("--threshold", c.threshold, "tile recursion base-case threshold");
    cmd->add_option("--base", c.base, "base case: crout, left or right");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rank profile matrices and PLUQ decompositions over prime fields"};
    app.require_subcommand(1);
    Common c;

    std::string engine = "tile";
    auto* rpm = app.add_subcommand("rpm", "print the rank profile matrix as 'r' then 'i j' lines (1-based)");
    add_input(rpm, c);
    add_elimination(rpm, c);
    rpm->add_option("--engine", engine, "oracle, iterative, crout, tile or lowrank");
    rpm->add_option("--seed", c.seed, "seed for the lowrank engine");

    std::string pluq_engine = "tile";
    auto* pluq = app.add_subcommand("pluq", "print r, P, Q (1-based) and the packed factors");
    add_input(pluq, c);
    add_elimination(pluq, c);
    pluq->add_option("--engine", pluq_engine, "iterative, crout or tile");

    std::vector<std::size_t> leading;
    auto* ech = app.add_subcommand("echelon", "column and row echelon forms");
    add_input(ech, c);
    ech->add_option("--leading", leading, "restrict to the leading i x j block")->expected(2);

    bool verify = false;
    auto* leu = app.add_subcommand("leu", "A = Lbar E Ubar with E the rank profile matrix");
    add_input(leu, c);
    leu->add_flag("--verify", verify, "recompose and compare with the input");

    auto* bru = app.add_subcommand("bruhat", "A = V P U with V, U upper triangular");
    add_input(bru, c);
    bru->add_flag("--verify", verify, "recompose and compare with the input");

    auto* xfy = app.add_subcommand("xfy", "A = X F Y with X column and Y row echelon");
    add_input(xfy, c);
    xfy->add_flag("--verify", verify, "recompose and compare with the input");

    std::size_t gm = 8, gn = 8, gr = 4;
    bool sms = false;
    auto* gen = app.add_subcommand("gen", "random matrix with a planted rank profile matrix");
    gen->add_option("--rows", gm);
    gen->add_option("--cols", gn);
    gen->add_option("--rank", gr);
    gen->add_option("--seed", c.seed);
    gen->add_option("--prime", c.prime);
    gen->add_flag("--sms", sms, "write SMS instead of dense");

    bool via_profiles = false;
    auto* low = app.add_subcommand("lowrank", "Monte Carlo rank profile matrix");
    low->add_option("input", c.input)->required();
    low->add_option("--prime", c.prime, "modulus for SMS input")->default_val(rp::kMonteCarloPrime);
    low->add_option("--seed", c.seed);
    low->add_flag("--via-profiles", via_profiles, "row and column profiles first, then the core");

    std::uint64_t modulus = 4;
    std::string sweep = "cex";
    std::size_t trials = 0, brows = 1, bcols = 1;
    auto* ring = app.add_subcommand("ring-lab", "exhaustive checks over Z/nZ");
    ring->add_option("--modulus", modulus);
    ring->add_option("--sweep", sweep, "cex, rpm-2x2 or deltas")->check(CLI::IsMember({"cex", "rpm-2x2", "deltas"}));
    ring->add_option("--trials", trials, "random samples for deltas, 0 for exhaustive");
    ring->add_option("--rows", brows, "rows of B for deltas");
    ring->add_option("--cols", bcols, "columns of B for deltas");
    ring->add_option("--seed", c.seed);

    std::vector<std::string> variants{"crout", "left", "right"};
    std::size_t bn = 256, br = 128, reps = 3;
    bool parallel = false;
    auto* bench = app.add_subcommand("bench", "CSV variant,n,r,reductions,millis for the base-case schedules");
    bench->add_option("--variants", variants)->delimiter(',');
    bench->add_option("--n", bn);
    bench->add_option("--r", br);
    bench->add_option("--reps", reps);
    bench->add_option("--seed", c.seed);
    bench->add_option("--prime", c.prime);
    bench->add_flag("--parallel", parallel, "run variants concurrently");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (*rpm) {
            const auto file = rp::io::read_matrix_file(c.input, c.prime);
            const rp::PrimeField f(file.prime);
            if (engine == "oracle") {
                print_rpm(rp::oracle::rpm(f, file.matrix));
            } else if (engine == "lowrank") {
                print_rpm(rp::lowrank_rpm(f, file.matrix, c.seed));
            } else {
                if (engine == "iterative" && !rp::reveal_claim(rp::parse_strategy(c.strategy)).reveals_rpm)
                    throw rp::PreconditionViolated("strategy " + c.strategy + " does not reveal the rank profile matrix");
                print_rpm(eliminate(f, file.matrix, engine, c).pivoting_matrix());
            }
        } else if (*pluq) {
            const auto file = rp::io::read_matrix_file(c.input, c.prime);
            const rp::PrimeField f(file.prime);
            const auto d = eliminate(f, file.matrix, pluq_engine, c);
            std::cout << d.rank << '\n';
            print_perm(d.rows);
            print_perm(d.cols);
            print_dense(d.packed, file.prime);
        } else if (*ech) {
            const auto file = rp::io::read_matrix_file(c.input, c.prime);
            const rp::PrimeField f(file.prime);
            const auto d = rp::crout_pluq(f, file.matrix);
            const auto e = leading.empty() ? rp::echelon_forms(d)
                                           : rp::echelon_of_leading_submatrix(d, leading[0], leading[1]);
            print_dense(e.column_echelon, file.prime);
            print_dense(e.row_echelon, file.prime);
        } else if (*leu || *bru || *xfy) {
            const auto file = rp::io::read_matrix_file(c.input, c.prime);
            const rp::PrimeField f(file.prime);
            rp::DenseMatrix product;
            if (*leu) {
                const auto x = rp::leu_from_pluq(rp::crout_pluq(f, file.matrix));
                print_dense(x.lbar, file.prime);
                print_dense(x.e.to_dense(), file.prime);
                print_dense(x.ubar, file.prime);
                if (verify) product = x.product(f);
            } else if (*bru) {
                const auto x = rp::bruhat_vpu(f, file.matrix);
                print_dense(x.v, file.prime);
                print_dense(x.p.to_dense(), file.prime);
                print_dense(x.u, file.prime);
                if (verify) product = x.product(f);
            } else {
                const auto g = rp::generalized_bruhat(rp::crout_pluq(f, file.matrix));
                print_dense(g.x, file.prime);
                print_dense(g.f, file.prime);
                print_dense(g.y, file.prime);
                if (verify) product = g.product(f);
            }
            if (verify) {
                const bool exact = product == file.matrix;
                std::cout << (exact ? "verify: exact match" : "verify: MISMATCH") << '\n';
                if (!exact) return kExitPrecondition;
            }
        } else if (*gen) {
            const rp::PrimeField f(c.prime);
            const auto planted = rp::oracle::random_with_profile(f, gm, gn, gr, c.seed, gm * gn <= 4096);
            rp::io::write_matrix(std::cout, {planted.matrix, c.prime, sms ? rp::io::Format::Sms : rp::io::Format::Dense});
        } else if (*low) {
            const auto file = rp::io::read_matrix_file(c.input, c.prime);
            const rp::PrimeField f(file.prime);
            print_rpm(via_profiles ? rp::lowrank_rpm_via_profiles(f, file.matrix, c.seed)
                                   : rp::lowrank_rpm(f, file.matrix, c.seed));
        } else if (*ring) {
            const rp::ring::SmallRing zn(modulus);
            if (sweep == "cex") {
                const bool ok = rp::ring::verify_cex_lemma();
                std::cout << "cex-lemma " << (ok ? "holds" : "FAILS") << '\n';
                return ok ? kExitOk : kExitPrecondition;
            }
            if (sweep == "rpm-2x2") {
                std::size_t unique = 0, total = 0;
                rp::ring::for_each_matrix(zn, 2, 2, [&](const rp::DenseMatrix& a) {
                    ++total;
                    unique += rp::ring::mccoy_rpm_candidates(zn, a).size() == 1;
                });
                std::cout << "matrices " << total << " unique " << unique << '\n';
                return unique == total ? kExitOk : kExitPrecondition;
            }
            const auto rep = rp::ring::verify_delta_lemma(zn, brows, bcols, trials, c.seed);
            const auto cex = rp::ring::spanning_cex_deltas();
            std::cout << "cases " << rep.cases << " violations " << rep.violations << '\n';
            std::cout << "spanning-cex deltas " << cex.d[0] << ' ' << cex.d[1] << ' ' << cex.d[2] << ' ' << cex.d[3]
                      << '\n';
            return rep.ok() ? kExitOk : kExitPrecondition;
        } else if (*bench) {
            std::vector<rp::BaseSchedule> sched;
            for (const auto& v : variants) sched.push_back(rp::parse_schedule(v));
            rp::bench::write_csv(std::cout, rp::bench::run(c.prime, sched, bn, br, c.seed, reps, parallel));
        }
    } catch (const rp::ParseError& e) {
        std::cerr << e.what() << '\n';
        return kExitParse;
    } catch (const rp::BudgetExceeded& e) {
        std::cerr << e.what() << '\n';
        return kExitBudget;
    } catch (const rp::Error& e) {
        std::cerr << e.what() << '\n';
        return kExitPrecondition;
    }
    return kExitOk;
}
