// rursolve: solve zero-dimensional polynomial systems through a rational
// univariate representation; check emitted documents; benchmark a directory.
//
// Exit codes: 0 ok, 1 internal/runtime error, 2 parse error,
//             3 not zero-dimensional, 4 strategy exhausted, 5 verification refuted.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rur/errors.hpp"
#include "rur/groebner.hpp"
#include "rur/io.hpp"
#include "rur/modular.hpp"
#include "rur/rur.hpp"

namespace {

using namespace rur;

struct SolveOptions {
    std::string file;
    uint64_t prime = 0;  // 0 = rationals
    bool force_qq = false;
    std::string strategy = "certified";
    int64_t bound = 10;
    uint64_t seed = 0;
    bool radical_only = false;
    bool full = false;
    bool verify = false;
    std::string format = "text";
    int metrics = 0;  // 0 off, 1 basic, 2 integer-normalized column too
    std::size_t threads = 1;
    std::string out;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'", 0, 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out, std::ios::binary);
    if (!os) throw Error("cannot write '" + out + "'");
    os << text;
}

StrategyKind strategy_kind(const std::string& s) {
    if (s == "certified") return StrategyKind::certified;
    if (s == "random") return StrategyKind::random;
    if (s == "sequence") return StrategyKind::sequence;
    throw Error("unknown strategy '" + s + "'");
}

struct SolveProduct {
    RurDocument doc;
    std::size_t dimension = 0;
    std::size_t delta = 0;
    double mt_sparsity = 0.0;
    std::optional<RurMetrics> metrics;
};

/// Solve over F_p: Groebner + quotient structure + strategy, all mod p.
SolveProduct solve_prime(const ParsedSystem& sys, const PrimeModulus& p,
                         const SolveOptions& opt) {
    MonomialOrder ord = MonomialOrder::degrevlex(sys.vars.size());
    Fp sample(0, p);
    std::vector<MPoly<Fp>> F;
    for (const auto& zp : sys.polys) F.push_back(embed_poly(zp, ord, sample));
    GroebnerBasis<Fp> gb = buchberger(F, ord);

    SolveProduct prod;
    if (gb.is_unit_ideal()) {
        ReducedRUR<Fp> r;
        r.first = UPoly<Fp>::constant(Fp(1, p));
        r.f0 = r.first;
        r.coords.assign(sys.vars.size(), UPoly<Fp>());
        r.form.assign(sys.vars.size(), 0);
        r.form[0] = 1;
        prod.doc = make_document(r, sys.vars);
        if (opt.metrics) prod.metrics = RurMetrics{};
        return prod;
    }

    std::vector<Monomial> basis = quotient_basis(gb);
    QuotientStructure<Fp> q = multiplication_matrices(gb, basis);
    StrategyResult<Fp> sr = [&] {
        switch (strategy_kind(opt.strategy)) {
            case StrategyKind::certified:
                return strategy_certified(q);
            case StrategyKind::sequence:
                return strategy_sequence_run(q);
            case StrategyKind::random: {
                std::size_t cap = q.dimension * q.dimension * q.nvars();
                for (std::size_t a = 0; a <= cap; ++a) {
                    LinearForm t = strategy_random(q.nvars(), opt.bound, opt.seed + a);
                    RurOutcome<Fp> o = las_vegas_radical_rur(q, t);
                    if (o.success()) return StrategyResult<Fp>{t, std::move(*o.rur), a + 1};
                }
                throw StrategyExhausted("no separating form among " + std::to_string(cap + 1) +
                                        " random draws");
            }
        }
        throw Error("unreachable");
    }();

    ReducedRUR<Fp> emitted = opt.full ? full_ideal_rur(q, sr.form, sr.rur) : sr.rur;
    if (opt.verify) {
        if (auto fail = back_substitution_failure(sys.polys, sys.vars.size(), emitted, sample))
            throw VerificationRefuted(*fail);
    }
    prod.doc = make_document(emitted, sys.vars);
    prod.dimension = q.dimension;
    prod.delta = sr.rur.delta;
    prod.mt_sparsity = form_matrix(q, sr.form).sparsity();
    if (opt.metrics) prod.metrics = metrics(q, sr.form, emitted);
    return prod;
}

/// Solve over the rationals through the multi-modular drive.
SolveProduct solve_rational(const ParsedSystem& sys, const SolveOptions& opt) {
    DriveConfig cfg;
    cfg.strategy = strategy_kind(opt.strategy);
    cfg.seed = opt.seed;
    cfg.bound = opt.bound;
    cfg.threads = opt.threads;
    cfg.want_full = opt.full;
    DriveResult dr = drive(sys.polys, sys.vars.size(), cfg);

    const ReducedRUR<Rat>& emitted = opt.full ? *dr.full : dr.radical;
    SolveProduct prod;
    prod.doc = make_document(emitted, sys.vars);
    prod.dimension = dr.dimension;
    prod.delta = dr.delta;
    prod.mt_sparsity = dr.mt_sparsity;
    if (opt.metrics) {
        RurMetrics m;
        m.matrix_sparsity = dr.mt_sparsity;
        m.form_size = dr.form.size();
        for (int64_t c : dr.form)
            if (c != 0) ++m.form_nonzeros;
        long bs = 0, bi = 0;
        auto absorb = [&](const UPoly<Rat>& f) {
            long a = 0, b = 0;
            detail::poly_bit_metrics(f, a, b);
            bs = std::max(bs, a);
            bi = std::max(bi, b);
        };
        absorb(emitted.first);
        absorb(emitted.f0);
        for (const auto& c : emitted.coords) absorb(c);
        m.bitsize = bs;
        m.bitsize_integer = bi;
        prod.metrics = m;
    }
    return prod;
}

std::string render(const SolveProduct& prod, const SolveOptions& opt) {
    std::ostringstream os;
    if (opt.format == "json") {
        std::string body = to_json(prod.doc);
        if (prod.metrics) {
            nlohmann::json j = nlohmann::json::parse(body);
            j["metrics"]["bitsize"] = prod.metrics->bitsize;
            if (opt.metrics == 2) j["metrics"]["bitsize_integer"] = prod.metrics->bitsize_integer;
            j["metrics"]["mt_sparsity"] = prod.metrics->matrix_sparsity;
            j["metrics"]["form_support"] = std::to_string(prod.metrics->form_nonzeros) + "/" +
                                           std::to_string(prod.metrics->form_size);
            body = j.dump(2) + "\n";
        }
        os << body;
    } else {
        os << to_text(prod.doc);
        if (prod.metrics) {
            os << "bitsize = " << prod.metrics->bitsize;
            if (opt.metrics == 2) os << ", integer-normalized bitsize = " << prod.metrics->bitsize_integer;
            os << "\n";
            os << "M_t sparsity = " << prod.metrics->matrix_sparsity << ", form support = "
               << prod.metrics->form_nonzeros << "/" << prod.metrics->form_size << "\n";
        }
    }
    return os.str();
}

int cmd_solve(const SolveOptions& opt) {
    ParsedSystem sys = parse_system(read_file(opt.file));
    uint64_t prime = opt.prime ? opt.prime : (opt.force_qq ? 0 : sys.field.prime);
    SolveProduct prod =
        prime ? solve_prime(sys, PrimeModulus(prime), opt) : solve_rational(sys, opt);
    write_output(render(prod, opt), opt.out);
    return 0;
}

int cmd_check(const std::string& system_file, const std::string& rur_file) {
    ParsedSystem sys = parse_system(read_file(system_file));
    RurDocument doc = document_from_json(read_file(rur_file));
    if (doc.variables != sys.vars)
        throw ParseError("document variables differ from the system", 0, 0);
    std::optional<std::string> fail;
    if (doc.field.is_rational()) {
        fail = back_substitution_failure(sys.polys, sys.vars.size(), rational_rur_of(doc), Rat());
    } else {
        PrimeModulus p(doc.field.prime);
        fail = back_substitution_failure(sys.polys, sys.vars.size(), prime_rur_of(doc), Fp(0, p));
    }
    if (fail) {
        std::cerr << "refuted: " << *fail << "\n";
        return 5;
    }
    std::cout << "verified\n";
    return 0;
}

int cmd_bench(const std::string& dir, SolveOptions opt) {
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".sys") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw Error("no *.sys files in '" + dir + "'");

    std::ostringstream table;
    table << std::left << std::setw(18) << "system" << std::right << std::setw(5) << "D"
          << std::setw(10) << "type" << std::setw(11) << "strategy" << std::setw(9) << "bitsize"
          << std::setw(12) << "spars(M_t)" << std::setw(11) << "spars(t)" << std::setw(10)
          << "time(s)" << "\n";
    for (const auto& f : files) {
        SolveOptions o = opt;
        o.file = f.string();
        o.metrics = std::max(o.metrics, 1);
        ParsedSystem sys = parse_system(read_file(o.file));
        uint64_t prime = o.prime ? o.prime : (o.force_qq ? 0 : sys.field.prime);
        auto t0 = std::chrono::steady_clock::now();
        SolveProduct prod =
            prime ? solve_prime(sys, PrimeModulus(prime), o) : solve_rational(sys, o);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream spt;
        spt << prod.metrics->form_nonzeros << "/" << prod.metrics->form_size;
        table << std::left << std::setw(18) << f.stem().string() << std::right << std::setw(5)
              << prod.dimension << std::setw(10)
              << (prod.delta == prod.dimension ? "radical" : "multiple") << std::setw(11)
              << o.strategy << std::setw(9) << prod.metrics->bitsize << std::setw(12)
              << std::fixed << std::setprecision(3) << prod.metrics->matrix_sparsity
              << std::setw(11) << spt.str() << std::setw(10) << std::setprecision(2) << secs
              << "\n";
    }
    write_output(table.str(), opt.out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rational univariate representations of zero-dimensional systems"};
    app.require_subcommand(1);

    SolveOptions opt;
    std::string check_system, check_doc, bench_dir;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--prime", opt.prime, "work modulo this prime instead of over QQ");
        c->add_flag("--qq", opt.force_qq, "force the rationals (default for QQ files)");
        c->add_option("--strategy", opt.strategy, "certified|random|sequence")
            ->check(CLI::IsMember({"certified", "random", "sequence"}))
            ->capture_default_str();
        c->add_option("--bound", opt.bound, "coefficient box for the random strategy")
            ->capture_default_str();
        c->add_option("--seed", opt.seed, "seed for the random strategy")->capture_default_str();
        c->add_flag("--radical-only", opt.radical_only, "emit the radical parametrization (default)");
        c->add_flag("--full", opt.full, "emit the full-ideal variant (characteristic polynomial)");
        c->add_flag("--verify", opt.verify, "re-check by exact back-substitution");
        c->add_option("--format", opt.format, "json|text")
            ->check(CLI::IsMember({"json", "text"}))
            ->capture_default_str();
        c->add_option("--threads", opt.threads, "concurrent modular workers")->capture_default_str();
        c->add_option("--out", opt.out, "write output to this path instead of stdout");
        return c->add_option("--metrics", "report size metrics; '=integer' adds the "
                                          "denominator-cleared, content-free column")
            ->expected(0, 1);
    };

    auto* solve = app.add_subcommand("solve", "solve one system file");
    solve->add_option("file", opt.file, "system file")->required()->check(CLI::ExistingFile);
    auto* solve_metrics = add_common(solve);

    auto* check = app.add_subcommand("check", "verify a rur document against a system");
    check->add_option("system", check_system, "system file")->required()->check(CLI::ExistingFile);
    check->add_option("rurdoc", check_doc, "rur-doc/1 JSON file")->required()->check(CLI::ExistingFile);

    auto* bench = app.add_subcommand("bench", "solve every *.sys file in a directory");
    bench->add_option("dir", bench_dir, "directory of system files")
        ->required()
        ->check(CLI::ExistingDirectory);
    auto* bench_metrics = add_common(bench);

    CLI11_PARSE(app, argc, argv);

    auto metric_level = [](const CLI::Option* o) {
        if (!o->count()) return 0;
        for (const auto& r : o->results())
            if (r == "integer") return 2;
        return 1;
    };

    try {
        if (solve->parsed()) {
            if (opt.full && opt.radical_only) throw Error("--full conflicts with --radical-only");
            opt.metrics = metric_level(solve_metrics);
            return cmd_solve(opt);
        }
        if (check->parsed()) return cmd_check(check_system, check_doc);
        if (bench->parsed()) {
            opt.metrics = metric_level(bench_metrics);
            return cmd_bench(bench_dir, opt);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ZeroPolynomial& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const NotZeroDimensional& e) {
        std::cerr << "not zero-dimensional: " << e.what() << "\n";
        return 3;
    } catch (const StrategyExhausted& e) {
        std::cerr << "strategy exhausted: " << e.what() << "\n";
        return 4;
    } catch (const VerificationRefuted& e) {
        std::cerr << "refuted: " << e.what() << "\n";
        return 5;
    } catch (const rur::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
