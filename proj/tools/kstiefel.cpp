// Command line front end.  Every subcommand reads one JSON document on
// stdin (when it takes input at all) and writes one JSON document on
// stdout.  Exit codes: 0 success (and equality / all checks passing),
// 1 verification failure or non-convergence, 2 malformed or out-of-domain
// input.

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <iterator>
#include <string>

#include "kstiefel/json_io.hpp"
#include "kstiefel/verify.hpp"

namespace {

using nlohmann::json;

json read_stdin_json() {
    std::string blob{std::istreambuf_iterator<char>(std::cin),
                     std::istreambuf_iterator<char>()};
    try {
        return json::parse(blob);
    } catch (const json::exception& e) {
        throw kst::ParseError(std::string("stdin is not valid JSON: ") +
                              e.what());
    }
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

constexpr double kJacobianStep = 1e-4;
constexpr double kJacobianBound = 5e-4;

struct Options {
    std::string field = "C";
    int k = 0;
    int m = 0;
    int n = 0;
    int degree = 120;
    int trials = 500;
    std::uint64_t seed = 0;
    double tol = 1e-8;

    kst::Tolerance tolerance() const { return {tol, tol}; }
    kst::Field parsed_field() const { return kst::field_from_name(field); }
};

int cmd_cayley(const Options& o) {
    kst::CayleyCoords c = kst::cayley_from_json(read_stdin_json());
    emit(kst::stiefel_to_json(kst::cayley(c, o.tolerance())));
    return 0;
}

int cmd_cayley_inv(const Options& o) {
    kst::StiefelPoint p =
        kst::stiefel_from_json(read_stdin_json(), o.tolerance());
    emit(kst::cayley_to_json(kst::cayley_inverse(p, o.tolerance())));
    return 0;
}

int cmd_polar(const Options& o) {
    kst::KMatrix b = kst::matrix_from_json(read_stdin_json());
    kst::PolarFactorization pf = kst::polar_factor(b, o.tolerance());
    emit(json{{"A", kst::matrix_to_json(pf.a)},
              {"Z", kst::matrix_to_json(pf.z)}});
    return 0;
}

int cmd_eigh(const Options& o) {
    kst::KMatrix x = kst::matrix_from_json(read_stdin_json());
    kst::SpectralDecomposition sd = kst::eigh(x, o.tolerance());
    emit(json{{"Q", kst::matrix_to_json(sd.q)}, {"lambda", sd.lambda}});
    return 0;
}

int cmd_exp(const Options&) {
    emit(kst::matrix_to_json(
        kst::exp_matrix(kst::matrix_from_json(read_stdin_json()))));
    return 0;
}

int cmd_filtration_level(const Options& o) {
    kst::StiefelPoint p =
        kst::stiefel_from_json(read_stdin_json(), o.tolerance());
    emit(json{{"level", kst::filtration_level(p, o.tolerance())}});
    return 0;
}

int cmd_stratum_decompose(const Options& o) {
    kst::StiefelPoint p =
        kst::stiefel_from_json(read_stdin_json(), o.tolerance());
    kst::StratumDecomposition d =
        kst::stratum_decompose(p, o.k, o.tolerance());
    if (auto* sc = std::get_if<kst::StratumCoords>(&d)) {
        json out = kst::stratum_to_json(*sc);
        out["status"] = "coords";
        emit(out);
    } else if (auto* low = std::get_if<kst::InLowerStratum>(&d)) {
        emit(json{{"status", "in_lower_stratum"}, {"level", low->level}});
    } else {
        emit(json{{"status", "above_stratum"},
                  {"level", std::get<kst::AboveStratum>(d).level}});
    }
    return 0;
}

int cmd_stratum_reconstruct(const Options& o) {
    kst::StratumCoords s = kst::stratum_from_json(read_stdin_json());
    emit(kst::stiefel_to_json(
        kst::stratum_reconstruct(s, o.n, o.m, o.tolerance())));
    return 0;
}

int cmd_collapse_t(const Options& o) {
    kst::KMatrix m = kst::matrix_from_json(read_stdin_json());
    kst::PolarCollapse c = kst::collapse_polar(m, o.tolerance());
    if (auto* pf = std::get_if<kst::PolarFactorization>(&c))
        emit(json{{"basepoint", false},
                  {"A", kst::matrix_to_json(pf->a)},
                  {"Z", kst::matrix_to_json(pf->z)}});
    else
        emit(json{{"basepoint", true}});
    return 0;
}

int cmd_collapse_cflat(const Options& o) {
    kst::StiefelPoint p =
        kst::stiefel_from_json(read_stdin_json(), o.tolerance());
    kst::CayleyCollapse c = kst::collapse_cayley(p, o.tolerance());
    if (auto* coords = std::get_if<kst::CayleyCoords>(&c)) {
        json out = kst::cayley_to_json(*coords);
        out["basepoint"] = false;
        emit(out);
    } else {
        emit(json{{"basepoint", true}});
    }
    return 0;
}

int cmd_jacobian_check(const Options& o) {
    double dev = kst::jacobian_origin_deviation(o.parsed_field(), o.k, o.m,
                                                kJacobianStep, o.tolerance());
    bool pass = dev <= kJacobianBound;
    emit(json{{"field", o.field},
              {"k", o.k},
              {"m", o.m},
              {"step", kJacobianStep},
              {"bound", kJacobianBound},
              {"max_deviation", dev},
              {"pass", pass}});
    return pass ? 0 : 1;
}

int cmd_series(const Options& o) {
    kst::SeriesComparison cmp =
        kst::series_compare(o.parsed_field(), o.degree);
    emit(kst::series_to_json(cmp));
    return cmp.equal ? 0 : 1;
}

int cmd_verify(const Options& o) {
    std::vector<kst::SuiteReport> reports =
        kst::run_verify(o.parsed_field(), o.trials, o.seed, o.tolerance());
    emit(kst::verify_report_to_json(o.parsed_field(), o.trials, o.seed,
                                    reports));
    for (const kst::SuiteReport& r : reports)
        if (!r.passed()) return 1;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stiefel manifolds over R, C, H: Cayley charts, "
                 "eigenspace strata, collapse maps, series checks"};
    app.require_subcommand(1);
    Options o;

    auto add_field = [&](CLI::App* sc) {
        sc->add_option("--field", o.field, "scalar field: R, C or H")
            ->check(CLI::IsMember({"R", "C", "H"}));
    };
    auto add_tol = [&](CLI::App* sc) {
        sc->add_option("--tol", o.tol,
                       "numerical tolerance (eps_iso and eps_rank)");
    };

    CLI::App* cayley = app.add_subcommand(
        "cayley", "chart coordinates {Y, X} -> Stiefel point");
    add_tol(cayley);

    CLI::App* cayley_inv = app.add_subcommand(
        "cayley-inv", "top-level Stiefel point -> chart coordinates");
    add_tol(cayley_inv);

    CLI::App* polar = app.add_subcommand(
        "polar", "injective matrix -> {A, Z} with A exp(-Z) = input");
    add_tol(polar);

    CLI::App* eigh = app.add_subcommand(
        "eigh", "self-adjoint matrix -> {Q, lambda}");
    add_tol(eigh);

    app.add_subcommand("exp", "square matrix -> its exponential");

    CLI::App* level = app.add_subcommand(
        "filtration-level", "Stiefel point -> {level}");
    add_tol(level);

    CLI::App* sdec = app.add_subcommand(
        "stratum-decompose", "Stiefel point -> stratum coordinates at --k");
    sdec->add_option("--k", o.k, "target level")->required();
    add_tol(sdec);

    CLI::App* srec = app.add_subcommand(
        "stratum-reconstruct",
        "stratum coordinates {psi, Y, X} -> Stiefel point over K^n");
    srec->add_option("--n", o.n, "ambient rank")->required();
    srec->add_option("--m", o.m, "complement dimension")->required();
    add_tol(srec);

    CLI::App* ct = app.add_subcommand(
        "collapse-t", "hom matrix -> basepoint or polar data");
    add_tol(ct);

    CLI::App* cc = app.add_subcommand(
        "collapse-cflat", "Stiefel point -> basepoint or chart coordinates");
    add_tol(cc);

    CLI::App* jac = app.add_subcommand(
        "jacobian-check",
        "finite-difference differential of the composite embedding");
    add_field(jac);
    jac->add_option("--k", o.k, "square block size")->required();
    jac->add_option("--m", o.m, "complement dimension")->required();
    add_tol(jac);

    CLI::App* series = app.add_subcommand(
        "series", "compare stratumwise and product Poincare series");
    add_field(series);
    series->add_option("--degree", o.degree, "truncation degree (<= 512)");

    CLI::App* verify = app.add_subcommand(
        "verify", "run all property suites for one field");
    add_field(verify);
    verify->add_option("--trials", o.trials, "random trials per suite");
    verify->add_option("--seed", o.seed, "base seed");
    add_tol(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*cayley) return cmd_cayley(o);
        if (*cayley_inv) return cmd_cayley_inv(o);
        if (*polar) return cmd_polar(o);
        if (*eigh) return cmd_eigh(o);
        if (app.got_subcommand("exp")) return cmd_exp(o);
        if (*level) return cmd_filtration_level(o);
        if (*sdec) return cmd_stratum_decompose(o);
        if (*srec) return cmd_stratum_reconstruct(o);
        if (*ct) return cmd_collapse_t(o);
        if (*cc) return cmd_collapse_cflat(o);
        if (*jac) return cmd_jacobian_check(o);
        if (*series) return cmd_series(o);
        if (*verify) return cmd_verify(o);
    } catch (const kst::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const kst::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
