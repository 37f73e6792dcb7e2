// Batch front end: each subcommand reads the previous stage's JSON and
// writes its own.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "ndflow/json_io.hpp"
#include "ndflow/ndflow.hpp"

namespace {

using ndflow::io::json;

struct Options {
    std::string input, second, out, box, x_path, float_csv, vector;
    int t_bound = 8;
    int cert_bound = 0;
    unsigned seed = 1;
    bool no_verify = false;
};

ndflow::Box parse_box(const std::string& text) {
    std::vector<long> lo, hi;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto colon = part.find(':');
        try {
            if (colon == std::string::npos) throw std::invalid_argument("missing ':'");
            std::size_t used = 0;
            long a = std::stol(part.substr(0, colon), &used);
            if (used != colon) throw std::invalid_argument("junk");
            std::string rest = part.substr(colon + 1);
            long b = std::stol(rest, &used);
            if (used != rest.size()) throw std::invalid_argument("junk");
            if (a > b) throw ndflow::ParseError("box bound " + part + " has lo > hi");
            lo.push_back(a);
            hi.push_back(b);
        } catch (const std::logic_error&) {
            throw ndflow::ParseError("box must look like lo1:hi1,lo2:hi2,... (got '" + text + "')");
        }
    }
    if (lo.empty()) throw ndflow::ParseError("empty box");
    return ndflow::Box(lo, hi);
}

void emit(const Options& o, const json& j) {
    if (o.out.empty())
        std::cout << j.dump(2) << "\n";
    else
        ndflow::io::write_json_file(o.out, j);
}

ndflow::DnnlOptions dnnl_options(const Options& o) {
    ndflow::DnnlOptions d;
    d.t_bound = o.t_bound;
    d.certificates.cert_bound = o.cert_bound;
    return d;
}

int cmd_analyze(const Options& o) {
    auto sys = ndflow::io::system_from_json(ndflow::io::read_json_file(o.input));
    auto ann = ndflow::annihilator(sys);
    auto aut = ndflow::autonomy_report(sys);
    json out{{"n", sys.n()}, {"q", sys.q()}, {"autonomous", aut.autonomous}};
    json gens = json::array();
    for (const auto& g : ann.groebner_generators()) gens.push_back(ndflow::to_string(g[0]));
    out["annihilator"] = gens;
    if (!aut.warning.empty()) {
        out["warning"] = aut.warning;
        std::cerr << "warning: " << aut.warning << "\n";
    }
    if (aut.autonomous) {
        auto norm = ndflow::dnnl_module(sys, dnnl_options(o));
        out["d"] = norm.d;
        bool identity_ok = true;
        try {
            ndflow::extract_certificates(ann, norm.d, dnnl_options(o).certificates);
        } catch (const ndflow::PreconditionError&) {
            identity_ok = false;
        }
        out["strongly_relevant_without_transform"] = identity_ok;
        out["T"] = ndflow::io::transform_to_json(norm.T);
    } else {
        out["d"] = sys.n();
        std::cerr << "system is not autonomous; the realization pipeline does not apply\n";
    }
    emit(o, out);
    return 0;
}

int cmd_normalize(const Options& o) {
    auto sys = ndflow::io::system_from_json(ndflow::io::read_json_file(o.input));
    auto norm = ndflow::dnnl_module(sys, dnnl_options(o));
    emit(o, ndflow::io::normalization_to_json(sys, norm));
    return 0;
}

int cmd_regularize(const Options& o) {
    json in = ndflow::io::read_json_file(o.input);
    const int n = ndflow::io::field<int>(in, "n"), q = ndflow::io::field<int>(in, "q");
    if (in.contains("transformed_R")) {
        ndflow::EquationModule original(n, q, ndflow::io::matrix_from_json(in.at("original_R"), n, q).row_list());
        ndflow::EquationModule transformed(n, q, ndflow::io::matrix_from_json(in.at("transformed_R"), n, q).row_list());
        ndflow::FirstOrderRealization real(transformed, ndflow::io::field<int>(in, "d"),
                                           ndflow::io::certificates_from_json(in.at("certificates"), n));
        emit(o, ndflow::io::realization_to_json(original, ndflow::io::transform_from_json(in.at("T")), real));
    } else {
        auto sys = ndflow::io::system_from_json(in);
        if (!ndflow::is_autonomous(sys)) throw ndflow::PreconditionError("system is not autonomous; no realization exists");
        auto norm = ndflow::dnnl_module(sys, dnnl_options(o));
        emit(o, ndflow::io::realization_to_json(sys, norm.T, ndflow::build_realization(norm)));
    }
    return 0;
}

int cmd_solve(const Options& o) {
    auto loaded = ndflow::io::realization_from_json(ndflow::io::read_json_file(o.input));
    ndflow::Box box = parse_box(o.box);
    std::optional<ndflow::TrajectoryWindow> x;
    if (!o.x_path.empty()) x = ndflow::io::trajectory_from_json(ndflow::io::read_json_file(o.x_path));
    auto sol = ndflow::solve_with_realization(loaded.original, loaded.T, loaded.realization, box, x, o.seed, false);
    emit(o, ndflow::io::trajectory_to_json(sol.w));
    if (!o.float_csv.empty()) {
        std::ofstream csv(o.float_csv);
        csv << ndflow::io::trajectory_to_csv(sol.w, true);
    }
    if (!o.no_verify) {
        auto rep = ndflow::verify_solution(loaded.original, sol.w);
        std::cerr << "verified " << rep.checked_points << " points, max residual " << ndflow::to_string(rep.max_abs_residual)
                  << "\n";
        if (!rep.ok()) return static_cast<int>(ndflow::ErrorCode::verification);
    }
    return 0;
}

int cmd_verify(const Options& o) {
    auto sys = ndflow::io::system_from_json(ndflow::io::read_json_file(o.input));
    auto w = ndflow::io::trajectory_from_json(ndflow::io::read_json_file(o.second));
    auto rep = ndflow::verify_solution(sys, w);
    json out{{"checked_points", rep.checked_points}, {"max_abs_residual", ndflow::to_string(rep.max_abs_residual)},
             {"ok", rep.ok()}};
    emit(o, out);
    return rep.ok() ? 0 : static_cast<int>(ndflow::ErrorCode::verification);
}

int cmd_check_free(const Options& o) {
    auto loaded = ndflow::io::realization_from_json(ndflow::io::read_json_file(o.input));
    const auto& real = loaded.realization;
    auto rep = ndflow::freeness_check(real);
    rep.is_nonautonomous = ndflow::faithful_at(ndflow::annihilator(real.system()), real.d());
    emit(o, ndflow::io::report_to_json(rep));
    return 0;
}

int cmd_membership(const Options& o) {
    auto sys = ndflow::io::system_from_json(ndflow::io::read_json_file(o.input));
    ndflow::LaurentVector v;
    std::stringstream ss(o.vector);
    std::string part;
    while (std::getline(ss, part, ';')) v.push_back(ndflow::parse_polynomial(part, sys.n()));
    if (static_cast<int>(v.size()) != sys.q())
        throw ndflow::ParseError("vector needs " + std::to_string(sys.q()) + " ';'-separated entries");
    json out{{"member", sys.contains(v)}};
    if (auto cof = sys.lift(v)) {
        json c = json::array();
        for (const auto& p : *cof) c.push_back(ndflow::to_string(p));
        out["cofactors"] = c;
    }
    emit(o, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ndflow: first-order realizations and solutions of autonomous n-D difference systems"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", o.out, "output file (stdout when omitted)");
        sub->add_option("--t-bound", o.t_bound, "max |t_i| in the shear search")->check(CLI::NonNegativeNumber);
        sub->add_option("--cert-bound", o.cert_bound, "certificate degree bound (0 = automatic)")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--seed", o.seed, "seed for generated initial conditions");
    };

    auto* analyze = app.add_subcommand("analyze", "autonomy, annihilator and normalization order");
    analyze->add_option("system", o.input, "system JSON")->required();
    add_common(analyze);

    auto* normalize = app.add_subcommand("normalize", "discrete Noether normalization");
    normalize->add_option("system", o.input, "system JSON")->required();
    add_common(normalize);

    auto* regularize = app.add_subcommand("regularize", "first-order realization");
    regularize->add_option("input", o.input, "system or normalization JSON")->required();
    add_common(regularize);

    auto* solve = app.add_subcommand("solve", "evaluate a trajectory from a realization");
    solve->add_option("realization", o.input, "realization JSON")->required();
    solve->add_option("--box", o.box, "output box lo1:hi1,...")->required();
    solve->add_option("--x", o.x_path, "initial condition trajectory JSON (random compatible when omitted)");
    solve->add_flag("--no-verify", o.no_verify, "skip the residual check");
    solve->add_option("--float-csv", o.float_csv, "also write a floating-point CSV");
    add_common(solve);

    auto* verify = app.add_subcommand("verify", "residual of R(sigma) w on a window");
    verify->add_option("system", o.input, "system JSON")->required();
    verify->add_option("trajectory", o.second, "trajectory JSON")->required();
    add_common(verify);

    auto* check_free = app.add_subcommand("check-free", "freeness and nonautonomy of the state space");
    check_free->add_option("realization", o.input, "realization JSON")->required();
    add_common(check_free);

    auto* membership = app.add_subcommand("membership", "test membership of a row vector in the equation module");
    membership->add_option("system", o.input, "system JSON")->required();
    membership->add_option("vector", o.vector, "entries separated by ';'")->required();
    add_common(membership);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(ndflow::ErrorCode::parse);
    }

    try {
        if (*analyze) return cmd_analyze(o);
        if (*normalize) return cmd_normalize(o);
        if (*regularize) return cmd_regularize(o);
        if (*solve) return cmd_solve(o);
        if (*verify) return cmd_verify(o);
        if (*check_free) return cmd_check_free(o);
        if (*membership) return cmd_membership(o);
    } catch (const ndflow::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(ndflow::ErrorCode::internal);
    }
    return 0;
}
