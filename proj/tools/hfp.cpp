// hfp: section-space models of Borel fibrations, from the command line.
//
//   hfp repro thm1 --n 11
//   hfp repro thm2 --n 5 --lambda 1,0
//   hfp compute pi --catalog sphere4k --k 1 --lambda 0 --format json
//   hfp compute betti --model models/s4.cfg --cutoff 12
//
// Exit codes: 0 match, 2 mismatch or failed check, 3 known discrepancy only, 64 usage,
// 65 invalid input model.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hfp/repro.hpp"

namespace {

std::vector<hfp::Rational> parse_lambda(const std::vector<std::string>& raw)
{
    std::vector<hfp::Rational> out;
    for (const auto& s : raw) {
        try {
            out.push_back(hfp::parse_rational(s));
        } catch (const std::exception&) {
            throw hfp::UsageError("--lambda: not a rational: '" + s + "'");
        }
    }
    return out;
}

std::optional<int> opt_int(const CLI::Option* o, int v) { return o->count() ? std::optional<int>(v) : std::nullopt; }

void emit(const hfp::ReportDocument& r, const std::string& format, const std::string& out_dir,
         const std::string& invocation)
{
    const auto text = r.render(format);
    std::cout << text;
    if (!out_dir.empty()) {
        const auto path = hfp::persist_report(out_dir, invocation, format, text);
        std::cerr << "report written to " << path.string() << "\n";
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Homotopy fixed points of S^3 and S^1 actions: section-space models, minimal models, checks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", hfp::kEngineVersion);

    std::string format = "text", out_dir;
    int cutoff = 0;
    auto add_common = [&](CLI::App* c) {
        c->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
        c->add_option("--out-dir", out_dir, "Also write the report to a content-addressed file in this directory");
        return c->add_option("--cutoff", cutoff, "Degree cutoff (default: 2*top degree + 2)")->check(CLI::PositiveNumber);
    };

    auto* repro = app.add_subcommand("repro", "Run a reproduction and compare with the expected statement");
    repro->require_subcommand(1);
    int n = 0, k = 0;
    std::vector<std::string> lambda_raw;

    auto* thm1 = repro->add_subcommand("thm1", "Spheres S^n under S^3 (n <= 16)");
    auto* thm1_cut = add_common(thm1);
    thm1->add_option("--n", n, "Sphere dimension")->required();
    auto* thm1_lambda = thm1->add_option("--lambda", lambda_raw, "Action parameter (n = 4k only)")->expected(1);

    auto* thm2 = repro->add_subcommand("thm2", "CP^n under S^3");
    auto* thm2_cut = add_common(thm2);
    thm2->add_option("--n", n, "Complex dimension")->required();
    thm2->add_option("--lambda", lambda_raw, "Comma-separated lambda_1..lambda_{n/2}")->delimiter(',');

    auto* eta = repro->add_subcommand("eta", "K(Z,2k) x K(Z,2k+1) under S^1");
    auto* eta_cut = add_common(eta);
    eta->add_option("--k", k, "k >= 1")->required();

    auto* prop1 = repro->add_subcommand("prop1", "pi-census inequality over the catalog sweep");
    add_common(prop1);
    auto* thm5 = repro->add_subcommand("thm5", "Product-of-CP^inf criterion battery, two routes");
    add_common(thm5);

    auto* compute = app.add_subcommand("compute", "Compute one artifact for a catalog instance or a config file");
    std::string what, catalog, model;
    compute->add_option("what", what, "sec | minimize | betti | pi | components")
        ->required()
        ->check(CLI::IsMember({"sec", "minimize", "betti", "pi", "components"}));
    auto* compute_cut = add_common(compute);
    auto* cat_opt = compute->add_option("--catalog", catalog, "sphere_odd | sphere4k | sphere4k2 | cp | eta");
    auto* model_opt = compute->add_option("--model", model, "Config file (YAML)");
    cat_opt->excludes(model_opt);
    auto* n_opt = compute->add_option("--n", n, "Family parameter n");
    auto* k_opt = compute->add_option("--k", k, "Family parameter k");
    compute->add_option("--lambda", lambda_raw, "Lambda value(s), comma-separated")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return hfp::kExitUsage;
    }

    std::string invocation;
    for (int i = 1; i < argc; ++i) invocation += (i > 1 ? " " : "") + std::string(argv[i]);

    try {
        if (*repro) {
            hfp::ReproResult res;
            if (*thm1) {
                const auto l = parse_lambda(lambda_raw);
                res = hfp::repro_thm1(n, thm1_lambda->count() ? std::optional<hfp::Rational>(l.at(0)) : std::nullopt,
                                      opt_int(thm1_cut, cutoff));
            } else if (*thm2) {
                res = hfp::repro_thm2(n, parse_lambda(lambda_raw), opt_int(thm2_cut, cutoff));
            } else if (*eta) {
                res = hfp::repro_eta(k, opt_int(eta_cut, cutoff));
            } else if (*prop1) {
                res = hfp::repro_prop1();
            } else {
                res = hfp::repro_thm5();
            }
            emit(res.report, format, out_dir, invocation);
            return res.exit_code;
        }
        if (catalog.empty() == model.empty()) throw hfp::UsageError("compute: give exactly one of --catalog, --model");
        std::optional<int> config_cutoff;
        hfp::FibrationModel f;
        if (!catalog.empty()) {
            f = hfp::catalog_instance(catalog, opt_int(n_opt, n), opt_int(k_opt, k), parse_lambda(lambda_raw));
        } else {
            auto cfg = hfp::load_config(model);
            f = std::move(cfg.fibration);
            config_cutoff = cfg.cutoff;
        }
        auto c = opt_int(compute_cut, cutoff);
        if (!c) c = config_cutoff;
        const auto report = hfp::cmd_compute(what, f, c, invocation);
        emit(report, format, out_dir, invocation);
        return report.all_ok() ? hfp::kExitMatch : hfp::kExitMismatch;
    } catch (const hfp::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return hfp::kExitUsage;
    } catch (const hfp::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return hfp::kExitDataError;
    } catch (const hfp::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return hfp::kExitDataError;
    } catch (const hfp::UnsupportedInput& e) {
        std::cerr << "unsupported input: " << e.what() << "\n";
        return hfp::kExitDataError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
