#include "allpay/cli.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "allpay/beliefs.hpp"
#include "allpay/designer.hpp"
#include "allpay/errors.hpp"
#include "allpay/output.hpp"
#include "allpay/special.hpp"
#include "allpay/two_stage.hpp"
#include "allpay/verify.hpp"

namespace allpay::cli {
namespace {

using nlohmann::ordered_json;

Prior parse_prior(const std::string& s) {
    if (s == "uniform") return Prior::uniform();
    if (s.rfind("power:", 0) == 0) {
        try {
            return Prior::power(std::stod(s.substr(6)));
        } catch (const std::logic_error&) {
            throw DomainError("bad prior spec: " + s);
        }
    }
    throw DomainError("prior must be 'uniform' or 'power:<theta>', got: " + s);
}

CostFn parse_cost(const std::string& s) {
    if (s == "linear") return CostFn::linear();
    if (s.rfind("power:", 0) == 0) {
        try {
            return CostFn::power(std::stod(s.substr(6)));
        } catch (const std::logic_error&) {
            throw DomainError("bad cost spec: " + s);
        }
    }
    throw DomainError("cost must be 'linear' or 'power:<k>', got: " + s);
}

std::vector<double> parse_prizes(const std::string& s, int n2) {
    try {
        if (s.rfind("wta:", 0) == 0) return wta_prizes(std::stod(s.substr(4)), n2);
        std::vector<double> v;
        std::size_t pos = 0;
        while (pos <= s.size()) {
            const std::size_t comma = s.find(',', pos);
            const std::string tok =
                s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            v.push_back(std::stod(tok));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return v;
    } catch (const std::logic_error&) {
        throw DomainError("prizes must be 'wta:<V1>' or a comma list, got: " + s);
    }
}

std::string sibling_artifact(const std::string& out, const char* suffix) {
    if (out.empty()) return {};
    std::filesystem::path p(out);
    p.replace_extension(suffix);
    return p.string();
}

std::string json_artifact(const ordered_json& j) { return j.dump(2) + "\n"; }

// ---- subcommand payloads ----------------------------------------------

struct BeliefsArgs {
    int n1 = 5, n2 = 2, grid = 400;
    double ai = 0.5;
    std::string prior = "uniform", out;
};

void run_beliefs(const BeliefsArgs& a) {
    PosteriorParams p;
    p.own_ability = a.ai;
    p.n1 = a.n1;
    p.n2 = a.n2;
    p.prior = parse_prior(a.prior);
    if (a.grid < 2) throw DomainError("beliefs: grid must be >= 2");

    CsvBuilder csv({"a_j", "prior_pdf", "posterior_pdf", "prior_cdf", "posterior_cdf"});
    for (int i = 0; i < a.grid; ++i) {
        const double aj =
            kAbilityLo + (kAbilityHi - kAbilityLo) * i / (a.grid - 1);
        csv.add_row({format_number(aj), format_number(p.prior.pdf(aj)),
                     format_number(marginal_posterior_pdf(aj, p)),
                     format_number(p.prior.cdf(aj)),
                     format_number(marginal_posterior_cdf(aj, p))});
    }
    write_artifact(a.out, csv.str());
}

struct EquilibriumArgs {
    int n1 = 5, n2 = 2, grid = 512;
    std::string prior = "uniform", cost = "linear", prizes = "wta:1", out;
};

void run_equilibrium(const EquilibriumArgs& a) {
    ContestSpec s;
    s.n1 = a.n1;
    s.n2 = a.n2;
    s.prior = parse_prior(a.prior);
    s.cost = parse_cost(a.cost);
    s.prizes = parse_prizes(a.prizes, a.n2);
    s = validate_spec(std::move(s));

    const StrategyTable restricted = build_strategy_table(s, a.grid);
    const StrategyTable one_round =
        build_one_round_table(s.n1, s.prizes, s.prior, s.cost, a.grid);

    CsvBuilder csv({"a", "effort_restricted", "effort_one_round"});
    for (double node : restricted.grid())
        csv.add_row({format_number(node), format_number(restricted(node)),
                     format_number(one_round(node))});
    write_artifact(a.out, csv.str());
}

struct SweepArgs {
    int n1 = 20, capacity = 20, grid = 512;
    std::string prior = "uniform", cost = "linear", prizes = "wta:1", out;
};

void run_sweep(const SweepArgs& a) {
    const SweepReport report =
        sweep_n2(a.n1, a.capacity, parse_prizes(a.prizes, a.capacity),
                 parse_prior(a.prior), parse_cost(a.cost), a.grid);

    CsvBuilder csv({"n2", "expected_highest", "expected_total"});
    ordered_json errors = ordered_json::object();
    for (const SweepRow& row : report.rows) {
        if (!row.error.empty()) {
            errors[std::to_string(row.n2)] = row.error;
            continue;
        }
        csv.add_row({std::to_string(row.n2), format_number(row.expected_highest),
                     format_number(row.expected_total)});
    }
    write_artifact(a.out, csv.str());

    ordered_json summary{{"n1", report.n1},
                         {"capacity", report.capacity},
                         {"argmax_highest", report.argmax_highest},
                         {"argmax_total", report.argmax_total},
                         {"corner_flag", report.corner_flag},
                         {"errors", errors}};
    write_artifact(sibling_artifact(a.out, ".summary.json"), json_artifact(summary));
}

struct VerifyArgs {
    std::size_t samples = 100'000;
    std::uint64_t seed = 12345;
    int threads = 0;
    std::string out;
};

void run_verify(const VerifyArgs& a) {
    VerifyConfig cfg;
    cfg.samples = a.samples;
    cfg.seed = a.seed;
    cfg.threads = a.threads;
    write_artifact(a.out, json_artifact(run_verification(cfg)));
}

struct TwoStageArgs {
    int n1 = 6, n2 = 3, grid = 512, points = 41;
    double ai = 0.5, window = 0.05;
    std::string prior = "uniform", cost = "linear", prizes = "wta:1", out;
};

void run_two_stage(const TwoStageArgs& a) {
    TwoStageSpec ts;
    ts.contest.n1 = a.n1;
    ts.contest.n2 = a.n2;
    ts.contest.prior = parse_prior(a.prior);
    ts.contest.cost = parse_cost(a.cost);
    ts.contest.prizes = parse_prizes(a.prizes, a.n2);
    ts = validate_two_stage(std::move(ts));
    if (a.points < 3) throw DomainError("two-stage: points must be >= 3");
    if (!(a.window > 0.0)) throw DomainError("two-stage: window must be positive");

    const StrategyTable table = build_second_stage_table(ts, a.grid);

    const double lo = std::max(kAbilityLo, a.ai - a.window);
    const double hi = std::min(kAbilityHi, a.ai + a.window);
    CsvBuilder csv({"a_tilde", "deviation_gain"});
    for (int i = 0; i < a.points; ++i) {
        const double at = lo + (hi - lo) * i / (a.points - 1);
        csv.add_row({format_number(at),
                     format_number(deviation_gain(a.ai, at, ts, table))});
    }
    write_artifact(a.out, csv.str());

    const DeviationSlope slope = deviation_slope(a.ai, ts, table);
    ordered_json verdict{{"a", a.ai},
                         {"slope_coarse", slope.slope_coarse},
                         {"slope_fine", slope.slope_fine},
                         {"slope", slope.richardson},
                         {"noise_floor", slope.noise_floor},
                         {"nonzero", slope.nonzero},
                         {"sign", slope.sign}};
    write_artifact(sibling_artifact(a.out, ".verdict.json"), json_artifact(verdict));
}

struct FigureArgs {
    std::string preset;
    std::string out;
    int grid = 512;
};

void run_figure(const FigureArgs& a) {
    namespace fs = std::filesystem;
    constexpr double kTheta[] = {0.5, 1.0, 2.0, 5.0};
    constexpr double kCostK[] = {1.0, 5.0};

    if (a.preset == "fig1") {
        // Prior-vs-posterior belief curves: n1=5, n2=2, uniform prior,
        // own ability in {0.3, 0.5, 0.8}; one pdf file and one cdf file each.
        if (a.out.empty()) throw DomainError("figure fig1 needs --out <directory>");
        fs::create_directories(a.out);
        constexpr double kOwn[] = {0.3, 0.5, 0.8};
        constexpr const char* kTag[] = {"0.3", "0.5", "0.8"};
        for (int i = 0; i < 3; ++i) {
            PosteriorParams p;
            p.own_ability = kOwn[i];
            p.n1 = 5;
            p.n2 = 2;
            CsvBuilder pdf({"a_j", "prior_pdf", "posterior_pdf"});
            CsvBuilder cdf({"a_j", "prior_cdf", "posterior_cdf"});
            const int grid = 400;
            for (int j = 0; j < grid; ++j) {
                const double aj = kAbilityLo + (kAbilityHi - kAbilityLo) * j / (grid - 1);
                pdf.add_row({format_number(aj), format_number(p.prior.pdf(aj)),
                             format_number(marginal_posterior_pdf(aj, p))});
                cdf.add_row({format_number(aj), format_number(p.prior.cdf(aj)),
                             format_number(marginal_posterior_cdf(aj, p))});
            }
            const fs::path dir(a.out);
            write_artifact((dir / ("fig1_pdf_ai" + std::string(kTag[i]) + ".csv")).string(),
                           pdf.str());
            write_artifact((dir / ("fig1_cdf_ai" + std::string(kTag[i]) + ".csv")).string(),
                           cdf.str());
        }
        return;
    }

    if (a.preset == "fig2" || a.preset == "fig3") {
        // Expected highest (fig2) or total (fig3) equilibrium effort for
        // n1=20, winner-take-all, over n2 with theta and cost-exponent grids.
        const bool highest = a.preset == "fig2";
        CsvBuilder csv({"n2", "theta", "cost_k",
                        highest ? "expected_highest" : "expected_total"});
        for (double k : kCostK) {
            for (double theta : kTheta) {
                const SweepReport report =
                    sweep_n2(20, 20, wta_prizes(1.0, 20), Prior::power(theta),
                             CostFn::power(k), a.grid);
                for (const SweepRow& row : report.rows) {
                    if (!row.error.empty())
                        throw NumericError("figure: sweep row failed: " + row.error);
                    csv.add_row({std::to_string(row.n2), format_number(theta),
                                 format_number(k),
                                 format_number(highest ? row.expected_highest
                                                       : row.expected_total)});
                }
            }
        }
        write_artifact(a.out, csv.str());
        return;
    }

    if (a.preset == "fig4") {
        // Posterior-density jump surface over (a_i, n2) for n1=20, uniform.
        CsvBuilder csv({"a_i", "n2", "jump"});
        const int grid = 99;
        for (int n2 = 2; n2 <= 20; ++n2) {
            for (int i = 1; i <= grid; ++i) {
                PosteriorParams p;
                p.own_ability = static_cast<double>(i) / (grid + 1);
                p.n1 = 20;
                p.n2 = n2;
                csv.add_row({format_number(p.own_ability), std::to_string(n2),
                             format_number(belief_jump(p))});
            }
        }
        write_artifact(a.out, csv.str());
        return;
    }

    if (a.preset == "fig5") {
        // The shading denominator J over (x, n2) for n1=20.
        CsvBuilder csv({"x", "n2", "j_value"});
        const int grid = 99;
        for (int n2 = 2; n2 <= 20; ++n2) {
            for (int i = 1; i <= grid; ++i) {
                const double x = static_cast<double>(i) / (grid + 1);
                csv.add_row({format_number(x), std::to_string(n2),
                             format_number(scaled_belief_normalizer(x, 20, n2))});
            }
        }
        write_artifact(a.out, csv.str());
        return;
    }

    throw DomainError("unknown figure preset: " + a.preset +
                      " (expected fig1..fig5)");
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"All-pay contest toolkit: posterior beliefs, equilibrium efforts and "
                 "admission design for contests that admit only the top-ranked players"};
    app.require_subcommand(1);

    BeliefsArgs beliefs;
    auto* sub_beliefs =
        app.add_subcommand("beliefs", "Prior vs posterior belief curves as CSV");
    sub_beliefs->add_option("--n1", beliefs.n1, "registered players");
    sub_beliefs->add_option("--n2", beliefs.n2, "admitted players");
    sub_beliefs->add_option("--ai", beliefs.ai, "own ability in (0,1)")->required();
    sub_beliefs->add_option("--prior", beliefs.prior, "uniform | power:<theta>");
    sub_beliefs->add_option("--grid", beliefs.grid, "output rows");
    sub_beliefs->add_option("--out", beliefs.out, "output CSV path (default stdout)");

    EquilibriumArgs equil;
    auto* sub_equil = app.add_subcommand(
        "equilibrium", "Restricted and one-round equilibrium efforts as CSV");
    sub_equil->add_option("--n1", equil.n1, "registered players");
    sub_equil->add_option("--n2", equil.n2, "admitted players");
    sub_equil->add_option("--prior", equil.prior, "uniform | power:<theta>");
    sub_equil->add_option("--cost", equil.cost, "linear | power:<k>");
    sub_equil->add_option("--prizes", equil.prizes, "wta:<V1> | comma list");
    sub_equil->add_option("--grid", equil.grid, "strategy table size");
    sub_equil->add_option("--out", equil.out, "output CSV path (default stdout)");

    SweepArgs sweep;
    auto* sub_sweep = app.add_subcommand(
        "sweep", "Designer metrics for every admission count up to the capacity");
    sub_sweep->add_option("--n1", sweep.n1, "registered players");
    sub_sweep->add_option("--capacity", sweep.capacity, "admission capacity");
    sub_sweep->add_option("--prior", sweep.prior, "uniform | power:<theta>");
    sub_sweep->add_option("--cost", sweep.cost, "linear | power:<k>");
    sub_sweep->add_option("--prizes", sweep.prizes, "prize template");
    sub_sweep->add_option("--grid", sweep.grid, "strategy table size");
    sub_sweep->add_option("--out", sweep.out,
                          "output CSV path; the summary JSON lands next to it");

    VerifyArgs verify;
    auto* sub_verify = app.add_subcommand(
        "verify", "Monte Carlo verification suite with a pass/fail JSON report");
    sub_verify->add_option("--samples", verify.samples, "accepted records / trials");
    sub_verify->add_option("--seed", verify.seed, "RNG seed");
    sub_verify->add_option("--threads", verify.threads, "worker threads (0 = auto)");
    sub_verify->add_option("--out", verify.out, "output JSON path (default stdout)");

    TwoStageArgs two_stage;
    auto* sub_two = app.add_subcommand(
        "two-stage", "Deviation-gain profile and slope verdict for the two-stage game");
    sub_two->add_option("--n1", two_stage.n1, "first-stage players");
    sub_two->add_option("--n2", two_stage.n2, "advancing players");
    sub_two->add_option("--ai", two_stage.ai, "true ability in (0,1)")->required();
    sub_two->add_option("--prior", two_stage.prior, "uniform | power:<theta>");
    sub_two->add_option("--cost", two_stage.cost, "linear | power:<k>");
    sub_two->add_option("--prizes", two_stage.prizes, "prize template (last prize 0)");
    sub_two->add_option("--window", two_stage.window, "half-width of the mimic range");
    sub_two->add_option("--points", two_stage.points, "CSV rows across the window");
    sub_two->add_option("--grid", two_stage.grid, "strategy table size");
    sub_two->add_option("--out", two_stage.out,
                        "output CSV path; the verdict JSON lands next to it");

    FigureArgs figure;
    auto* sub_figure =
        app.add_subcommand("figure", "Named dataset presets (fig1..fig5)");
    sub_figure->add_option("preset", figure.preset, "fig1 | fig2 | fig3 | fig4 | fig5")
        ->required();
    sub_figure->add_option("--out", figure.out,
                           "output path (directory for fig1, CSV file otherwise)");
    sub_figure->add_option("--grid", figure.grid, "strategy table size for fig2/fig3");

    try {
        app.parse(argc, argv);
        if (sub_beliefs->parsed()) run_beliefs(beliefs);
        if (sub_equil->parsed()) run_equilibrium(equil);
        if (sub_sweep->parsed()) run_sweep(sweep);
        if (sub_verify->parsed()) run_verify(verify);
        if (sub_two->parsed()) run_two_stage(two_stage);
        if (sub_figure->parsed()) run_figure(figure);
        return 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace allpay::cli
