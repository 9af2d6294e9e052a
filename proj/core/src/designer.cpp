#include "allpay/designer.hpp"

#include <cmath>

#include "allpay/errors.hpp"

namespace allpay {
namespace {

std::vector<double> fit_template(std::vector<double> prizes, int n2) {
    prizes.resize(static_cast<std::size_t>(n2), 0.0);
    return prizes;
}

}  // namespace

double expected_highest_effort(const StrategyTable& table, const Quadrature& q) {
    const ContestSpec& s = table.spec();
    return integrate(
        [&](double a) {
            return table(a) * s.n1 * std::pow(s.prior.cdf(a), s.n1 - 1) * s.prior.pdf(a);
        },
        0.0, 1.0, q);
}

double expected_highest_effort(const ContestSpec& spec, int grid_size, const Quadrature& q) {
    return expected_highest_effort(build_strategy_table(spec, grid_size, q), q);
}

double expected_total_effort(const StrategyTable& table, const Quadrature& q) {
    const ContestSpec& s = table.spec();
    return s.n2 *
           integrate([&](double a) { return table(a) * s.prior.pdf(a); }, 0.0, 1.0, q);
}

double expected_total_effort(const ContestSpec& spec, int grid_size, const Quadrature& q) {
    return expected_total_effort(build_strategy_table(spec, grid_size, q), q);
}

SweepReport sweep_n2(int n1, int capacity, std::vector<double> prize_template,
                     const Prior& prior, const CostFn& cost, int grid_size,
                     const Quadrature& q) {
    if (capacity < 2 || capacity > n1)
        throw DomainError("designer: need 2 <= capacity <= n1");

    SweepReport report;
    report.n1 = n1;
    report.capacity = capacity;
    for (int n2 = 2; n2 <= capacity; ++n2) {
        SweepRow row;
        row.n2 = n2;
        try {
            ContestSpec s;
            s.n1 = n1;
            s.n2 = n2;
            s.prizes = fit_template(prize_template, n2);
            s.prior = prior;
            s.cost = cost;
            const StrategyTable table = build_strategy_table(s, grid_size, q);
            row.expected_highest = expected_highest_effort(table, q);
            row.expected_total = expected_total_effort(table, q);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        report.rows.push_back(std::move(row));
    }

    // argmax over valid rows (first maximum wins)
    double best_h = -1.0, best_t = -1.0;
    for (const SweepRow& row : report.rows) {
        if (!row.error.empty()) continue;
        if (row.expected_highest > best_h) {
            best_h = row.expected_highest;
            report.argmax_highest = row.n2;
        }
        if (row.expected_total > best_t) {
            best_t = row.expected_total;
            report.argmax_total = row.n2;
        }
    }
    const auto corner = [&](int n2) { return n2 == 2 || n2 == capacity; };
    report.corner_flag = best_h >= 0.0 && corner(report.argmax_highest) &&
                         corner(report.argmax_total);
    return report;
}

std::vector<DominanceRow> dominance_report(int n1, std::vector<double> prize_template,
                                           const Prior& prior, const CostFn& cost,
                                           std::span<const double> abilities,
                                           int grid_size, const Quadrature& q) {
    if (n1 < 2) throw DomainError("designer: n1 must be >= 2");
    const StrategyTable one_round =
        build_one_round_table(n1, fit_template(prize_template, n1), prior, cost,
                              grid_size, q);
    std::vector<DominanceRow> rows;
    rows.reserve(abilities.size() * static_cast<std::size_t>(n1 - 1));
    for (int n2 = 2; n2 <= n1; ++n2) {
        ContestSpec s;
        s.n1 = n1;
        s.n2 = n2;
        s.prizes = fit_template(prize_template, n2);
        s.prior = prior;
        s.cost = cost;
        const StrategyTable restricted = build_strategy_table(s, grid_size, q);
        for (double a : abilities)
            rows.push_back({n2, a, one_round(a) - restricted(a)});
    }
    return rows;
}

}  // namespace allpay
