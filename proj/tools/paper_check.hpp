#pragma once

// Reproduces the published numeric claims as a table of rows.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "matrix_literal.hpp"
#include "numrad/numrad.hpp"

namespace numrad::cli {

struct ClaimRow {
    std::string id;
    std::string expected;
    std::string computed;
    std::optional<double> abs_diff;
    bool pass = false;
    std::string note;
};

struct PaperCheckReport {
    std::vector<ClaimRow> rows;

    bool all_pass() const {
        for (const auto& r : rows) {
            if (!r.pass) return false;
        }
        return true;
    }
};

inline constexpr double kClaimTol = 1e-8;

namespace detail {

inline ClaimRow value_row(std::string id, double expected, double computed, std::string note = {}) {
    const double diff = std::abs(expected - computed);
    return {std::move(id), fmt12(expected), fmt12(computed), diff, diff <= kClaimTol, std::move(note)};
}

inline ClaimRow verdict_row(std::string id, bool expected, bool computed, std::string note = {}) {
    auto word = [](bool b) { return std::string(b ? "orthogonal" : "not-orthogonal"); };
    return {std::move(id), word(expected), word(computed), std::nullopt, expected == computed, std::move(note)};
}

}  // namespace detail

inline PaperCheckReport paper_check(std::uint64_t seed = 1) {
    const Complex i{0.0, 1.0};
    const CMatrix corner{{i, 0.0}, {0.0, 0.0}};
    const CMatrix shear{{0.0, 1.0}, {0.0, -1.0}};
    const CMatrix shear_sum{{1.0, 1.0}, {0.0, -1.0}};
    const CMatrix shear_half{{0.5, 1.0}, {0.0, -1.0}};
    const CMatrix jordan{{1.0, 1.0}, {0.0, 1.0}};
    const CMatrix shear_diff{{1.0, -1.0}, {0.0, -1.0}};
    const CMatrix two_zero{{2.0, 0.0}, {0.0, 0.0}};
    const CMatrix e11{{1.0, 0.0}, {0.0, 0.0}};

    PaperCheckReport rep;
    auto& rows = rep.rows;
    using detail::value_row;
    using detail::verdict_row;

    rows.push_back(value_row("radius.corner-i", 1.0, numerical_radius(corner).omega));
    rows.push_back(value_row("radius.shear", (1.0 + std::sqrt(2.0)) / 2.0, numerical_radius(shear).omega));
    rows.push_back(value_row("radius.shear-sum", std::sqrt(5.0) / 2.0, numerical_radius(shear_sum).omega));
    rows.push_back(value_row(
        "radius.shear-half", (1.0 + std::sqrt(13.0)) / 4.0, numerical_radius(shear_half).omega,
        "published display pairs this value with [1,1;0,-1], whose radius is sqrt(5)/2 (row radius.shear-sum); "
        "the value belongs to [1/2,1;0,-1] = S - (i/2)T, confirmed by the 2x2 ellipse formula: "
            + fmt12(oracle::ellipse_radius_2x2(shear_half))));
    rows.push_back(value_row("radius.jordan", 1.5, numerical_radius(jordan).omega));
    rows.push_back(value_row("radius.shear-diff", std::sqrt(5.0) / 2.0, numerical_radius(shear_diff).omega));
    rows.push_back(value_row("radius.diag-2-0", 2.0, numerical_radius(two_zero).omega));
    rows.push_back(value_row("norm.shear", std::sqrt(2.0), spectral_norm(shear)));
    rows.push_back(value_row("norm.e11", 1.0, spectral_norm(e11)));
    {
        const double lam_abs2 = 1.0;
        const double formula = (2.0 + lam_abs2 + std::sqrt(4.0 + lam_abs2 * lam_abs2)) / 2.0;
        const double nrm = spectral_norm(shear + e11);
        rows.push_back(value_row("norm-squared.shear-plus-e11", formula, nrm * nrm,
                                 "closed form (2+|l|^2+sqrt(4+|l|^4))/2 at l = 1, i.e. (3+sqrt(5))/2"));
    }

    const auto first = is_omega_orthogonal(corner, shear, 0.0);
    rows.push_back(verdict_row("ortho.corner-shear.eps-0", true, first.orthogonal));
    {
        const double es = min_epsilon(corner, shear);
        rows.push_back({"min-eps.corner-shear", fmt12(0.0), fmt12(es), es, es <= 1e-6, "tolerance 1e-6"});
    }
    rows.push_back(verdict_row("ortho.shear-corner.eps-0.005", false,
                               is_omega_orthogonal(shear, corner, 0.005).orthogonal,
                               "claimed for every eps in (0, 0.01)"));
    rows.push_back(verdict_row("bj-ortho.shear-e11.eps-0", true, is_bj_orthogonal(shear, e11, 0.0)));
    rows.push_back(verdict_row("ortho.shear-e11.eps-0.005", false, is_omega_orthogonal(shear, e11, 0.005).orthogonal));
    rows.push_back(verdict_row("ortho.diag-jordan.eps-0", false, is_omega_orthogonal(two_zero, jordan, 0.0).orthogonal));
    rows.push_back(verdict_row("ortho.diag-jordan.eps-0.7", true, is_omega_orthogonal(two_zero, jordan, 0.7).orthogonal,
                               "claimed for every eps in (2/3, 1)"));
    {
        const double es = min_epsilon(two_zero, jordan);
        const bool ok = es > 0.0 && es <= 2.0 / 3.0 + 1e-6;
        rows.push_back({"min-eps.diag-jordan", "in (0, 2/3]", fmt12(es), std::nullopt, ok,
                        "orthogonality holds above 2/3, so the least eps is at most 2/3"});
    }
    {
        oracle::Generator gen(oracle::Seed{seed});
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            const std::size_t n = gen.dimension(2, 8);
            const auto x = gen.unit_vector(n);
            const auto y = gen.unit_vector(n);
            const double formula = 0.5 * (std::abs(inner(x, y)) + 1.0);
            worst = std::max(worst, std::abs(numerical_radius(rank_one(x, y)).omega - formula));
        }
        rows.push_back({"radius.rank-one", "(|<x,y>| + |x||y|)/2", "max error " + fmt12(worst), worst,
                        worst <= kClaimTol, "100 seeded unit pairs, dimensions 2 to 8, seed " + std::to_string(seed)});
    }
    return rep;
}

inline std::string render_text(const PaperCheckReport& rep) {
    std::string out = "claim | expected | computed | abs diff | result | note\n";
    for (const auto& r : rep.rows) {
        out += r.id + " | " + r.expected + " | " + r.computed + " | " + (r.abs_diff ? fmt12(*r.abs_diff) : "-")
             + " | " + (r.pass ? "PASS" : "FAIL") + " | " + r.note + "\n";
    }
    out += rep.all_pass() ? "all claims reproduced\n" : "some claims FAILED\n";
    return out;
}

inline nlohmann::json render_json(const PaperCheckReport& rep) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : rep.rows) {
        rows.push_back({{"claim", r.id},
                        {"expected", r.expected},
                        {"computed", r.computed},
                        {"abs_diff", r.abs_diff ? nlohmann::json(fmt12(*r.abs_diff)) : nlohmann::json(nullptr)},
                        {"pass", r.pass},
                        {"note", r.note}});
    }
    return {{"claims", rows}, {"all_pass", rep.all_pass()}};
}

}  // namespace numrad::cli
