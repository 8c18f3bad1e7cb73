// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "paper_check.hpp"
#include "property_checks.hpp"

namespace {

using numrad::checks::CheckResult;

bool report(int id, const std::string& title, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s - %s (%s)\n", id, pass ? "PASS" : "FAIL", title.c_str(), detail.c_str());
    return pass;
}

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

std::string summarize(const std::vector<CheckResult>& results, bool& all) {
    std::string s;
    all = true;
    for (const auto& r : results) {
        if (!r.ok()) {
            all = false;
            s += "[" + r.name + ": " + std::to_string(r.failures) + "/" + std::to_string(r.instances) + " failed, first: "
               + r.detail + "] ";
        }
    }
    std::size_t instances = 0;
    for (const auto& r : results) instances += r.instances;
    return s + std::to_string(results.size()) + " checks, " + std::to_string(instances) + " instances";
}

bool rows_pass(const numrad::cli::PaperCheckReport& rep, const std::vector<std::string>& prefixes,
               std::size_t& count, std::string& failed) {
    bool ok = true;
    count = 0;
    for (const auto& row : rep.rows) {
        for (const auto& p : prefixes) {
            if (row.id.rfind(p, 0) == 0) {
                ++count;
                if (!row.pass) {
                    ok = false;
                    failed += row.id + " ";
                }
                break;
            }
        }
    }
    return ok && count > 0;
}

}  // namespace

int main() {
    bool all = true;

    const auto t0 = std::chrono::steady_clock::now();
    const auto rep = numrad::cli::paper_check();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool fast = secs < 1.0;

    std::size_t n1 = 0, n2 = 0;
    std::string f1, f2;
    const bool c1 = rows_pass(rep, {"radius.corner", "radius.shear", "radius.jordan", "radius.diag", "norm"}, n1, f1) && fast;
    all &= report(1, "published radius and norm values within 1e-8, under 1 s", c1,
                  std::to_string(n1) + " values" + (f1.empty() ? "" : ", failed: " + f1) + ", "
                      + sci(secs) + " s for the whole report");
    const bool c2 = rows_pass(rep, {"ortho", "bj-ortho", "min-eps"}, n2, f2);
    all &= report(2, "published orthogonality verdicts and least epsilon", c2,
                  std::to_string(n2) + " verdicts" + (f2.empty() ? "" : ", failed: " + f2));

    {
        const auto r = numrad::checks::rank_one_formula(100);
        all &= report(3, "rank-one radius formula within 1e-8", r.ok(),
                      std::to_string(r.instances) + " pairs, worst error " + sci(r.worst)
                          + (r.ok() ? "" : ", first: " + r.detail));
    }
    {
        const auto r = numrad::checks::decider_equivalence(200);
        all &= report(4, "derivative and direct deciders agree", r.ok(),
                      std::to_string(r.instances) + " instances, " + std::to_string(r.skipped)
                          + " excluded near eps*, " + std::to_string(r.failures) + " disagreements"
                          + (r.ok() ? "" : ", first: " + r.detail));
    }
    {
        using namespace numrad::checks;
        std::vector<CheckResult> results{
            quotient_monotonicity(),  schwarz_bound(),       subadditivity(),
            radius_homogeneity(),     relation_homogeneity(), norm_equivalence(),
            unitary_invariance(),     triangle_inequality(),  crawford_below_radius(),
            identity_swap(),          hermitian_omega_implies_bj(), nilpotent_bj_implies_omega(),
            positive_shift(),         positive_sum(false),    positive_sum(true),
            identity_derivative(),
        };
        bool ok = true;
        const auto s = summarize(results, ok);
        all &= report(5, "property suites with zero failures", ok, s);
    }
    {
        using namespace numrad::checks;
        std::vector<CheckResult> results{ellipse_agreement(500), sampling_bound(100), scan_agreement(100)};
        bool ok = true;
        const auto s = summarize(results, ok);
        all &= report(6, "oracle agreement", ok, s);
    }
    return all ? 0 : 1;
}
