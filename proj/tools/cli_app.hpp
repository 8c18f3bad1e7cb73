#pragma once

// Command dispatch for the numrad executable. run() never exits the process,
// so tests drive it with string streams.
//
// Exit codes: 0 success, 1 numerical non-convergence or a failed claim,
// 2 usage or input error.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "matrix_literal.hpp"
#include "numrad/numrad.hpp"
#include "paper_check.hpp"

namespace numrad::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

struct MatrixArgs {
    std::string literal;
    std::string file;

    void attach(CLI::App* cmd, const std::string& name) {
        auto* lit = cmd->add_option("--" + name, literal, "matrix literal, e.g. [1,2i;0,-1]");
        auto* path = cmd->add_option("--" + name + "-file", file, "JSON matrix file");
        lit->excludes(path);
    }

    CMatrix get(const std::string& name) const {
        if (!literal.empty()) return parse_matrix(literal);
        if (!file.empty()) return read_matrix_file(file);
        throw std::invalid_argument("missing matrix: pass --" + name + " or --" + name + "-file");
    }
};

inline std::string complex_text(Complex z) {
    std::string s = fmt12(z.real());
    const double im = z.imag() == 0.0 ? 0.0 : z.imag();
    s += std::signbit(im) ? "-" : "+";
    return s + fmt12(std::abs(im)) + "i";
}

/// Key/value output in either text or JSON form, keys kept in insertion order.
class Emitter {
public:
    explicit Emitter(bool json) : json_(json) {}

    void put(const std::string& key, double v) { add(key, fmt12(v), nlohmann::json(std::stod(fmt12(v)))); }
    void put(const std::string& key, const std::string& v) { add(key, v, nlohmann::json(v)); }
    void put(const std::string& key, const char* v) { put(key, std::string(v)); }
    void put(const std::string& key, bool v) { add(key, v ? "true" : "false", nlohmann::json(v)); }
    void put(const std::string& key, std::size_t v) { add(key, std::to_string(v), nlohmann::json(v)); }
    void put(const std::string& key, Complex z) {
        add(key, complex_text(z), nlohmann::json::array({std::stod(fmt12(z.real())), std::stod(fmt12(z.imag()))}));
    }
    void put(const std::string& key, const std::optional<double>& v) {
        if (v) {
            put(key, *v);
        } else {
            add(key, "n/a", nlohmann::json(nullptr));
        }
    }
    void put_vector(const std::string& key, std::span<const Complex> v) {
        std::string text = "[";
        nlohmann::json arr = nlohmann::json::array();
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (k > 0) text += ", ";
            text += complex_text(v[k]);
            arr.push_back({std::stod(fmt12(v[k].real())), std::stod(fmt12(v[k].imag()))});
        }
        add(key, text + "]", arr);
    }

    void write(std::ostream& out) const {
        if (json_) {
            nlohmann::ordered_json j;
            for (const auto& [k, v] : json_items_) j[k] = v;
            out << j.dump() << '\n';
        } else {
            for (const auto& [k, v] : text_items_) out << k << ": " << v << '\n';
        }
    }

private:
    void add(const std::string& key, std::string text, nlohmann::json j) {
        text_items_.emplace_back(key, std::move(text));
        json_items_.emplace_back(key, std::move(j));
    }

    bool json_;
    std::vector<std::pair<std::string, std::string>> text_items_;
    std::vector<std::pair<std::string, nlohmann::json>> json_items_;
};

inline const char* method_name(OrthoMethod m) { return m == OrthoMethod::derivative ? "derivative" : "direct"; }

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical radius, its one-sided derivative and approximate orthogonality", "numrad"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<double> tol;
    std::optional<std::size_t> grid;
    std::uint64_t seed = 1;
    std::string format = "text";
    app.add_option("--tol", tol, "tolerance (default depends on the command)");
    app.add_option("--grid", grid, "initial angle grid (default depends on the command)");
    app.add_option("--seed", seed, "seed for randomized checks")->capture_default_str();
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json", "csv"}))->capture_default_str();

    detail::MatrixArgs t_arg;
    detail::MatrixArgs s_arg;
    double theta = 0.0;
    double eps = 0.0;
    std::string method = "derivative";
    std::size_t samples = 360;
    std::size_t radii = 32;

    auto* radius = app.add_subcommand("radius", "numerical radius, maximizing angle and maximizer");
    t_arg.attach(radius, "t");
    auto* crawford = app.add_subcommand("crawford", "Crawford number, the distance from 0 to W(T)");
    t_arg.attach(crawford, "t");
    auto* range = app.add_subcommand("range", "support points on the boundary of W(T)");
    t_arg.attach(range, "t");
    range->add_option("--samples", samples, "number of boundary points")->capture_default_str();
    auto* deriv = app.add_subcommand("deriv", "one-sided derivative D^theta(T, S)");
    t_arg.attach(deriv, "t");
    s_arg.attach(deriv, "s");
    deriv->add_option("--theta", theta, "direction angle")->capture_default_str();
    auto* inf = app.add_subcommand("inf-deriv", "infimum of D^theta(T, S) over theta");
    t_arg.attach(inf, "t");
    s_arg.attach(inf, "s");
    auto* ortho = app.add_subcommand("ortho", "approximate numerical-radius orthogonality of T to S");
    t_arg.attach(ortho, "t");
    s_arg.attach(ortho, "s");
    ortho->add_option("--eps", eps, "epsilon in [0, 1)")->capture_default_str();
    ortho->add_option("--method", method, "decider")
        ->check(CLI::IsMember({"derivative", "direct"}))
        ->capture_default_str();
    auto* min_eps = app.add_subcommand("min-eps", "least epsilon for which T is orthogonal to S");
    t_arg.attach(min_eps, "t");
    s_arg.attach(min_eps, "s");
    auto* bj = app.add_subcommand("bj-ortho", "approximate Birkhoff-James orthogonality in the spectral norm");
    t_arg.attach(bj, "t");
    s_arg.attach(bj, "s");
    bj->add_option("--eps", eps, "epsilon in [0, 1)")->capture_default_str();
    auto* paper = app.add_subcommand("paper-check", "reproduce the published numeric claims");
    auto* scan = app.add_subcommand("oracle-scan", "brute-force polar lambda grid for the orthogonality gap");
    t_arg.attach(scan, "t");
    s_arg.attach(scan, "s");
    scan->add_option("--eps", eps, "epsilon in [0, 1)")->capture_default_str();
    scan->add_option("--radii", radii, "number of radii")->capture_default_str();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    const bool json = format == "json";
    detail::Emitter em(json);
    int code = kExitOk;
    try {
        if (*radius) {
            const auto t = t_arg.get("t");
            const auto r = numerical_radius(t, RadiusOptions{tol.value_or(1e-10), grid.value_or(32)});
            em.put("omega", r.omega);
            em.put("theta_star", r.theta_star);
            em.put_vector("maximizer", r.maximizer.components());
            em.put("lower", r.enclosure.lower);
            em.put("upper", r.enclosure.upper);
        } else if (*crawford) {
            em.put("crawford", crawford_number(t_arg.get("t"), tol.value_or(1e-10)));
        } else if (*range) {
            const auto t = t_arg.get("t");
            out << emit_boundary(t, samples, json ? BoundaryFormat::json : BoundaryFormat::csv);
            return kExitOk;
        } else if (*deriv) {
            const auto d = omega_derivative(t_arg.get("t"), s_arg.get("s"), theta, tol.value_or(1e-8));
            em.put("derivative", d.value);
            em.put("theta", d.theta);
            em.put("converged", d.converged);
            em.put("residual", d.residual);
            em.put("quotients", d.quotient_trace.size());
            if (!d.converged) code = kExitNumerical;
        } else if (*inf) {
            const auto d = inf_derivative(t_arg.get("t"), s_arg.get("s"),
                                          InfDerivativeOptions{tol.value_or(1e-8), grid.value_or(32)});
            em.put("inf_derivative", d.value);
            em.put("worst_theta", d.worst_theta);
            em.put("converged", d.converged);
            if (!d.converged) code = kExitNumerical;
        } else if (*ortho) {
            OrthoOptions opts;
            opts.method = method == "direct" ? OrthoMethod::direct : OrthoMethod::derivative;
            opts.tol = tol.value_or(1e-8);
            if (grid) {
                opts.derivative_grid = *grid;
                opts.direct_grid = *grid;
            }
            const auto r = is_omega_orthogonal(t_arg.get("t"), s_arg.get("s"), eps, opts);
            em.put("verdict", r.orthogonal ? "ORTHOGONAL" : "NOT ORTHOGONAL");
            em.put("epsilon", r.epsilon);
            em.put("method", detail::method_name(r.method));
            em.put("margin", r.margin);
            em.put("threshold", r.threshold);
            em.put("inf_derivative", r.inf_derivative);
            em.put("epsilon_star", r.epsilon_star);
            em.put("worst_theta", r.worst_theta);
            if (r.method == OrthoMethod::direct) em.put("worst_lambda", r.worst_lambda);
            if (!r.converged) code = kExitNumerical;
        } else if (*min_eps) {
            em.put("epsilon_star", min_epsilon(t_arg.get("t"), s_arg.get("s"), tol.value_or(1e-8)));
        } else if (*bj) {
            const auto r = bj_orthogonality(t_arg.get("t"), s_arg.get("s"), eps, grid.value_or(1024));
            em.put("verdict", r.orthogonal ? "ORTHOGONAL" : "NOT ORTHOGONAL");
            em.put("epsilon", r.epsilon);
            em.put("margin", r.margin);
            em.put("worst_lambda", r.worst_lambda);
        } else if (*paper) {
            const auto rep = paper_check(seed);
            if (json) {
                out << render_json(rep).dump(2) << '\n';
            } else {
                out << render_text(rep);
            }
            return rep.all_pass() ? kExitOk : kExitNumerical;
        } else if (*scan) {
            const std::size_t angles = grid.value_or(64);
            const auto r = oracle::direct_lambda_scan(t_arg.get("t"), s_arg.get("s"), eps, radii, angles);
            em.put("min_margin", r.min_margin);
            em.put("argmin_lambda", r.argmin_lambda);
            em.put("verdict", r.min_margin >= -kVerdictTol ? "ORTHOGONAL" : "NOT ORTHOGONAL");
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    em.write(out);
    return code;
}

}  // namespace numrad::cli
