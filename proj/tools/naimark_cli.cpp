// Copyright 2026 The Naimark Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// naimark: command-line front end for the dilation, compatibility and
// threshold routines.

#include <algorithm>
#include <climits>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "naimark/continuous.hpp"
#include "naimark/io.hpp"
#include "naimark/joint.hpp"
#include "naimark/trinary.hpp"

namespace {

using naimark::io::Json;
namespace cont = naimark::continuous;

enum Exit : int { kOk = 0, kNegative = 1, kParse = 2, kValidation = 3 };

struct Config {
    double tol = naimark::kRankTol;
    double feas_tol = 1e-9;
    int max_iters = 50000;
    std::string out;
    std::string format = "auto";
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void emit(const Config &cfg, const std::string &text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
        throw UsageError("cannot write " + cfg.out);
    }
    f << text;
}

void emit(const Config &cfg, const Json &j) {
    emit(cfg, j.dump(2) + "\n");
}

void require_json(const Config &cfg) {
    if (cfg.format == "csv") {
        throw UsageError("csv output is only available for continuous thresholds and phase-curve");
    }
}

bool want_csv(const Config &cfg) {
    return cfg.format != "json";
}

naimark::FeasibilityOptions solver_options(const Config &cfg) {
    naimark::FeasibilityOptions o;
    o.feas_tol = cfg.feas_tol;
    o.max_iters = cfg.max_iters;
    o.tol = cfg.tol;
    return o;
}

Json feasibility_json(const naimark::FeasibilityResult &r, const naimark::DiscretePovm &e,
                      const naimark::DiscretePovm &b) {
    Json j;
    j["verdict"] = naimark::to_string(r.verdict);
    j["iterations"] = r.iterations;
    j["residual"] = r.residual;
    if (r.certificate) {
        j["certificate"] = {{"kind", r.certificate->kind},
                            {"value", r.certificate->value},
                            {"detail", r.certificate->detail}};
    }
    if (r.joint) {
        j["grid"] = naimark::io::grid_to_json(*r.joint)["grid"];
        j["marginal_residual"] = naimark::marginal_residual(*r.joint, e, b);
        j["positivity_violation"] = naimark::positivity_violation(*r.joint);
    }
    return j;
}

int cmd_dilate(const Config &cfg, const std::string &path) {
    require_json(cfg);
    const naimark::DiscretePovm p = naimark::io::povm_from_json(naimark::io::read_file(path));
    const naimark::NaimarkDilation d = naimark::build_dilation(p, {cfg.tol, false});
    emit(cfg, naimark::io::dilation_to_json(d));
    std::cerr << "residual " << naimark::io::format_double(naimark::verify_dilation(d, p))
              << "\n";
    return kOk;
}

int cmd_busch(const Config &cfg, const std::vector<double> &ev, const std::vector<double> &bv) {
    require_json(cfg);
    const naimark::PauliVector e{ev[0], {ev[1], ev[2], ev[3]}};
    const naimark::PauliVector b{bv[0], {bv[1], bv[2], bv[3]}};
    if (!naimark::is_effect(e, cfg.tol) || !naimark::is_effect(b, cfg.tol)) {
        throw naimark::PovmError("both arguments must be effects: |v| <= min(v0, 2 - v0)");
    }
    const double sum = naimark::busch_sum(e, b);
    const bool necessary = naimark::busch_necessary(e, b, cfg.tol);
    const bool equivalent = naimark::busch_equivalent_form(e, b, cfg.tol);
    Json j;
    j["busch_sum"] = sum;
    j["busch_equivalent_value"] = naimark::busch_equivalent_value(e, b);
    j["busch_necessary"] = necessary;
    j["busch_equivalent_form"] = equivalent;
    const bool unbiased =
        std::abs(e.e0 - 1.0) <= cfg.tol && std::abs(b.e0 - 1.0) <= cfg.tol;
    j["unbiased"] = unbiased;

    if (unbiased) {
        if (!necessary) {
            j["verdict"] = "incompatible";
            emit(cfg, j);
            return kNegative;
        }
        j["verdict"] = std::abs(sum - 2.0) <= cfg.tol ? "compatible (boundary)" : "compatible";
        j["grid"] = naimark::io::grid_to_json(naimark::busch_joint_unbiased(e, b, cfg.tol))["grid"];
        emit(cfg, j);
        return kOk;
    }

    const naimark::DiscretePovm ep = naimark::DiscretePovm::from_pauli(
        {e, naimark::PauliVector{2.0 - e.e0, {-e.e[0], -e.e[1], -e.e[2]}}});
    const naimark::DiscretePovm bp = naimark::DiscretePovm::from_pauli(
        {b, naimark::PauliVector{2.0 - b.e0, {-b.e[0], -b.e[1], -b.e[2]}}});
    const naimark::FeasibilityResult r = naimark::feasibility_solve(ep, bp, solver_options(cfg));
    const bool feasible = r.verdict == naimark::Verdict::Feasible;
    j["verdict"] = feasible ? "compatible"
                            : (r.verdict == naimark::Verdict::Infeasible ? "incompatible"
                                                                         : "undecided");
    if (equivalent && r.verdict == naimark::Verdict::Infeasible) {
        j["note"] = "busch_equivalent_form holds but pair incompatible";
    }
    j["feasibility"] = feasibility_json(r, ep, bp);
    emit(cfg, j);
    return feasible ? kOk : kNegative;
}

int cmd_joint(const Config &cfg, const std::string &e_path, const std::string &b_path) {
    require_json(cfg);
    const naimark::DiscretePovm e = naimark::io::povm_from_json(naimark::io::read_file(e_path));
    const naimark::DiscretePovm b = naimark::io::povm_from_json(naimark::io::read_file(b_path));
    const naimark::FeasibilityResult r = naimark::feasibility_solve(e, b, solver_options(cfg));
    emit(cfg, feasibility_json(r, e, b));
    return r.verdict == naimark::Verdict::Feasible ? kOk : kNegative;
}

int cmd_trinary(const Config &cfg, double lambda, double eta, const std::string &psi_name) {
    require_json(cfg);
    const Eigen::Vector2cd psi =
        psi_name == "plus" ? Eigen::Vector2cd(1.0, 0.0) : Eigen::Vector2cd(0.0, 1.0);
    const double f = naimark::trinary::trinary_threshold(lambda);
    Json j;
    j["lambda"] = lambda;
    j["eta"] = eta;
    j["psi"] = psi_name;
    j["f_lambda"] = f;
    const auto sol = naimark::trinary::trinary_ansatz_solve(lambda, eta);
    if (!sol) {
        j["verdict"] = "infeasible";
        j["note"] = "eta exceeds the ansatz bound f(lambda); the ansatz is not optimal, the best "
                    "known threshold at lambda = eta is about " +
                    naimark::io::format_double(naimark::trinary::kReferenceThreshold);
        emit(cfg, j);
        return kNegative;
    }
    const naimark::JointPovm n = naimark::trinary::build_trinary_joint(lambda, eta, psi);
    j["verdict"] = "feasible";
    j["d"] = sol->d;
    j["e"] = sol->e;
    j["grid"] = naimark::io::grid_to_json(n)["grid"];
    j["marginal_residual"] =
        naimark::marginal_residual(n, naimark::trinary::build_trinary(lambda),
                                   naimark::trinary::build_target(eta, psi));
    j["positivity_violation"] = naimark::positivity_violation(n);
    j["covariance_residual"] = naimark::trinary::covariance_residual(n);
    emit(cfg, j);
    return kOk;
}

std::vector<double> unit_grid(double step, bool skip_zero) {
    const long n = std::lround(1.0 / step);
    if (n < 1 || std::abs(static_cast<double>(n) * step - 1.0) > 1e-9) {
        throw UsageError("--step must divide 1");
    }
    std::vector<double> g;
    for (long k = skip_zero ? 1 : 0; k <= n; ++k) {
        g.push_back(static_cast<double>(k) / static_cast<double>(n));
    }
    return g;
}

int cmd_thresholds(const Config &cfg, double step) {
    std::vector<std::vector<std::string>> rows;
    Json arr = Json::array();
    for (double e : unit_grid(step, false)) {
        const bool triple = cont::threshold_triple({e, e, e, 0.0});
        const bool qq = cont::threshold_pair_quadratures(e, e);
        const bool nq = cont::threshold_pair_number_quadrature(e, e);
        rows.push_back({naimark::io::format_double(e), triple ? "1" : "0", qq ? "1" : "0",
                        nq ? "1" : "0"});
        arr.push_back({{"eps", e}, {"triple", triple}, {"pair_qq", qq}, {"pair_nq", nq}});
    }
    if (want_csv(cfg)) {
        emit(cfg, naimark::io::csv({"eps", "triple", "pair_qq", "pair_nq"}, rows));
    } else {
        emit(cfg, arr);
    }
    return kOk;
}

int cmd_gprime(const Config &cfg, double eps, std::optional<double> f, double theta) {
    require_json(cfg);
    const auto iv = cont::feasible_f_interval(eps);
    if (!iv) {
        std::cerr << "no joint measurement in the G' family at eps = "
                  << naimark::io::format_double(eps)
                  << ": the feasible f interval is empty (requires eps >= 4/7)\n";
        return kNegative;
    }
    const double fv = f.value_or(0.5 * (iv->first + iv->second));
    const cont::GaussianPolyOvm g = cont::improved_joint_Gprime(eps, fv, theta);
    const cont::GprimeCoefficients k = cont::gprime_coefficients(eps, fv);
    Json j;
    j["eps"] = eps;
    j["theta"] = theta;
    j["f_interval"] = {iv->first, iv->second};
    j["coefficients"] = {{"f", k.f}, {"g", k.g}, {"h", k.h}, {"i", k.i}};
    j["ovm"] = naimark::io::ovm_to_json(g);
    j["normalization_residual"] = cont::normalization_residual(g);
    const cont::PositivityReport rep = cont::ovm_is_positive(g);
    j["positivity"] = naimark::io::positivity_to_json(rep);
    emit(cfg, j);
    return rep.positive ? kOk : kNegative;
}

int cmd_phase_curve(const Config &cfg, double step) {
    std::vector<double> grid = unit_grid(step, true);
    const double emin = cont::kPhaseNumberMinNoise;
    auto pos = std::lower_bound(grid.begin(), grid.end(), emin);
    if (pos == grid.end() || *pos != emin) {
        grid.insert(pos, emin);
    }
    const auto curve = cont::phase_curve(grid);
    std::cerr << "eps_min " << naimark::io::format_double(emin) << " f "
              << naimark::io::format_double(cont::phase_f(emin)) << "\n";
    if (want_csv(cfg)) {
        std::vector<std::vector<std::string>> rows;
        for (const auto &[e, fv] : curve) {
            rows.push_back({naimark::io::format_double(e), naimark::io::format_double(fv)});
        }
        emit(cfg, naimark::io::csv({"eps", "f_eps"}, rows));
    } else {
        Json arr = Json::array();
        for (const auto &[e, fv] : curve) {
            arr.push_back({{"eps", e}, {"f_eps", fv}});
        }
        emit(cfg, Json{{"eps_min", emin}, {"curve", arr}});
    }
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Naimark dilations and joint measurability of qubit POVMs"};
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    app.add_option("--tol", cfg.tol, "rank and validation tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--feas-tol", cfg.feas_tol, "feasibility solver tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--max-iters", cfg.max_iters, "feasibility solver iteration cap")
        ->check(CLI::Range(1, INT_MAX));
    app.add_option("--out", cfg.out, "output file (default: stdout)");
    app.add_option("--format", cfg.format, "json or csv")
        ->check(CLI::IsMember({"auto", "json", "csv"}));

    std::string povm_path;
    auto *dilate = app.add_subcommand("dilate", "minimal Naimark dilation of a POVM file");
    dilate->add_option("povm", povm_path, "POVM JSON file")->required();

    std::vector<double> ev;
    std::vector<double> bv;
    auto *busch = app.add_subcommand("busch", "compatibility of two binary effects");
    busch->add_option("--e", ev, "e0 ex ey ez")->expected(4)->required();
    busch->add_option("--b", bv, "b0 bx by bz")->expected(4)->required();

    std::string e_path;
    std::string b_path;
    auto *joint = app.add_subcommand("joint", "search for a joint POVM of two POVM files");
    joint->add_option("E", e_path, "first POVM JSON file")->required();
    joint->add_option("B", b_path, "second POVM JSON file")->required();

    double lambda = 0.0;
    double eta = 0.0;
    std::string psi = "minus";
    auto *trinary = app.add_subcommand("trinary", "covariant ansatz for the noisy trine pair");
    trinary->add_option("--lambda", lambda)->required()->check(CLI::Range(0.0, 1.0));
    trinary->add_option("--eta", eta)->required()->check(CLI::Range(0.0, 1.0));
    trinary->add_option("--psi", psi, "minus or plus")->check(CLI::IsMember({"minus", "plus"}));

    auto *continuous = app.add_subcommand("continuous", "single-photon continuous families");
    continuous->require_subcommand(1);
    double step = 0.01;
    auto *thresholds = continuous->add_subcommand("thresholds", "equal-noise predicate sweep");
    thresholds->add_option("--step", step)->check(CLI::PositiveNumber);
    double g_eps = 4.0 / 7.0;
    std::optional<double> g_f;
    double g_theta = 1.0;
    auto *gprime = continuous->add_subcommand("gprime", "improved triple joint measurement");
    gprime->add_option("--eps", g_eps)->check(CLI::Range(0.0, 1.0));
    gprime->add_option("--f", g_f, "free coefficient (default: interval midpoint)");
    gprime->add_option("--theta", g_theta);
    double p_step = 0.01;
    auto *phase = continuous->add_subcommand("phase-curve", "f(eps) for the phase-number pair");
    phase->add_option("--step", p_step)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kParse;
    }

    try {
        if (*dilate) {
            return cmd_dilate(cfg, povm_path);
        }
        if (*busch) {
            return cmd_busch(cfg, ev, bv);
        }
        if (*joint) {
            return cmd_joint(cfg, e_path, b_path);
        }
        if (*trinary) {
            return cmd_trinary(cfg, lambda, eta, psi);
        }
        if (*thresholds) {
            return cmd_thresholds(cfg, step);
        }
        if (*gprime) {
            return cmd_gprime(cfg, g_eps, g_f, g_theta);
        }
        if (*phase) {
            return cmd_phase_curve(cfg, p_step);
        }
    } catch (const naimark::io::ParseError &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kParse;
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const std::logic_error &e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kValidation;
    }
    return kParse;
}
