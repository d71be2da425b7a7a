// telecode: punctured CSS codes for encoded teleportation over purified
// EPR pairs. Subcommands: codes, puncture, sweep, crossing, select, validate.
//
// Exit codes: 0 success, 2 usage error, 3 degenerate puncture, 4 I/O error,
//             5 infeasible selection/crossing, 6 validation failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "telecode/css.hpp"
#include "telecode/oracle.hpp"
#include "telecode/puncture.hpp"
#include "telecode/purification.hpp"
#include "telecode/reliability.hpp"

namespace {

using namespace telecode;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;
constexpr int kExitIo = 4;
constexpr int kExitInfeasible = 5;
constexpr int kExitValidation = 6;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct RegistryChoice {
    std::string path;
    bool trust_labels = false;
};

// The builtin registry, or one loaded from a dump-format file.
const css::CodeRegistry& resolve_registry(const RegistryChoice& choice,
                                          std::optional<css::CodeRegistry>& storage) {
    if (choice.path.empty()) {
        return css::builtin_registry();
    }
    std::ifstream in(choice.path);
    if (!in) {
        throw Error("cannot open registry file " + choice.path);
    }
    storage.emplace(css::load_registry(in, choice.trust_labels));
    return *storage;
}

int cmd_codes(const css::CodeRegistry& registry, const std::string& id) {
    if (!id.empty()) {
        const css::CssCode* code = registry.find(id);
        if (code == nullptr) {
            std::cerr << "unknown code id " << id << "\n";
            return kExitUsage;
        }
        std::cout << css::dump_code(*code);
        return kExitOk;
    }
    for (const css::CssCode& code : registry.codes()) {
        std::cout << css::dump_code(code);
    }
    return kExitOk;
}

int cmd_puncture(const css::CodeRegistry& registry, const std::string& from,
                 const std::string& steps) {
    if (registry.find(from) == nullptr) {
        std::cerr << "unknown code id " << from << "\n";
        return kExitUsage;
    }
    const punct::LineageSpec spec = punct::parse_lineage(from, steps);
    const punct::ReplayResult result = punct::replay(spec, registry);

    std::cout << css::dump_code(result.code);

    std::cout << "removed_stabilizers";
    for (const punct::StabLabel& label : result.lineage.removed_stabilizers()) {
        std::cout << " " << label.to_string();
    }
    std::cout << "\n";
    if (result.lineage.attribution_complete) {
        std::cout << "kept_stabilizers";
        for (const punct::KeptStabilizer& ks : result.lineage.kept_stabilizers) {
            std::cout << " S^" << ks.block << "_" << ks.origin_row;
        }
        std::cout << "\n";
    }
    std::cout << "kept_qubits";
    for (std::size_t q : result.lineage.kept_qubits) {
        std::cout << " " << q;
    }
    std::cout << "\n";

    std::string match = "none";
    for (const css::CssCode& code : registry.codes()) {
        if (code.n == result.code.n && css::same_rowspaces(code, result.code)) {
            match = code.id;
            break;
        }
    }
    std::cout << "rowspace_match " << match << "\n";

    if (result.lineage.attribution_complete && !result.lineage.steps.empty()) {
        const punct::CompatReport compat = punct::syndrome_compatibility_check(
            registry.at(from), result.code, result.lineage, 1, 1000);
        std::cout << "syndrome_compatibility " << (compat.pass ? "pass" : "FAIL") << " ("
                  << compat.errors_checked << " errors checked)\n";
        if (!compat.pass) {
            return kExitValidation;
        }
    }
    return kExitOk;
}

int cmd_sweep(const css::CodeRegistry& registry, double f0_start, double f0_end, double f0_step,
              const std::vector<unsigned>& rounds, const std::vector<std::string>& codes,
              const std::string& output) {
    for (unsigned r : rounds) {
        if (r > pur::kMaxRounds) {
            std::cerr << "round " << r << " exceeds the guard of " << pur::kMaxRounds << "\n";
            return kExitUsage;
        }
    }
    std::vector<std::string> ids = codes;
    if (ids.size() == 1 && ids[0] == "all") {
        ids.clear();
    }
    const std::vector<double> grid = rel::fidelity_grid(f0_start, f0_end, f0_step);
    const std::vector<rel::ReliabilityPoint> points = rel::sweep(registry, grid, rounds, ids);

    std::ofstream out(output, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open output file " << output << "\n";
        return kExitIo;
    }
    rel::write_sweep_csv(out, points);
    out.flush();
    if (!out) {
        std::cerr << "write failed for " << output << "\n";
        return kExitIo;
    }
    std::cout << "rows " << points.size() << "\n";
    std::cout << "output " << output << "\n";
    return kExitOk;
}

int cmd_crossing(const css::CodeRegistry& registry, const std::string& id, unsigned r,
                 double target, double f0_min, double f0_max) {
    const css::CssCode* code = registry.find(id);
    if (code == nullptr) {
        std::cerr << "unknown code id " << id << "\n";
        return kExitUsage;
    }
    try {
        const double f0 = rel::find_crossing(*code, r, target, f0_min, f0_max);
        std::cout << "crossing_f0 " << fmt6(f0) << "\n";
        return kExitOk;
    } catch (const NoCrossing& e) {
        std::cout << "crossing_f0 none\n";
        std::cerr << e.what() << "\n";
        return kExitInfeasible;
    }
}

int cmd_select(const css::CodeRegistry& registry, double f0, unsigned r, double target,
               const std::string& family) {
    const rel::Family fam = family == "punctured" ? rel::Family::punctured : rel::Family::all;
    const rel::SelectionResult sel = rel::select_code(registry, f0, r, target, fam);

    std::cout << "target " << fmt6(target) << "  f0 " << fmt6(f0) << "  r " << r << "  family "
              << family << "\n";
    for (const rel::ReliabilityPoint& p : sel.evaluations) {
        const bool ok = p.p_l <= target;
        std::cout << "  " << p.code_id << " (n=" << p.n << "): pL " << fmt6(p.p_l)
                  << (ok ? "  [feasible]" : "") << "\n";
    }
    if (sel.chosen.has_value()) {
        std::cout << "chosen " << *sel.chosen << " (n=" << *sel.chosen_n << ")\n";
    } else {
        std::cout << "chosen none\n";
    }
    std::cout << "raw_pairs_per_teleported_qubit "
              << (sel.chosen ? *sel.chosen_n * pur::pairs_consumed(r) : 0)
              << "  (auxiliary: n * 2^r)\n";

    nlohmann::json j;
    j["target"] = target;
    j["f0"] = f0;
    j["r"] = r;
    j["family"] = family;
    j["feasible"] = sel.feasible;
    j["chosen"] = sel.chosen.has_value() ? nlohmann::json(*sel.chosen) : nlohmann::json(nullptr);
    j["chosen_n"] =
        sel.chosen_n.has_value() ? nlohmann::json(*sel.chosen_n) : nlohmann::json(nullptr);
    std::cout << j.dump(2) << "\n";

    return sel.chosen.has_value() ? kExitOk : kExitInfeasible;
}

int cmd_validate(const css::CodeRegistry& registry, std::uint64_t samples, std::uint64_t seed,
                 unsigned workers) {
    const auto points = oracle::default_validation_points();
    bool all_ok = true;
    std::ostringstream csv;
    csv << "code_id,f0,r,exact_threshold,exact_lookup,mc_mean,mc_stderr,samples,seed\n";

    // shared-decoder property of the punctured family
    if (registry.find("base-17") != nullptr) {
        const auto check_lineage = [&](const char* steps, const char* name) {
            const punct::ReplayResult r =
                punct::replay(punct::parse_lineage("base-17", steps), registry);
            const punct::CompatReport compat = punct::syndrome_compatibility_check(
                registry.at("base-17"), r.code, r.lineage, seed, 1000);
            std::cout << "syndrome compatibility base-17 -> " << name << ": "
                      << (compat.pass ? "pass" : "FAIL") << " (" << compat.errors_checked
                      << " errors checked)\n";
            if (!compat.pass) {
                all_ok = false;
            }
        };
        check_lineage("(0|1)@1,(0|1)@2,(0|1)@9,(0|1)@11", "punct-13");
        check_lineage("(0|1)@1,(0|1)@2,(0|1)@9,(0|1)@11,(1|0)@6,(1|0)@8,(1|0)@10,(1|0)@12,(1|0)@13",
                      "punct-8");
    }

    // the uncoded baseline's two readings (branch-factorized vs any Bell error)
    for (const oracle::PointSpec& pt : points) {
        const rel::UncodedDiagnostic diag = rel::uncoded_diagnostic(pur::purify(pt.f0, pt.r));
        std::cout << "uncoded baseline f0=" << fmt6(pt.f0) << " r=" << pt.r << ": factorized "
                  << fmt6(diag.factorized) << ", any-error " << fmt6(diag.any_error) << "\n";
    }

    for (const css::CssCode& code : registry.codes()) {
        const oracle::ConventionResolution res = oracle::resolve_convention(code);
        std::cout << "code " << code.id << ": convention "
                  << (res.convention == oracle::Convention::direct ? "direct" : "swapped")
                  << ", branch radii X=" << res.radius_x << " Z=" << res.radius_z
                  << ", measured branch distances X="
                  << (res.measured.x_branch ? std::to_string(*res.measured.x_branch) : "-")
                  << " Z=" << (res.measured.z_branch ? std::to_string(*res.measured.z_branch) : "-")
                  << "\n";
        const oracle::SyndromeTable xt(code, oracle::Branch::x_errors, res.radius_x);
        const oracle::SyndromeTable zt(code, oracle::Branch::z_errors, res.radius_z);

        for (const oracle::PointSpec& pt : points) {
            const pur::PauliChannel ch = pur::to_channel(pur::purify(pt.f0, pt.r));

            const double analytic = rel::logical_error(code, ch);
            const double thr_px = oracle::exact_branch_error(code, oracle::Branch::x_errors, ch.qx,
                                                             oracle::DecodeMode::threshold,
                                                             code.tx);
            const double thr_pz = oracle::exact_branch_error(code, oracle::Branch::z_errors, ch.qz,
                                                             oracle::DecodeMode::threshold,
                                                             code.tz);
            const double thr_paper = 1.0 - (1.0 - thr_px) * (1.0 - thr_pz);
            if (std::abs(analytic - thr_paper) > 1e-12) {
                std::cout << "FAIL analytic-vs-enumeration: " << code.id << " f0=" << pt.f0
                          << " r=" << pt.r << " delta=" << fmt6(analytic - thr_paper) << "\n";
                all_ok = false;
            }

            const double thr_x = oracle::exact_branch_error(code, oracle::Branch::x_errors, ch.qx,
                                                            oracle::DecodeMode::threshold,
                                                            res.radius_x);
            const double thr_z = oracle::exact_branch_error(code, oracle::Branch::z_errors, ch.qz,
                                                            oracle::DecodeMode::threshold,
                                                            res.radius_z);
            const double exact_threshold = 1.0 - (1.0 - thr_x) * (1.0 - thr_z);
            const double exact_lookup = oracle::exact_joint_lookup_error(code, ch, xt, zt);
            if (exact_lookup > exact_threshold + 1e-15) {
                std::cout << "FAIL lookup<=threshold: " << code.id << " f0=" << pt.f0
                          << " r=" << pt.r << "\n";
                all_ok = false;
            }

            // 3-sigma concordance, needing 2 of 3 consecutive seeds
            const double sigma =
                std::sqrt(exact_lookup * (1.0 - exact_lookup) / static_cast<double>(samples));
            oracle::McResult primary{};
            int passed = 0;
            int failed = 0;
            for (std::uint64_t s = seed; s < seed + 3 && passed < 2 && failed < 2; ++s) {
                const oracle::McResult mc =
                    oracle::mc_logical_error(code, ch, xt, zt, samples, s, workers);
                if (s == seed) {
                    primary = mc;
                }
                if (std::abs(mc.mean - exact_lookup) <= 3.0 * sigma) {
                    ++passed;
                } else {
                    ++failed;
                }
            }
            if (passed < 2) {
                std::cout << "FAIL mc-3sigma: " << code.id << " f0=" << pt.f0 << " r=" << pt.r
                          << " (2 of 3 seeds required)\n";
                all_ok = false;
            }

            csv << code.id << ',' << fmt17(pt.f0) << ',' << pt.r << ',' << fmt17(exact_threshold)
                << ',' << fmt17(exact_lookup) << ',' << fmt17(primary.mean) << ','
                << fmt17(primary.std_error) << ',' << samples << ',' << seed << "\n";
        }
    }

    std::cout << csv.str();
    std::cout << (all_ok ? "VALIDATION PASS" : "VALIDATION FAIL") << "\n";
    return all_ok ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"punctured CSS codes for encoded teleportation over purified EPR pairs"};
    app.require_subcommand(1);
    // key=value config, e.g. "[sweep]\nf0-start=0.9"; flags take precedence
    app.set_config("--config");

    RegistryChoice registry_choice;

    // codes
    auto* codes_cmd = app.add_subcommand("codes", "print registry codes and their matrices");
    std::string codes_id;
    codes_cmd->add_option("--id", codes_id, "print a single code");
    codes_cmd->add_option("--registry", registry_choice.path, "load codes from a dump file");
    codes_cmd->add_flag("--trust-labels", registry_choice.trust_labels,
                        "accept dX/dZ labels from the file without recomputation");

    // puncture
    auto* punct_cmd = app.add_subcommand("puncture", "apply a puncture lineage to a code");
    std::string punct_from;
    std::string punct_steps;
    punct_cmd->add_option("--from", punct_from, "origin code id")->required();
    punct_cmd->add_option("--steps", punct_steps,
                          "comma list of (0|1)@i / (1|0)@i, origin numbering");
    punct_cmd->add_option("--registry", registry_choice.path, "load codes from a dump file");
    punct_cmd->add_flag("--trust-labels", registry_choice.trust_labels, "trust file labels");

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "evaluate logical error over an f0 x r grid");
    double f0_start = 0.80, f0_end = 1.00, f0_step = 0.001;
    std::vector<unsigned> rounds = {0, 1, 2, 3};
    std::vector<std::string> sweep_codes = {"all"};
    std::string sweep_output = "sweep.csv";
    sweep_cmd->add_option("--f0-start", f0_start, "grid start")->capture_default_str();
    sweep_cmd->add_option("--f0-end", f0_end, "grid end")->capture_default_str();
    sweep_cmd->add_option("--f0-step", f0_step, "grid step")->capture_default_str();
    sweep_cmd->add_option("--rounds", rounds, "purification rounds")
        ->delimiter(',')
        ->capture_default_str();
    sweep_cmd->add_option("--codes", sweep_codes, "code ids, or 'all'")->delimiter(',');
    sweep_cmd->add_option("--output", sweep_output, "CSV path")->capture_default_str();

    // crossing
    auto* crossing_cmd =
        app.add_subcommand("crossing", "minimal f0 meeting a target at fixed rounds");
    std::string crossing_code;
    unsigned crossing_r = 0;
    double crossing_target = 1e-3;
    double f0_min = 0.80, f0_max = 1.00;
    crossing_cmd->add_option("--code", crossing_code, "code id")->required();
    crossing_cmd->add_option("--r", crossing_r, "purification rounds")->required();
    crossing_cmd->add_option("--target", crossing_target, "logical error target")->required();
    crossing_cmd->add_option("--f0-min", f0_min, "range start")->capture_default_str();
    crossing_cmd->add_option("--f0-max", f0_max, "range end")->capture_default_str();

    // select
    auto* select_cmd = app.add_subcommand("select", "shortest code meeting a target");
    double select_f0 = 0.0;
    unsigned select_r = 0;
    double select_target = 0.0;
    std::string select_family = "all";
    select_cmd->add_option("--f0", select_f0, "initial EPR fidelity")->required();
    select_cmd->add_option("--r", select_r, "purification rounds")->required();
    select_cmd->add_option("--target", select_target, "logical error target")->required();
    select_cmd->add_option("--family", select_family, "all | punctured")
        ->check(CLI::IsMember({"all", "punctured"}))
        ->capture_default_str();

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "run the oracle suite on the registry");
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 1;
    unsigned workers = 4;
    validate_cmd->add_option("--samples", samples, "Monte Carlo samples per point")
        ->capture_default_str();
    validate_cmd->add_option("--seed", seed, "primary RNG seed")->capture_default_str();
    validate_cmd->add_option("--workers", workers, "Monte Carlo worker threads")
        ->capture_default_str();
    validate_cmd->add_option("--registry", registry_choice.path, "load codes from a dump file");
    validate_cmd->add_flag("--trust-labels", registry_choice.trust_labels, "trust file labels");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        std::optional<css::CodeRegistry> storage;
        if (codes_cmd->parsed()) {
            return cmd_codes(resolve_registry(registry_choice, storage), codes_id);
        }
        if (punct_cmd->parsed()) {
            return cmd_puncture(resolve_registry(registry_choice, storage), punct_from,
                                punct_steps);
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(css::builtin_registry(), f0_start, f0_end, f0_step, rounds,
                             sweep_codes, sweep_output);
        }
        if (crossing_cmd->parsed()) {
            return cmd_crossing(css::builtin_registry(), crossing_code, crossing_r,
                                crossing_target, f0_min, f0_max);
        }
        if (select_cmd->parsed()) {
            if (samples == 0) {
                std::cerr << "sample count must be positive\n";
                return kExitUsage;
            }
            return cmd_select(css::builtin_registry(), select_f0, select_r, select_target,
                              select_family);
        }
        if (validate_cmd->parsed()) {
            if (samples == 0) {
                std::cerr << "sample count must be positive\n";
                return kExitUsage;
            }
            return cmd_validate(resolve_registry(registry_choice, storage), samples, seed,
                                workers);
        }
    } catch (const DegenerateResult& e) {
        std::cerr << e.what() << "\n";
        return kExitDegenerate;
    } catch (const DistanceContradiction& e) {
        std::cerr << e.what() << "\n";
        return kExitValidation;
    } catch (const NoCrossing& e) {
        std::cerr << e.what() << "\n";
        return kExitInfeasible;
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const IndexError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const OutOfRange& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const RegistryError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const GuardExceeded& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
