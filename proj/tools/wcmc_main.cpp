// wcmc: certify contraction, Poisson regularity, spectral gaps and maximal
// inequalities on finite-state Markov chains.
//
// Subcommands: analyze, poisson, maximal, zoo list|emit. Exit codes:
//   0 ok, 1 usage, 2 not contractive, 3 I/O or validation failure,
//   4 Poisson solver disagreement, 5 dominance failure, 6 other failure.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wcmc/core.hpp"
#include "wcmc/io.hpp"
#include "wcmc/poisson.hpp"
#include "wcmc/simulate.hpp"
#include "wcmc/spectral.hpp"
#include "wcmc/transport.hpp"
#include "wcmc/zoo.hpp"

namespace {

constexpr const char* kVersion = "wcmc 0.1.0";

using nlohmann::json;

struct RunConfig {
    std::string kernel_path, metric_path, function_path, nu_path;
    std::size_t m_max = 64;
    double lambda_tol = 1e-8;
    double tol = 1e-10;
    double p = 2.0;
    double q = 2.0;
    std::uint64_t n = 1000;
    std::uint64_t replicas = 10000;
    std::uint64_t seed = 0;
    std::vector<double> t_grid;
    std::string variant = "both";  // which variants gate the exit code
    std::optional<double> c_hat;
    std::size_t pair_sample = 0;  // 0 = exhaustive tau sweep
    unsigned threads = 1;
};

// config file first, then flags override whatever the user passed
void merge_config_file(RunConfig& cfg, const std::string& path) {
    const json j = wcmc::io::load_json_file(path);
    auto get = [&j](const char* key, auto& slot) {
        if (j.contains(key)) slot = j[key].get<std::decay_t<decltype(slot)>>();
    };
    get("kernel", cfg.kernel_path);
    get("metric", cfg.metric_path);
    get("function", cfg.function_path);
    get("nu", cfg.nu_path);
    get("m_max", cfg.m_max);
    get("lambda_tol", cfg.lambda_tol);
    get("tol", cfg.tol);
    get("p", cfg.p);
    get("q", cfg.q);
    get("n", cfg.n);
    get("replicas", cfg.replicas);
    get("seed", cfg.seed);
    get("variant", cfg.variant);
    get("pair_sample", cfg.pair_sample);
    if (j.contains("t_grid")) cfg.t_grid = j["t_grid"].get<std::vector<double>>();
    if (j.contains("c_hat")) cfg.c_hat = j["c_hat"].get<double>();
}

unsigned env_threads() {
    if (const char* env = std::getenv("POISSON_MC_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return 1;
}

// the semantic parameters embedded in every report (execution knobs such as
// --threads and output paths stay out so reruns are byte-identical)
json resolved_config(const RunConfig& cfg, const std::string& command) {
    json j;
    j["command"] = command;
    if (!cfg.kernel_path.empty()) j["kernel"] = cfg.kernel_path;
    if (!cfg.metric_path.empty()) j["metric"] = cfg.metric_path;
    if (!cfg.function_path.empty()) j["function"] = cfg.function_path;
    if (!cfg.nu_path.empty()) j["nu"] = cfg.nu_path;
    j["m_max"] = cfg.m_max;
    j["lambda_tol"] = cfg.lambda_tol;
    j["tol"] = cfg.tol;
    j["p"] = cfg.p;
    j["q"] = cfg.q;
    if (cfg.pair_sample > 0) j["pair_sample"] = cfg.pair_sample;
    if (command == "maximal") {
        j["n"] = cfg.n;
        j["replicas"] = cfg.replicas;
        j["seed"] = cfg.seed;
        j["t_grid"] = cfg.t_grid;
        j["variant"] = cfg.variant;
        if (cfg.c_hat) j["c_hat"] = *cfg.c_hat;
    }
    return j;
}

json certificate_to_json(const wcmc::BoundCertificate& c) {
    json j;
    j["name"] = c.name;
    j["lhs"] = c.lhs;
    j["rhs"] = c.rhs;
    j["slack"] = c.slack;
    j["holds"] = c.holds;
    return j;
}

int cmd_analyze(const RunConfig& cfg, const std::string& out_path) {
    const wcmc::FiniteKernel p = wcmc::io::load_kernel(cfg.kernel_path);
    const wcmc::MetricSpec d = wcmc::io::load_metric(cfg.metric_path);
    if (!wcmc::same_space(p.space, d.space))
        throw wcmc::IoError("kernel and metric state counts differ");

    std::optional<wcmc::PairList> sample;
    if (cfg.pair_sample > 0)
        sample = wcmc::strided_pair_sample(p.n(), cfg.pair_sample);
    const wcmc::ContractionProfile profile = wcmc::contraction_profile(
        p, d, cfg.m_max, cfg.lambda_tol, cfg.threads, sample ? &*sample : nullptr);
    const wcmc::Distribution pi = wcmc::stationary_distribution(p);
    const bool reversible = wcmc::check_reversibility(p, pi, 1e-10);
    const wcmc::GapReport gap = wcmc::l2_gap(p, pi);
    const wcmc::EccentricityReport ecc = wcmc::eccentricity_norm(pi, d, cfg.p);
    const auto [sigma_x, sigma] = wcmc::coarse_diffusion(p, d, pi);

    json rep;
    rep["version"] = kVersion;
    rep["config"] = resolved_config(cfg, "analyze");
    rep["reversible"] = reversible;
    rep["stationary"] = pi.weights;
    rep["profile"] = wcmc::io::profile_to_json(profile);
    rep["tau_coverage"] = profile.coverage;
    rep["lambda_bounds"] = {{"geometric", profile.bound_geometric},
                            {"product", profile.bound_product}};
    rep["diameter"] = wcmc::diameter(d);
    rep["eccentricity"] = {{"p", ecc.p}, {"values", ecc.values}, {"eps_p", ecc.eps_p}};
    rep["coarse_diffusion"] = {{"sigma_x", sigma_x.values}, {"sigma", sigma}};
    rep["spectral"] = {{"kappa", gap.kappa},
                       {"reversible", gap.reversible},
                       {"method", wcmc::gap_method_name(gap.method)}};

    bool certificates_hold = true;
    if (reversible) {
        const wcmc::BoundCertificate cert = wcmc::check_gap_vs_tau(p, pi, d, profile);
        rep["gap_vs_tau"] = certificate_to_json(cert);
        certificates_hold = certificates_hold && cert.holds;
    } else {
        rep["gap_vs_tau"] = {{"skipped", "kernel is not reversible"}};
    }
    rep["certificates_hold"] = certificates_hold;

    wcmc::io::write_text_file(out_path, rep.dump(2) + "\n");
    std::cout << "analyze: report written to " << out_path
              << (certificates_hold ? "" : " (certificate FAILED)") << "\n";
    return certificates_hold ? 0 : 6;
}

int cmd_poisson(const RunConfig& cfg, const std::string& prefix) {
    const wcmc::FiniteKernel p = wcmc::io::load_kernel(cfg.kernel_path);
    const wcmc::MetricSpec d = wcmc::io::load_metric(cfg.metric_path);
    const wcmc::StateFunction f = wcmc::io::load_function(cfg.function_path);
    if (!wcmc::same_space(p.space, d.space) || !wcmc::same_space(p.space, f.space))
        throw wcmc::IoError("kernel, metric and function state counts differ");

    const wcmc::Distribution pi = wcmc::stationary_distribution(p);
    const wcmc::ContractionProfile profile =
        wcmc::contraction_profile(p, d, cfg.m_max, cfg.lambda_tol, cfg.threads);
    const wcmc::PoissonSolution direct = wcmc::solve_direct(p, pi, f);
    const wcmc::PoissonSolution neumann = wcmc::solve_neumann(p, pi, f, profile, d, cfg.tol);

    double disagreement = 0.0;
    for (std::size_t i = 0; i < p.n(); ++i)
        disagreement =
            std::max(disagreement, std::fabs(direct.u.values[i] - neumann.u.values[i]));

    const std::vector<wcmc::BoundCertificate> certs =
        wcmc::certify_lipschitz_bounds(direct, f, d, pi, profile, cfg.p);
    bool all_hold = true;
    for (const auto& c : certs) all_hold = all_hold && c.holds;

    wcmc::io::write_text_file(prefix + "certificates.csv", wcmc::io::certificates_csv(certs));
    wcmc::io::write_text_file(prefix + "u.json",
                              wcmc::io::function_to_json(direct.u).dump(2) + "\n");

    json rep;
    rep["version"] = kVersion;
    rep["config"] = resolved_config(cfg, "poisson");
    rep["residual_direct"] = direct.residual_inf;
    rep["residual_neumann"] = neumann.residual_inf;
    rep["neumann_terms"] = *neumann.neumann_terms;
    rep["solver_disagreement"] = disagreement;
    rep["certificates_hold"] = all_hold;
    wcmc::io::write_text_file(prefix + "poisson.json", rep.dump(2) + "\n");

    std::cout << "poisson: disagreement " << wcmc::io::format_double(disagreement)
              << ", certificates " << (all_hold ? "hold" : "FAILED") << "\n";
    if (disagreement > 1e-6) {
        std::cerr << "poisson: direct and series solvers disagree beyond 1e-6\n";
        return 4;
    }
    return all_hold ? 0 : 6;
}

int cmd_maximal(const RunConfig& cfg, const std::string& prefix,
                const std::string& dump_path, std::uint64_t dump_count) {
    if (cfg.t_grid.empty()) {
        std::cerr << "maximal: t_grid must not be empty\n";
        return 1;
    }
    const wcmc::FiniteKernel p = wcmc::io::load_kernel(cfg.kernel_path);
    const wcmc::MetricSpec d = wcmc::io::load_metric(cfg.metric_path);
    const wcmc::StateFunction f = wcmc::io::load_function(cfg.function_path);
    std::optional<wcmc::Distribution> nu;
    if (!cfg.nu_path.empty()) nu = wcmc::io::load_distribution(cfg.nu_path);

    wcmc::MaximalConfig mc;
    mc.n = cfg.n;
    mc.replicas = cfg.replicas;
    mc.seed = cfg.seed;
    mc.t_grid = cfg.t_grid;
    mc.q = cfg.q;
    mc.m_max = cfg.m_max;
    mc.lambda_tol = cfg.lambda_tol;
    mc.c_hat = cfg.c_hat;
    mc.threads = cfg.threads;
    const wcmc::MaximalReport rep = wcmc::mc_maximal_experiment(p, d, f, mc, nu);

    std::ostringstream csv;
    csv << "t,tail,tail_lo,tail_hi,doob_as_stated,doob_proof_consistent,"
           "dominates_as_stated,dominates_proof_consistent";
    if (rep.has_finite_moment) csv << ",finite_moment,dominates_finite_moment";
    csv << "\n";
    using wcmc::io::format_double;
    for (std::size_t i = 0; i < rep.t_grid.size(); ++i) {
        csv << format_double(rep.t_grid[i]) << ',' << format_double(rep.tail[i]) << ','
            << format_double(rep.tail_lo[i]) << ',' << format_double(rep.tail_hi[i]) << ','
            << format_double(rep.doob_as_stated[i]) << ',' << format_double(rep.doob_proof[i])
            << ',' << (rep.dom_tail_as_stated[i] ? "true" : "false") << ','
            << (rep.dom_tail_proof[i] ? "true" : "false");
        if (rep.has_finite_moment)
            csv << ',' << format_double(rep.fm_tail[i]) << ','
                << (rep.dom_tail_fm[i] ? "true" : "false");
        csv << "\n";
    }
    wcmc::io::write_text_file(prefix + "maximal.csv", csv.str());

    json sj;
    sj["version"] = kVersion;
    sj["config"] = resolved_config(cfg, "maximal");
    sj["f_lipschitz"] = rep.f_lipschitz;
    sj["delta"] = rep.delta;
    sj["lambda"] = rep.lambda;
    sj["c"] = rep.c;
    sj["rn_norm"] = rep.rn_norm;
    sj["eps_r"] = rep.eps_r;
    sj["second_moment"] = rep.second_moment;
    sj["second_moment_se"] = rep.second_moment_se;
    sj["l2_as_stated"] = rep.l2_as_stated;
    sj["l2_proof_consistent"] = rep.l2_proof;
    sj["dominates_l2_as_stated"] = rep.dom_l2_as_stated;
    sj["dominates_l2_proof_consistent"] = rep.dom_l2_proof;
    if (rep.has_finite_moment) {
        sj["finite_moment_l2"] = rep.fm_l2;
        sj["dominates_finite_moment_l2"] = rep.dom_l2_fm;
    }
    sj["degenerate_ci"] = rep.degenerate_ci;
    sj["dominance_ok"] = rep.dominance_ok;
    wcmc::io::write_text_file(prefix + "summary.json", sj.dump(2) + "\n");

    if (!dump_path.empty()) {
        const wcmc::Distribution pi = wcmc::stationary_distribution(p);
        const wcmc::Distribution& start = nu ? *nu : pi;
        std::ostringstream dump;
        for (std::uint64_t r = 0; r < std::min<std::uint64_t>(dump_count, cfg.replicas); ++r) {
            dump << "# replica " << r << "\n";
            const wcmc::Trajectory traj =
                wcmc::sample_trajectory(p, start, cfg.n, cfg.seed, r);
            for (std::uint32_t s : traj.states) dump << s << "\n";
        }
        wcmc::io::write_text_file(dump_path, dump.str());
    }

    // the exit gate follows the configured variant; the report always
    // carries both variants
    bool gate = true;
    for (std::size_t i = 0; i < rep.t_grid.size(); ++i) {
        if (cfg.variant != "proof-consistent") gate = gate && rep.dom_tail_as_stated[i];
        if (cfg.variant != "as-stated") gate = gate && rep.dom_tail_proof[i];
        if (rep.has_finite_moment) gate = gate && rep.dom_tail_fm[i];
    }
    if (cfg.variant != "proof-consistent") gate = gate && rep.dom_l2_as_stated;
    if (cfg.variant != "as-stated") gate = gate && rep.dom_l2_proof;
    if (rep.has_finite_moment) gate = gate && rep.dom_l2_fm;

    std::cout << "maximal: report written to " << prefix << "summary.json; dominance "
              << (gate ? "holds" : "FAILED") << "\n";
    return gate ? 0 : 5;
}

double require_param(const std::map<std::string, double>& params, const std::string& key,
                     std::optional<double> fallback = std::nullopt) {
    auto it = params.find(key);
    if (it != params.end()) return it->second;
    if (fallback) return *fallback;
    throw wcmc::InvalidParameter("zoo emit: missing parameter " + key);
}

int cmd_zoo_emit(const std::string& name, const std::map<std::string, double>& params,
                 const std::string& graph, const std::string& prefix) {
    wcmc::FiniteKernel kernel;
    wcmc::MetricSpec metric;
    std::optional<wcmc::Distribution> pi;

    if (name == "two-state") {
        auto inst =
            wcmc::zoo::two_state(require_param(params, "a"), require_param(params, "b"));
        kernel = inst.kernel;
        metric = inst.metric;
        pi = inst.pi;
    } else if (name == "dyadic-shift") {
        auto inst = wcmc::zoo::dyadic_shift(
            static_cast<std::size_t>(require_param(params, "k")));
        kernel = inst.kernel;
        metric = inst.metric;
        pi = inst.pi;
    } else if (name == "ising-heat-bath") {
        const auto sites = static_cast<std::size_t>(require_param(params, "sites"));
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        if (graph == "path" || graph.empty()) edges = wcmc::zoo::path_graph(sites);
        else if (graph == "cycle") edges = wcmc::zoo::cycle_graph(sites);
        else if (graph == "complete") edges = wcmc::zoo::complete_graph(sites);
        else throw wcmc::InvalidParameter("zoo emit: unknown graph " + graph);
        auto inst = wcmc::zoo::ising_heat_bath(edges, sites,
                                               require_param(params, "beta", 0.0),
                                               require_param(params, "h", 0.0));
        kernel = inst.kernel;
        metric = inst.metric;
        pi = inst.pi;
    } else if (name == "independent-mh") {
        const auto n = static_cast<std::size_t>(require_param(params, "n"));
        const auto seed = static_cast<std::uint64_t>(require_param(params, "seed", 0.0));
        auto base = wcmc::zoo::random_reversible(n, seed);
        const wcmc::Distribution proposal(
            base.kernel.space, std::vector<double>(n, 1.0 / static_cast<double>(n)));
        kernel = wcmc::zoo::independent_mh(base.target, proposal);
        metric = wcmc::trivial_metric(base.kernel.space);
        pi = base.target;
    } else if (name == "dobrushin-mixture") {
        const auto n = static_cast<std::size_t>(require_param(params, "n"));
        const auto seed = static_cast<std::uint64_t>(require_param(params, "seed", 0.0));
        const double theta = require_param(params, "theta");
        auto base = wcmc::zoo::random_reversible(n, seed);
        kernel = wcmc::zoo::dobrushin_mixture(base.kernel, theta, base.target);
        metric = base.metric;
        pi = base.target;
    } else if (name == "random-reversible") {
        const auto n = static_cast<std::size_t>(require_param(params, "n"));
        const auto seed = static_cast<std::uint64_t>(require_param(params, "seed", 0.0));
        std::optional<wcmc::zoo::DriftSpec> drift;
        if (params.count("alpha")) {
            wcmc::zoo::DriftSpec ds;
            ds.alpha = params.at("alpha");
            const double growth = require_param(params, "growth", 2.0);
            ds.V.resize(n);
            for (std::size_t i = 0; i < n; ++i)
                ds.V[i] = std::exp(growth * static_cast<double>(i) /
                                   static_cast<double>(n - 1));
            drift = ds;
        }
        auto inst = wcmc::zoo::random_reversible(n, seed, drift);
        kernel = inst.kernel;
        metric = inst.metric;
        pi = inst.target;
    } else {
        throw wcmc::InvalidParameter("zoo emit: unknown model " + name);
    }

    wcmc::io::write_text_file(prefix + "kernel.json",
                              wcmc::io::kernel_to_json(kernel).dump(2) + "\n");
    wcmc::io::write_text_file(prefix + "metric.json",
                              wcmc::io::metric_to_json(metric).dump(2) + "\n");
    if (pi)
        wcmc::io::write_text_file(prefix + "pi.json",
                                  wcmc::io::distribution_to_json(*pi).dump(2) + "\n");
    std::cout << "zoo: wrote " << prefix << "kernel.json and " << prefix << "metric.json\n";
    return 0;
}

int cmd_zoo_list() {
    std::cout << "available models (zoo emit <name> --param key=value ...):\n";
    for (const auto& e : wcmc::zoo::catalog()) {
        std::cout << "  " << e.name;
        if (!e.instantiable) std::cout << "  [reference only]";
        std::cout << "\n      params: " << e.params << "\n      " << e.summary << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-state Markov chain contraction and maximal-inequality toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path, out_path = "analysis.json", prefix = "wcmc_";
    std::string dump_path, zoo_name, zoo_graph;
    std::uint64_t dump_count = 1;
    std::vector<std::string> zoo_params;
    unsigned threads_flag = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file; flags override its fields");
        sub->add_option("--kernel", cfg.kernel_path, "kernel JSON file");
        sub->add_option("--metric", cfg.metric_path, "metric JSON file");
        sub->add_option("--m-max", cfg.m_max, "largest lag probed for contraction");
        sub->add_option("--lambda-tol", cfg.lambda_tol, "certified tail target for Lambda");
        sub->add_option("--threads", threads_flag,
                        "worker threads (env POISSON_MC_THREADS as fallback)");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "contraction / spectral report");
    add_common(analyze);
    analyze->add_option("--p", cfg.p, "eccentricity exponent");
    analyze->add_option("--pair-sample", cfg.pair_sample,
                        "tau sweep pair subsample size (0 = exhaustive; required above 256 "
                        "states, coverage is reported)");
    analyze->add_option("--out", out_path, "report path");

    CLI::App* poisson = app.add_subcommand("poisson", "solve and certify Poisson's equation");
    add_common(poisson);
    poisson->add_option("--function", cfg.function_path, "forcing function JSON file");
    poisson->add_option("--tol", cfg.tol, "certified series truncation tolerance");
    poisson->add_option("--p", cfg.p, "certificate exponent");
    poisson->add_option("--out-prefix", prefix, "output file prefix");

    CLI::App* maximal = app.add_subcommand("maximal", "Monte Carlo maximal-inequality check");
    add_common(maximal);
    maximal->add_option("--function", cfg.function_path, "forcing function JSON file");
    maximal->add_option("--nu", cfg.nu_path, "initial distribution (default: stationary)");
    maximal->add_option("--n", cfg.n, "path length");
    maximal->add_option("--replicas", cfg.replicas, "number of replicas");
    maximal->add_option("--seed", cfg.seed, "RNG seed");
    maximal->add_option("--q", cfg.q, "integrability exponent of dnu/dpi");
    maximal->add_option("--t-grid", cfg.t_grid, "tail thresholds")->delimiter(',');
    maximal->add_option("--variant", cfg.variant,
                        "bound variant gating the exit code: as-stated, proof-consistent, both");
    maximal->add_option("--out-prefix", prefix, "output file prefix");
    maximal->add_option("--dump-trajectories", dump_path, "write sampled paths as text");
    maximal->add_option("--dump-count", dump_count, "how many replicas to dump");

    CLI::App* zoo = app.add_subcommand("zoo", "model constructors");
    CLI::App* zoo_list = zoo->add_subcommand("list", "list available models");
    CLI::App* zoo_emit = zoo->add_subcommand("emit", "write kernel/metric files for a model");
    zoo_emit->add_option("name", zoo_name, "model name")->required();
    zoo_emit->add_option("--param", zoo_params, "model parameter key=value (repeatable)");
    zoo_emit->add_option("--graph", zoo_graph, "graph family for ising-heat-bath");
    zoo_emit->add_option("--out-prefix", prefix, "output file prefix");
    zoo->require_subcommand(1);

    // remember which flags were set before the config file fills the gaps
    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) {
            RunConfig flag_values = cfg;
            merge_config_file(cfg, config_path);
            // flags override config-file fields
            auto keep = [](const std::string& flag_val, std::string& slot) {
                if (!flag_val.empty()) slot = flag_val;
            };
            CLI::App* sub = app.get_subcommands().front();
            auto flag_set = [sub](const char* name) {
                const CLI::Option* opt = sub->get_option_no_throw(name);
                return opt != nullptr && opt->count() > 0;
            };
            keep(flag_values.kernel_path, cfg.kernel_path);
            keep(flag_values.metric_path, cfg.metric_path);
            keep(flag_values.function_path, cfg.function_path);
            keep(flag_values.nu_path, cfg.nu_path);
            if (flag_set("--m-max")) cfg.m_max = flag_values.m_max;
            if (flag_set("--lambda-tol")) cfg.lambda_tol = flag_values.lambda_tol;
            if (flag_set("--tol")) cfg.tol = flag_values.tol;
            if (flag_set("--p")) cfg.p = flag_values.p;
            if (flag_set("--q")) cfg.q = flag_values.q;
            if (flag_set("--n")) cfg.n = flag_values.n;
            if (flag_set("--replicas")) cfg.replicas = flag_values.replicas;
            if (flag_set("--seed")) cfg.seed = flag_values.seed;
            if (flag_set("--t-grid")) cfg.t_grid = flag_values.t_grid;
            if (flag_set("--variant")) cfg.variant = flag_values.variant;
            if (flag_set("--pair-sample")) cfg.pair_sample = flag_values.pair_sample;
        }
        cfg.threads = threads_flag >= 1 ? threads_flag : env_threads();

        if (analyze->parsed()) return cmd_analyze(cfg, out_path);
        if (poisson->parsed()) return cmd_poisson(cfg, prefix);
        if (maximal->parsed()) return cmd_maximal(cfg, prefix, dump_path, dump_count);
        if (zoo->parsed()) {
            if (zoo_list->parsed()) return cmd_zoo_list();
            std::map<std::string, double> params;
            for (const std::string& kv : zoo_params) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw wcmc::InvalidParameter("zoo emit: --param expects key=value");
                params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
            }
            return cmd_zoo_emit(zoo_name, params, zoo_graph, prefix);
        }
    } catch (const wcmc::NotContractive& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const wcmc::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const wcmc::InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const wcmc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 6;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 6;
    }
    return 0;
}
