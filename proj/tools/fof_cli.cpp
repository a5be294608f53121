// Command-line front end: simulate / fit / extrapolate / eval / powerlaw.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "fof/baselines.hpp"
#include "fof/cluster.hpp"
#include "fof/extrapolate.hpp"
#include "fof/inference.hpp"
#include "fof/io.hpp"
#include "fof/tables.hpp"

namespace {

using namespace fof;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

ClusterAssignment assignment_from_fof(const FoFVector& fof) {
    std::vector<std::uint32_t> sizes;
    for (const auto& [size, mult] : fof.counts)
        for (std::uint64_t k = 0; k < mult; ++k) sizes.push_back(size);
    return ClusterAssignment::from_sizes(sizes);
}

ClusterAssignment load_assignment(const std::string& path, const std::string& format) {
    auto in = open_input(path);
    if (format == "assignment") return read_assignment(in);
    if (format == "counts") return counts_to_assignment(read_counts_tsv(in));
    if (format == "text") return counts_to_assignment(tokenize(in));
    if (format == "fof") return assignment_from_fof(read_fof_csv(in));
    throw std::runtime_error("unknown input format: " + format);
}

AMode parse_a_mode(const std::string& text) {
    if (text == "free") return AMode::free_a();
    if (text == "negative") return AMode::negative();
    if (text.rfind("fixed=", 0) == 0) return AMode::fixed(std::stod(text.substr(6)));
    throw CLI::ValidationError("--a-mode", "expected free, negative, or fixed=V");
}

struct SimulateArgs {
    std::string model = "gnbp";
    double gamma0 = 1.0, a = 0.0, p = 0.5;
    std::string construction = "compound";
    std::uint64_t n = 0;
    std::uint32_t i_max = 64;
    std::uint32_t cap = kDefaultTableCap;
    std::uint64_t seed = 0;
    std::uint32_t replicates = 1;
    std::string out = "sim";
};

struct SimSummary {
    std::uint64_t n = 0, l = 0, m1 = 0, m2 = 0;
};

void run_simulate(const SimulateArgs& args) {
    GnbpParams params{args.gamma0, args.model == "crp" ? 0.0 : args.a, args.p};
    params.validate();
    const bool sequential = args.construction == "sequential";
    if (sequential && args.n == 0)
        throw CLI::ValidationError("--n", "sequential construction needs --n");

    // the table depends only on (n, params); reuse it across replicates
    std::optional<CompletionTable> table;
    if (sequential)
        table.emplace(completion_table_cached(params, static_cast<std::uint32_t>(args.n),
                                              args.cap));

    std::vector<SimSummary> summaries(args.replicates);
    std::vector<FoFVector> fofs(args.replicates);
    std::vector<ClusterAssignment> assigns(args.replicates);

    auto one = [&](std::uint32_t rep) {
        RngStream rng = RngStream(args.seed).split(rep);
        FoFVector fof;
        ClusterAssignment z;
        if (args.construction == "poisson") {
            fof = simulate_fof_poisson(params, args.i_max, rng);
            z = assignment_from_fof(fof);
        } else if (args.construction == "stickbreak") {
            fof = simulate_fof_stickbreak(params, rng);
            z = assignment_from_fof(fof);
        } else if (args.construction == "compound") {
            z = simulate_compound(params, rng);
            fof = z.fof();
        } else {
            z = sequential_sample(*table, rng);
            fof = z.fof();
        }
        SimSummary s;
        s.n = fof.total_size();
        s.l = fof.cluster_count();
        s.m1 = fof.counts.count(1) ? fof.counts.at(1) : 0;
        s.m2 = fof.counts.count(2) ? fof.counts.at(2) : 0;
        summaries[rep] = s;
        fofs[rep] = std::move(fof);
        assigns[rep] = std::move(z);
    };

    if (args.replicates == 1) {
        one(0);
    } else {
        // fan replicates out across workers; results are replicate-indexed,
        // so the merged output does not depend on scheduling
        unsigned workers = std::max(1u, std::thread::hardware_concurrency());
        workers = std::min<unsigned>(workers, args.replicates);
        std::atomic<std::uint32_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    std::uint32_t rep = next.fetch_add(1);
                    if (rep >= args.replicates) return;
                    one(rep);
                }
            });
        for (auto& t : pool) t.join();
    }

    if (args.replicates == 1) {
        auto fof_out = open_output(args.out + ".fof.csv");
        write_fof_csv(fof_out, fofs[0]);
        auto assign_out = open_output(args.out + ".assign.txt");
        write_assignment(assign_out, assigns[0]);
        std::cout << "n: " << summaries[0].n << "\nl: " << summaries[0].l << "\n";
        return;
    }

    auto tsv = open_output(args.out + ".replicates.tsv");
    tsv << "replicate\tn\tl\tm1\tm2\n";
    double mean_n = 0.0, mean_l = 0.0;
    for (std::uint32_t rep = 0; rep < args.replicates; ++rep) {
        const SimSummary& s = summaries[rep];
        tsv << rep << '\t' << s.n << '\t' << s.l << '\t' << s.m1 << '\t' << s.m2 << '\n';
        mean_n += static_cast<double>(s.n);
        mean_l += static_cast<double>(s.l);
    }
    std::cout << "replicates: " << args.replicates << "\n"
              << "mean_n: " << fmt(mean_n / args.replicates) << "\n"
              << "mean_l: " << fmt(mean_l / args.replicates) << "\n";
}

struct FitArgs {
    std::string input;
    std::string format = "assignment";
    std::string model = "gnbp";
    std::string a_mode = "free";
    std::uint32_t iters = 1000, burnin = 500;
    std::uint64_t seed = 0;
    std::string trace_out;
};

void run_fit(const FitArgs& args) {
    ClusterAssignment z = load_assignment(args.input, args.format);
    McmcConfig cfg;
    cfg.iterations = args.iters;
    cfg.burn_in = args.burnin;
    cfg.seed = args.seed;
    cfg.validate();
    RngStream rng(args.seed);

    McmcTrace trace;
    if (args.model == "gnbp") {
        trace = fit_gnbp(z, cfg, parse_a_mode(args.a_mode), rng);
    } else if (args.model == "crp") {
        trace = fit_gnbp(z, cfg, AMode::fixed(0.0), rng);
    } else {
        trace = fit_pitman_yor(z, cfg, rng);
    }

    if (!args.trace_out.empty()) {
        auto out = open_output(args.trace_out);
        write_trace_csv(out, trace);
    }

    double g = 0, a = 0, p = 0;
    std::uint64_t kept = 0;
    for (const TraceRow& row : trace.rows)
        if (row.iter > cfg.burn_in) {
            g += row.gamma0;
            a += row.a;
            p += row.p;
            ++kept;
        }
    std::cout << "model: " << args.model << "\n"
              << "n: " << z.n() << "\nl: " << z.cluster_count() << "\n"
              << "kept: " << kept << "\n"
              << "gamma0_mean: " << fmt(g / kept) << "\n"
              << "a_mean: " << fmt(a / kept) << "\n"
              << "p_mean: " << fmt(p / kept) << "\n";
}

struct ExtrapolateArgs {
    std::string sample;
    std::string format = "assignment";
    std::uint64_t population_size = 0;
    std::string model = "gnbp";
    std::string a_mode = "free";
    std::uint32_t sweeps = 5;
    std::uint32_t iters = 1000, burnin = 500;
    std::uint64_t seed = 0;
    std::string out_fof, out_trace, dump_dir;
};

void run_extrapolate_cmd(const ExtrapolateArgs& args) {
    ExtrapolationJob job;
    job.observed = load_assignment(args.sample, args.format);
    if (args.population_size < job.observed.n())
        throw CLI::ValidationError("--population-size",
                                   "population size below the sample size");
    job.population_size = args.population_size;
    if (args.model == "gnbp")
        job.model = {ModelKind::gnbp, parse_a_mode(args.a_mode)};
    else if (args.model == "crp")
        job.model = {ModelKind::crp, AMode::fixed(0.0)};
    else
        job.model = {ModelKind::pitman_yor, AMode::free_a()};
    job.cfg.iterations = args.iters;
    job.cfg.burn_in = args.burnin;
    job.cfg.inner_sweeps = args.sweeps;
    job.cfg.seed = args.seed;
    job.cfg.validate();
    job.record_fof_samples = !args.dump_dir.empty();

    RngStream rng(args.seed);
    ExtrapolationResult res = run_extrapolation(job, rng);

    if (!args.out_fof.empty()) {
        auto out = open_output(args.out_fof);
        write_posterior_fof_csv(out, res.posterior);
    }
    if (!args.out_trace.empty()) {
        auto out = open_output(args.out_trace);
        write_trace_csv(out, res.trace);
    }
    if (!args.dump_dir.empty()) {
        std::filesystem::create_directories(args.dump_dir);
        for (std::size_t k = 0; k < res.fof_samples.size(); ++k) {
            char name[32];
            std::snprintf(name, sizeof(name), "sample_%06zu.fof.csv", k + 1);
            auto out = open_output((std::filesystem::path(args.dump_dir) / name).string());
            write_fof_csv(out, res.fof_samples[k]);
        }
    }
    double total = 0.0, clusters = 0.0;
    for (const auto& [size, mean] : res.posterior.mean) {
        total += static_cast<double>(size) * mean;
        clusters += mean;
    }
    std::cout << "kept: " << res.posterior.kept << "\n"
              << "mean_total: " << fmt(total) << "\n"
              << "mean_clusters: " << fmt(clusters) << "\n";
}

void run_eval(const std::string& pop_path, const std::string& pred_path,
              const std::string& report_path) {
    auto pop_in = open_input(pop_path);
    FoFVector pop = read_fof_csv(pop_in);
    auto pred_in = open_input(pred_path);
    std::map<std::uint32_t, double> pred = read_fof_csv_real(pred_in);

    std::ostringstream report;
    report << "rmse: " << fmt(rmse(pop, pred)) << "\n"
           << "chi_squared: " << fmt(chi_squared(pop, pred)) << "\n";
    if (report_path.empty())
        std::cout << report.str();
    else
        open_output(report_path) << report.str();
}

void run_powerlaw(const std::string& fof_path, const std::string& report_path,
                  const std::string& plot_path) {
    auto in = open_input(fof_path);
    FoFVector fof = read_fof_csv(in);
    PowerLawFit fit = fit_powerlaw_tail(fof);

    std::ostringstream report;
    report << "i_min: " << fit.i_min << "\n"
           << "alpha: " << fmt(fit.alpha) << "\n"
           << "alpha_h: " << fmt(fit.alpha_h) << "\n"
           << "head_intercept: " << fmt(fit.head_intercept) << "\n"
           << "tail_intercept: " << fmt(fit.tail_intercept) << "\n"
           << "ks_distance: " << fmt(fit.ks_distance) << "\n";
    if (report_path.empty())
        std::cout << report.str();
    else
        open_output(report_path) << report.str();

    if (!plot_path.empty()) {
        auto out = open_output(plot_path);
        out << "ln_i\tln_m\tfitted_head\tfitted_tail\n";
        for (const auto& [i, m] : fof.counts) {
            double li = std::log(static_cast<double>(i));
            double lm = std::log(static_cast<double>(m));
            double head = fit.head_intercept - fit.alpha_h * li;
            double tail = fit.tail_intercept - fit.alpha * li;
            out << fmt(li) << '\t' << fmt(lm) << '\t' << fmt(head) << '\t' << fmt(tail)
                << '\n';
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"frequency-of-frequencies modelling, inference, and extrapolation"};
    app.require_subcommand(1);
    app.set_config("--config");

    SimulateArgs sim;
    CLI::App* c_sim = app.add_subcommand("simulate", "draw cluster structures");
    c_sim->add_option("--model", sim.model)->check(CLI::IsMember({"gnbp", "crp"}));
    c_sim->add_option("--gamma0", sim.gamma0);
    c_sim->add_option("--a", sim.a);
    c_sim->add_option("--p", sim.p);
    c_sim->add_option("--construction", sim.construction)
        ->check(CLI::IsMember({"poisson", "stickbreak", "compound", "sequential"}));
    c_sim->add_option("--n", sim.n);
    c_sim->add_option("--imax", sim.i_max);
    c_sim->add_option("--cap", sim.cap);
    c_sim->add_option("--seed", sim.seed);
    c_sim->add_option("--replicates", sim.replicates)->check(CLI::PositiveNumber);
    c_sim->add_option("--out", sim.out);

    FitArgs fit;
    CLI::App* c_fit = app.add_subcommand("fit", "mcmc parameter inference");
    c_fit->add_option("--input", fit.input)->required();
    c_fit->add_option("--input-format", fit.format)
        ->check(CLI::IsMember({"assignment", "counts", "text", "fof"}));
    c_fit->add_option("--model", fit.model)->check(CLI::IsMember({"gnbp", "py", "crp"}));
    c_fit->add_option("--a-mode", fit.a_mode);
    c_fit->add_option("--iters", fit.iters);
    c_fit->add_option("--burnin", fit.burnin);
    c_fit->add_option("--seed", fit.seed);
    c_fit->add_option("--trace-out", fit.trace_out);

    ExtrapolateArgs ext;
    CLI::App* c_ext = app.add_subcommand("extrapolate", "population FoF from a sample");
    c_ext->add_option("--sample", ext.sample)->required();
    c_ext->add_option("--sample-format", ext.format)
        ->check(CLI::IsMember({"assignment", "counts", "text", "fof"}));
    c_ext->add_option("--population-size", ext.population_size)->required();
    c_ext->add_option("--model", ext.model)->check(CLI::IsMember({"gnbp", "py", "crp"}));
    c_ext->add_option("--a-mode", ext.a_mode);
    c_ext->add_option("--T", ext.sweeps);
    c_ext->add_option("--iters", ext.iters);
    c_ext->add_option("--burnin", ext.burnin);
    c_ext->add_option("--seed", ext.seed);
    c_ext->add_option("--out-fof", ext.out_fof);
    c_ext->add_option("--out-trace", ext.out_trace);
    c_ext->add_option("--dump-samples", ext.dump_dir);

    std::string eval_pop, eval_pred, eval_report;
    CLI::App* c_eval = app.add_subcommand("eval", "rmse and chi-squared metrics");
    c_eval->add_option("--pop", eval_pop)->required();
    c_eval->add_option("--pred", eval_pred)->required();
    c_eval->add_option("--report", eval_report);

    std::string pl_fof, pl_report, pl_plot;
    CLI::App* c_pl = app.add_subcommand("powerlaw", "discrete power-law tail fit");
    c_pl->add_option("--fof", pl_fof)->required();
    c_pl->add_option("--report", pl_report);
    c_pl->add_option("--plot-data", pl_plot);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_sim->parsed()) run_simulate(sim);
        if (c_fit->parsed()) run_fit(fit);
        if (c_ext->parsed()) run_extrapolate_cmd(ext);
        if (c_eval->parsed()) run_eval(eval_pop, eval_pred, eval_report);
        if (c_pl->parsed()) run_powerlaw(pl_fof, pl_report, pl_plot);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
