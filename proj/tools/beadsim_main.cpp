// beadsim: sample half-plane Brownian excursions, find their cut vertices,
// measure hulls by half-plane capacity, and run the bead-statistics
// experiments from JSON configs.
//
// Exit codes: 0 success, 2 usage error, 3 config or input validation error,
// 4 runtime budget exhausted (censoring limits, escape caps, write failures).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "beadsim/config.hpp"
#include "beadsim/cuttimes.hpp"
#include "beadsim/experiments.hpp"
#include "beadsim/path_io.hpp"
#include "beadsim/samplers.hpp"
#include "beadsim/svg.hpp"

namespace {

using namespace beadsim;
namespace fs = std::filesystem;

constexpr const char* kToolVersion = "0.1.0";

std::string hex_digest(std::uint64_t h) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", (unsigned long long)h);
    return buf;
}

std::string read_text_file(const std::string& filename) {
    std::ifstream f(filename, std::ios::binary);
    if (!f) throw ConfigError("cannot open for reading: " + filename);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void ensure_parent_dir(const std::string& filename) {
    const fs::path parent = fs::path(filename).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
}

void write_text_file(const std::string& filename, const std::string& content) {
    ensure_parent_dir(filename);
    std::ofstream f(filename, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + filename);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + filename);
}

// Accumulates the run manifest: what was read, what was written, how long it
// took. The report files themselves are deterministic for a given config and
// seed; the wall clock lives only here.
class ManifestWriter {
  public:
    ManifestWriter(std::string command, std::uint64_t seed)
        : start_(std::chrono::steady_clock::now()) {
        doc_["tool"] = "beadsim";
        doc_["version"] = kToolVersion;
        doc_["command"] = std::move(command);
        doc_["seed"] = seed;
        doc_["inputs"] = ojson::object();
        doc_["outputs"] = ojson::object();
    }

    void config_hash(const std::string& h) { doc_["config_hash"] = h; }
    void args(ojson a) { doc_["args"] = std::move(a); }
    void input(const std::string& file) {
        doc_["inputs"][file] = hex_digest(fnv1a64_file(file));
    }
    // Outputs are keyed by basename: they sit next to the manifest, and two
    // runs of the same config in different directories produce manifests
    // that differ only in the wall clock.
    void output(const std::string& file) {
        doc_["outputs"][fs::path(file).filename().string()] = hex_digest(fnv1a64_file(file));
    }

    void write(const std::string& filename) {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        doc_["wall_clock_seconds"] = secs;
        write_text_file(filename, doc_.dump(2) + "\n");
        std::printf("wrote %s\n", filename.c_str());
    }

  private:
    ojson doc_;
    std::chrono::steady_clock::time_point start_;
};

void write_report(const std::string& out_dir, const ojson& report, ManifestWriter& man) {
    const std::string file = out_dir + "/report.json";
    write_text_file(file, report.dump(2) + "\n");
    man.output(file);
    std::printf("wrote %s\n", file.c_str());
}

void write_csv(const std::string& file, const std::string& content, ManifestWriter& man) {
    write_text_file(file, content);
    man.output(file);
    std::printf("wrote %s\n", file.c_str());
}

std::string tail_curve_csv(const TailCurve& tc) {
    std::string out = "y,count,prob\n";
    char buf[96];
    for (std::size_t j = 0; j < tc.y.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g,%zu,%.17g\n", tc.y[j], tc.count[j], tc.prob[j]);
        out += buf;
    }
    return out;
}

// Shared state of the config-driven experiment subcommands.
struct ExperimentArgs {
    std::string config_file;
    std::string out_dir;
    unsigned threads = 0;
};

void add_experiment_options(CLI::App* sub, ExperimentArgs& args) {
    sub->add_option("--config", args.config_file, "JSON run configuration")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out-dir", args.out_dir, "directory for report, CSVs, and manifest")
        ->required();
    sub->add_option("--threads", args.threads,
                    "worker threads (0 = all cores; default from BEADSIM_THREADS)")
        ->envname("BEADSIM_THREADS");
}

// Reads and validates the config, requiring the kind to match the
// subcommand. Nothing is written before this returns.
RunConfig load_config(const ExperimentArgs& args, const std::string& kind,
                      ManifestWriter** man_out, std::optional<ManifestWriter>& man_store) {
    const std::string text = read_text_file(args.config_file);
    RunConfig cfg = parse_run_config(text);
    if (cfg.kind != kind)
        throw ConfigError("config /kind: this is a \"" + cfg.kind +
                          "\" config; the " + kind + " subcommand needs kind \"" + kind + "\"");
    man_store.emplace(kind, cfg.seed);
    man_store->config_hash(config_hash(text));
    man_store->input(args.config_file);
    *man_out = &*man_store;
    return cfg;
}

void finish(const std::string& out_dir, ManifestWriter& man) {
    man.write(out_dir + "/manifest.json");
}

int run_simulate(std::uint64_t n, double dt, std::uint64_t seed, double y_max,
                 const std::string& out_file) {
    ManifestWriter man("simulate", seed);
    ojson args{{"n", n}, {"dt", dt}};
    if (y_max > 0.0) args["y_max"] = y_max;
    man.args(std::move(args));

    const SeedSequence seq(seed);
    const Path p = y_max > 0.0 ? sample_excursion_until_height(y_max, dt, seq, n)
                               : sample_excursion(n, dt, seq);
    if (p.meta().truncated)
        std::fprintf(stderr, "note: step cap reached before the path cleared y=%g\n", y_max);
    ensure_parent_dir(out_file);
    write_path_file(out_file, p);
    man.output(out_file);
    std::printf("wrote %s (%zu steps, dt=%g)\n", out_file.c_str(), p.n(), p.dt());
    man.write(out_file + ".manifest.json");
    return 0;
}

int run_cuttimes(const std::string& in_file, const std::string& out_csv,
                 const std::string& out_svg) {
    Path p = [&] {
        try {
            return read_path_file(in_file);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("input path file: ") + e.what());
        }
    }();
    ManifestWriter man("cuttimes", p.meta().seed);
    man.input(in_file);

    const CutSet cuts = find_cut_vertices(p.points());
    std::string csv = "index,time,x,y\n";
    char buf[128];
    for (std::uint32_t k : cuts.indices) {
        std::snprintf(buf, sizeof buf, "%u,%.17g,%.17g,%.17g\n", k, double(k) * p.dt(),
                      p.points()[k].x, p.points()[k].y);
        csv += buf;
    }
    write_csv(out_csv, csv, man);
    if (!out_svg.empty()) {
        write_text_file(out_svg, render_path_svg(p, cuts));
        man.output(out_svg);
        std::printf("wrote %s\n", out_svg.c_str());
    }
    std::printf("%zu cut vertices among %zu interior vertices\n", cuts.indices.size(),
                p.n() > 0 ? p.n() - 1 : 0);
    man.write(out_csv + ".manifest.json");
    return 0;
}

int run_capacity_cmd(const ExperimentArgs& args) {
    std::optional<ManifestWriter> man_store;
    ManifestWriter* man = nullptr;
    const RunConfig cfg = load_config(args, "capacity", &man, man_store);

    const ValidationResult res =
        run_capacity_validation(cfg.capacity_walkers, SeedSequence(cfg.seed), args.threads);
    fs::create_directories(args.out_dir);
    write_report(args.out_dir, to_report_json(res), *man);

    std::string csv = "name,value,target,tolerance,two_sided,pass\n";
    char buf[256];
    for (const ValidationCheck& c : res.checks) {
        std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%d,%d\n", c.name.c_str(), c.value,
                      c.target, c.tolerance, int(c.two_sided), int(c.pass));
        csv += buf;
    }
    write_csv(args.out_dir + "/checks.csv", csv, *man);
    finish(args.out_dir, *man);
    std::printf("capacity validation: %s\n", res.all_pass ? "all checks passed" : "FAILED");
    return res.all_pass ? 0 : 4;
}

int run_avoid_cmd(const ExperimentArgs& args) {
    std::optional<ManifestWriter> man_store;
    ManifestWriter* man = nullptr;
    RunConfig cfg = load_config(args, "avoid", &man, man_store);
    cfg.avoidance.n_threads = args.threads;

    const auto hull = make_hull(cfg.hull);
    const AvoidanceResult res =
        run_avoidance_experiment(cfg.avoidance, *hull, SeedSequence(cfg.seed));
    fs::create_directories(args.out_dir);
    write_report(args.out_dir, to_report_json(cfg.avoidance, res, hull_json(cfg.hull)), *man);

    std::string csv = "dt,n_paths,n_avoided,prob,std_error\n";
    char buf[160];
    for (const AvoidanceRung& r : res.rungs) {
        std::snprintf(buf, sizeof buf, "%.17g,%llu,%llu,%.17g,%.17g\n", r.dt,
                      (unsigned long long)r.n_paths, (unsigned long long)r.n_avoided, r.prob,
                      r.std_error);
        csv += buf;
    }
    write_csv(args.out_dir + "/rungs.csv", csv, *man);
    finish(args.out_dir, *man);
    std::printf("avoidance: extrapolated %.4f +- %.4f, exact %.4f\n", res.prob_extrapolated,
                res.prob_extrapolated_std_error, res.exact);
    return 0;
}

int run_exponent_cmd(const ExperimentArgs& args) {
    std::optional<ManifestWriter> man_store;
    ManifestWriter* man = nullptr;
    RunConfig cfg = load_config(args, "exponent", &man, man_store);
    cfg.exponent.n_threads = args.threads;

    const ExponentResult res = run_exponent_experiment(cfg.exponent, SeedSequence(cfg.seed));
    fs::create_directories(args.out_dir);
    write_report(args.out_dir, to_report_json(cfg.exponent, res), *man);

    std::string csv = "dt,t,n_open,n_paths,n_censored,prob,std_error\n";
    char buf[200];
    for (const ExponentRung& r : res.rungs)
        for (const ProbPoint& pt : r.points) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%llu,%llu,%llu,%.17g,%.17g\n", r.dt,
                          pt.x, (unsigned long long)pt.n_hit, (unsigned long long)r.n_paths,
                          (unsigned long long)r.n_censored, pt.prob, pt.std_error);
            csv += buf;
        }
    write_csv(args.out_dir + "/exponent_points.csv", csv, *man);
    finish(args.out_dir, *man);
    std::printf("exponent: finest rung alpha %.4f +- %.4f, extrapolated %.4f +- %.4f\n",
                res.rungs.back().alpha, res.rungs.back().alpha_std_error,
                res.alpha_extrapolated, res.alpha_extrapolated_std_error);
    return 0;
}

int run_tail_cmd(const ExperimentArgs& args) {
    std::optional<ManifestWriter> man_store;
    ManifestWriter* man = nullptr;
    RunConfig cfg = load_config(args, "tail", &man, man_store);
    cfg.tail.n_threads = args.threads;

    const TailResult res = run_subordinator_tail(cfg.tail, SeedSequence(cfg.seed));
    fs::create_directories(args.out_dir);
    write_report(args.out_dir, to_report_json(cfg.tail, res), *man);
    write_csv(args.out_dir + "/tail_curve.csv", tail_curve_csv(res.curve), *man);
    finish(args.out_dir, *man);
    std::printf("tail: slope %.4f +- %.4f over [%g, %g], %llu pooled\n", res.fit.slope,
                res.fit.slope_std_error, cfg.tail.fit_lo, cfg.tail.fit_hi,
                (unsigned long long)res.curve.total);
    return 0;
}

int run_beads_cmd(const ExperimentArgs& args) {
    std::optional<ManifestWriter> man_store;
    ManifestWriter* man = nullptr;
    RunConfig cfg = load_config(args, "beads", &man, man_store);
    cfg.beads.n_threads = args.threads;

    const BeadsResult res = run_beads_experiment(cfg.beads, SeedSequence(cfg.seed));
    fs::create_directories(args.out_dir);
    write_report(args.out_dir, to_report_json(cfg.beads, res), *man);

    std::ostringstream beads_csv;
    write_bead_csv(beads_csv, res.records);
    write_csv(args.out_dir + "/beads.csv", beads_csv.str(), *man);
    if (res.curve.total > 0)
        write_csv(args.out_dir + "/bead_size_tail.csv", tail_curve_csv(res.curve), *man);
    finish(args.out_dir, *man);
    std::printf("beads: %zu records from %llu paths\n", res.records.size(),
                (unsigned long long)res.n_paths);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"half-plane Brownian excursions, cut vertices, and bead statistics"};
    app.set_version_flag("--version", std::string("beadsim ") + kToolVersion);
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "sample one excursion to a BBPATH01 file");
    std::uint64_t sim_n = 0, sim_seed = 0;
    double sim_dt = 1e-3, sim_ymax = 0.0;
    std::string sim_out;
    sim->add_option("--n", sim_n, "number of steps (with --y-max: the step cap)")->required();
    sim->add_option("--dt", sim_dt, "time step")->check(CLI::PositiveNumber)->required();
    sim->add_option("--seed", sim_seed, "random seed")->required();
    sim->add_option("--y-max", sim_ymax, "stop when the height clears this instead");
    sim->add_option("--out", sim_out, "output BBPATH01 file")->required();

    // cuttimes
    auto* cut = app.add_subcommand("cuttimes", "list the cut vertices of a stored path");
    std::string cut_in, cut_csv, cut_svg;
    cut->add_option("--in", cut_in, "input BBPATH01 file")->required()->check(CLI::ExistingFile);
    cut->add_option("--out-csv", cut_csv, "output CSV of cut vertices")->required();
    cut->add_option("--out-svg", cut_svg, "optional SVG rendering of the path and its cuts");

    // config-driven experiments
    ExperimentArgs cap_args, avoid_args, exp_args, tail_args, beads_args;
    auto* cap = app.add_subcommand("capacity", "run the capacity validation suite");
    add_experiment_options(cap, cap_args);
    auto* avd = app.add_subcommand("avoid", "hull avoidance probability vs the exact value");
    add_experiment_options(avd, avoid_args);
    auto* xp = app.add_subcommand("exponent", "cut-freeness survival exponent");
    add_experiment_options(xp, exp_args);
    auto* tl = app.add_subcommand("tail", "capacity first-passage tail");
    add_experiment_options(tl, tail_args);
    auto* bd = app.add_subcommand("beads", "bead decomposition ensemble");
    add_experiment_options(bd, beads_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        // help/version paths return 0; anything else is a usage error
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) return run_simulate(sim_n, sim_dt, sim_seed, sim_ymax, sim_out);
        if (cut->parsed()) return run_cuttimes(cut_in, cut_csv, cut_svg);
        if (cap->parsed()) return run_capacity_cmd(cap_args);
        if (avd->parsed()) return run_avoid_cmd(avoid_args);
        if (xp->parsed()) return run_exponent_cmd(exp_args);
        if (tl->parsed()) return run_tail_cmd(tail_args);
        if (bd->parsed()) return run_beads_cmd(beads_args);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::runtime_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 4;
    }
    return 0;
}
