#include "cli_commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "tvb/io.hpp"
#include "tvb/metrics.hpp"
#include "tvb/solver.hpp"
#include "tvb/synth.hpp"

namespace tvb::cli {
namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Options shared by every command that runs the solver.
struct SolverFlags {
    std::string method = "tnn";
    std::optional<std::size_t> k_trunc;
    double theta1 = 1.0, theta2 = 1.0, theta3 = 1.0;
    int max_iters = 50;
    double tol = 1e-4;
    std::string sigma_s = "derivation";
    std::string trace_scale = "fourier";
};

void add_solver_flags(CLI::App* app, SolverFlags& f, bool allow_both = false) {
    const std::vector<std::string> methods =
        allow_both ? std::vector<std::string>{"tnn", "pstnn", "both"}
                   : std::vector<std::string>{"tnn", "pstnn"};
    app->add_option("--method", f.method, allow_both ? "tnn, pstnn or both" : "tnn or pstnn")
        ->check(CLI::IsMember(methods))
        ->capture_default_str();
    app->add_option("--k-trunc", f.k_trunc, "PSTNN truncation K");
    app->add_option("--theta1", f.theta1, "initial noise precision")->capture_default_str();
    app->add_option("--theta2", f.theta2, "initial sparsity precision")->capture_default_str();
    app->add_option("--theta3", f.theta3, "initial low-rank precision")->capture_default_str();
    app->add_option("--max-iters", f.max_iters, "iteration cap")->capture_default_str();
    app->add_option("--tol", f.tol, "RMSE stopping tolerance")->capture_default_str();
    app->add_option("--sigma-s-convention", f.sigma_s, "derivation or algorithm1")
        ->check(CLI::IsMember({"derivation", "algorithm1"}))
        ->capture_default_str();
    app->add_option("--trace-scale", f.trace_scale, "fourier or literal")
        ->check(CLI::IsMember({"fourier", "literal"}))
        ->capture_default_str();
}

SolverConfig to_config(const SolverFlags& f) {
    SolverConfig cfg;
    if (f.method == "pstnn") {
        if (!f.k_trunc) throw UsageError("--method pstnn requires --k-trunc");
        cfg.method = Method::Weighted;
        cfg.pstnn_k = *f.k_trunc;
    }
    cfg.theta_init = {f.theta1, f.theta2, f.theta3};
    cfg.max_iters = f.max_iters;
    cfg.rmse_tol = f.tol;
    cfg.sigma_s_convention =
        f.sigma_s == "algorithm1" ? SigmaSConvention::Algorithm1 : SigmaSConvention::Derivation;
    cfg.trace_scale = f.trace_scale == "literal" ? TraceScale::Literal : TraceScale::Fourier;
    validate_config(cfg);
    return cfg;
}

std::string fmt(double v) { return format_double(v); }

json num(double v) {
    if (std::isfinite(v)) return json(v);
    return json(format_double(v));
}

std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
    std::vector<std::uint64_t> seeds;
    try {
        const auto dots = spec.find("..");
        if (dots != std::string::npos) {
            const std::uint64_t a = std::stoull(spec.substr(0, dots));
            const std::uint64_t b = std::stoull(spec.substr(dots + 2));
            if (b < a) throw UsageError("empty seed range " + spec);
            for (std::uint64_t s = a; s <= b; ++s) seeds.push_back(s);
        } else if (spec.find(',') != std::string::npos) {
            std::stringstream ss(spec);
            std::string part;
            while (std::getline(ss, part, ',')) seeds.push_back(std::stoull(part));
        } else {
            const std::uint64_t n = std::stoull(spec);
            for (std::uint64_t s = 1; s <= n; ++s) seeds.push_back(s);
        }
    } catch (const std::logic_error&) {
        throw UsageError("cannot parse --seeds " + spec);
    }
    if (seeds.empty()) throw UsageError("--seeds selects no seeds");
    return seeds;
}

double median(std::vector<double> v) {
    v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return std::isnan(x); }), v.end());
    if (v.empty()) return std::nan("");
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::string summary_line(const RunResult& r) {
    const TraceRecord* last = r.trace.empty() ? nullptr : &r.trace.back();
    std::ostringstream os;
    os << "iters=" << r.iterations << " converged=" << (r.converged ? "yes" : "no")
       << " theta=(" << fmt(r.state.e_theta[0]) << "," << fmt(r.state.e_theta[1]) << ","
       << fmt(r.state.e_theta[2]) << ")"
       << " rmse_l=" << fmt(last ? last->rmse_l : 0.0)
       << " rmse_s=" << fmt(last ? last->rmse_s : 0.0);
    return os.str();
}

// ---------------------------------------------------------------- decompose

struct DecomposeArgs {
    std::string input, out_l, out_s, trace;
    SolverFlags solver;
};

int cmd_decompose(const DecomposeArgs& a, std::ostream& out, std::ostream& err) {
    const SolverConfig cfg = to_config(a.solver);
    const Tensor3 x = read_tensor(a.input);
    RunResult r;
    try {
        r = run(x, cfg);
    } catch (const DegenerateScale& e) {
        if (!a.trace.empty()) {
            const bool js = a.trace.size() >= 5 && a.trace.ends_with(".json");
            write_trace(a.trace, e.trace, js ? TraceFormat::Json : TraceFormat::Csv);
        }
        err << e.what() << "\n";
        return kExitDegenerate;
    }
    write_tensor(a.out_l, r.l);
    write_tensor(a.out_s, r.s);
    if (!a.trace.empty()) {
        const bool js = a.trace.ends_with(".json");
        write_trace(a.trace, r.trace, js ? TraceFormat::Json : TraceFormat::Csv);
    }
    out << summary_line(r) << "\n";
    return kExitOk;
}

// -------------------------------------------------------------------- synth

struct SynthArgs {
    SynthSpec spec;
    std::string out_x, out_l, out_s, out_e;
};

int cmd_synth(const SynthArgs& a, std::ostream& out) {
    const Instance inst = make_instance(a.spec);
    write_tensor(a.out_x, inst.x);
    if (!a.out_l.empty()) write_tensor(a.out_l, inst.l0);
    if (!a.out_s.empty()) write_tensor(a.out_s, inst.s0);
    if (!a.out_e.empty()) write_tensor(a.out_e, inst.e0);
    out << "wrote " << a.spec.n1 << "x" << a.spec.n2 << "x" << a.spec.n3 << " instance seed "
        << a.spec.seed << "\n";
    return kExitOk;
}

// -------------------------------------------------------------- synth-bench

struct BenchArgs {
    SynthSpec spec;
    std::string seeds = "10";
    std::string report;
    SolverFlags solver;
    std::string methods;
};

struct BenchRow {
    std::uint64_t seed;
    std::string method;
    double err_l, err_s;
    int iterations;
    std::string status;
    std::array<double, 3> theta;
};

int cmd_synth_bench(const BenchArgs& a, std::ostream& out) {
    std::vector<std::string> methods;
    if (a.methods == "both") {
        methods = {"tnn", "pstnn"};
    } else {
        methods = {a.methods};
    }
    const std::vector<std::uint64_t> seeds = parse_seeds(a.seeds);
    std::vector<BenchRow> rows;
    for (std::uint64_t seed : seeds) {
        SynthSpec spec = a.spec;
        spec.seed = seed;
        const Instance inst = make_instance(spec);
        for (const std::string& m : methods) {
            SolverFlags f = a.solver;
            f.method = m;
            if (m == "pstnn" && !f.k_trunc) f.k_trunc = spec.r;
            const SolverConfig cfg = to_config(f);
            BenchRow row{seed, m, std::nan(""), std::nan(""), 0, "ok", {0, 0, 0}};
            try {
                const RunResult r = run(inst.x, cfg);
                row.err_l = rel_error(r.l, inst.l0);
                if (fro_norm(inst.s0) > 0.0) row.err_s = rel_error(r.s, inst.s0);
                row.iterations = r.iterations;
                row.status = r.converged ? "converged" : "max_iters";
                row.theta = r.state.e_theta;
            } catch (const DegenerateScale&) {
                row.status = "degenerate";
            }
            rows.push_back(row);
        }
    }

    std::ostringstream csv;
    csv << "seed,method,err_l,err_s,iterations,status,theta1,theta2,theta3\n";
    for (const BenchRow& r : rows) {
        csv << r.seed << "," << r.method << "," << fmt(r.err_l) << "," << fmt(r.err_s) << ","
            << r.iterations << "," << r.status << "," << fmt(r.theta[0]) << ","
            << fmt(r.theta[1]) << "," << fmt(r.theta[2]) << "\n";
    }
    for (const std::string& m : methods) {
        std::vector<double> el, es, t1, t2, t3, it;
        for (const BenchRow& r : rows) {
            if (r.method != m) continue;
            el.push_back(r.err_l);
            es.push_back(r.err_s);
            it.push_back(double(r.iterations));
            const bool ok = r.status != "degenerate";
            t1.push_back(ok ? r.theta[0] : std::nan(""));
            t2.push_back(ok ? r.theta[1] : std::nan(""));
            t3.push_back(ok ? r.theta[2] : std::nan(""));
        }
        csv << "median," << m << "," << fmt(median(el)) << "," << fmt(median(es)) << ","
            << fmt(median(it)) << ",median," << fmt(median(t1)) << "," << fmt(median(t2)) << ","
            << fmt(median(t3)) << "\n";
    }
    if (!a.report.empty()) write_text(a.report, csv.str());

    out << "setting n=" << a.spec.n1 << "x" << a.spec.n2 << "x" << a.spec.n3
        << " r=" << a.spec.r << " rho=" << fmt(a.spec.rho) << " sigma=" << fmt(a.spec.sigma)
        << "\n";
    out << csv.str();
    return kExitOk;
}

// ------------------------------------------------------------------ denoise

struct DenoiseArgs {
    std::string input, output, corrupt, report, save_corrupted;
    std::uint64_t seed = 1;
    SolverFlags solver;
};

struct CorruptSpec {
    double sparse = 0.0;
    double gauss = 0.0;
    bool any = false;
};

CorruptSpec parse_corrupt(const std::string& s) {
    CorruptSpec c;
    if (s.empty()) return c;
    c.any = true;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos) throw UsageError("bad --corrupt term " + part);
        const std::string kind = part.substr(0, colon);
        double v;
        try {
            v = std::stod(part.substr(colon + 1));
        } catch (const std::logic_error&) {
            throw UsageError("bad --corrupt value in " + part);
        }
        if (kind == "sparse") {
            c.sparse = v;
        } else if (kind == "gauss") {
            c.gauss = v;
        } else {
            throw UsageError("unknown corruption " + kind);
        }
    }
    return c;
}

int cmd_denoise(const DenoiseArgs& a, std::ostream& out, std::ostream& err) {
    const CorruptSpec cs = parse_corrupt(a.corrupt);
    const SolverConfig cfg = to_config(a.solver);
    const Tensor3 clean = load_image(a.input);
    Tensor3 observed = clean;
    if (cs.sparse > 0.0) observed = corrupt_sparse(observed, cs.sparse, a.seed);
    if (cs.gauss > 0.0) observed = corrupt_gaussian(observed, cs.gauss, a.seed);
    if (!a.save_corrupted.empty()) save_image(a.save_corrupted, observed);

    RunResult r;
    try {
        r = run((1.0 / 255.0) * observed, cfg);
    } catch (const DegenerateScale& e) {
        err << e.what() << "\n";
        return kExitDegenerate;
    }
    const Tensor3 restored = decode_ppm(encode_ppm(255.0 * r.l));
    save_image(a.output, restored);

    json rep;
    rep["psnr_input"] = num(psnr(clean, observed, 255.0));
    rep["psnr_output"] = num(psnr(clean, restored, 255.0));
    const bool can_ssim = clean.n1() >= 11 && clean.n2() >= 11;
    if (can_ssim) {
        rep["ssim_input"] = num(ssim(clean, observed, 255.0));
        rep["ssim_output"] = num(ssim(clean, restored, 255.0));
    }
    rep["iterations"] = r.iterations;
    rep["converged"] = r.converged;
    rep["theta1"] = num(r.state.e_theta[0]);
    rep["theta2"] = num(r.state.e_theta[1]);
    rep["theta3"] = num(r.state.e_theta[2]);
    const std::string text = rep.dump(2) + "\n";
    if (!a.report.empty()) write_text(a.report, text);
    out << text;
    return kExitOk;
}

// ------------------------------------------------------------------ metrics

struct MetricsArgs {
    std::string ref, test;
    std::optional<double> peak;
};

int cmd_metrics(const MetricsArgs& a, std::ostream& out) {
    const Tensor3 ref = read_tensor(a.ref);
    const Tensor3 test = read_tensor(a.test);
    require_same_dims(ref, test, "metrics");
    double peak = 0.0;
    if (a.peak) {
        peak = *a.peak;
    } else {
        for (double v : ref.values()) peak = std::max(peak, std::fabs(v));
    }
    json rep;
    rep["err_rel"] = fro_norm(ref) > 0.0 ? num(rel_error(test, ref)) : json(nullptr);
    rep["psnr"] = peak > 0.0 ? num(psnr(ref, test, peak)) : json(nullptr);
    if (ref.n3() == 3 && ref.n1() >= 11 && ref.n2() >= 11) {
        rep["ssim"] = num(ssim(ref, test, a.peak ? *a.peak : 255.0));
    }
    out << rep.dump(2) << "\n";
    return kExitOk;
}

bool has_flag(const std::vector<std::string>& args, const std::string& key) {
    const std::string flag = "--" + key;
    for (const std::string& s : args) {
        if (s == flag || s.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
}

}  // namespace

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::vector<std::string> kept, files;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config needs a path");
            files.push_back(args[++i]);
        } else if (args[i].rfind("--config=", 0) == 0) {
            files.push_back(args[i].substr(9));
        } else {
            kept.push_back(args[i]);
        }
    }
    std::vector<std::string> extra;
    for (const std::string& path : files) {
        std::ifstream in(path);
        if (!in) throw IoFailure("cannot open config " + path);
        std::string line;
        while (std::getline(in, line)) {
            const auto b = line.find_first_not_of(" \t\r");
            if (b == std::string::npos || line[b] == '#' || line[b] == ';') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw UsageError("config line without '=': " + line);
            auto trim = [](std::string s) {
                const auto f = s.find_first_not_of(" \t\r");
                const auto l = s.find_last_not_of(" \t\r");
                return f == std::string::npos ? std::string() : s.substr(f, l - f + 1);
            };
            std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.rfind("--", 0) == 0) key = key.substr(2);
            if (!has_flag(kept, key) && !has_flag(extra, key)) {
                extra.push_back("--" + key + "=" + value);
            }
        }
    }
    kept.insert(kept.end(), extra.begin(), extra.end());
    return kept;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Variational Bayesian tensor robust PCA"};
    app.name("tvbrpca");
    app.require_subcommand(1);

    DecomposeArgs dec;
    auto* d = app.add_subcommand("decompose", "split a TNS3 tensor into low-rank and sparse parts");
    d->add_option("--input", dec.input, "input TNS3 tensor")->required();
    d->add_option("--out-l", dec.out_l, "low-rank output (TNS3)")->required();
    d->add_option("--out-s", dec.out_s, "sparse output (TNS3)")->required();
    d->add_option("--trace", dec.trace, "per-iteration trace (.csv or .json)");
    add_solver_flags(d, dec.solver);

    SynthArgs syn;
    auto* s = app.add_subcommand("synth", "write one synthetic instance");
    s->add_option("--n1", syn.spec.n1)->capture_default_str();
    s->add_option("--n2", syn.spec.n2)->capture_default_str();
    s->add_option("--n3", syn.spec.n3)->capture_default_str();
    s->add_option("--rank", syn.spec.r)->capture_default_str();
    s->add_option("--rho", syn.spec.rho)->capture_default_str();
    s->add_option("--sigma", syn.spec.sigma)->capture_default_str();
    s->add_option("--seed", syn.spec.seed)->capture_default_str();
    s->add_option("--out-x", syn.out_x, "observation (TNS3)")->required();
    s->add_option("--out-l", syn.out_l, "low-rank ground truth (TNS3)");
    s->add_option("--out-s", syn.out_s, "sparse ground truth (TNS3)");
    s->add_option("--out-e", syn.out_e, "dense noise (TNS3)");

    BenchArgs bench;
    auto* b = app.add_subcommand("synth-bench", "seeded recovery benchmark");
    b->add_option("--n1", bench.spec.n1)->capture_default_str();
    b->add_option("--n2", bench.spec.n2)->capture_default_str();
    b->add_option("--n3", bench.spec.n3)->capture_default_str();
    b->add_option("--rank", bench.spec.r)->capture_default_str();
    b->add_option("--rho", bench.spec.rho)->capture_default_str();
    b->add_option("--sigma", bench.spec.sigma)->capture_default_str();
    b->add_option("--seeds", bench.seeds, "N, A..B or a comma list")->capture_default_str();
    b->add_option("--report", bench.report, "report CSV");
    add_solver_flags(b, bench.solver, true);

    DenoiseArgs den;
    den.solver.theta1 = 100.0;
    den.solver.k_trunc = 50;
    auto* n = app.add_subcommand("denoise", "recover a PPM image from sparse and dense noise");
    n->add_option("--input", den.input, "clean or observed PPM image")->required();
    n->add_option("--out", den.output, "restored PPM image")->required();
    n->add_option("--corrupt", den.corrupt, "sparse:F[,gauss:V]");
    n->add_option("--seed", den.seed)->capture_default_str();
    n->add_option("--report", den.report, "metrics JSON");
    n->add_option("--save-corrupted", den.save_corrupted, "write the corrupted observation");
    add_solver_flags(n, den.solver);

    MetricsArgs met;
    auto* m = app.add_subcommand("metrics", "compare two TNS3 tensors");
    m->add_option("--ref", met.ref)->required();
    m->add_option("--test", met.test)->required();
    m->add_option("--psnr-peak", met.peak);

    try {
        std::vector<std::string> args = expand_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }

    if (b->parsed()) {
        bench.methods = bench.solver.method;
        bench.solver.method = "tnn";
    }

    try {
        if (d->parsed()) return cmd_decompose(dec, out, err);
        if (s->parsed()) return cmd_synth(syn, out);
        if (b->parsed()) return cmd_synth_bench(bench, out);
        if (n->parsed()) return cmd_denoise(den, out, err);
        if (m->parsed()) return cmd_metrics(met, out);
    } catch (const DegenerateScale& e) {
        err << e.what() << "\n";
        return kExitDegenerate;
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace tvb::cli
