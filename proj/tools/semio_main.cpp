// semio: batch front-end for the representation-dynamics toolkit.
// Subcommands: analyze, fit, simulate, cor, couple, report.
// Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "semio/coordination/cor.hpp"
#include "semio/coordination/coupling.hpp"
#include "semio/corpus/counts.hpp"
#include "semio/corpus/document.hpp"
#include "semio/corpus/markup.hpp"
#include "semio/corpus/tokenize.hpp"
#include "semio/detail/hash.hpp"
#include "semio/diffusion/simulate.hpp"
#include "semio/diffusion/validate.hpp"
#include "semio/error.hpp"
#include "semio/io/csv.hpp"
#include "semio/io/json_io.hpp"
#include "semio/mixture/loglog.hpp"
#include "semio/mixture/select.hpp"
#include "semio/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using semio::data_error;
using semio::numeric_error;

namespace {

// Every run leaves a manifest beside its artifacts: the command, resolved
// parameters, content digests of the inputs and the list of outputs. Same
// manifest + same inputs means byte-identical outputs.
class Manifest {
public:
    explicit Manifest(const std::string& command) {
        doc_["command"] = command;
        doc_["version"] = semio::version;
        doc_["parameters"] = json::object();
        doc_["inputs"] = json::array();
        doc_["outputs"] = json::array();
    }
    template <typename T>
    void param(const std::string& key, const T& value) {
        doc_["parameters"][key] = value;
    }
    void input(const std::string& path, std::string_view bytes) {
        doc_["inputs"].push_back(
            {{"path", path}, {"fnv1a64", semio::detail::fnv1a64_hex(bytes)}});
    }
    void output(const std::string& name) { doc_["outputs"].push_back(name); }
    void write(const fs::path& outdir) const {
        semio::io::write_file_bytes((outdir / "manifest.json").string(), doc_.dump(2) + "\n");
    }

private:
    json doc_;
};

fs::path prepare_outdir(const std::string& out) {
    fs::path dir = out.empty() ? fs::path(".") : fs::path(out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw data_error("cannot create output directory '" + dir.string() + "'");
    return dir;
}

void write_text(const fs::path& outdir, const std::string& name, const std::string& bytes,
                Manifest& manifest) {
    semio::io::write_file_bytes((outdir / name).string(), bytes);
    manifest.output(name);
}

// ---------------------------------------------------------------- analyze ---

struct AnalyzeArgs {
    std::vector<std::string> paths;
    std::string kind = "auto";
    std::string out;
};

semio::corpus::DocKind kind_of(const fs::path& p, const std::string& kind_flag) {
    if (kind_flag == "text") return semio::corpus::DocKind::plain_text;
    if (kind_flag == "markup") return semio::corpus::DocKind::markup;
    const auto ext = p.extension().string();
    return (ext == ".html" || ext == ".htm") ? semio::corpus::DocKind::markup
                                             : semio::corpus::DocKind::plain_text;
}

int cmd_analyze(const AnalyzeArgs& args) {
    std::vector<fs::path> files;
    for (const auto& raw : args.paths) {
        const fs::path p(raw);
        std::error_code ec;
        if (fs::is_directory(p, ec)) {
            std::vector<fs::path> found;
            for (const auto& entry : fs::recursive_directory_iterator(p)) {
                if (!entry.is_regular_file()) continue;
                const auto ext = entry.path().extension().string();
                if (ext == ".txt" || ext == ".html" || ext == ".htm")
                    found.push_back(entry.path());
            }
            std::sort(found.begin(), found.end());  // directory order is not deterministic
            files.insert(files.end(), found.begin(), found.end());
        } else if (fs::is_regular_file(p, ec)) {
            files.push_back(p);
        } else {
            throw data_error("cannot read input path '" + raw + "'");
        }
    }
    if (files.empty()) throw data_error("no .txt or .html input files found");

    Manifest manifest("analyze");
    manifest.param("kind", args.kind);
    manifest.param("files", files.size());

    semio::corpus::TokenCounts pooled;
    for (const auto& file : files) {
        const auto bytes = semio::io::read_file_bytes(file.string());
        manifest.input(file.string(), bytes);
        auto doc = semio::corpus::make_document(file.string(), kind_of(file, args.kind), bytes);
        if (doc.kind == semio::corpus::DocKind::markup) doc = semio::corpus::strip_markup(doc);
        const auto tokens = semio::corpus::tokenize(doc);
        pooled = semio::corpus::merge(pooled, semio::corpus::count(tokens));
    }
    const auto spectrum = semio::corpus::spectrum(pooled);

    const auto outdir = prepare_outdir(args.out);
    std::ostringstream spec_csv;
    semio::io::write_spectrum_csv(spec_csv, spectrum);
    write_text(outdir, "spectrum.csv", spec_csv.str(), manifest);
    std::ostringstream counts_csv;
    semio::io::write_counts_csv(counts_csv, pooled);
    write_text(outdir, "counts.csv", counts_csv.str(), manifest);
    manifest.write(outdir);

    std::cout << "analyze: " << files.size() << " files, " << pooled.total_tokens
              << " tokens, " << pooled.vocabulary() << " types\n";
    return 0;
}

// -------------------------------------------------------------------- fit ---

struct FitArgs {
    std::string spectrum_path;
    std::size_t max_components = 3;
    std::size_t restarts = 3;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_fit(const FitArgs& args) {
    const auto bytes = semio::io::read_file_bytes(args.spectrum_path);
    std::istringstream is(bytes);
    const auto spectrum = semio::io::read_spectrum_csv(is);

    semio::mixture::FitOptions opts;
    opts.restarts = args.restarts;
    opts.seed = args.seed;
    const auto selection = semio::mixture::select_model(spectrum, args.max_components, opts);
    const auto& chosen = selection.chosen();

    Manifest manifest("fit");
    manifest.param("max_components", args.max_components);
    manifest.param("restarts", args.restarts);
    manifest.param("seed", args.seed);
    manifest.input(args.spectrum_path, bytes);

    const auto outdir = prepare_outdir(args.out);
    write_text(outdir, "fit.json", semio::io::fit_report_to_json(chosen).dump(2) + "\n",
               manifest);

    json front = json::array();
    for (const auto& cand : selection.candidates) {
        json entry{{"M", cand.M}, {"chosen", cand.M == selection.chosen_M}};
        if (cand.report) {
            entry["chi_square"] = cand.report->chi_square;
            entry["dof"] = cand.report->degrees_of_freedom;
            entry["log_likelihood"] = cand.report->log_likelihood;
            entry["r"] = cand.report->loglog_r;
            entry["slope"] = cand.report->loglog_slope;
        } else {
            entry["error"] = cand.error;
        }
        front.push_back(std::move(entry));
    }
    write_text(outdir, "front.json", front.dump(2) + "\n", manifest);

    const auto diag = semio::mixture::loglog_diagnostics(chosen.mixture, spectrum);
    std::ostringstream loglog;
    loglog << "z,log_observed,log_predicted\n";
    for (const auto& p : diag.points)
        loglog << p.z << ',' << semio::io::format_double(p.log_observed) << ','
               << semio::io::format_double(p.log_predicted) << '\n';
    write_text(outdir, "loglog.csv", loglog.str(), manifest);
    manifest.write(outdir);

    std::cout << "fit: chose M=" << selection.chosen_M << " (chi2=" << chosen.chi_square
              << ", dof=" << chosen.degrees_of_freedom << ", r=" << chosen.loglog_r
              << ", slope=" << chosen.loglog_slope << ")\n";
    return 0;
}

// --------------------------------------------------------------- simulate ---

struct SimulateArgs {
    std::string config_path;
    std::string out;
};

void apply_config_json(const json& j, semio::diffusion::DiffusionConfig& cfg) {
    try {
        if (j.contains("N")) cfg.N = j["N"].get<std::size_t>();
        if (j.contains("mu")) cfg.mu = j["mu"].get<double>();
        if (j.contains("rho")) cfg.rho = j["rho"].get<double>();
        if (j.contains("theta")) cfg.theta = j["theta"].get<double>();
        if (j.contains("a")) {
            if (j["a"].is_array()) cfg.a = j["a"].get<std::vector<double>>();
            else cfg.a = {j["a"].get<double>()};
        }
        if (j.contains("sigma")) cfg.sigma = j["sigma"].get<double>();
        if (j.contains("dt")) cfg.dt = j["dt"].get<double>();
        if (j.contains("burn_in")) cfg.burn_in = j["burn_in"].get<std::size_t>();
        if (j.contains("sample_stride")) cfg.sample_stride = j["sample_stride"].get<std::size_t>();
        if (j.contains("samples_per_replica"))
            cfg.samples_per_replica = j["samples_per_replica"].get<std::size_t>();
        if (j.contains("replicas")) cfg.replicas = j["replicas"].get<std::size_t>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("threads")) cfg.threads = j["threads"].get<unsigned>();
        if (j.contains("init")) {
            const auto mode = j["init"].get<std::string>();
            if (mode == "zeros") cfg.init = semio::diffusion::InitMode::zeros;
            else if (mode == "constant") cfg.init = semio::diffusion::InitMode::constant;
            else if (mode == "uniform") cfg.init = semio::diffusion::InitMode::uniform;
            else throw data_error("config: unknown init mode '" + mode + "'");
        }
        if (j.contains("init_value")) cfg.init_value = j["init_value"].get<double>();
    } catch (const json::exception& e) {
        throw data_error(std::string("config json: ") + e.what());
    }
}

const char* init_name(semio::diffusion::InitMode mode) {
    switch (mode) {
        case semio::diffusion::InitMode::zeros: return "zeros";
        case semio::diffusion::InitMode::constant: return "constant";
        case semio::diffusion::InitMode::uniform: return "uniform";
    }
    return "zeros";
}

int cmd_simulate(const SimulateArgs& args, const semio::diffusion::DiffusionConfig& cfg,
                 const std::string& config_bytes) {
    const auto run = semio::diffusion::simulate(cfg);

    Manifest manifest("simulate");
    manifest.param("N", cfg.N);
    manifest.param("mu", cfg.mu);
    manifest.param("rho", cfg.rho);
    manifest.param("theta", cfg.theta);
    manifest.param("a", cfg.a);
    manifest.param("sigma", cfg.sigma);
    manifest.param("dt", cfg.dt);
    manifest.param("burn_in", cfg.burn_in);
    manifest.param("sample_stride", cfg.sample_stride_or_default());
    manifest.param("samples_per_replica", cfg.samples_per_replica);
    manifest.param("replicas", cfg.replicas);
    manifest.param("seed", cfg.seed);
    manifest.param("init", init_name(cfg.init));
    manifest.param("init_value", cfg.init_value);
    if (!args.config_path.empty()) manifest.input(args.config_path, config_bytes);

    const auto outdir = prepare_outdir(args.out);
    std::ostringstream samples_csv;
    semio::io::write_samples_csv(samples_csv, run.samples);
    write_text(outdir, "samples.csv", samples_csv.str(), manifest);

    const double target = cfg.rho * cfg.mu;
    const double final_sum = run.trajectory_sum.back();
    json validation{{"lambda_theory", semio::diffusion::theoretical_lambda(cfg)},
                    {"fixed_point",
                     {{"target", target},
                      {"final_sum", final_sum},
                      {"rel_error", std::fabs(final_sum - target) / target},
                      {"converged", std::fabs(final_sum - target) / target < 1e-6}}}};
    if (cfg.sigma == 0.0) {
        validation["exponential"] = nullptr;
        validation["note"] = "noiseless run: exponential validation not applicable";
    } else if (run.samples.size() < 1000) {
        validation["exponential"] = nullptr;
        validation["note"] = "fewer than 1000 samples: exponential validation skipped";
    } else {
        const auto check = semio::diffusion::validate_exponential(run);
        validation["exponential"] = {{"lambda_hat", check.lambda_hat},
                                     {"lambda_rel_error", check.lambda_rel_error},
                                     {"ks_distance", check.ks_distance},
                                     {"samples", check.samples},
                                     {"ks_pass", check.ks_pass},
                                     {"lambda_pass", check.lambda_pass},
                                     {"pass", check.pass}};
    }
    write_text(outdir, "validation.json", validation.dump(2) + "\n", manifest);
    manifest.write(outdir);

    std::cout << "simulate: " << run.samples.size() << " samples from " << cfg.replicas
              << " replicas\n";
    return 0;
}

// -------------------------------------------------------------------- cor ---

struct CorArgs {
    std::string sessions_path;
    std::string index_path;
    std::size_t horizon = 0;  // 0 = shortest session
    bool log_column = false;
    std::string out;
};

int cmd_cor(const CorArgs& args) {
    const auto sess_bytes = semio::io::read_file_bytes(args.sessions_path);
    const auto index_bytes = semio::io::read_file_bytes(args.index_path);
    const auto sessions =
        semio::io::sessions_from_json(semio::io::parse_json(sess_bytes, "sessions"));
    const auto index =
        semio::io::sign_index_from_json(semio::io::parse_json(index_bytes, "index"));
    if (sessions.empty()) throw data_error("sessions file contains no sessions");

    std::size_t horizon = args.horizon;
    if (horizon == 0) {
        horizon = sessions.front().size();
        for (const auto& s : sessions) horizon = std::min(horizon, s.size());
    }
    const auto series = semio::coordination::average_cor(sessions, index, horizon);

    Manifest manifest("cor");
    manifest.param("horizon", horizon);
    manifest.param("log", args.log_column);
    manifest.input(args.sessions_path, sess_bytes);
    manifest.input(args.index_path, index_bytes);

    const auto outdir = prepare_outdir(args.out);
    std::ostringstream cor_csv;
    semio::io::write_cor_csv(cor_csv, series, args.log_column);
    write_text(outdir, "cor.csv", cor_csv.str(), manifest);
    manifest.write(outdir);

    std::cout << "cor: " << sessions.size() << " sessions, horizon " << horizon << "\n";
    return 0;
}

// ------------------------------------------------------------------ couple ---

struct CoupleArgs {
    std::string mode = "non-expert";
    semio::coordination::CouplingScenario scenario;
    std::string out;
};

int cmd_couple(const CoupleArgs& args) {
    auto scenario = args.scenario;
    if (args.mode == "expert") scenario.mode = semio::coordination::CouplingMode::expert;
    else if (args.mode == "non-expert")
        scenario.mode = semio::coordination::CouplingMode::non_expert;
    else if (args.mode == "adaptive")
        scenario.mode = semio::coordination::CouplingMode::adaptive;
    else throw data_error("unknown mode '" + args.mode + "'");

    const auto result = semio::coordination::simulate_coupling(scenario);

    Manifest manifest("couple");
    manifest.param("mode", args.mode);
    manifest.param("states", scenario.state_count);
    manifest.param("signs", scenario.sign_count);
    manifest.param("length", scenario.session_length);
    manifest.param("sessions", scenario.session_count);
    manifest.param("learning_rate", scenario.learning_rate);
    manifest.param("set_min", scenario.set_size_min);
    manifest.param("set_max", scenario.set_size_max);
    manifest.param("seed", scenario.seed);

    const auto outdir = prepare_outdir(args.out);
    write_text(outdir, "sessions.json",
               semio::io::sessions_to_json(result.sessions).dump(2) + "\n", manifest);
    write_text(outdir, "index.json", semio::io::sign_index_to_json(result.index).dump(2) + "\n",
               manifest);
    manifest.write(outdir);

    std::cout << "couple: " << result.sessions.size() << " sessions over "
              << result.index.signs.size() << " signs\n";
    return 0;
}

// ------------------------------------------------------------------ report ---

struct ReportArgs {
    std::string fit_path;
    std::string spectrum_path;
    std::string out;
};

std::string svg_scatter(const semio::mixture::LogLogDiagnostics& raw,
                        const semio::mixture::LogLogDiagnostics& hist,
                        const semio::io::ParsedFitReport& fit) {
    // natural logs -> log10 for familiar axes
    constexpr double kLn10 = 2.302585092994046;
    double lo = 0.0, hi = -300.0;
    for (const auto& p : raw.points) {
        lo = std::min({lo, p.log_observed / kLn10, p.log_predicted / kLn10});
        hi = std::max({hi, p.log_observed / kLn10, p.log_predicted / kLn10});
    }
    lo -= 0.3;
    hi += 0.3;
    const double width = 720, height = 540, m = 64;
    const auto sx = [&](double v) { return m + (v - lo) / (hi - lo) * (width - 2 * m); };
    const auto sy = [&](double v) { return height - m - (v - lo) / (hi - lo) * (height - 2 * m); };
    const auto fmt = [](double v) { return semio::io::format_double(v); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes
    svg << "<line x1=\"" << fmt(sx(lo)) << "\" y1=\"" << fmt(sy(lo)) << "\" x2=\""
        << fmt(sx(hi)) << "\" y2=\"" << fmt(sy(lo)) << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << fmt(sx(lo)) << "\" y1=\"" << fmt(sy(lo)) << "\" x2=\""
        << fmt(sx(lo)) << "\" y2=\"" << fmt(sy(hi)) << "\" stroke=\"black\"/>\n";
    // integer decade ticks
    for (int d = static_cast<int>(std::ceil(lo)); d <= static_cast<int>(std::floor(hi)); ++d) {
        svg << "<line x1=\"" << fmt(sx(d)) << "\" y1=\"" << fmt(sy(lo)) << "\" x2=\""
            << fmt(sx(d)) << "\" y2=\"" << fmt(sy(lo) + 5) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fmt(sx(d)) << "\" y=\"" << fmt(sy(lo) + 20)
            << "\" font-size=\"11\" text-anchor=\"middle\">1e" << d << "</text>\n"
            << "<line x1=\"" << fmt(sx(lo) - 5) << "\" y1=\"" << fmt(sy(d)) << "\" x2=\""
            << fmt(sx(lo)) << "\" y2=\"" << fmt(sy(d)) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fmt(sx(lo) - 8) << "\" y=\"" << fmt(sy(d) + 4)
            << "\" font-size=\"11\" text-anchor=\"end\">1e" << d << "</text>\n";
    }
    // identity line
    svg << "<line x1=\"" << fmt(sx(lo)) << "\" y1=\"" << fmt(sy(lo)) << "\" x2=\""
        << fmt(sx(hi)) << "\" y2=\"" << fmt(sy(hi))
        << "\" stroke=\"#888\" stroke-dasharray=\"6 4\"/>\n";
    // per-count points, then the aggregated histogram points on top
    for (const auto& p : raw.points)
        svg << "<circle cx=\"" << fmt(sx(p.log_observed / kLn10)) << "\" cy=\""
            << fmt(sy(p.log_predicted / kLn10)) << "\" r=\"2\" fill=\"#bbb\"/>\n";
    for (const auto& p : hist.points)
        svg << "<circle cx=\"" << fmt(sx(p.log_observed / kLn10)) << "\" cy=\""
            << fmt(sy(p.log_predicted / kLn10))
            << "\" r=\"4.5\" fill=\"#1f6fb2\" fill-opacity=\"0.85\"/>\n";
    // labels
    svg << "<text x=\"" << fmt(width / 2) << "\" y=\"" << fmt(height - 16)
        << "\" font-size=\"13\" text-anchor=\"middle\">observed proportion</text>\n"
        << "<text x=\"18\" y=\"" << fmt(height / 2)
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
        << fmt(height / 2) << ")\">predicted probability</text>\n"
        << "<text x=\"" << fmt(width - m) << "\" y=\"" << fmt(m - 28)
        << "\" font-size=\"13\" text-anchor=\"end\">M=" << fit.mixture.order()
        << "  r=" << fmt(fit.r) << "  slope=" << fmt(fit.slope) << "</text>\n"
        << "<text x=\"" << fmt(width - m) << "\" y=\"" << fmt(m - 10)
        << "\" font-size=\"13\" text-anchor=\"end\">chi2=" << fmt(fit.chi_square)
        << "  dof=" << fit.degrees_of_freedom << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

int cmd_report(const ReportArgs& args) {
    const auto fit_bytes = semio::io::read_file_bytes(args.fit_path);
    const auto fit =
        semio::io::fit_report_from_json(semio::io::parse_json(fit_bytes, "fit json"));
    const auto spec_bytes = semio::io::read_file_bytes(args.spectrum_path);
    std::istringstream is(spec_bytes);
    const auto spectrum = semio::io::read_spectrum_csv(is);
    if (spectrum.empty()) throw data_error("spectrum is empty");

    // the fit must describe this spectrum: recompute the histogram diagnostic
    const auto hist = semio::mixture::histogram_diagnostics(fit.mixture, spectrum);
    if (std::fabs(hist.r - fit.r) > 1e-9 || std::fabs(hist.slope - fit.slope) > 1e-9)
        throw data_error("fit report does not match the spectrum (r/slope mismatch)");

    const auto raw = semio::mixture::loglog_diagnostics(fit.mixture, spectrum);

    Manifest manifest("report");
    manifest.input(args.fit_path, fit_bytes);
    manifest.input(args.spectrum_path, spec_bytes);

    const auto outdir = prepare_outdir(args.out);
    write_text(outdir, "report.svg", svg_scatter(raw, hist, fit), manifest);

    std::ostringstream summary;
    summary << "mixture order M: " << fit.mixture.order() << "\n";
    for (const auto& wc : fit.mixture.components())
        summary << "  component: c=" << semio::io::format_double(wc.c)
                << " b=" << semio::io::format_double(wc.component.b)
                << " nu=" << semio::io::format_double(wc.component.nu)
                << " nu/b=" << semio::io::format_double(wc.component.rate_ratio()) << "\n";
    summary << "log_likelihood: " << semio::io::format_double(fit.log_likelihood) << "\n"
            << "chi_square: " << semio::io::format_double(fit.chi_square)
            << " (dof " << fit.degrees_of_freedom << ")\n"
            << "log-log r: " << semio::io::format_double(fit.r) << "\n"
            << "log-log slope: " << semio::io::format_double(fit.slope) << "\n"
            << "word types: " << spectrum.total_types() << "\n"
            << "tokens: " << spectrum.total_tokens() << "\n";
    write_text(outdir, "summary.txt", summary.str(), manifest);
    manifest.write(outdir);

    std::cout << "report: M=" << fit.mixture.order() << " r=" << fit.r
              << " slope=" << fit.slope << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantitative toolkit for representation dynamics in communication"};
    app.set_version_flag("--version", semio::version);
    app.require_subcommand(1);

    AnalyzeArgs analyze_args;
    auto* analyze = app.add_subcommand("analyze", "tokenize corpora and emit count spectra");
    analyze->add_option("paths", analyze_args.paths, "input files or directories")->required();
    analyze->add_option("--kind", analyze_args.kind, "input kind: auto, text, markup")
        ->check(CLI::IsMember({"auto", "text", "markup"}))
        ->capture_default_str();
    analyze->add_option("--out", analyze_args.out, "output directory");

    FitArgs fit_args;
    auto* fit = app.add_subcommand("fit", "fit the occurrence-frequency mixture model");
    fit->add_option("spectrum", fit_args.spectrum_path, "spectrum CSV")->required();
    fit->add_option("--max-components", fit_args.max_components, "largest order to try")
        ->capture_default_str();
    fit->add_option("--restarts", fit_args.restarts, "random restarts per order")
        ->capture_default_str();
    fit->add_option("--seed", fit_args.seed, "random seed")->capture_default_str();
    fit->add_option("--out", fit_args.out, "output directory");

    SimulateArgs sim_args;
    semio::diffusion::DiffusionConfig sim_cfg;
    std::string init_mode = "zeros";
    std::vector<double> a_values;
    auto* simulate = app.add_subcommand("simulate", "run the rate-competition diffusion");
    simulate->add_option("--config", sim_args.config_path, "JSON config file");
    auto* optN = simulate->add_option("--N", sim_cfg.N, "competing alternatives");
    auto* opt_mu = simulate->add_option("--mu", sim_cfg.mu, "inner-state rate");
    auto* opt_rho = simulate->add_option("--rho", sim_cfg.rho, "parallelism coefficient");
    auto* opt_theta = simulate->add_option("--theta", sim_cfg.theta, "observation time");
    auto* opt_a = simulate->add_option("--a", a_values, "relaxation coefficient(s)");
    auto* opt_sigma = simulate->add_option("--sigma", sim_cfg.sigma, "noise intensity");
    auto* opt_dt = simulate->add_option("--dt", sim_cfg.dt, "integration step");
    auto* opt_burn = simulate->add_option("--burn-in", sim_cfg.burn_in, "discarded steps");
    auto* opt_stride =
        simulate->add_option("--stride", sim_cfg.sample_stride, "steps between samples");
    auto* opt_spr = simulate->add_option("--samples-per-replica", sim_cfg.samples_per_replica,
                                         "retained samples per replica");
    auto* opt_repl = simulate->add_option("--replicas", sim_cfg.replicas, "independent chains");
    auto* opt_seed = simulate->add_option("--seed", sim_cfg.seed, "random seed");
    auto* opt_threads = simulate->add_option("--threads", sim_cfg.threads, "worker threads");
    auto* opt_init = simulate->add_option("--init", init_mode, "initial rates: zeros, constant, uniform")
                         ->check(CLI::IsMember({"zeros", "constant", "uniform"}));
    auto* opt_initv = simulate->add_option("--init-value", sim_cfg.init_value, "init parameter");
    simulate->add_option("--out", sim_args.out, "output directory");

    CorArgs cor_args;
    auto* cor = app.add_subcommand("cor", "compute behavioral-coordination series");
    cor->add_option("--sessions", cor_args.sessions_path, "sessions JSON")->required();
    cor->add_option("--index", cor_args.index_path, "sign index JSON")->required();
    cor->add_option("--horizon", cor_args.horizon, "steps to keep (default: shortest session)");
    cor->add_flag("--log", cor_args.log_column, "add a log_cor column");
    cor->add_option("--out", cor_args.out, "output directory");

    CoupleArgs couple_args;
    auto* couple = app.add_subcommand("couple", "generate coupled-agent sessions");
    couple->add_option("--mode", couple_args.mode, "expert, non-expert or adaptive")
        ->check(CLI::IsMember({"expert", "non-expert", "adaptive"}))
        ->capture_default_str();
    couple->add_option("--states", couple_args.scenario.state_count, "inner states")
        ->capture_default_str();
    couple->add_option("--signs", couple_args.scenario.sign_count, "signs")
        ->capture_default_str();
    couple->add_option("--length", couple_args.scenario.session_length, "steps per session")
        ->capture_default_str();
    couple->add_option("--sessions", couple_args.scenario.session_count, "session count")
        ->capture_default_str();
    couple->add_option("--learning-rate", couple_args.scenario.learning_rate, "learning rate")
        ->capture_default_str();
    couple->add_option("--set-min", couple_args.scenario.set_size_min, "smallest state set")
        ->capture_default_str();
    couple->add_option("--set-max", couple_args.scenario.set_size_max, "largest state set")
        ->capture_default_str();
    couple->add_option("--seed", couple_args.scenario.seed, "random seed")
        ->capture_default_str();
    couple->add_option("--out", couple_args.out, "output directory");

    ReportArgs report_args;
    auto* report = app.add_subcommand("report", "render fit diagnostics as SVG + summary");
    report->add_option("--fit", report_args.fit_path, "fit JSON")->required();
    report->add_option("--spectrum", report_args.spectrum_path, "spectrum CSV")->required();
    report->add_option("--out", report_args.out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*analyze) return cmd_analyze(analyze_args);
        if (*fit) return cmd_fit(fit_args);
        if (*simulate) {
            std::string config_bytes;
            semio::diffusion::DiffusionConfig cfg;  // defaults
            if (!sim_args.config_path.empty()) {
                config_bytes = semio::io::read_file_bytes(sim_args.config_path);
                apply_config_json(semio::io::parse_json(config_bytes, "config"), cfg);
            }
            // explicit flags override the config file
            if (*optN) cfg.N = sim_cfg.N;
            if (*opt_mu) cfg.mu = sim_cfg.mu;
            if (*opt_rho) cfg.rho = sim_cfg.rho;
            if (*opt_theta) cfg.theta = sim_cfg.theta;
            if (*opt_a) cfg.a = a_values;
            if (*opt_sigma) cfg.sigma = sim_cfg.sigma;
            if (*opt_dt) cfg.dt = sim_cfg.dt;
            if (*opt_burn) cfg.burn_in = sim_cfg.burn_in;
            if (*opt_stride) cfg.sample_stride = sim_cfg.sample_stride;
            if (*opt_spr) cfg.samples_per_replica = sim_cfg.samples_per_replica;
            if (*opt_repl) cfg.replicas = sim_cfg.replicas;
            if (*opt_seed) cfg.seed = sim_cfg.seed;
            if (*opt_threads) cfg.threads = sim_cfg.threads;
            if (*opt_init) {
                if (init_mode == "zeros") cfg.init = semio::diffusion::InitMode::zeros;
                if (init_mode == "constant") cfg.init = semio::diffusion::InitMode::constant;
                if (init_mode == "uniform") cfg.init = semio::diffusion::InitMode::uniform;
            }
            if (*opt_initv) cfg.init_value = sim_cfg.init_value;
            return cmd_simulate(sim_args, cfg, config_bytes);
        }
        if (*cor) return cmd_cor(cor_args);
        if (*couple) return cmd_couple(couple_args);
        if (*report) return cmd_report(report_args);
    } catch (const data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const numeric_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
