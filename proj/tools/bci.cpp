// Single command-line entry point for the whole toolkit:
//   synth     generate a synthetic session (signal + markers)
//   train     fit the spatial filter and classifier, write model files
//   evaluate  k-fold cross-validated accuracy report
//   replay    stream a session through trained models into a command sink
//   hand-sim  simulated 5-servo hand listening for command bytes
//
// Exit codes: 0 success, 2 usage/validation, 3 numeric/training failure,
// 4 connection failure.

#include "bci/csp.hpp"
#include "bci/epochs.hpp"
#include "bci/error.hpp"
#include "bci/eval.hpp"
#include "bci/filter.hpp"
#include "bci/handsim.hpp"
#include "bci/io.hpp"
#include "bci/lda.hpp"
#include "bci/log.hpp"
#include "bci/online.hpp"
#include "bci/synth.hpp"
#include "bci/types.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace bci;

int exit_code_for(Errc code) {
    switch (code) {
    case Errc::too_few_trials:
    case Errc::too_few_samples:
    case Errc::rank_deficient:
    case Errc::numeric_failure:
    case Errc::singular:
    case Errc::zero_signal:
    case Errc::degenerate_epoch:
    case Errc::unstable:
        return 3;
    case Errc::sink_disconnected:
        return 4;
    default:
        return 2;
    }
}

std::string format_band(double low, double high) {
    return format_double(low) + "-" + format_double(high) + " Hz";
}

struct PreprocessFlags {
    double band_low = 8.0;
    double band_high = 30.0;
    int order = 4;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--band-low", band_low, "Band-pass lower edge in Hz")
            ->capture_default_str();
        cmd->add_option("--band-high", band_high, "Band-pass upper edge in Hz")
            ->capture_default_str();
        cmd->add_option("--order", order, "Total band-pass order (2, 4, 6 or 8)")
            ->capture_default_str();
    }
    SignalBuffer apply(const SignalBuffer& raw) const {
        return apply_filter(design_bandpass(band_low, band_high, order, raw.sample_rate_hz), raw);
    }
    void describe(std::vector<KeyValue>& settings) const {
        settings.emplace_back("band", format_band(band_low, band_high));
        settings.emplace_back("order", std::to_string(order));
    }
};

struct EpochFlags {
    double offset = 0.5;
    double length = 3.0;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--window-offset", offset, "Epoch start relative to each cue, seconds")
            ->capture_default_str();
        cmd->add_option("--window-length", length, "Epoch length, seconds")
            ->capture_default_str();
    }
    void describe(std::vector<KeyValue>& settings) const {
        settings.emplace_back("window-offset", format_double(offset) + " s");
        settings.emplace_back("window-length", format_double(length) + " s");
    }
};

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) fail(Errc::io_error, "cannot open '" + path + "' for writing");
    out << content;
    if (!out) fail(Errc::io_error, "failed writing '" + path + "'");
}

// --- synth ------------------------------------------------------------

struct SynthArgs {
    std::string spec_path;
    std::string signal_path = "signal.csv";
    std::string markers_path = "markers.csv";
    std::optional<std::uint64_t> seed_override;
};

int run_synth(const SynthArgs& args) {
    SessionSpec spec = parse_session_spec(args.spec_path);
    if (args.seed_override) spec.seed = *args.seed_override;
    const GeneratedSession session = generate_session(spec);
    write_signal_csv(session.signal, args.signal_path);
    write_markers_csv(session.markers, args.markers_path);
    std::cout << "wrote " << args.signal_path << " (" << session.signal.channel_count()
              << " channels, " << format_double(session.signal.duration_s()) << " s at "
              << format_double(session.signal.sample_rate_hz) << " Hz) and " << args.markers_path
              << " (" << session.markers.size() << " markers, seed " << spec.seed << ")\n";
    return 0;
}

// --- train ------------------------------------------------------------

struct TrainArgs {
    std::string signal_path;
    std::string markers_path;
    std::string csp_path = "csp.model";
    std::string lda_path = "lda.model";
    std::size_t pairs = 3;
    PreprocessFlags preprocess;
    EpochFlags epoch;
};

struct TrainedModels {
    CspModel csp;
    LdaModel lda;
    std::vector<Epoch> epochs;
    std::size_t skipped = 0;
};

TrainedModels train_models(const SignalBuffer& raw, const MarkerStream& markers,
                           const PreprocessFlags& preprocess, const EpochFlags& epoch,
                           std::size_t pairs) {
    const SignalBuffer filtered = preprocess.apply(raw);
    EpochExtraction extraction = extract_epochs(filtered, markers, epoch.offset, epoch.length);
    TrainedModels out;
    out.skipped = extraction.skipped;
    out.epochs = std::move(extraction.epochs);
    out.csp = train_csp(out.epochs, pairs, filtered.channel_names);
    std::vector<FeatureVector> features;
    features.reserve(out.epochs.size());
    for (const Epoch& e : out.epochs) {
        FeatureVector fv = log_variance_features(apply_csp(out.csp, e.data));
        fv.label = e.label;
        features.push_back(std::move(fv));
    }
    out.lda = train_lda(features);
    return out;
}

int run_train(const TrainArgs& args) {
    const SignalBuffer raw = read_signal_csv(args.signal_path);
    const MarkerStream markers = read_markers_csv(args.markers_path);
    const TrainedModels trained =
        train_models(raw, markers, args.preprocess, args.epoch, args.pairs);

    try {
        save_csp_model(trained.csp, args.csp_path);
        save_lda_model(trained.lda, args.lda_path);
    } catch (...) {
        std::remove(args.csp_path.c_str());
        std::remove(args.lda_path.c_str());
        throw;
    }

    std::vector<ClassLabel> targets, predictions;
    for (const Epoch& e : trained.epochs) {
        targets.push_back(e.label);
        predictions.push_back(
            classify(trained.lda, log_variance_features(apply_csp(trained.csp, e.data))));
    }
    const ConfusionMatrix cm = confusion(targets, predictions);

    std::vector<KeyValue> settings;
    settings.emplace_back("signal", args.signal_path);
    settings.emplace_back("markers", args.markers_path);
    args.preprocess.describe(settings);
    args.epoch.describe(settings);
    settings.emplace_back("pairs", std::to_string(args.pairs));
    std::vector<KeyValue> extras;
    extras.emplace_back("epochs used", std::to_string(trained.epochs.size()));
    extras.emplace_back("epochs skipped", std::to_string(trained.skipped));
    extras.emplace_back("models written", args.csp_path + ", " + args.lda_path);
    std::cout << render_report(settings, cm, extras);
    return 0;
}

// --- evaluate ---------------------------------------------------------

struct EvaluateArgs {
    std::string signal_path;
    std::string markers_path;
    std::size_t folds = 5;
    std::size_t pairs = 3;
    PreprocessFlags preprocess;
    EpochFlags epoch;
    std::string report_path = "report.txt";
    std::string windows_path = "windows.csv";
};

int run_evaluate(const EvaluateArgs& args) {
    const SignalBuffer raw = read_signal_csv(args.signal_path);
    const MarkerStream markers = read_markers_csv(args.markers_path);
    const SignalBuffer filtered = args.preprocess.apply(raw);
    const EpochExtraction extraction =
        extract_epochs(filtered, markers, args.epoch.offset, args.epoch.length);
    const OfflineEvaluation eval = evaluate_offline(extraction.epochs, args.pairs, args.folds);

    std::vector<KeyValue> settings;
    settings.emplace_back("signal", args.signal_path);
    settings.emplace_back("markers", args.markers_path);
    args.preprocess.describe(settings);
    args.epoch.describe(settings);
    settings.emplace_back("pairs", std::to_string(args.pairs));
    settings.emplace_back("folds", std::to_string(args.folds));
    std::vector<KeyValue> extras;
    extras.emplace_back("epochs scored", std::to_string(eval.records.size()));
    extras.emplace_back("epochs skipped", std::to_string(extraction.skipped));
    const std::string report = render_report(settings, eval.matrix, extras);

    write_text_file(args.report_path, report);
    write_window_csv(eval.records, args.windows_path);
    std::cout << report;
    return 0;
}

// --- replay -----------------------------------------------------------

struct ReplayArgs {
    std::string signal_path;
    std::string markers_path;
    std::string csp_path;
    std::string lda_path;
    PreprocessFlags preprocess;
    ReplayOptions options; // timing filled from --fast
    bool fast = false;
    std::string connect;  // host:port
    std::string capture;  // file path
    std::string report_path = "replay_report.txt";
    std::string windows_path = "replay_windows.csv";
};

std::pair<std::string, std::uint16_t> parse_endpoint(const std::string& endpoint) {
    const std::size_t colon = endpoint.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == endpoint.size())
        fail(Errc::invalid_arg, "endpoint must be host:port, got '" + endpoint + "'");
    const std::string port_text = endpoint.substr(colon + 1);
    unsigned long port = 0;
    try {
        port = std::stoul(port_text);
    } catch (const std::exception&) {
        fail(Errc::invalid_arg, "bad port '" + port_text + "'");
    }
    if (port == 0 || port > 65535) fail(Errc::invalid_arg, "bad port '" + port_text + "'");
    return {endpoint.substr(0, colon), static_cast<std::uint16_t>(port)};
}

int run_replay_cmd(const ReplayArgs& args) {
    const SignalBuffer raw = read_signal_csv(args.signal_path);
    const MarkerStream markers = read_markers_csv(args.markers_path);
    const CspModel csp = load_csp_model(args.csp_path);
    const LdaModel lda = load_lda_model(args.lda_path);
    const SignalBuffer filtered = args.preprocess.apply(raw);

    ReplayOptions options = args.options;
    options.timing = args.fast ? ReplayTiming::fast : ReplayTiming::realtime;

    std::unique_ptr<CommandSink> sink;
    std::string sink_desc;
    if (!args.connect.empty()) {
        const auto [host, port] = parse_endpoint(args.connect);
        sink = std::make_unique<TcpSink>(host, port);
        sink_desc = "tcp " + args.connect;
    } else {
        sink = std::make_unique<CaptureFileSink>(args.capture);
        sink_desc = "capture " + args.capture;
    }

    const ReplaySummary summary = run_replay(filtered, markers, csp, lda, options, *sink);

    std::vector<KeyValue> settings;
    settings.emplace_back("signal", args.signal_path);
    settings.emplace_back("markers", args.markers_path);
    settings.emplace_back("csp", args.csp_path);
    settings.emplace_back("lda", args.lda_path);
    args.preprocess.describe(settings);
    settings.emplace_back("window", format_double(options.window_s) + " s");
    settings.emplace_back("step", format_double(options.step_s) + " s");
    settings.emplace_back("debounce", std::to_string(options.debounce_k));
    settings.emplace_back("swap", options.swap_sides ? "true" : "false");
    settings.emplace_back("timing", args.fast ? "fast" : "realtime");
    settings.emplace_back("sink", sink_desc);

    std::vector<KeyValue> extras;
    extras.emplace_back("windows classified", std::to_string(summary.records.size()));
    extras.emplace_back("windows labeled", std::to_string(summary.labeled_windows));
    extras.emplace_back("windows degenerate", std::to_string(summary.degenerate));
    if (summary.cue_confusion.total() > 0)
        extras.emplace_back("per-cue accuracy (majority vote)",
                            format_percent(accuracy_percent(summary.cue_confusion)) + "% over " +
                                std::to_string(summary.cue_confusion.total()) + " cues");
    std::string command_log;
    for (const CommandEvent& c : summary.commands) {
        if (!command_log.empty()) command_log += ' ';
        command_log += c.byte;
        command_log += '@';
        command_log += format_double(c.time_s);
    }
    extras.emplace_back("commands", command_log.empty() ? "(none)" : command_log);
    if (summary.partial) extras.emplace_back("partial", "true (sink disconnected mid-replay)");

    const std::string report = render_report(settings, summary.window_confusion, extras);
    write_text_file(args.report_path, report);
    write_window_csv(summary.records, args.windows_path);
    std::cout << report;

    if (summary.partial) {
        std::cerr << "error: command sink disconnected mid-replay [SINK_DISCONNECTED]\n";
        return 4;
    }
    return 0;
}

// --- hand-sim ---------------------------------------------------------

std::atomic<bool> g_stop{false};

void request_stop(int) { g_stop.store(true); }

struct HandSimArgs {
    int listen_port = -1;
    bool use_stdin = false;
    std::string trace_path = "hand_trace.txt";
};

int run_hand_sim(const HandSimArgs& args) {
    if (args.use_stdin) {
        run_hand_stream(std::cin, args.trace_path);
        return 0;
    }
    HandServer server(static_cast<std::uint16_t>(args.listen_port), args.trace_path);
    std::signal(SIGINT, request_stop);
    std::signal(SIGTERM, request_stop);
    std::printf("listening on port %u\n", static_cast<unsigned>(server.port()));
    std::fflush(stdout);
    server.run(g_stop);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Motor-imagery BCI toolkit: CSP + LDA training, evaluation, replay, and a "
                 "simulated prosthetic hand"};
    app.require_subcommand(1);

    SynthArgs synth_args;
    CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic session");
    synth->add_option("spec", synth_args.spec_path, "Session spec file (key=value lines)")
        ->required();
    synth->add_option("--signal", synth_args.signal_path, "Output signal CSV")
        ->capture_default_str();
    synth->add_option("--markers", synth_args.markers_path, "Output markers CSV")
        ->capture_default_str();
    std::uint64_t seed_value = 0;
    CLI::Option* seed_opt =
        synth->add_option("--seed", seed_value, "Override the seed in the spec file");

    TrainArgs train_args;
    CLI::App* train = app.add_subcommand("train", "Train CSP + LDA models from a session");
    train->add_option("--signal", train_args.signal_path, "Input signal CSV")->required();
    train->add_option("--markers", train_args.markers_path, "Input markers CSV")->required();
    train->add_option("--csp", train_args.csp_path, "Output CSP model file")
        ->capture_default_str();
    train->add_option("--lda", train_args.lda_path, "Output LDA model file")
        ->capture_default_str();
    train->add_option("--pairs", train_args.pairs, "CSP filter pairs to keep")
        ->capture_default_str();
    train_args.preprocess.add_to(train);
    train_args.epoch.add_to(train);

    EvaluateArgs eval_args;
    CLI::App* evaluate = app.add_subcommand("evaluate", "Cross-validated accuracy report");
    evaluate->add_option("--signal", eval_args.signal_path, "Input signal CSV")->required();
    evaluate->add_option("--markers", eval_args.markers_path, "Input markers CSV")->required();
    evaluate->add_option("--folds", eval_args.folds, "Cross-validation folds")
        ->capture_default_str();
    evaluate->add_option("--pairs", eval_args.pairs, "CSP filter pairs to keep")
        ->capture_default_str();
    eval_args.preprocess.add_to(evaluate);
    eval_args.epoch.add_to(evaluate);
    evaluate->add_option("--report", eval_args.report_path, "Output text report path")
        ->capture_default_str();
    evaluate->add_option("--windows", eval_args.windows_path, "Output per-epoch CSV path")
        ->capture_default_str();

    ReplayArgs replay_args;
    CLI::App* replay = app.add_subcommand("replay", "Stream a session through trained models");
    replay->add_option("--signal", replay_args.signal_path, "Input signal CSV")->required();
    replay->add_option("--markers", replay_args.markers_path, "Input markers CSV")->required();
    replay->add_option("--csp", replay_args.csp_path, "CSP model file")->required();
    replay->add_option("--lda", replay_args.lda_path, "LDA model file")->required();
    replay_args.preprocess.add_to(replay);
    replay->add_option("--window", replay_args.options.window_s, "Sliding window length, seconds")
        ->capture_default_str();
    replay->add_option("--step", replay_args.options.step_s, "Sliding window step, seconds")
        ->capture_default_str();
    replay->add_option("--debounce", replay_args.options.debounce_k,
                       "Consecutive agreeing windows required per command")
        ->capture_default_str();
    replay->add_flag("--swap", replay_args.options.swap_sides,
                     "Swap the side-to-command mapping (LEFT closes, RIGHT opens)");
    replay->add_flag("--fast", replay_args.fast, "Replay as fast as possible (default: realtime)");
    CLI::Option* connect_opt = replay->add_option("--connect", replay_args.connect,
                                                  "Send commands to a hand simulator at host:port");
    CLI::Option* capture_opt =
        replay->add_option("--capture", replay_args.capture, "Append command bytes to this file");
    connect_opt->excludes(capture_opt);
    replay->add_option("--report", replay_args.report_path, "Output text report path")
        ->capture_default_str();
    replay->add_option("--windows", replay_args.windows_path, "Output per-window CSV path")
        ->capture_default_str();

    HandSimArgs hand_args;
    CLI::App* hand = app.add_subcommand("hand-sim", "Simulated 5-servo prosthetic hand");
    CLI::Option* listen_opt = hand->add_option(
        "--listen", hand_args.listen_port, "TCP port to listen on (0 picks a free port)");
    CLI::Option* stdin_opt =
        hand->add_flag("--stdin", hand_args.use_stdin, "Read command bytes from standard input");
    listen_opt->excludes(stdin_opt);
    hand->add_option("--trace", hand_args.trace_path, "Trace file (one line per received byte)")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (synth->parsed()) {
            if (*seed_opt) synth_args.seed_override = seed_value;
            return run_synth(synth_args);
        }
        if (train->parsed()) return run_train(train_args);
        if (evaluate->parsed()) return run_evaluate(eval_args);
        if (replay->parsed()) {
            if (replay_args.connect.empty() && replay_args.capture.empty())
                fail(Errc::invalid_arg, "replay needs --connect host:port or --capture file");
            return run_replay_cmd(replay_args);
        }
        if (hand->parsed()) {
            if (!hand_args.use_stdin && hand_args.listen_port < 0)
                fail(Errc::invalid_arg, "hand-sim needs --listen <port> or --stdin");
            if (hand_args.listen_port > 65535)
                fail(Errc::invalid_arg, "port must be at most 65535");
            return run_hand_sim(hand_args);
        }
    } catch (const bci::Error& e) {
        std::cerr << "error: " << e.what() << " [" << errc_name(e.code()) << "]\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
