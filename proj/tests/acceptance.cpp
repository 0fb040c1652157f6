// Release gate: nine criteria, one PASS/FAIL line each, nonzero exit when any
// fail. Fast arithmetic checks run in process; pipeline criteria spawn the
// command-line binary passed as argv[1].
#define DOCTEST_CONFIG_DISABLE // helpers.hpp pulls the header; no runner here
#include "bci/csp.hpp"
#include "bci/eval.hpp"
#include "bci/filter.hpp"
#include "bci/handsim.hpp"
#include "bci/lda.hpp"
#include "bci/linalg.hpp"
#include "bci/online.hpp"
#include "bci/synth.hpp"

#include "helpers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

using namespace bci;

namespace {

namespace fs = std::filesystem;

std::string g_cli;   // path to the command-line binary under test
fs::path g_scratch;  // fresh working directory for generated files

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    require(static_cast<bool>(out), "cannot write " + path);
}

std::string scratch(const std::string& name) { return (g_scratch / name).string(); }

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = "\"" + g_cli + "\" " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    require(pipe != nullptr, "popen failed for: " + cmd);
    CliResult result;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) result.output.append(buf, n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

CliResult run_cli_expect_ok(const std::string& args) {
    CliResult result = run_cli(args);
    require(result.exit_code == 0,
            "command '" + args + "' exited " + std::to_string(result.exit_code) + ": " +
                result.output.substr(0, 400));
    return result;
}

double parse_overall_accuracy(const std::string& report) {
    const std::string key = "accuracy overall: ";
    const std::size_t pos = report.find(key);
    require(pos != std::string::npos, "report lacks an overall accuracy line");
    return std::stod(report.substr(pos + key.size()));
}

double magnitude_db_oracle(const FilterCoefficients& c, double hz) {
    const double w = 2.0 * M_PI * hz / c.fs;
    const std::complex<double> z_inv = std::polar(1.0, -w);
    std::complex<double> num = 0.0, den = 0.0, zk = 1.0;
    for (std::size_t k = 0; k < c.feedforward.size(); ++k) {
        num += c.feedforward[k] * zk;
        zk *= z_inv;
    }
    zk = 1.0;
    for (std::size_t k = 0; k < c.feedback.size(); ++k) {
        den += c.feedback[k] * zk;
        zk *= z_inv;
    }
    return 20.0 * std::log10(std::abs(num / den));
}

// Schur-Cohn recursion: all poles lie inside the unit circle iff every
// reflection coefficient has magnitude below one.
bool poles_inside_unit_circle(std::vector<double> a) {
    while (a.size() > 1) {
        const double k = a.back() / a.front();
        if (!(std::fabs(k) < 1.0)) return false;
        std::vector<double> next(a.size() - 1);
        const double denom = 1.0 - k * k;
        for (std::size_t i = 0; i + 1 < a.size(); ++i)
            next[i] = (a[i] - k * a[a.size() - 1 - i]) / denom;
        a = std::move(next);
    }
    return true;
}

Matrix reconstruct(const Matrix& vectors, const std::vector<double>& values) {
    const std::size_t n = vectors.rows();
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += vectors(i, k) * values[k] * vectors(j, k);
            out(i, j) = s;
        }
    return out;
}

double quadratic_form(std::span<const double> w, const Matrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) s += w[i] * m(i, j) * w[j];
    return s;
}

// Independent reading of the hand protocol: open/closed per finger.
HandState reference_interpreter(const std::string& bytes) {
    bool closed[5] = {false, false, false, false, false};
    for (const char b : bytes) {
        if (b == 'q') for (bool& f : closed) f = true;
        if (b == 'a') for (bool& f : closed) f = false;
        if (b == 'w') closed[0] = true;
        if (b == 's') closed[0] = false;
    }
    HandState out;
    for (int i = 0; i < 5; ++i) out.servo_deg[i] = closed[i] ? 180.0 : 0.0;
    return out;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::istringstream in(slurp(path));
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::string diag_cov(std::size_t n, std::size_t hot, double hot_value, double cold_value) {
    std::string out = "diag:";
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) out += ',';
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%g", i == hot ? hot_value : cold_value);
        out += buf;
    }
    return out;
}

// --- criteria -----------------------------------------------------------

void criterion_1() {
    const std::vector<ClassLabel> all_left(40, ClassLabel::left);
    const ConfusionMatrix pure = confusion(all_left, all_left);
    require(pure.at(ClassLabel::left, ClassLabel::left) == 40, "pure-left count off");
    require(format_percent(accuracy_percent(pure)) == "100.00",
            "pure-left accuracy must format as 100.00");

    ConfusionMatrix mixed;
    mixed.counts = {{{17, 3}, {5, 15}}};
    require(format_percent(accuracy_percent(mixed)) == "80.00",
            "mixed fixture accuracy must format as 80.00");

    ConfusionMatrix chance;
    chance.counts = {{{10, 10}, {10, 10}}};
    require(format_percent(accuracy_percent(chance)) == "50.00",
            "chance fixture accuracy must format as 50.00");
}

void criterion_2() {
    const auto t0 = std::chrono::steady_clock::now();

    const std::string base =
        "n_channels=14\nfs=128\nn_cues=40\ncue_period_s=4\nseed=11\n";
    spit(scratch("sep_spec.txt"), base +
                                      "cov_left=" + diag_cov(14, 0, 1.6, 0.4) + "\n" +
                                      "cov_right=" + diag_cov(14, 1, 1.6, 0.4) + "\n");
    spit(scratch("same_spec.txt"), base + "cov_left=" + diag_cov(14, 0, 0.5, 0.5) + "\n" +
                                       "cov_right=" + diag_cov(14, 0, 0.5, 0.5) + "\n");

    run_cli_expect_ok("synth " + scratch("sep_spec.txt") + " --signal " + scratch("sep_sig.csv") +
                      " --markers " + scratch("sep_mk.csv"));
    const CliResult separated = run_cli_expect_ok(
        "evaluate --signal " + scratch("sep_sig.csv") + " --markers " + scratch("sep_mk.csv") +
        " --folds 5 --report " + scratch("sep_report.txt") + " --windows " +
        scratch("sep_windows.csv"));
    const double sep_acc = parse_overall_accuracy(separated.output);
    require(sep_acc >= 95.0, "separated covariances scored " + std::to_string(sep_acc) + "%");

    run_cli_expect_ok("synth " + scratch("same_spec.txt") + " --signal " +
                      scratch("same_sig.csv") + " --markers " + scratch("same_mk.csv"));
    const CliResult same = run_cli_expect_ok(
        "evaluate --signal " + scratch("same_sig.csv") + " --markers " + scratch("same_mk.csv") +
        " --folds 5 --report " + scratch("same_report.txt") + " --windows " +
        scratch("same_windows.csv"));
    const double same_acc = parse_overall_accuracy(same.output);
    require(same_acc >= 35.0 && same_acc <= 65.0,
            "identical covariances scored " + std::to_string(same_acc) + "%");

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(elapsed < 30.0, "took " + std::to_string(elapsed) + " s, budget 30 s");
}

void criterion_3() {
    Rng64 rng(3001);
    for (int trial = 0; trial < 1000; ++trial) {
        const Matrix x = testutil::random_matrix(rng, 6, 50);
        const SpatialCovariance cov = normalized_covariance(x);
        require(std::fabs(trace(cov.matrix) - 1.0) <= 1e-9, "trace differs from one");
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = i + 1; j < 6; ++j)
                require(std::fabs(cov.matrix(i, j) - cov.matrix(j, i)) <= 1e-12,
                        "covariance asymmetry");
        const SymmetricEigen eig = symmetric_eigen(cov.matrix);
        require(eig.values.back() >= -1e-10, "covariance is not positive semidefinite");
    }
}

void criterion_4() {
    Rng64 rng(4001);
    for (int round = 0; round < 200; ++round) {
        const std::size_t n = 3 + static_cast<std::size_t>(round % 5);
        Matrix left = testutil::random_spd(rng, n);
        Matrix right = testutil::random_spd(rng, n);
        left = (1.0 / trace(left)) * left;
        right = (1.0 / trace(right)) * right;
        const CompositeEigen comp = composite_eigendecomposition(
            SpatialCovariance{left, 2}, SpatialCovariance{right, 2});
        const Matrix anc = left + right;
        const double rel =
            frobenius_norm(reconstruct(comp.m0, comp.sigma) - anc) / frobenius_norm(anc);
        require(rel < 1e-9, "composite reconstruction error " + std::to_string(rel));
    }

    auto epochs = testutil::gaussian_epochs(testutil::fixture_cov_left(),
                                            testutil::fixture_cov_right(), 30, 200, 4002);
    const CspModel model = train_csp(epochs, 1);
    const SpatialCovariance anc_l = average_covariance(epochs, ClassLabel::left);
    const SpatialCovariance anc_r = average_covariance(epochs, ClassLabel::right);
    for (std::size_t r = 0; r < model.projection.rows(); ++r) {
        const double total = quadratic_form(model.projection.row_span(r), anc_l.matrix) +
                             quadratic_form(model.projection.row_span(r), anc_r.matrix);
        require(std::fabs(total - 1.0) <= 1e-6,
                "row " + std::to_string(r) + " composite variance " + std::to_string(total));
    }

    for (auto& e : epochs) e.data = 1e-6 * e.data;
    const CspModel scaled = train_csp(epochs, 1);
    require(max_abs_diff(scaled.projection, model.projection) <= 1e-6,
            "projection moved under global epoch scaling");
}

void criterion_5() {
    const FilterCoefficients coeffs = design_bandpass(8.0, 30.0, 4, 128.0);
    const double at_1 = magnitude_db_oracle(coeffs, 1.0);
    const double at_60 = magnitude_db_oracle(coeffs, 60.0);
    const double at_center = magnitude_db_oracle(coeffs, std::sqrt(8.0 * 30.0));
    require(at_1 <= -20.0, "1 Hz attenuation only " + std::to_string(at_1) + " dB");
    require(at_60 <= -20.0, "60 Hz attenuation only " + std::to_string(at_60) + " dB");
    require(std::fabs(at_center) <= 0.5,
            "band-center response " + std::to_string(at_center) + " dB");
    require(poles_inside_unit_circle(coeffs.feedback), "a pole escaped the unit circle");
}

void criterion_6() {
    std::vector<FeatureVector> symmetric(4);
    symmetric[0].values = {-3.0};
    symmetric[1].values = {-1.0};
    symmetric[2].values = {1.0};
    symmetric[3].values = {3.0};
    symmetric[0].label = symmetric[1].label = ClassLabel::left;
    symmetric[2].label = symmetric[3].label = ClassLabel::right;
    const LdaModel one_d = train_lda(symmetric);
    FeatureVector origin;
    origin.values = {0.0};
    require(std::fabs(lda_score(one_d, origin)) <= 1e-9, "boundary is off the origin");

    // Class covariance diag(1, 4), means (-1, 0) and (1, 0); the closed-form
    // discriminant direction is (1, 0) after whitening.
    Rng64 rng(6001);
    std::vector<FeatureVector> train;
    for (int i = 0; i < 8000; ++i) {
        FeatureVector f;
        const ClassLabel label = (i % 2 == 0) ? ClassLabel::left : ClassLabel::right;
        const double mu = (label == ClassLabel::left) ? -1.0 : 1.0;
        f.values = {mu + rng.next_gaussian(), 2.0 * rng.next_gaussian()};
        f.label = label;
        train.push_back(std::move(f));
    }
    const LdaModel planar = train_lda(train);
    const double norm = std::sqrt(planar.weights[0] * planar.weights[0] +
                                  planar.weights[1] * planar.weights[1]);
    require(planar.weights[0] > 0.0, "discriminant points the wrong way");
    const double angle_deg = std::acos(planar.weights[0] / norm) * 180.0 / M_PI;
    require(angle_deg <= 5.0, "direction off by " + std::to_string(angle_deg) + " degrees");
}

void criterion_7() {
    const HandState open;
    HandState all_closed;
    all_closed.servo_deg = {180, 180, 180, 180, 180};
    HandState finger_one;
    finger_one.servo_deg = {180, 0, 0, 0, 0};
    HandState all_but_one;
    all_but_one.servo_deg = {0, 180, 180, 180, 180};

    require(apply_command(open, 'q') == all_closed, "'q' must close every servo");
    require(apply_command(all_closed, 'a') == open, "'a' must open every servo");
    require(apply_command(open, 'w') == finger_one, "'w' must close finger one only");
    require(apply_command(all_closed, 's') == all_but_one, "'s' must open finger one only");
    for (const char b : {'x', 'Q', 'z', ' ', '\n'})
        require(apply_command(finger_one, b) == finger_one, "unknown bytes must be ignored");

    const std::string alphabet = "qawsx";
    std::vector<std::string> sequences{""};
    for (int len = 1; len <= 4; ++len) {
        std::vector<std::string> next;
        for (const std::string& prefix : sequences)
            for (const char b : alphabet) next.push_back(prefix + b);
        sequences = std::move(next);
        for (const std::string& seq : sequences) {
            HandState state;
            for (const char b : seq) state = apply_command(state, b);
            require(state == reference_interpreter(seq),
                    "sequence '" + seq + "' diverges from the reference interpreter");
        }
    }
}

void criterion_8() {
    // Models trained on one session, a second short session replayed twice;
    // the capture files must match byte for byte.
    const std::string covs = "cov_left=" + diag_cov(14, 0, 1.6, 0.4) + "\n" +
                             "cov_right=" + diag_cov(14, 1, 1.6, 0.4) + "\n";
    spit(scratch("train_spec.txt"),
         "n_channels=14\nfs=128\nn_cues=12\ncue_period_s=4\nseed=21\n" + covs);
    spit(scratch("replay_spec.txt"),
         "n_channels=14\nfs=128\nn_cues=2\ncue_period_s=4\nseed=12\n" + covs);
    run_cli_expect_ok("synth " + scratch("train_spec.txt") + " --signal " +
                      scratch("train_sig.csv") + " --markers " + scratch("train_mk.csv"));
    run_cli_expect_ok("synth " + scratch("replay_spec.txt") + " --signal " +
                      scratch("replay_sig.csv") + " --markers " + scratch("replay_mk.csv"));
    run_cli_expect_ok("train --signal " + scratch("train_sig.csv") + " --markers " +
                      scratch("train_mk.csv") + " --csp " + scratch("model.csp") + " --lda " +
                      scratch("model.lda"));

    const std::string common = "replay --signal " + scratch("replay_sig.csv") + " --markers " +
                               scratch("replay_mk.csv") + " --csp " + scratch("model.csp") +
                               " --lda " + scratch("model.lda") + " --debounce 3";
    run_cli_expect_ok(common + " --fast --capture " + scratch("cap_fast.txt") + " --report " +
                      scratch("rep_fast.txt") + " --windows " + scratch("win_fast.csv"));
    run_cli_expect_ok(common + " --capture " + scratch("cap_real.txt") + " --report " +
                      scratch("rep_real.txt") + " --windows " + scratch("win_real.csv"));

    const std::string fast_bytes = slurp(scratch("cap_fast.txt"));
    const std::string real_bytes = slurp(scratch("cap_real.txt"));
    require(!fast_bytes.empty(), "fast replay emitted no commands");
    require(fast_bytes == real_bytes, "fast and realtime captures differ: '" + fast_bytes +
                                          "' vs '" + real_bytes + "'");

    // Strictly alternating decisions never satisfy a debounce of three.
    std::vector<DecisionEvent> alternating(24);
    for (std::size_t i = 0; i < alternating.size(); ++i) {
        alternating[i].time_s = 0.25 * static_cast<double>(i);
        alternating[i].label = (i % 2 == 0) ? ClassLabel::left : ClassLabel::right;
    }
    require(decide_command(alternating, 3).empty(),
            "alternating labels must produce no command");
}

void criterion_9() {
    const auto t0 = std::chrono::steady_clock::now();

    // Fresh end-to-end chain: generate, train, then drive the hand over TCP.
    spit(scratch("e2e_spec.txt"),
         "n_channels=6\nfs=128\nn_cues=16\ncue_period_s=4\nseed=13\n"
         "cov_left=" + diag_cov(6, 0, 1.6, 0.4) + "\n" +
         "cov_right=" + diag_cov(6, 1, 1.6, 0.4) + "\n");
    run_cli_expect_ok("synth " + scratch("e2e_spec.txt") + " --signal " + scratch("e2e_sig.csv") +
                      " --markers " + scratch("e2e_mk.csv"));
    run_cli_expect_ok("train --signal " + scratch("e2e_sig.csv") + " --markers " +
                      scratch("e2e_mk.csv") + " --csp " + scratch("e2e.csp") + " --lda " +
                      scratch("e2e.lda"));

    // Reference run into a capture file (same deterministic decisions).
    const std::string replay_base =
        "replay --signal " + scratch("e2e_sig.csv") + " --markers " + scratch("e2e_mk.csv") +
        " --csp " + scratch("e2e.csp") + " --lda " + scratch("e2e.lda") + " --fast";
    run_cli_expect_ok(replay_base + " --capture " + scratch("e2e_cap.txt") + " --report " +
                      scratch("e2e_cap_report.txt") + " --windows " +
                      scratch("e2e_cap_windows.csv"));
    const std::string expected_bytes = slurp(scratch("e2e_cap.txt"));
    require(!expected_bytes.empty(), "end-to-end replay emitted no commands");

    // Hand simulator as a child process on an ephemeral port.
    const std::string trace_path = scratch("e2e_trace.txt");
    int out_pipe[2];
    require(pipe(out_pipe) == 0, "pipe failed");
    const pid_t child = fork();
    require(child >= 0, "fork failed");
    if (child == 0) {
        dup2(out_pipe[1], STDOUT_FILENO);
        ::close(out_pipe[0]);
        ::close(out_pipe[1]);
        execl(g_cli.c_str(), g_cli.c_str(), "hand-sim", "--listen", "0", "--trace",
              trace_path.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    ::close(out_pipe[1]);

    // First stdout line announces the bound port.
    std::string announcement;
    {
        char ch = 0;
        struct pollfd pfd{out_pipe[0], POLLIN, 0};
        while (announcement.find('\n') == std::string::npos) {
            const int ready = poll(&pfd, 1, 5000);
            if (ready <= 0) break;
            const ssize_t n = read(out_pipe[0], &ch, 1);
            if (n <= 0) break;
            announcement.push_back(ch);
        }
    }
    unsigned port = 0;
    const bool announced = std::sscanf(announcement.c_str(), "listening on port %u", &port) == 1;
    if (!announced || port == 0) {
        kill(child, SIGKILL);
        waitpid(child, nullptr, 0);
        ::close(out_pipe[0]);
        throw Failure("hand simulator never announced a port: '" + announcement + "'");
    }

    Failure deferred("");
    bool failed = false;
    try {
        run_cli_expect_ok(replay_base + " --connect 127.0.0.1:" + std::to_string(port) +
                          " --report " + scratch("e2e_tcp_report.txt") + " --windows " +
                          scratch("e2e_tcp_windows.csv"));

        // The server logs asynchronously; wait for every byte to arrive.
        std::vector<std::string> lines;
        for (int i = 0; i < 200; ++i) {
            if (fs::exists(trace_path)) lines = read_lines(trace_path);
            if (lines.size() >= expected_bytes.size()) break;
            usleep(25 * 1000);
        }

        require(lines.size() == expected_bytes.size(),
                "trace has " + std::to_string(lines.size()) + " lines for " +
                    std::to_string(expected_bytes.size()) + " captured commands");
        for (std::size_t i = 0; i < lines.size(); ++i) {
            std::istringstream fields(lines[i]);
            std::string stamp, byte;
            fields >> stamp >> byte;
            require(byte.size() == 1 && byte[0] == expected_bytes[i],
                    "trace line " + std::to_string(i) + " logs '" + byte + "', expected '" +
                        std::string(1, expected_bytes[i]) + "'");
        }

        // Final servo state must mirror the last debounced command.
        const std::string last_line = lines.back();
        const std::string servo_block = last_line.substr(last_line.find(' ', last_line.find(' ') + 1) + 1);
        const char last_cmd = expected_bytes.back();
        const std::string expected_block =
            (last_cmd == 'q') ? "180 180 180 180 180" : "0 0 0 0 0";
        require(last_cmd == 'q' || last_cmd == 'a',
                "debounced commands must be whole-hand bytes");
        require(servo_block == expected_block,
                "final state '" + servo_block + "' does not match command '" +
                    std::string(1, last_cmd) + "'");
    } catch (const Failure& f) {
        deferred = f;
        failed = true;
    }

    kill(child, SIGTERM);
    for (int i = 0; i < 40 && waitpid(child, nullptr, WNOHANG) == 0; ++i) usleep(50 * 1000);
    kill(child, SIGKILL);
    waitpid(child, nullptr, WNOHANG);
    ::close(out_pipe[0]);
    if (failed) throw deferred;

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(elapsed < 60.0, "took " + std::to_string(elapsed) + " s, budget 60 s");
}

struct Criterion {
    int number;
    const char* description;
    void (*run)();
};

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: %s <path-to-cli-binary>\n", argv[0]);
        return 2;
    }
    g_cli = fs::absolute(argv[1]).string();
    if (!fs::exists(g_cli)) {
        std::fprintf(stderr, "no such binary: %s\n", g_cli.c_str());
        return 2;
    }
    g_scratch = fs::absolute("acceptance_scratch");
    std::error_code ec;
    fs::remove_all(g_scratch, ec);
    fs::create_directories(g_scratch);

    const Criterion criteria[] = {
        {1, "accuracy arithmetic formats the confusion fixtures exactly", criterion_1},
        {2, "synthetic sessions cross-validate high and null to chance", criterion_2},
        {3, "normalized covariances are unit-trace symmetric PSD", criterion_3},
        {4, "composite eigenstructure reconstructs and filters normalize", criterion_4},
        {5, "band-pass hits attenuation, passband, and stability bounds", criterion_5},
        {6, "discriminant boundary and direction match closed form", criterion_6},
        {7, "hand protocol matches the reference interpreter", criterion_7},
        {8, "fast and realtime replays capture identical bytes", criterion_8},
        {9, "generated session drives the simulated hand over TCP", criterion_9},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        std::string reason;
        try {
            c.run();
        } catch (const std::exception& e) {
            reason = e.what();
        }
        if (reason.empty()) {
            std::printf("PASS: criterion %d %s\n", c.number, c.description);
        } else {
            std::printf("FAIL: criterion %d %s: %s\n", c.number, c.description, reason.c_str());
            ++failures;
        }
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
