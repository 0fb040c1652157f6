#include "bci/online.hpp"

#include "bci/error.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <thread>

namespace bci {

std::vector<StreamWindow> stream_windows(const SignalBuffer& buffer, double window_s,
                                         double step_s) {
    validate(buffer);
    if (!(window_s > 0.0) || !(step_s > 0.0))
        fail(Errc::invalid_arg, "stream_windows: window and step must be positive");
    const double fs = buffer.sample_rate_hz;
    const std::size_t total = buffer.sample_count();
    const auto win_n = static_cast<std::size_t>(std::llround(window_s * fs));
    const auto step_n = static_cast<std::size_t>(std::llround(step_s * fs));
    if (win_n == 0 || step_n == 0)
        fail(Errc::invalid_arg, "stream_windows: window and step must span at least one sample");
    if (win_n > total)
        fail(Errc::window_too_long, "stream_windows: window " + std::to_string(window_s) +
                                        " s exceeds signal duration " +
                                        std::to_string(buffer.duration_s()) + " s");

    std::vector<StreamWindow> windows;
    windows.reserve((total - win_n) / step_n + 1);
    for (std::size_t start = 0; start + win_n <= total; start += step_n) {
        StreamWindow w;
        w.time_s = static_cast<double>(start) / fs;
        w.data = Matrix(buffer.channel_count(), win_n);
        for (std::size_t ch = 0; ch < buffer.channel_count(); ++ch)
            for (std::size_t i = 0; i < win_n; ++i) w.data(ch, i) = buffer.samples(ch, start + i);
        windows.push_back(std::move(w));
    }
    return windows;
}

namespace {

struct WindowDecision {
    DecisionEvent event;
    bool degenerate = false;
};

WindowDecision classify_window(const StreamWindow& window, const CspModel& csp,
                               const LdaModel& lda) {
    WindowDecision out;
    out.event.time_s = window.time_s;
    try {
        const FeatureVector fv = log_variance_features(apply_csp(csp, window.data));
        out.event.score = lda_score(lda, fv);
        out.event.label = classify(lda, fv);
        out.event.feedback = feedback_strength(lda, out.event.score);
    } catch (const Error& e) {
        if (e.code() != Errc::degenerate_epoch) throw;
        out.degenerate = true;
    }
    return out;
}

} // namespace

OnlineRun online_classify(std::span<const StreamWindow> windows, const CspModel& csp,
                          const LdaModel& lda) {
    OnlineRun run;
    run.events.reserve(windows.size());
    for (const StreamWindow& w : windows) {
        const WindowDecision d = classify_window(w, csp, lda);
        if (d.degenerate)
            ++run.degenerate;
        else
            run.events.push_back(d.event);
    }
    return run;
}

char command_for(ClassLabel label, bool swap_sides) {
    const bool left = (label == ClassLabel::left);
    return (left != swap_sides) ? 'a' : 'q';
}

CommandDebouncer::CommandDebouncer(std::size_t debounce_k, bool swap_sides)
    : k_(debounce_k), swap_(swap_sides) {
    if (debounce_k < 1) fail(Errc::invalid_arg, "debounce count must be at least 1");
}

std::optional<CommandEvent> CommandDebouncer::push(const DecisionEvent& event) {
    if (run_length_ > 0 && event.label == run_label_) {
        ++run_length_;
    } else {
        run_label_ = event.label;
        run_length_ = 1;
    }
    if (run_length_ < k_) return std::nullopt;
    const char cmd = command_for(run_label_, swap_);
    if (cmd == last_emitted_) return std::nullopt;
    last_emitted_ = cmd;
    return CommandEvent{event.time_s, cmd};
}

std::vector<CommandEvent> decide_command(std::span<const DecisionEvent> events,
                                         std::size_t debounce_k, bool swap_sides) {
    CommandDebouncer debouncer(debounce_k, swap_sides);
    std::vector<CommandEvent> commands;
    for (const DecisionEvent& e : events)
        if (const auto cmd = debouncer.push(e)) commands.push_back(*cmd);
    return commands;
}

CaptureFileSink::CaptureFileSink(const std::string& path)
    : out_(path, std::ios::app), path_(path) {
    if (!out_) fail(Errc::io_error, "cannot open capture file '" + path + "'");
}

void CaptureFileSink::send(char byte) {
    out_.put(byte);
    out_.flush();
    if (!out_) fail(Errc::sink_disconnected, "capture file '" + path_ + "' stopped accepting bytes");
}

TcpSink::TcpSink(const std::string& host, std::uint16_t port) : conn_(tcp_connect(host, port)) {}

void TcpSink::send(char byte) { conn_.send_all(&byte, 1); }

WindowLabeling label_windows(std::span<const StreamWindow> windows, const MarkerStream& markers,
                             double window_s, double duration_s) {
    WindowLabeling labeling;
    for (const Marker& m : markers) {
        if (m.label == MarkerLabel::left_cue)
            labeling.cues.emplace_back(m.time_s, ClassLabel::left);
        else if (m.label == MarkerLabel::right_cue)
            labeling.cues.emplace_back(m.time_s, ClassLabel::right);
    }
    std::sort(labeling.cues.begin(), labeling.cues.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    constexpr double kTol = 1e-9;
    labeling.cue_of_window.resize(windows.size());
    for (std::size_t i = 0; i < windows.size(); ++i) {
        const double t = windows[i].time_s;
        // Last cue with onset <= t.
        std::size_t lo = 0, count = labeling.cues.size();
        std::size_t found = count; // none
        while (lo < count && labeling.cues[lo].first <= t + kTol) {
            found = lo;
            ++lo;
        }
        if (found == count) continue;
        const double interval_end =
            (found + 1 < count) ? labeling.cues[found + 1].first : duration_s;
        if (t + window_s <= interval_end + kTol) labeling.cue_of_window[i] = found;
    }
    return labeling;
}

namespace {

// Index hand-off between the pacing producer and the classifying consumer.
struct WindowQueue {
    static constexpr std::size_t kCapacity = 8;
    std::mutex mutex;
    std::condition_variable not_empty;
    std::condition_variable not_full;
    std::deque<std::size_t> items;
    bool done = false;

    void push(std::size_t i, const std::atomic<bool>& stop) {
        std::unique_lock lock(mutex);
        not_full.wait(lock, [&] { return items.size() < kCapacity || stop.load(); });
        if (stop.load()) return;
        items.push_back(i);
        not_empty.notify_one();
    }
    void finish() {
        std::lock_guard lock(mutex);
        done = true;
        not_empty.notify_one();
    }
    bool pop(std::size_t& i) {
        std::unique_lock lock(mutex);
        not_empty.wait(lock, [&] { return !items.empty() || done; });
        if (items.empty()) return false;
        i = items.front();
        items.pop_front();
        not_full.notify_one();
        return true;
    }
    void release_producer() {
        std::lock_guard lock(mutex);
        not_full.notify_one();
    }
};

} // namespace

ReplaySummary run_replay(const SignalBuffer& buffer, const MarkerStream& markers,
                         const CspModel& csp, const LdaModel& lda, const ReplayOptions& options,
                         CommandSink& sink) {
    const std::vector<StreamWindow> windows =
        stream_windows(buffer, options.window_s, options.step_s);
    const WindowLabeling labeling =
        label_windows(windows, markers, options.window_s, buffer.duration_s());

    ReplaySummary summary;
    summary.release_offsets_s.assign(windows.size(), 0.0);
    std::vector<std::array<std::uint64_t, 2>> cue_votes(labeling.cues.size(), {0, 0});

    WindowQueue queue;
    std::atomic<bool> stop{false};
    std::atomic<std::size_t> released{0};
    const auto t0 = std::chrono::steady_clock::now();

    std::thread producer([&] {
        for (std::size_t i = 0; i < windows.size(); ++i) {
            if (stop.load()) break;
            if (options.timing == ReplayTiming::realtime)
                std::this_thread::sleep_until(
                    t0 + std::chrono::duration<double>(windows[i].time_s));
            const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - t0;
            summary.release_offsets_s[i] = elapsed.count();
            released.store(i + 1);
            queue.push(i, stop);
        }
        queue.finish();
    });

    CommandDebouncer debouncer(options.debounce_k, options.swap_sides);
    std::exception_ptr consumer_error;
    try {
        std::size_t i = 0;
        while (queue.pop(i)) {
            const WindowDecision d = classify_window(windows[i], csp, lda);
            if (d.degenerate) {
                ++summary.degenerate;
                continue;
            }
            summary.events.push_back(d.event);

            WindowRecord rec;
            rec.time_s = d.event.time_s;
            rec.prediction = d.event.label;
            rec.score = d.event.score;
            rec.feedback = d.event.feedback;
            if (const auto cue = labeling.cue_of_window[i]) {
                rec.target = labeling.cues[*cue].second;
                ++summary.labeled_windows;
                ++summary.window_confusion.at(*rec.target, rec.prediction);
                ++cue_votes[*cue][class_index(rec.prediction)];
            }
            summary.records.push_back(rec);

            if (const auto cmd = debouncer.push(d.event)) {
                try {
                    sink.send(cmd->byte);
                } catch (const Error& e) {
                    if (e.code() != Errc::sink_disconnected) throw;
                    summary.partial = true;
                    break;
                }
                summary.commands.push_back(*cmd);
            }
        }
    } catch (...) {
        consumer_error = std::current_exception();
    }

    stop.store(true);
    queue.release_producer();
    // Drain so a blocked producer can finish.
    std::size_t sink_hole = 0;
    while (queue.pop(sink_hole)) {
    }
    producer.join();
    if (consumer_error) std::rethrow_exception(consumer_error);

    summary.release_offsets_s.resize(released.load());

    for (std::size_t c = 0; c < cue_votes.size(); ++c) {
        const auto [left_votes, right_votes] = cue_votes[c];
        if (left_votes + right_votes == 0) continue;
        // Ties go LEFT, matching the classifier's own tie rule.
        const ClassLabel majority =
            (right_votes > left_votes) ? ClassLabel::right : ClassLabel::left;
        ++summary.cue_confusion.at(labeling.cues[c].second, majority);
    }
    return summary;
}

} // namespace bci
