#pragma once

#include "bci/csp.hpp"
#include "bci/eval.hpp"
#include "bci/lda.hpp"
#include "bci/net.hpp"
#include "bci/types.hpp"

#include <cstdint>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bci {

struct StreamWindow {
    double time_s = 0.0; // window start within the recording
    Matrix data;         // N x W
};

// Windows at t = 0, step, 2*step, ... while t + window <= duration;
// count = floor((duration - window)/step) + 1. WINDOW_TOO_LONG when the
// first window does not fit.
std::vector<StreamWindow> stream_windows(const SignalBuffer& buffer, double window_s,
                                         double step_s);

struct DecisionEvent {
    double time_s = 0.0;
    ClassLabel label = ClassLabel::left;
    double score = 0.0;
    double feedback = 0.0; // in [-1, +1]
};

struct OnlineRun {
    std::vector<DecisionEvent> events;
    std::size_t degenerate = 0; // windows skipped for zero total variance
};

// Per window: project, log-variance, score, classify. Deterministic.
OnlineRun online_classify(std::span<const StreamWindow> windows, const CspModel& csp,
                          const LdaModel& lda);

struct CommandEvent {
    double time_s = 0.0;
    char byte = 0; // 'a' = open whole hand, 'q' = close whole hand
};

// LEFT -> 'a' (open), RIGHT -> 'q' (close); swap_sides flips the mapping.
char command_for(ClassLabel label, bool swap_sides);

// Emits when k consecutive decisions agree AND the command differs from the
// last one emitted. Feed events in time order.
class CommandDebouncer {
public:
    CommandDebouncer(std::size_t debounce_k, bool swap_sides); // INVALID_ARG when k < 1
    std::optional<CommandEvent> push(const DecisionEvent& event);

private:
    std::size_t k_;
    bool swap_;
    std::size_t run_length_ = 0;
    ClassLabel run_label_ = ClassLabel::left;
    char last_emitted_ = 0;
};

std::vector<CommandEvent> decide_command(std::span<const DecisionEvent> events,
                                         std::size_t debounce_k, bool swap_sides = false);

// Where emitted command bytes go: a capture file or a TCP peer.
class CommandSink {
public:
    virtual ~CommandSink() = default;
    virtual void send(char byte) = 0; // SINK_DISCONNECTED when the consumer is gone
};

class CaptureFileSink : public CommandSink {
public:
    explicit CaptureFileSink(const std::string& path); // IO_ERROR
    void send(char byte) override;

private:
    std::ofstream out_;
    std::string path_;
};

class TcpSink : public CommandSink {
public:
    TcpSink(const std::string& host, std::uint16_t port); // SINK_DISCONNECTED
    void send(char byte) override;

private:
    TcpConn conn_;
};

enum class ReplayTiming { realtime, fast };

struct ReplayOptions {
    double window_s = 1.0;
    double step_s = 0.25;
    std::size_t debounce_k = 3;
    bool swap_sides = false;
    ReplayTiming timing = ReplayTiming::fast;
};

// Maps each window to the cue whose interval fully contains it. A cue's
// interval runs from its onset to the next cue onset (or the signal end).
struct WindowLabeling {
    std::vector<std::pair<double, ClassLabel>> cues;        // onset, class
    std::vector<std::optional<std::size_t>> cue_of_window;  // index into cues
};

WindowLabeling label_windows(std::span<const StreamWindow> windows, const MarkerStream& markers,
                             double window_s, double duration_s);

struct ReplaySummary {
    ConfusionMatrix window_confusion; // labeled windows only
    ConfusionMatrix cue_confusion;    // majority vote over each cue's windows
    std::vector<WindowRecord> records;
    std::vector<DecisionEvent> events;
    std::vector<CommandEvent> commands;
    std::vector<double> release_offsets_s; // wall-clock release time per window
    std::size_t degenerate = 0;
    std::size_t labeled_windows = 0;
    bool partial = false; // sink went away mid-replay
};

// Streams the (already band-passed) signal through the models and pushes
// debounced command bytes into the sink. One producer paces the windows, one
// consumer classifies; pacing never changes the decision or command content.
// A vanished sink stops the replay and returns partial = true.
ReplaySummary run_replay(const SignalBuffer& buffer, const MarkerStream& markers,
                         const CspModel& csp, const LdaModel& lda, const ReplayOptions& options,
                         CommandSink& sink);

} // namespace bci
