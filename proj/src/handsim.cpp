#include "bci/handsim.hpp"

#include "bci/error.hpp"
#include "bci/log.hpp"

#include <chrono>
#include <cstdio>
#include <istream>

namespace bci {

HandState apply_command(const HandState& state, char byte) {
    HandState next = state;
    switch (byte) {
    case 'q': next.servo_deg.fill(180.0); break;
    case 'a': next.servo_deg.fill(0.0); break;
    case 'w': next.servo_deg[0] = 180.0; break;
    case 's': next.servo_deg[0] = 0.0; break;
    default: break; // serial noise tolerance: unknown bytes are ignored
    }
    return next;
}

bool is_command_byte(char byte) {
    return byte == 'q' || byte == 'a' || byte == 'w' || byte == 's';
}

std::string trace_line(std::int64_t epoch_ms, char byte, const HandState& state) {
    char rendered[8];
    const auto u = static_cast<unsigned char>(byte);
    if (u > 0x20 && u < 0x7f)
        std::snprintf(rendered, sizeof(rendered), "%c", byte);
    else
        std::snprintf(rendered, sizeof(rendered), "0x%02X", u);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%lld %s %g %g %g %g %g",
                  static_cast<long long>(epoch_ms), rendered, state.servo_deg[0],
                  state.servo_deg[1], state.servo_deg[2], state.servo_deg[3], state.servo_deg[4]);
    return buf;
}

namespace {

std::int64_t now_epoch_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

std::ofstream open_trace(const std::string& path) {
    std::ofstream trace(path, std::ios::app);
    if (!trace) fail(Errc::io_error, "cannot open trace file '" + path + "'");
    return trace;
}

} // namespace

HandServer::HandServer(std::uint16_t port, const std::string& trace_path)
    : listener_(port), trace_(open_trace(trace_path)) {}

void HandServer::handle_byte(char byte) {
    if (!is_command_byte(byte)) log::debug("ignoring byte without a command mapping");
    state_ = apply_command(state_, byte);
    trace_ << trace_line(now_epoch_ms(), byte, state_) << '\n';
    trace_.flush();
    if (!trace_) log::error("trace write failed; continuing with state intact");
}

void HandServer::run(const std::atomic<bool>& stop) {
    while (!stop.load()) {
        TcpConn client = listener_.accept(100);
        if (!client.valid()) continue;
        log::info("client connected");
        while (!stop.load()) {
            char buf[256];
            long n = 0;
            try {
                n = client.read_some(buf, sizeof(buf), 100);
            } catch (const Error& e) {
                log::error(std::string("read failed: ") + e.what());
                break;
            }
            if (n < 0) continue; // timeout: poll the stop flag again
            if (n == 0) break;   // orderly shutdown
            for (long i = 0; i < n; ++i) handle_byte(buf[i]);
        }
        log::info("client disconnected; state preserved");
    }
}

HandState run_hand_stream(std::istream& in, const std::string& trace_path) {
    std::ofstream trace = open_trace(trace_path);
    HandState state;
    char byte = 0;
    while (in.get(byte)) {
        state = apply_command(state, byte);
        trace << trace_line(now_epoch_ms(), byte, state) << '\n';
        trace.flush();
    }
    return state;
}

} // namespace bci
