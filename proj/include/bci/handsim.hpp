#pragma once

#include "bci/net.hpp"

#include <array>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <iosfwd>
#include <string>

namespace bci {

// Five servo set-points in degrees, finger one first (the thumb).
// 0 = fully open, 180 = fully closed. Initial state: all open.
struct HandState {
    std::array<double, 5> servo_deg{{0, 0, 0, 0, 0}};
    bool operator==(const HandState&) const = default;
};

// 'q' closes the whole hand, 'a' opens it, 'w' closes finger one,
// 's' opens finger one; every other byte leaves the state unchanged.
HandState apply_command(const HandState& state, char byte);

bool is_command_byte(char byte);

// One trace line per received byte: "<epoch_ms> <byte> <s1> <s2> <s3> <s4> <s5>".
// Non-printable bytes are rendered as 0xNN so lines stay single-line.
std::string trace_line(std::int64_t epoch_ms, char byte, const HandState& state);

// TCP server owning the hand state: one client at a time, bytes applied in
// arrival order, state preserved across reconnects.
class HandServer {
public:
    // Binds immediately (port 0 = ephemeral): BIND_FAILED. Trace file is
    // opened for append: IO_ERROR.
    HandServer(std::uint16_t port, const std::string& trace_path);

    std::uint16_t port() const { return listener_.port(); }
    const HandState& state() const { return state_; }

    // Serves until stop becomes true.
    void run(const std::atomic<bool>& stop);

private:
    void handle_byte(char byte);

    TcpListener listener_;
    std::ofstream trace_;
    HandState state_;
};

// Same per-byte behavior, reading from a stream instead of a socket
// (the --stdin mode). Returns the final state.
HandState run_hand_stream(std::istream& in, const std::string& trace_path);

} // namespace bci
