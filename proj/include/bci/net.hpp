#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace bci {

// Thin RAII wrappers over POSIX sockets; just enough for a byte-per-command
// wire with no framing.

class TcpConn {
public:
    TcpConn() = default;
    explicit TcpConn(int fd) : fd_(fd) {}
    ~TcpConn();
    TcpConn(TcpConn&& other) noexcept;
    TcpConn& operator=(TcpConn&& other) noexcept;
    TcpConn(const TcpConn&) = delete;
    TcpConn& operator=(const TcpConn&) = delete;

    bool valid() const { return fd_ >= 0; }
    int fd() const { return fd_; }
    void close();

    // Writes all n bytes. SINK_DISCONNECTED when the peer is gone.
    void send_all(const char* data, std::size_t n);

    // Waits up to timeout_ms, then reads what is available. Returns the byte
    // count; 0 means orderly shutdown; -1 means timeout. IO_ERROR otherwise.
    long read_some(char* out, std::size_t cap, int timeout_ms);

private:
    int fd_ = -1;
};

class TcpListener {
public:
    // Binds the port (0 picks an ephemeral one) and listens. BIND_FAILED.
    explicit TcpListener(std::uint16_t port);
    ~TcpListener();
    TcpListener(const TcpListener&) = delete;
    TcpListener& operator=(const TcpListener&) = delete;

    std::uint16_t port() const { return port_; }

    // Waits up to timeout_ms for a client; invalid connection on timeout.
    TcpConn accept(int timeout_ms);

private:
    int fd_ = -1;
    std::uint16_t port_ = 0;
};

// SINK_DISCONNECTED when the host cannot be resolved or nothing listens.
TcpConn tcp_connect(const std::string& host, std::uint16_t port);

} // namespace bci
