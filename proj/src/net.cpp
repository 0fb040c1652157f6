#include "bci/net.hpp"

#include "bci/error.hpp"

#include <cerrno>
#include <cstring>

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

namespace bci {

namespace {

std::string errno_text() { return std::strerror(errno); }

} // namespace

TcpConn::~TcpConn() { close(); }

TcpConn::TcpConn(TcpConn&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }

TcpConn& TcpConn::operator=(TcpConn&& other) noexcept {
    if (this != &other) {
        close();
        fd_ = other.fd_;
        other.fd_ = -1;
    }
    return *this;
}

void TcpConn::close() {
    if (fd_ >= 0) {
        ::close(fd_);
        fd_ = -1;
    }
}

void TcpConn::send_all(const char* data, std::size_t n) {
    if (fd_ < 0) fail(Errc::sink_disconnected, "send on a closed connection");
    std::size_t sent = 0;
    while (sent < n) {
        const ssize_t r = ::send(fd_, data + sent, n - sent, MSG_NOSIGNAL);
        if (r < 0) {
            if (errno == EINTR) continue;
            const std::string why = errno_text();
            close();
            fail(Errc::sink_disconnected, "send failed: " + why);
        }
        sent += static_cast<std::size_t>(r);
    }
}

long TcpConn::read_some(char* out, std::size_t cap, int timeout_ms) {
    if (fd_ < 0) fail(Errc::io_error, "read on a closed connection");
    pollfd pfd{fd_, POLLIN, 0};
    int pr;
    do {
        pr = ::poll(&pfd, 1, timeout_ms);
    } while (pr < 0 && errno == EINTR);
    if (pr < 0) fail(Errc::io_error, "poll failed: " + errno_text());
    if (pr == 0) return -1;
    ssize_t r;
    do {
        r = ::recv(fd_, out, cap, 0);
    } while (r < 0 && errno == EINTR);
    if (r < 0) fail(Errc::io_error, "recv failed: " + errno_text());
    return static_cast<long>(r);
}

TcpListener::TcpListener(std::uint16_t port) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0) fail(Errc::bind_failed, "socket: " + errno_text());
    const int one = 1;
    ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_ANY);
    addr.sin_port = htons(port);
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
        const std::string why = errno_text();
        ::close(fd_);
        fd_ = -1;
        fail(Errc::bind_failed, "cannot bind port " + std::to_string(port) + ": " + why);
    }
    if (::listen(fd_, 4) != 0) {
        const std::string why = errno_text();
        ::close(fd_);
        fd_ = -1;
        fail(Errc::bind_failed, "listen: " + why);
    }
    sockaddr_in bound{};
    socklen_t len = sizeof(bound);
    if (::getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len) != 0) {
        const std::string why = errno_text();
        ::close(fd_);
        fd_ = -1;
        fail(Errc::bind_failed, "getsockname: " + why);
    }
    port_ = ntohs(bound.sin_port);
}

TcpListener::~TcpListener() {
    if (fd_ >= 0) ::close(fd_);
}

TcpConn TcpListener::accept(int timeout_ms) {
    pollfd pfd{fd_, POLLIN, 0};
    int pr;
    do {
        pr = ::poll(&pfd, 1, timeout_ms);
    } while (pr < 0 && errno == EINTR);
    if (pr <= 0) return TcpConn();
    int client;
    do {
        client = ::accept(fd_, nullptr, nullptr);
    } while (client < 0 && errno == EINTR);
    if (client < 0) return TcpConn();
    return TcpConn(client);
}

TcpConn tcp_connect(const std::string& host, std::uint16_t port) {
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* found = nullptr;
    const std::string service = std::to_string(port);
    if (::getaddrinfo(host.c_str(), service.c_str(), &hints, &found) != 0 || found == nullptr)
        fail(Errc::sink_disconnected, "cannot resolve '" + host + "'");
    int fd = -1;
    for (addrinfo* ai = found; ai != nullptr; ai = ai->ai_next) {
        fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0) continue;
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
        ::close(fd);
        fd = -1;
    }
    ::freeaddrinfo(found);
    if (fd < 0)
        fail(Errc::sink_disconnected,
             "cannot connect to " + host + ":" + std::to_string(port) + ": " + errno_text());
    return TcpConn(fd);
}

} // namespace bci
