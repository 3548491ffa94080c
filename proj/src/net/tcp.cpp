#include "edgetransit/net/tcp.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>
#include <utility>

namespace edgetransit::net {

namespace {

bool parse_port(std::string_view s, std::uint16_t& out) {
    unsigned value = 0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end || value > 65535) return false;
    out = static_cast<std::uint16_t>(value);
    return true;
}

int wait_fd(int fd, short events, int timeout_ms) {
    pollfd pfd{fd, events, 0};
    while (true) {
        const int rc = ::poll(&pfd, 1, timeout_ms);
        if (rc >= 0) return rc;
        if (errno != EINTR) return -1;
    }
}

struct AddrInfoHolder {
    addrinfo* list = nullptr;
    ~AddrInfoHolder() {
        if (list) ::freeaddrinfo(list);
    }
};

}  // namespace

std::optional<HostPort> parse_host_port(std::string_view s) {
    HostPort out;
    if (!s.empty() && s.front() == '[') {
        const std::size_t closing = s.find(']');
        if (closing == std::string_view::npos || closing + 1 >= s.size() ||
            s[closing + 1] != ':') {
            return std::nullopt;
        }
        out.host = std::string(s.substr(1, closing - 1));
        if (!parse_port(s.substr(closing + 2), out.port)) return std::nullopt;
        return out;
    }
    const std::size_t colon = s.rfind(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 >= s.size()) {
        return std::nullopt;
    }
    out.host = std::string(s.substr(0, colon));
    if (!parse_port(s.substr(colon + 1), out.port)) return std::nullopt;
    return out;
}

TcpStream::TcpStream(TcpStream&& other) noexcept : fd_(std::exchange(other.fd_, -1)) {}

TcpStream& TcpStream::operator=(TcpStream&& other) noexcept {
    if (this != &other) {
        close();
        fd_ = std::exchange(other.fd_, -1);
    }
    return *this;
}

TcpStream::~TcpStream() { close(); }

std::optional<TcpStream> TcpStream::connect(const std::string& host, std::uint16_t port,
                                            int timeout_ms) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    AddrInfoHolder res;
    const std::string port_text = std::to_string(port);
    if (::getaddrinfo(host.c_str(), port_text.c_str(), &hints, &res.list) != 0) {
        return std::nullopt;
    }
    for (addrinfo* ai = res.list; ai != nullptr; ai = ai->ai_next) {
        const int fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_NONBLOCK, ai->ai_protocol);
        if (fd < 0) continue;
        int rc = ::connect(fd, ai->ai_addr, ai->ai_addrlen);
        if (rc < 0 && errno == EINPROGRESS) {
            if (wait_fd(fd, POLLOUT, timeout_ms) > 0) {
                int err = 0;
                socklen_t len = sizeof err;
                if (::getsockopt(fd, SOL_SOCKET, SO_ERROR, &err, &len) == 0 && err == 0) rc = 0;
            }
        }
        if (rc == 0) {
            const int flags = ::fcntl(fd, F_GETFL, 0);
            ::fcntl(fd, F_SETFL, flags & ~O_NONBLOCK);
            int nodelay = 1;
            ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &nodelay, sizeof nodelay);
            return TcpStream(fd);
        }
        ::close(fd);
    }
    return std::nullopt;
}

bool TcpStream::send_all(std::string_view data) {
    if (fd_ < 0) return false;
    std::size_t sent = 0;
    while (sent < data.size()) {
        const auto n = ::send(fd_, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            return false;
        }
        sent += static_cast<std::size_t>(n);
    }
    return true;
}

long TcpStream::recv_some(char* buf, std::size_t cap, int timeout_ms) {
    if (fd_ < 0) return -1;
    const int ready = wait_fd(fd_, POLLIN, timeout_ms);
    if (ready < 0) return -1;
    if (ready == 0) return -2;
    while (true) {
        const auto n = ::recv(fd_, buf, cap, 0);
        if (n >= 0) return n;
        if (errno != EINTR) return -1;
    }
}

void TcpStream::shutdown_send() {
    if (fd_ >= 0) ::shutdown(fd_, SHUT_WR);
}

void TcpStream::close() {
    if (fd_ >= 0) {
        ::close(fd_);
        fd_ = -1;
    }
}

TcpListener::TcpListener(TcpListener&& other) noexcept
    : fd_(std::exchange(other.fd_, -1)), port_(std::exchange(other.port_, 0)) {}

TcpListener& TcpListener::operator=(TcpListener&& other) noexcept {
    if (this != &other) {
        close();
        fd_ = std::exchange(other.fd_, -1);
        port_ = std::exchange(other.port_, 0);
    }
    return *this;
}

TcpListener::~TcpListener() { close(); }

std::optional<TcpListener> TcpListener::bind(const std::string& host, std::uint16_t port) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    hints.ai_flags = AI_PASSIVE;
    AddrInfoHolder res;
    const std::string port_text = std::to_string(port);
    if (::getaddrinfo(host.empty() ? nullptr : host.c_str(), port_text.c_str(), &hints,
                      &res.list) != 0) {
        return std::nullopt;
    }
    for (addrinfo* ai = res.list; ai != nullptr; ai = ai->ai_next) {
        const int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0) continue;
        int reuse = 1;
        ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &reuse, sizeof reuse);
        if (::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(fd, 64) == 0) {
            sockaddr_storage addr{};
            socklen_t len = sizeof addr;
            std::uint16_t bound = port;
            if (::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len) == 0) {
                if (addr.ss_family == AF_INET) {
                    bound = ntohs(reinterpret_cast<sockaddr_in*>(&addr)->sin_port);
                } else if (addr.ss_family == AF_INET6) {
                    bound = ntohs(reinterpret_cast<sockaddr_in6*>(&addr)->sin6_port);
                }
            }
            TcpListener out;
            out.fd_ = fd;
            out.port_ = bound;
            return out;
        }
        ::close(fd);
    }
    return std::nullopt;
}

std::optional<TcpStream> TcpListener::accept(int timeout_ms) {
    if (fd_ < 0) return std::nullopt;
    if (wait_fd(fd_, POLLIN, timeout_ms) <= 0) return std::nullopt;
    const int fd = ::accept(fd_, nullptr, nullptr);
    if (fd < 0) return std::nullopt;
    int nodelay = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &nodelay, sizeof nodelay);
    return TcpStream(fd);
}

void TcpListener::close() {
    if (fd_ >= 0) {
        ::shutdown(fd_, SHUT_RDWR);
        ::close(fd_);
        fd_ = -1;
    }
}

LineResult LineReader::read_line(std::string& out, int timeout_ms) {
    while (true) {
        const std::size_t newline = buf_.find('\n');
        if (newline != std::string::npos) {
            out.assign(buf_, 0, newline);
            if (!out.empty() && out.back() == '\r') out.pop_back();
            buf_.erase(0, newline + 1);
            return LineResult::kLine;
        }
        if (eof_) return LineResult::kClosed;
        char chunk[4096];
        const long n = stream_->recv_some(chunk, sizeof chunk, timeout_ms);
        if (n == -2) return LineResult::kTimeout;
        if (n == -1) return LineResult::kError;
        if (n == 0) {
            eof_ = true;
            return LineResult::kClosed;
        }
        buf_.append(chunk, static_cast<std::size_t>(n));
    }
}

}  // namespace edgetransit::net
