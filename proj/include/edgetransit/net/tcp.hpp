#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace edgetransit::net {

struct HostPort {
    std::string host;
    std::uint16_t port = 0;
};

/// "host:port"; host may be a name, IPv4, or bracketed IPv6.
std::optional<HostPort> parse_host_port(std::string_view s);

/// Blocking stream socket with poll-based timeouts. Move-only.
class TcpStream {
  public:
    TcpStream() = default;
    explicit TcpStream(int fd) : fd_(fd) {}
    TcpStream(TcpStream&& other) noexcept;
    TcpStream& operator=(TcpStream&& other) noexcept;
    TcpStream(const TcpStream&) = delete;
    TcpStream& operator=(const TcpStream&) = delete;
    ~TcpStream();

    static std::optional<TcpStream> connect(const std::string& host, std::uint16_t port,
                                            int timeout_ms);

    bool valid() const { return fd_ >= 0; }
    bool send_all(std::string_view data);

    /// > 0: bytes read; 0: peer closed; -1: error; -2: timeout.
    /// timeout_ms < 0 blocks indefinitely.
    long recv_some(char* buf, std::size_t cap, int timeout_ms);

    void shutdown_send();
    void close();

  private:
    int fd_ = -1;
};

class TcpListener {
  public:
    TcpListener() = default;
    TcpListener(TcpListener&& other) noexcept;
    TcpListener& operator=(TcpListener&& other) noexcept;
    TcpListener(const TcpListener&) = delete;
    TcpListener& operator=(const TcpListener&) = delete;
    ~TcpListener();

    /// Port 0 picks an ephemeral port (read back via port()).
    static std::optional<TcpListener> bind(const std::string& host, std::uint16_t port);

    bool valid() const { return fd_ >= 0; }
    std::uint16_t port() const { return port_; }

    /// nullopt on timeout or when the listener is closed.
    std::optional<TcpStream> accept(int timeout_ms);

    void close();

  private:
    int fd_ = -1;
    std::uint16_t port_ = 0;
};

enum class LineResult { kLine, kTimeout, kClosed, kError };

/// Buffered reader of \n-terminated lines (terminator stripped, \r too).
/// A final unterminated fragment at EOF reports kClosed and leaves the
/// fragment accessible via pending().
class LineReader {
  public:
    explicit LineReader(TcpStream& stream) : stream_(&stream) {}

    LineResult read_line(std::string& out, int timeout_ms);
    const std::string& pending() const { return buf_; }

  private:
    TcpStream* stream_;
    std::string buf_;
    bool eof_ = false;
};

}  // namespace edgetransit::net
