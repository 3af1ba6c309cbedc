#include "hopper/line_socket.hpp"

#include "hopper/errors.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/un.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <memory>
#include <system_error>

namespace hopper {
namespace {

using Clock = std::chrono::steady_clock;

struct Endpoint {
  bool unix_domain = false;
  std::string path;
  std::string host;
  std::string port;
};

Endpoint parse_address(const std::string& address) {
  Endpoint e;
  if (address.rfind("unix:", 0) == 0) {
    e.unix_domain = true;
    e.path = address.substr(5);
    if (e.path.empty()) throw Error("empty unix socket path");
    return e;
  }
  std::string rest = address.rfind("tcp:", 0) == 0 ? address.substr(4) : address;
  const auto colon = rest.rfind(':');
  if (colon == std::string::npos) throw Error("address needs host:port: " + address);
  e.host = rest.substr(0, colon);
  e.port = rest.substr(colon + 1);
  if (e.host.empty()) e.host = "127.0.0.1";
  return e;
}

[[noreturn]] void throw_errno(const char* what) { throw std::system_error(errno, std::generic_category(), what); }

int remaining_ms(Clock::time_point end) {
  const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(end - Clock::now()).count();
  return left < 0 ? 0 : static_cast<int>(left);
}

void set_nonblocking(int fd) { ::fcntl(fd, F_SETFL, ::fcntl(fd, F_GETFL, 0) | O_NONBLOCK); }

sockaddr_un unix_address(const std::string& path) {
  sockaddr_un sa{};
  sa.sun_family = AF_UNIX;
  if (path.size() >= sizeof(sa.sun_path)) throw Error("unix socket path too long");
  std::memcpy(sa.sun_path, path.c_str(), path.size() + 1);
  return sa;
}

}  // namespace

LineSocket::~LineSocket() { close(); }

LineSocket::LineSocket(LineSocket&& other) noexcept : fd_(other.fd_), buffer_(std::move(other.buffer_)) { other.fd_ = -1; }

LineSocket& LineSocket::operator=(LineSocket&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = other.fd_;
    buffer_ = std::move(other.buffer_);
    other.fd_ = -1;
  }
  return *this;
}

void LineSocket::close() noexcept {
  if (fd_ >= 0) ::close(fd_);
  fd_ = -1;
  buffer_.clear();
}

LineSocket LineSocket::adopt(int fd) {
  set_nonblocking(fd);
  return LineSocket(fd);
}

LineSocket LineSocket::connect(const std::string& address, std::chrono::milliseconds timeout) {
  const Endpoint e = parse_address(address);
  const auto end = Clock::now() + timeout;
  auto finish = [&](int fd, const sockaddr* sa, socklen_t len) {
    set_nonblocking(fd);
    if (::connect(fd, sa, len) != 0) {
      if (errno != EINPROGRESS && errno != EAGAIN) {
        const int err = errno;
        ::close(fd);
        throw std::system_error(err, std::generic_category(), "connect");
      }
      pollfd p{fd, POLLOUT, 0};
      const int r = ::poll(&p, 1, remaining_ms(end));
      int err = 0;
      socklen_t elen = sizeof(err);
      if (r <= 0 || ::getsockopt(fd, SOL_SOCKET, SO_ERROR, &err, &elen) != 0 || err != 0) {
        ::close(fd);
        throw std::system_error(r == 0 ? ETIMEDOUT : (err ? err : errno), std::generic_category(), "connect");
      }
    }
    return LineSocket(fd);
  };

  if (e.unix_domain) {
    const int fd = ::socket(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0);
    if (fd < 0) throw_errno("socket");
    const sockaddr_un sa = unix_address(e.path);
    return finish(fd, reinterpret_cast<const sockaddr*>(&sa), sizeof(sa));
  }
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (const int rc = ::getaddrinfo(e.host.c_str(), e.port.c_str(), &hints, &res); rc != 0) {
    throw Error(std::string("cannot resolve ") + address + ": " + ::gai_strerror(rc));
  }
  std::unique_ptr<addrinfo, decltype(&::freeaddrinfo)> guard(res, &::freeaddrinfo);
  const int fd = ::socket(res->ai_family, SOCK_STREAM | SOCK_CLOEXEC, 0);
  if (fd < 0) throw_errno("socket");
  const int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  return finish(fd, res->ai_addr, res->ai_addrlen);
}

bool LineSocket::send_line(const std::string& line, std::chrono::milliseconds timeout) {
  if (fd_ < 0) return false;
  const auto end = Clock::now() + timeout;
  std::string data = line;
  data.push_back('\n');
  std::size_t sent = 0;
  while (sent < data.size()) {
    const ssize_t n = ::send(fd_, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (n > 0) {
      sent += static_cast<std::size_t>(n);
      continue;
    }
    if (n < 0 && errno != EAGAIN && errno != EWOULDBLOCK && errno != EINTR) return false;
    pollfd p{fd_, POLLOUT, 0};
    if (::poll(&p, 1, remaining_ms(end)) <= 0) return false;
  }
  return true;
}

std::optional<std::string> LineSocket::read_line(std::chrono::milliseconds timeout) {
  if (fd_ < 0) return std::nullopt;
  const auto end = Clock::now() + timeout;
  while (true) {
    const auto nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    pollfd p{fd_, POLLIN, 0};
    const int r = ::poll(&p, 1, remaining_ms(end));
    if (r <= 0) return std::nullopt;
    char chunk[65536];
    const ssize_t n = ::recv(fd_, chunk, sizeof(chunk), 0);
    if (n < 0 && (errno == EAGAIN || errno == EWOULDBLOCK || errno == EINTR)) continue;
    if (n <= 0) {
      close();  // peer gone
      return std::nullopt;
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

LineListener::~LineListener() { close(); }

LineListener::LineListener(LineListener&& other) noexcept
    : fd_(other.fd_), address_(std::move(other.address_)), unlink_path_(std::move(other.unlink_path_)) {
  other.fd_ = -1;
  other.unlink_path_.clear();
}

LineListener& LineListener::operator=(LineListener&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = other.fd_;
    address_ = std::move(other.address_);
    unlink_path_ = std::move(other.unlink_path_);
    other.fd_ = -1;
    other.unlink_path_.clear();
  }
  return *this;
}

void LineListener::close() noexcept {
  if (fd_ >= 0) ::close(fd_);
  fd_ = -1;
  if (!unlink_path_.empty()) ::unlink(unlink_path_.c_str());
  unlink_path_.clear();
}

LineListener LineListener::bind(const std::string& address) {
  const Endpoint e = parse_address(address);
  LineListener l;
  if (e.unix_domain) {
    l.fd_ = ::socket(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0);
    if (l.fd_ < 0) throw_errno("socket");
    ::unlink(e.path.c_str());
    const sockaddr_un sa = unix_address(e.path);
    if (::bind(l.fd_, reinterpret_cast<const sockaddr*>(&sa), sizeof(sa)) != 0) throw_errno("bind");
    l.unlink_path_ = e.path;
    l.address_ = "unix:" + e.path;
  } else {
    l.fd_ = ::socket(AF_INET, SOCK_STREAM | SOCK_CLOEXEC, 0);
    if (l.fd_ < 0) throw_errno("socket");
    const int one = 1;
    ::setsockopt(l.fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    sockaddr_in sa{};
    sa.sin_family = AF_INET;
    sa.sin_port = htons(static_cast<std::uint16_t>(std::stoi(e.port)));
    if (::inet_pton(AF_INET, e.host.c_str(), &sa.sin_addr) != 1) throw Error("bad IPv4 host " + e.host);
    if (::bind(l.fd_, reinterpret_cast<const sockaddr*>(&sa), sizeof(sa)) != 0) throw_errno("bind");
    socklen_t len = sizeof(sa);
    ::getsockname(l.fd_, reinterpret_cast<sockaddr*>(&sa), &len);
    l.address_ = "tcp:" + e.host + ":" + std::to_string(ntohs(sa.sin_port));
  }
  if (::listen(l.fd_, 16) != 0) throw_errno("listen");
  return l;
}

std::optional<LineSocket> LineListener::accept(std::chrono::milliseconds timeout) {
  if (fd_ < 0) return std::nullopt;
  pollfd p{fd_, POLLIN, 0};
  if (::poll(&p, 1, static_cast<int>(timeout.count())) <= 0) return std::nullopt;
  const int fd = ::accept4(fd_, nullptr, nullptr, SOCK_CLOEXEC);
  if (fd < 0) return std::nullopt;
  return LineSocket::adopt(fd);
}

}  // namespace hopper
