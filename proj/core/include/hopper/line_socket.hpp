#pragma once

#include <chrono>
#include <optional>
#include <string>

namespace hopper {

/// Blocking stream socket carrying newline-terminated messages, with every
/// wait bounded by poll(2). Addresses: "unix:/path", "tcp:host:port" or
/// "host:port".
class LineSocket {
 public:
  LineSocket() = default;
  ~LineSocket();
  LineSocket(const LineSocket&) = delete;
  LineSocket& operator=(const LineSocket&) = delete;
  LineSocket(LineSocket&& other) noexcept;
  LineSocket& operator=(LineSocket&& other) noexcept;

  /// Throws std::system_error (or Error on a bad address) on failure.
  static LineSocket connect(const std::string& address, std::chrono::milliseconds timeout);
  static LineSocket adopt(int fd);

  bool is_open() const noexcept { return fd_ >= 0; }
  void close() noexcept;

  /// Writes line plus '\n'. Returns false on error or timeout.
  bool send_line(const std::string& line, std::chrono::milliseconds timeout);
  /// Next line without its terminator; nullopt on timeout, EOF or error.
  /// EOF and errors also close the socket.
  std::optional<std::string> read_line(std::chrono::milliseconds timeout);

 private:
  explicit LineSocket(int fd) : fd_(fd) {}
  int fd_ = -1;
  std::string buffer_;
};

/// Listening socket for tests and local tooling.
class LineListener {
 public:
  LineListener() = default;
  ~LineListener();
  LineListener(const LineListener&) = delete;
  LineListener& operator=(const LineListener&) = delete;

  /// Binds "unix:/path" or "tcp:host:port" (port 0 picks a free one).
  static LineListener bind(const std::string& address);
  std::optional<LineSocket> accept(std::chrono::milliseconds timeout);
  /// Address clients can connect to (resolves port 0).
  const std::string& address() const noexcept { return address_; }
  void close() noexcept;

  LineListener(LineListener&& other) noexcept;
  LineListener& operator=(LineListener&& other) noexcept;

 private:
  int fd_ = -1;
  std::string address_;
  std::string unlink_path_;
};

}  // namespace hopper
