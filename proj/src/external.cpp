#include "stpbo/external.hpp"

#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstring>

#include "json.hpp"
#include <spdlog/spdlog.h>

#include "stpbo/errors.hpp"

namespace stpbo {

using json = nlohmann::json;

std::string encode_request(const Vector& x) {
  json request;
  request["x"] = std::vector<double>(x.data(), x.data() + x.size());
  return request.dump() + "\n";
}

EvaluationOutcome decode_response(const std::string& line) {
  json response;
  try {
    response = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ProtocolError(std::string("malformed response line: ") + e.what());
  }
  if (!response.is_object() || response.size() != 1) {
    throw ProtocolError("response must be an object with exactly one key: " + line);
  }
  const auto entry = response.begin();
  const std::string key = entry.key();
  const json& value = entry.value();
  if (key == "y") {
    if (!value.is_number() || !std::isfinite(value.get<double>())) {
      throw ProtocolError("\"y\" must be a finite number");
    }
    return Value{value.get<double>()};
  }
  if (key == "violation") {
    if (!value.is_number() || !(value.get<double>() >= 0.0)) {
      throw ProtocolError("\"violation\" must be a number >= 0");
    }
    return Violation{value.get<double>()};
  }
  if (key == "nonphysical" && value == true) return NonPhysical{};
  if (key == "crash" && value == true) return Crash{"simulator reported a crash"};
  throw ProtocolError("unrecognized response: " + line);
}

ExternalAdapter::ExternalAdapter(ExternalConfig config) : config_(std::move(config)) {
  if (config_.command.empty()) throw InvalidParameter("external adapter needs a command");
  if (config_.timeout.count() <= 0) throw InvalidParameter("external timeout must be positive");
}

ExternalAdapter::~ExternalAdapter() { terminate(); }

void ExternalAdapter::spawn() {
  int fds[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, fds) != 0) {
    throw Error(std::string("socketpair failed: ") + std::strerror(errno));
  }
  std::vector<char*> argv;
  for (auto& arg : config_.command) argv.push_back(const_cast<char*>(arg.c_str()));
  argv.push_back(nullptr);

  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw Error(std::string("fork failed: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(fds[1], STDIN_FILENO);
    ::dup2(fds[1], STDOUT_FILENO);
    ::execvp(argv[0], argv.data());
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  ::close(fds[1]);
  pid_ = pid;
  fd_ = fds[0];
  buffer_.clear();
}

void ExternalAdapter::terminate() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
  if (pid_ > 0) {
    // the whole group, so helpers the simulator started go too
    ::kill(-pid_, SIGKILL);
    ::waitpid(pid_, nullptr, 0);
    pid_ = -1;
  }
  buffer_.clear();
}

EvaluationOutcome ExternalAdapter::evaluate(const Vector& x) {
  std::lock_guard lock(mutex_);
  if (fd_ < 0) spawn();

  const std::string request = encode_request(x);
  std::size_t sent = 0;
  while (sent < request.size()) {
    const ssize_t n = ::send(fd_, request.data() + sent, request.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      terminate();
      return Crash{"could not write request to simulator"};
    }
    sent += static_cast<std::size_t>(n);
  }

  using clock = std::chrono::steady_clock;
  const auto deadline = clock::now() + config_.timeout;
  for (;;) {
    if (const auto eol = buffer_.find('\n'); eol != std::string::npos) {
      std::string line = buffer_.substr(0, eol);
      buffer_.erase(0, eol + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return decode_response(line);
    }
    const auto remaining =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - clock::now()).count();
    if (remaining <= 0) {
      spdlog::warn("external objective timed out after {} ms", config_.timeout.count());
      terminate();
      return Crash{"timeout"};
    }
    pollfd pfd{fd_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(std::min<long long>(remaining, 1 << 30)));
    if (ready < 0 && errno == EINTR) continue;
    if (ready <= 0) continue;
    char chunk[4096];
    const ssize_t n = ::recv(fd_, chunk, sizeof(chunk), 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      terminate();
      return Crash{"simulator exited without responding"};
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

EvaluationOutcome external_evaluate(ExternalAdapter& adapter, const Vector& x) {
  return adapter.evaluate(x);
}

}  // namespace stpbo
