#pragma once

#include <chrono>
#include <mutex>
#include <string>
#include <vector>

#include "stpbo/objectives.hpp"

namespace stpbo {

struct ExternalConfig {
  /// argv of the simulator wrapper; argv[0] is resolved through PATH.
  std::vector<std::string> command;
  std::chrono::milliseconds timeout{std::chrono::seconds(600)};
};

/// Line protocol, one JSON object per newline-terminated UTF-8 line.
///   request:  {"x":[x1,...,xd]}
///   response: {"y":v} | {"violation":xi} | {"nonphysical":true} | {"crash":true}
std::string encode_request(const Vector& x);
/// Throws ProtocolError on anything but the four response forms.
EvaluationOutcome decode_response(const std::string& line);

/// Owns one long-lived child process speaking the line protocol over its
/// standard input and output. Requests are serialized; a child that times
/// out or exits is killed and respawned on the next request.
class ExternalAdapter {
 public:
  explicit ExternalAdapter(ExternalConfig config);
  ~ExternalAdapter();

  ExternalAdapter(const ExternalAdapter&) = delete;
  ExternalAdapter& operator=(const ExternalAdapter&) = delete;

  const ExternalConfig& config() const { return config_; }

  /// Timeouts and child exits yield Crash; malformed responses throw ProtocolError.
  EvaluationOutcome evaluate(const Vector& x);

 private:
  void spawn();
  void terminate();

  ExternalConfig config_;
  std::mutex mutex_;
  int pid_ = -1;
  int fd_ = -1;
  std::string buffer_;
};

EvaluationOutcome external_evaluate(ExternalAdapter& adapter, const Vector& x);

}  // namespace stpbo
