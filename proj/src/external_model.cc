// Copyright 2026 The ontoexplain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstring>
#include <deque>
#include <map>

#include "json.hpp"
#include "ontoexplain/blackbox.h"
#include "ontoexplain/error.h"

namespace ontoexplain {
namespace {

using Json = nlohmann::json;
using Clock = std::chrono::steady_clock;

void CloseFd(int& fd) {
  if (fd >= 0) ::close(fd);
  fd = -1;
}

}  // namespace

std::shared_ptr<ExternalModel> ExternalModel::Start(const std::string& command,
                                                    std::chrono::milliseconds timeout) {
  int in_pipe[2];   // parent -> child
  int out_pipe[2];  // child -> parent
  if (::pipe(in_pipe) != 0) {
    throw ProtocolError("pipe() failed: " + std::string(std::strerror(errno)));
  }
  if (::pipe(out_pipe) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    throw ProtocolError("pipe() failed: " + std::string(std::strerror(errno)));
  }
  const pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) ::close(fd);
    throw ProtocolError("fork() failed: " + std::string(std::strerror(errno)));
  }
  if (pid == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    for (int fd : {in_pipe[0], in_pipe[1], out_pipe[0], out_pipe[1]}) ::close(fd);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  ::fcntl(in_pipe[1], F_SETFD, FD_CLOEXEC);
  ::fcntl(out_pipe[0], F_SETFD, FD_CLOEXEC);
  // A dead child must surface as an error, not a SIGPIPE.
  ::signal(SIGPIPE, SIG_IGN);

  std::shared_ptr<ExternalModel> model(new ExternalModel());
  model->command_ = command;
  model->timeout_ = timeout;
  model->pid_ = pid;
  model->to_child_ = in_pipe[1];
  model->from_child_ = out_pipe[0];

  const std::string line = model->ReadLine();
  Json hello;
  try {
    hello = Json::parse(line);
  } catch (const Json::exception& e) {
    throw ProtocolError("invalid handshake from '" + command + "': " + e.what());
  }
  if (!hello.is_object() || !hello.contains("labels") || !hello["labels"].is_array()) {
    throw ProtocolError("handshake must declare \"labels\"");
  }
  for (const auto& l : hello["labels"]) {
    if (!l.is_string()) throw ProtocolError("handshake labels must be strings");
    model->labels_.push_back(l.get<std::string>());
  }
  if (model->labels_.size() < 2) throw ProtocolError("handshake declares fewer than 2 labels");
  if (hello.contains("max_in_flight")) {
    if (!hello["max_in_flight"].is_number_integer() || hello["max_in_flight"].get<long>() < 1) {
      throw ProtocolError("handshake max_in_flight must be a positive integer");
    }
    model->max_in_flight_ = hello["max_in_flight"].get<std::size_t>();
  }
  model->fingerprint_ = Fnv1aHex(command + "\n" + line);
  return model;
}

ExternalModel::~ExternalModel() {
  CloseFd(to_child_);
  CloseFd(from_child_);
  if (pid_ > 0) {
    int status = 0;
    const auto deadline = Clock::now() + std::chrono::seconds(2);
    while (::waitpid(pid_, &status, WNOHANG) == 0) {
      if (Clock::now() > deadline) {
        ::kill(pid_, SIGKILL);
        ::waitpid(pid_, &status, 0);
        break;
      }
      ::usleep(1000);
    }
  }
}

std::string ExternalModel::ReadLine() const {
  const auto deadline = Clock::now() + timeout_;
  while (true) {
    if (const auto nl = read_buffer_.find('\n'); nl != std::string::npos) {
      std::string line = read_buffer_.substr(0, nl);
      read_buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    const auto remaining =
        std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    if (remaining.count() <= 0) {
      throw ProtocolError("timed out waiting for external model '" + command_ + "'");
    }
    pollfd pfd{from_child_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, static_cast<int>(remaining.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError("poll() failed: " + std::string(std::strerror(errno)));
    }
    if (ready == 0) continue;
    char buf[4096];
    const ssize_t n = ::read(from_child_, buf, sizeof(buf));
    if (n < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError("read() failed: " + std::string(std::strerror(errno)));
    }
    if (n == 0) throw ProtocolError("external model '" + command_ + "' closed its output");
    read_buffer_.append(buf, static_cast<std::size_t>(n));
  }
}

void ExternalModel::WriteLine(const std::string& line) const {
  std::string data = line + "\n";
  std::size_t written = 0;
  while (written < data.size()) {
    const ssize_t n = ::write(to_child_, data.data() + written, data.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw ProtocolError("write to external model failed: " +
                          std::string(std::strerror(errno)));
    }
    written += static_cast<std::size_t>(n);
  }
}

std::vector<ScoreVector> ExternalModel::PredictBatch(
    std::span<const std::string> texts) const {
  std::lock_guard<std::mutex> lock(mutex_);
  std::vector<ScoreVector> out(texts.size());
  std::map<std::int64_t, std::size_t> pending;  // request id -> batch index
  std::size_t next = 0;
  std::size_t done = 0;
  while (done < texts.size()) {
    while (next < texts.size() && pending.size() < max_in_flight_) {
      const std::int64_t id = next_id_++;
      WriteLine(Json{{"id", id}, {"text", texts[next]}}.dump());
      pending.emplace(id, next++);
    }
    const std::string line = ReadLine();
    Json response;
    try {
      response = Json::parse(line);
    } catch (const Json::exception& e) {
      throw ProtocolError("malformed response at batch index " +
                          std::to_string(pending.begin()->second) + ": " + e.what());
    }
    if (!response.is_object() || !response.contains("id") ||
        !response["id"].is_number_integer()) {
      throw ProtocolError("response without integer id: " + line);
    }
    const auto it = pending.find(response["id"].get<std::int64_t>());
    if (it == pending.end()) throw ProtocolError("response with unexpected id: " + line);
    const std::size_t index = it->second;
    pending.erase(it);
    ScoreVector v;
    try {
      v.scores = response.at("scores").get<std::vector<double>>();
      v.labels = response.contains("labels")
                     ? response["labels"].get<std::vector<std::string>>()
                     : labels_;
    } catch (const Json::exception& e) {
      throw ProtocolError("invalid response at batch index " + std::to_string(index) +
                          ": " + e.what());
    }
    if (v.labels != labels_) {
      throw ProtocolError("response labels differ from the handshake at batch index " +
                          std::to_string(index));
    }
    try {
      CheckScoreVector(v);
    } catch (const ValidationError& e) {
      throw ProtocolError("invalid scores at batch index " + std::to_string(index) + ": " +
                          e.what());
    }
    out[index] = std::move(v);
    ++done;
  }
  return out;
}

}  // namespace ontoexplain
