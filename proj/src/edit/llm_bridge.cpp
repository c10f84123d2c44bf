// Copyright 2026 The scenesplat Authors
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

#include "scenesplat/edit/llm_bridge.hpp"

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <cstdlib>

#include "scenesplat/common/error.hpp"

namespace scenesplat
{

namespace
{

[[noreturn]] void fail(const std::string & why) { throw SyntaxError(1, "language bridge: " + why); }

void write_all(int fd, std::string_view data)
{
  while (!data.empty()) {
    const ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) {
        continue;
      }
      return;  // the child may close stdin early; its exit status decides
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

}  // namespace

std::string LanguageBridge::translate(std::string_view text) const
{
  if (!enabled()) {
    fail("disabled");
  }
  int in_pipe[2];
  int out_pipe[2];
  if (::pipe(in_pipe) != 0 || ::pipe(out_pipe) != 0) {
    fail("cannot create pipes");
  }
  const pid_t pid = ::fork();
  if (pid < 0) {
    fail("cannot spawn process");
  }
  if (pid == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    ::execl("/bin/sh", "sh", "-c", program_.c_str(), static_cast<char *>(nullptr));
    ::_exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  // a child that ignores stdin must not kill us with SIGPIPE
  struct sigaction ignore{};
  struct sigaction previous{};
  ignore.sa_handler = SIG_IGN;
  ::sigaction(SIGPIPE, &ignore, &previous);
  write_all(in_pipe[1], text);
  ::close(in_pipe[1]);
  ::sigaction(SIGPIPE, &previous, nullptr);
  std::string output;
  std::array<char, 4096> buf{};
  while (true) {
    const ssize_t n = ::read(out_pipe[0], buf.data(), buf.size());
    if (n < 0 && errno == EINTR) {
      continue;
    }
    if (n <= 0) {
      break;
    }
    output.append(buf.data(), static_cast<std::size_t>(n));
  }
  ::close(out_pipe[0]);
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    fail("program exited with an error");
  }
  const auto first = output.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) {
    fail("program returned no command");
  }
  const auto eol = output.find('\n', first);
  std::string line = output.substr(first, eol == std::string::npos ? std::string::npos : eol - first);
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
    line.pop_back();
  }
  return line;
}

}  // namespace scenesplat
