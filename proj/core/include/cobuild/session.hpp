// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "cobuild/dialogue.hpp"
#include "cobuild/json_io.hpp"
#include "cobuild/repository.hpp"

namespace cobuild {

struct SessionConfig {
  RegionDims dims;
  /// Target structure shown only to the architect.
  std::optional<BlockList> target;
};

/// One entry of a session's event stream. Types: "transcript", "world",
/// "repository", "state".
struct Event {
  std::size_t seq = 0;
  std::string type;
  Json data;
};

struct MessageReply {
  std::vector<std::string> replies;
  DialogueTag state = DialogueTag::AwaitingInstruction;
  std::vector<Effect> effects;
};

/// Sessions plus the repository they share. Thread-safe.
class Service {
 public:
  struct Options {
    std::optional<std::filesystem::path> repo_file;
    /// Each session appends `<id>.jsonl` here when set.
    std::optional<std::filesystem::path> transcript_dir;
  };

  explicit Service(Options options);
  Service();
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Throws Error{BadConfig}.
  std::string create_session(const SessionConfig& config = {});
  /// Throws Error{UnknownSession} or Error{Busy}.
  MessageReply post_message(const std::string& id, std::string_view text);

  /// Snapshot, dialogue state, repository names and the architect target.
  /// Throws Error{UnknownSession}.
  Json state(const std::string& id) const;
  BlockList snapshot(const std::string& id) const;
  DialogueTag dialogue_state(const std::string& id) const;
  /// Transcript records of the session so far.
  std::vector<Json> transcript(const std::string& id) const;

  /// Events with seq >= from; waits up to `wait` when none are available yet.
  /// Returns early with nothing after shutdown(). Throws Error{UnknownSession}.
  std::vector<Event> events(const std::string& id, std::size_t from,
                            std::chrono::milliseconds wait = std::chrono::milliseconds{0}) const;

  Repository repository() const;
  /// The repository file text (the same JSON whether or not a file is used).
  std::string repository_json() const;

  /// Wakes every event waiter; later waits return immediately.
  void shutdown();

 private:
  struct Session;
  std::shared_ptr<Session> find(const std::string& id) const;
  void publish(Session& s, std::string type, Json data) const;
  void record(Session& s, Json rec) const;

  Options options_;
  mutable std::shared_mutex repo_mutex_;
  Repository repo_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::size_t next_id_ = 1;
  std::atomic<bool> stopping_{false};
};

}  // namespace cobuild
