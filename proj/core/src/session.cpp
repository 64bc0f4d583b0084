// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cobuild/session.hpp"

#include <fstream>

#include "cobuild/error.hpp"

namespace cobuild {

struct Service::Session {
  Session(std::string id, RegionDims dims) : id(std::move(id)), world(dims), dialogue(world, registry) {}

  std::string id;
  World world;
  InstanceRegistry registry;
  Dialogue dialogue;
  std::optional<BlockList> target;
  std::optional<std::filesystem::path> transcript_path;
  std::vector<Json> transcript;
  int turn = 0;
  std::atomic<bool> busy{false};

  mutable std::mutex mutex;  // guards world/dialogue reads and the event log
  mutable std::condition_variable cv;
  std::vector<Event> events;
};

Service::Service(Options options) : options_(std::move(options)) {
  if (options_.repo_file) repo_ = load_repository_file(*options_.repo_file);
}

Service::Service() : Service(Options{}) {}

Service::~Service() { shutdown(); }

std::shared_ptr<Service::Session> Service::find(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(Errc::UnknownSession, "no session '" + id + "'");
  return it->second;
}

void Service::publish(Session& s, std::string type, Json data) const {
  s.events.push_back(Event{s.events.size(), std::move(type), std::move(data)});
}

void Service::record(Session& s, Json rec) const {
  s.transcript.push_back(rec);
  if (s.transcript_path) {
    std::ofstream out(*s.transcript_path, std::ios::app);
    out << rec.dump() << '\n';
  }
  publish(s, "transcript", std::move(rec));
}

std::string Service::create_session(const SessionConfig& config) {
  const auto& d = config.dims;
  if (d.width <= 0 || d.height <= 0 || d.depth <= 0) {
    throw Error(Errc::BadConfig, "region dimensions must be positive");
  }
  std::shared_ptr<Session> s;
  {
    std::unique_lock lock(sessions_mutex_);
    std::string id = "s" + std::to_string(next_id_++);
    s = std::make_shared<Session>(id, d);
    sessions_.emplace(id, s);
  }
  s->target = config.target;
  if (options_.transcript_dir) {
    std::filesystem::create_directories(*options_.transcript_dir);
    s->transcript_path = *options_.transcript_dir / (s->id + ".jsonl");
    std::ofstream(*s->transcript_path, std::ios::trunc);
  }
  std::lock_guard lock(s->mutex);
  auto effects = s->dialogue.greet();
  std::string text;
  for (const auto& e : effects) {
    if (const auto* say = std::get_if<Say>(&e)) text += (text.empty() ? "" : " ") + say->text;
  }
  record(*s, Json{{"turn", 0},
                  {"speaker", "builder"},
                  {"text", text},
                  {"state", std::string(to_string(s->dialogue.state()))},
                  {"effects", effects_to_json(effects)}});
  publish(*s, "state", Json{{"state", std::string(to_string(s->dialogue.state()))}});
  s->cv.notify_all();
  return s->id;
}

MessageReply Service::post_message(const std::string& id, std::string_view text) {
  auto s = find(id);
  bool expected = false;
  if (!s->busy.compare_exchange_strong(expected, true)) {
    throw Error(Errc::Busy, "session '" + id + "' is still processing a message");
  }
  struct Release {
    std::atomic<bool>& flag;
    ~Release() { flag = false; }
  } release{s->busy};

  Repository local = repository();
  std::lock_guard lock(s->mutex);
  int turn = ++s->turn;
  record(*s, Json{{"turn", turn},
                  {"speaker", "architect"},
                  {"text", std::string(text)},
                  {"state", std::string(to_string(s->dialogue.state()))},
                  {"effects", Json::array()}});
  s->cv.notify_all();

  Turn result = s->dialogue.handle_message(text, local);

  for (auto it = result.effects.begin(); it != result.effects.end(); ++it) {
    const auto* changed = std::get_if<RepositoryChanged>(&*it);
    if (!changed) continue;
    std::unique_lock repo_lock(repo_mutex_);
    try {
      repo_.add(*local.find(changed->name)->definition);
      if (options_.repo_file) save_repository_file(repo_, *options_.repo_file);
    } catch (const Error& e) {
      // Another session claimed the name first, or the file could not be written.
      *it = Say{Replies::builtin().format("induction-failed",
                                          {{"name", changed->name}, {"reason", e.what()}})};
    }
  }

  MessageReply reply;
  reply.state = s->dialogue.state();
  std::string joined;
  for (const auto& e : result.effects) {
    if (const auto* say = std::get_if<Say>(&e)) {
      reply.replies.push_back(say->text);
      joined += (joined.empty() ? "" : " ") + say->text;
    } else if (const auto* w = std::get_if<WorldChanged>(&e)) {
      publish(*s, "world", Json{{"placed", blocks_to_json(w->placed)},
                                {"removed", blocks_to_json(w->removed)}});
    } else if (const auto* r = std::get_if<RepositoryChanged>(&e)) {
      publish(*s, "repository", Json{{"name", r->name}});
    } else {
      publish(*s, "state",
              Json{{"state", std::string(to_string(std::get<StateChanged>(e).state))}});
    }
  }
  record(*s, Json{{"turn", turn},
                  {"speaker", "builder"},
                  {"text", joined},
                  {"state", std::string(to_string(reply.state))},
                  {"effects", effects_to_json(result.effects)}});
  s->cv.notify_all();
  reply.effects = std::move(result.effects);
  return reply;
}

Json Service::state(const std::string& id) const {
  auto s = find(id);
  Json names = Json::array();
  for (const auto& sch : repository().schemas()) names.push_back(sch.kind);
  std::lock_guard lock(s->mutex);
  const auto& d = s->world.dims();
  Json out = {{"id", s->id},
              {"region", {{"width", d.width}, {"height", d.height}, {"depth", d.depth}}},
              {"blocks", blocks_to_json(s->world.snapshot())},
              {"state", std::string(to_string(s->dialogue.state()))},
              {"repository", names},
              {"turn", s->turn},
              {"events", s->events.size()}};
  out["target"] = s->target ? blocks_to_json(*s->target) : Json(nullptr);
  return out;
}

BlockList Service::snapshot(const std::string& id) const {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  return s->world.snapshot();
}

DialogueTag Service::dialogue_state(const std::string& id) const {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  return s->dialogue.state();
}

std::vector<Json> Service::transcript(const std::string& id) const {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  return s->transcript;
}

std::vector<Event> Service::events(const std::string& id, std::size_t from,
                                   std::chrono::milliseconds wait) const {
  auto s = find(id);
  std::unique_lock lock(s->mutex);
  if (wait.count() > 0) {
    s->cv.wait_for(lock, wait, [&] { return stopping_ || s->events.size() > from; });
  }
  if (from >= s->events.size()) return {};
  return {s->events.begin() + static_cast<std::ptrdiff_t>(from), s->events.end()};
}

Repository Service::repository() const {
  std::shared_lock lock(repo_mutex_);
  return repo_;
}

std::string Service::repository_json() const {
  std::shared_lock lock(repo_mutex_);
  return save_repository_json(repo_);
}

void Service::shutdown() {
  stopping_ = true;
  std::shared_lock lock(sessions_mutex_);
  for (auto& [id, s] : sessions_) {
    std::lock_guard l(s->mutex);
    s->cv.notify_all();
  }
}

}  // namespace cobuild
