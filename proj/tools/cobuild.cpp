// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

// cobuild: serve the HTTP API, play in the terminal, or run scenario scripts.

#include <CLI11.hpp>

#include <csignal>
#include <iostream>
#include <string>

#include "cobuild/error.hpp"
#include "cobuild/http_server.hpp"
#include "cobuild/scenario.hpp"
#include "cobuild/session.hpp"

namespace {

cobuild::HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

void print_builder(const std::vector<std::string>& replies) {
  for (const auto& r : replies) std::cout << "builder> " << r << "\n";
  std::cout.flush();
}

int play(cobuild::Service& service, const cobuild::RegionDims& dims) {
  std::string id = service.create_session({dims, std::nullopt});
  std::cout << "builder> " << service.transcript(id).front().at("text").get<std::string>()
            << "\n";
  std::string line;
  while (true) {
    std::cout << "architect> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto reply = service.post_message(id, line);
    print_builder(reply.replies);
    if (reply.state == cobuild::DialogueTag::SessionEnded) break;
  }
  return 0;
}

int run_script(cobuild::Service& service, const std::string& file, bool quiet) {
  auto script = cobuild::ScenarioScript::load(file);
  auto result = cobuild::run_script(script, service);
  if (!quiet) {
    for (const auto& rec : result.transcript) {
      std::cout << rec.at("speaker").get<std::string>() << "> "
                << rec.at("text").get<std::string>() << "\n";
    }
  }
  if (!result.passed) {
    std::cerr << file << ": " << cobuild::describe(*result.failure) << "\n";
    return 1;
  }
  std::cout << "PASS " << file << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collaborative block-building agent"};
  app.require_subcommand(1);

  std::string repo_file;
  std::string transcripts;
  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  int port = 8080;
  std::string host = "127.0.0.1";
  serve->add_option("--port", port, "TCP port")->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--repo-file", repo_file, "Repository file (created on first save)");
  serve->add_option("--transcripts", transcripts, "Directory for per-session transcripts");

  auto* playcmd = app.add_subcommand("play", "Chat with the builder in the terminal");
  std::vector<int> region{11, 9, 11};
  playcmd->add_option("--repo-file", repo_file, "Repository file (created on first save)");
  playcmd->add_option("--region", region, "Build region W H D")->expected(3);
  playcmd->add_option("--transcripts", transcripts, "Directory for the session transcript");

  auto* script = app.add_subcommand("run-script", "Run a scenario script");
  std::string script_file;
  bool quiet = false;
  script->add_option("file", script_file, "Scenario file")->required()->check(CLI::ExistingFile);
  script->add_option("--repo-file", repo_file, "Repository file (created on first save)");
  script->add_option("--transcripts", transcripts, "Directory for the session transcript");
  script->add_flag("-q,--quiet", quiet, "Only report the outcome");

  CLI11_PARSE(app, argc, argv);

  try {
    cobuild::Service::Options options;
    if (!repo_file.empty()) options.repo_file = repo_file;
    if (!transcripts.empty()) options.transcript_dir = transcripts;
    cobuild::Service service(options);

    if (*serve) {
      cobuild::HttpServer server(service);
      g_server = &server;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cout << "listening on http://" << host << ":" << port << std::endl;
      server.run(host, port);
      g_server = nullptr;
      return 0;
    }
    if (*playcmd) return play(service, {region[0], region[1], region[2]});
    return run_script(service, script_file, quiet);
  } catch (const cobuild::Error& e) {
    std::cerr << "error: " << cobuild::errc_name(e.code()) << ": " << e.what() << "\n";
    return 2;
  }
}
