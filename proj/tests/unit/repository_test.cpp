// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "cobuild/error.hpp"
#include "cobuild/repository.hpp"
#include "ground_truth.hpp"

namespace cobuild {
namespace {

namespace fs = std::filesystem;

fs::path temp_path(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("cobuild-" + std::to_string(::getpid()) + "-" + name);
  fs::create_directories(dir);
  return dir / name;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Repository, StartsWithPrimitives) {
  Repository repo;
  EXPECT_EQ(repo.schemas().size(), 8u);
  EXPECT_TRUE(repo.learned().empty());
  EXPECT_EQ(repo.schema("rectangle").params, (std::vector<std::string>{"width", "height"}));
  EXPECT_THROW(repo.schema("pyramid"), Error);
}

TEST(Repository, AddsLearnedConceptsOnce) {
  Repository repo;
  repo.add(testing::l_definition());
  EXPECT_TRUE(repo.contains("l"));
  EXPECT_EQ(repo.schema("l").params, (std::vector<std::string>{"height", "width"}));
  EXPECT_THROW(repo.add(testing::l_definition()), Error);
  auto tower_named = testing::l_definition();
  tower_named.name = "tower";
  EXPECT_THROW(repo.add(tower_named), Error);
}

TEST(Repository, LearnedExtentsEvaluateParts) {
  Repository repo;
  repo.add(testing::l_definition());
  EXPECT_EQ(repo.extent("l", {3, 3}, {0, 0, 0}),
            (PositionSet{{0, 0, 0}, {0, 1, 0}, {0, 2, 0}, {1, 0, 0}, {2, 0, 0}}));
  // width 1 leaves the row empty.
  EXPECT_EQ(repo.extent("l", {2, 1}, {1, 0, 1}), (PositionSet{{1, 0, 1}, {1, 1, 1}}));
}

TEST(Repository, JsonRoundTripIsByteIdentical) {
  Repository repo;
  repo.add(testing::l_definition());
  std::string first = save_repository_json(repo);
  Repository loaded = load_repository_json(first);
  EXPECT_TRUE(loaded == repo);
  EXPECT_EQ(save_repository_json(loaded), first);
}

TEST(Repository, FileRoundTripAndMissingFile) {
  fs::path p = temp_path("repo.json");
  fs::remove(p);
  EXPECT_TRUE(load_repository_file(p).learned().empty());
  Repository repo;
  repo.add(testing::l_definition());
  save_repository_file(repo, p);
  std::string bytes = read(p);
  save_repository_file(load_repository_file(p), p);
  EXPECT_EQ(read(p), bytes);
  for (const auto& entry : fs::directory_iterator(p.parent_path())) {
    EXPECT_EQ(entry.path().extension(), ".json") << "leftover " << entry.path();
  }
}

TEST(Repository, RejectsCorruptFiles) {
  EXPECT_THROW(load_repository_json("{"), Error);
  EXPECT_THROW(load_repository_json(R"({"format":"other","version":1,"concepts":[]})"), Error);
  EXPECT_THROW(load_repository_json(R"({"format":"cobuild-repository","version":99,"concepts":[]})"),
               Error);
  Repository repo;
  repo.add(testing::l_definition());
  std::string text = save_repository_json(repo);
  auto pos = text.find("tower(C,H,0,0,0)");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 16, "tower(C,W,0,0,0)");
  EXPECT_THROW(load_repository_json(text), Error);
}

TEST(Repository, InterruptedWriteKeepsPreviousFile) {
  fs::path p = temp_path("crash.json");
  Repository repo;
  repo.add(testing::l_definition());
  save_repository_file(repo, p);
  std::string good = read(p);
  // A half-written temporary from a crashed save must not affect loading.
  std::ofstream(p.string() + ".tmp") << "{\"format\":";
  EXPECT_TRUE(load_repository_file(p) == repo);
  save_repository_file(repo, p);
  EXPECT_EQ(read(p), good);
  fs::remove(p.string() + ".tmp");
}

}  // namespace
}  // namespace cobuild
