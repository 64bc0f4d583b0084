// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cobuild/concept.hpp"
#include "cobuild/logic.hpp"
#include "cobuild/types.hpp"

namespace cobuild {

struct RepositoryEntry {
  SlotSchema schema;
  std::optional<ConceptDefinition> definition;  // empty for primitives
};

/// Ordered library of structure kinds. The first eight entries are the
/// primitives; learned concepts are appended and never modified.
class Repository {
 public:
  Repository();

  const std::vector<RepositoryEntry>& entries() const noexcept { return entries_; }
  const RepositoryEntry* find(std::string_view kind) const;
  bool contains(std::string_view kind) const { return find(kind) != nullptr; }
  /// Throws Error{UnknownKind}.
  const SlotSchema& schema(std::string_view kind) const;
  std::vector<SlotSchema> schemas() const;
  std::vector<const ConceptDefinition*> learned() const;

  /// Appends a learned concept. Throws Error{UnknownKind} when the name is
  /// taken or a part refers to an unknown kind.
  void add(ConceptDefinition def);

  /// Cells of `kind` with the given dims anchored at `anchor`. Parts of learned
  /// concepts whose dimensions evaluate below 1 contribute nothing.
  PositionSet extent(std::string_view kind, const std::vector<int>& dims, Position anchor) const;
  BlockList colored_extent(std::string_view kind, Color color, const std::vector<int>& dims,
                           Position anchor) const;

  friend bool operator==(const Repository& a, const Repository& b);

 private:
  void collect(std::string_view kind, std::optional<Color> color, const std::vector<int>& dims,
               Position anchor, BlockList& out, int depth) const;

  std::vector<RepositoryEntry> entries_;
};

/// Completeness check against the schema registered for form.kind.
std::vector<std::string> check_completeness(const InstructionForm& form, const Repository& repo);

/// Versioned JSON text of the learned concepts. Deterministic.
std::string save_repository_json(const Repository& repo);
/// Throws Error{ParseError}.
Repository load_repository_json(std::string_view text);

/// Writes via a temporary file and rename, so a crash mid-write leaves the
/// previous file intact. Throws Error{IoError}.
void save_repository_file(const Repository& repo, const std::filesystem::path& path);
/// A missing file yields the primitive-only repository.
Repository load_repository_file(const std::filesystem::path& path);

}  // namespace cobuild
