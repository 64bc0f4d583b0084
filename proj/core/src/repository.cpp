// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cobuild/repository.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cobuild/error.hpp"
#include "cobuild/geometry.hpp"

namespace cobuild {

namespace {

using nlohmann::json;

constexpr std::string_view kFormat = "cobuild-repository";
constexpr int kVersion = 1;
constexpr int kMaxNesting = 32;

json expr_to_json(const DimExpr& e) {
  switch (e.tag) {
    case DimExpr::Tag::Const: return {{"tag", "const"}, {"value", e.value}};
    case DimExpr::Tag::Param: return {{"tag", "param"}, {"param", e.param}};
    case DimExpr::Tag::ParamMinus1: return {{"tag", "param-1"}, {"param", e.param}};
    case DimExpr::Tag::ParamPlus1: return {{"tag", "param+1"}, {"param", e.param}};
  }
  return {};
}

DimExpr expr_from_json(const json& j) {
  const std::string tag = j.at("tag").get<std::string>();
  if (tag == "const") return DimExpr::constant(j.at("value").get<int>());
  std::string p = j.at("param").get<std::string>();
  if (tag == "param") return DimExpr::of(std::move(p));
  if (tag == "param-1") return DimExpr::minus1(std::move(p));
  if (tag == "param+1") return DimExpr::plus1(std::move(p));
  throw Error(Errc::ParseError, "unknown expression tag '" + tag + "'");
}

json concept_to_json(const ConceptDefinition& def) {
  json parts = json::array();
  for (const auto& part : def.parts) {
    json dims = json::array();
    for (const auto& d : part.dims) dims.push_back(expr_to_json(d));
    json offset = json::array();
    for (const auto& o : part.offset) offset.push_back(expr_to_json(o));
    parts.push_back({{"kind", part.kind},
                     {"color", part.fixed_color ? std::string(to_string(*part.fixed_color))
                                                : std::string("inherit")},
                     {"dims", dims},
                     {"offset", offset}});
  }
  return {{"name", def.name},
          {"params", def.params},
          {"parts", parts},
          {"clause", render(def.clause)},
          {"explanation", def.explanation}};
}

ConceptDefinition concept_from_json(const json& j) {
  ConceptDefinition def;
  def.name = j.at("name").get<std::string>();
  def.params = j.at("params").get<std::vector<std::string>>();
  for (const auto& jp : j.at("parts")) {
    PartSpec part;
    part.kind = jp.at("kind").get<std::string>();
    std::string color = jp.at("color").get<std::string>();
    if (color != "inherit") {
      part.fixed_color = parse_color(color);
      if (!part.fixed_color) throw Error(Errc::ParseError, "bad color '" + color + "'");
    }
    for (const auto& d : jp.at("dims")) part.dims.push_back(expr_from_json(d));
    const auto& off = jp.at("offset");
    if (off.size() != 3) throw Error(Errc::ParseError, "offset needs three components");
    for (std::size_t a = 0; a < 3; ++a) part.offset[a] = expr_from_json(off[a]);
    def.parts.push_back(std::move(part));
  }
  def.clause = make_clause(def.name, def.params, def.parts);
  if (render(def.clause) != j.at("clause").get<std::string>()) {
    throw Error(Errc::ParseError, "clause of '" + def.name + "' does not match its parts");
  }
  def.explanation = j.at("explanation").get<std::string>();
  return def;
}

}  // namespace

Repository::Repository() {
  for (const auto& s : primitive_schemas()) entries_.push_back({s, std::nullopt});
}

const RepositoryEntry* Repository::find(std::string_view kind) const {
  for (const auto& e : entries_) {
    if (e.schema.kind == kind) return &e;
  }
  return nullptr;
}

const SlotSchema& Repository::schema(std::string_view kind) const {
  const RepositoryEntry* e = find(kind);
  if (!e) throw Error(Errc::UnknownKind, "unknown structure '" + std::string(kind) + "'");
  return e->schema;
}

std::vector<SlotSchema> Repository::schemas() const {
  std::vector<SlotSchema> out;
  for (const auto& e : entries_) out.push_back(e.schema);
  return out;
}

std::vector<const ConceptDefinition*> Repository::learned() const {
  std::vector<const ConceptDefinition*> out;
  for (const auto& e : entries_) {
    if (e.definition) out.push_back(&*e.definition);
  }
  return out;
}

void Repository::add(ConceptDefinition def) {
  if (def.name.empty() || contains(def.name)) {
    throw Error(Errc::UnknownKind, "the name '" + def.name + "' is already taken");
  }
  for (const auto& part : def.parts) {
    const RepositoryEntry* e = find(part.kind);
    if (!e) throw Error(Errc::UnknownKind, "part refers to unknown kind '" + part.kind + "'");
    if (e->schema.params.size() != part.dims.size()) {
      throw Error(Errc::UnknownKind, "part '" + part.kind + "' has the wrong number of dims");
    }
    for (const auto& d : part.dims) {
      if (d.tag != DimExpr::Tag::Const &&
          std::find(def.params.begin(), def.params.end(), d.param) == def.params.end()) {
        throw Error(Errc::UnknownKind, "part uses undeclared parameter '" + d.param + "'");
      }
    }
  }
  SlotSchema schema = def.schema();
  entries_.push_back({std::move(schema), std::move(def)});
}

void Repository::collect(std::string_view kind, std::optional<Color> color,
                         const std::vector<int>& dims, Position anchor, BlockList& out,
                         int depth) const {
  if (depth > kMaxNesting) throw Error(Errc::UnknownKind, "concept nesting too deep");
  const RepositoryEntry* e = find(kind);
  if (!e) throw Error(Errc::UnknownKind, "unknown structure '" + std::string(kind) + "'");
  if (!e->definition) {
    for (const auto& p : primitive_extent(kind, dims, anchor)) {
      out.push_back({p, color.value_or(Color::Red)});
    }
    return;
  }
  const ConceptDefinition& def = *e->definition;
  Valuation v = def.valuation(dims);
  for (const auto& part : def.parts) {
    std::vector<int> part_dims;
    bool empty = false;
    for (const auto& d : part.dims) {
      int value = d.eval(v);
      empty |= value < 1;
      part_dims.push_back(value);
    }
    if (empty) continue;
    Position off{part.offset[0].eval(v), part.offset[1].eval(v), part.offset[2].eval(v)};
    collect(part.kind, part.fixed_color ? part.fixed_color : color, part_dims, anchor + off, out,
            depth + 1);
  }
}

PositionSet Repository::extent(std::string_view kind, const std::vector<int>& dims,
                               Position anchor) const {
  if (is_primitive(kind)) return primitive_extent(kind, dims, anchor);
  for (int d : dims) {
    if (d < 1) throw Error(Errc::NonPositiveDimension, std::string(kind) + " dimension < 1");
  }
  BlockList blocks;
  collect(kind, std::nullopt, dims, anchor, blocks, 0);
  PositionSet out;
  for (const auto& b : blocks) out.insert(b.pos);
  return out;
}

BlockList Repository::colored_extent(std::string_view kind, Color color,
                                     const std::vector<int>& dims, Position anchor) const {
  for (int d : dims) {
    if (d < 1) throw Error(Errc::NonPositiveDimension, std::string(kind) + " dimension < 1");
  }
  BlockList blocks;
  collect(kind, color, dims, anchor, blocks, 0);
  std::sort(blocks.begin(), blocks.end(),
            [](const Block& a, const Block& b) { return YxzLess{}(a.pos, b.pos); });
  // Overlapping parts keep the first color listed.
  blocks.erase(std::unique(blocks.begin(), blocks.end(),
                           [](const Block& a, const Block& b) { return a.pos == b.pos; }),
               blocks.end());
  return blocks;
}

bool operator==(const Repository& a, const Repository& b) {
  return save_repository_json(a) == save_repository_json(b);
}

std::vector<std::string> check_completeness(const InstructionForm& form, const Repository& repo) {
  return check_completeness(form, repo.schema(form.kind));
}

std::string save_repository_json(const Repository& repo) {
  json concepts = json::array();
  for (const auto* def : repo.learned()) concepts.push_back(concept_to_json(*def));
  json doc = {{"format", kFormat}, {"version", kVersion}, {"concepts", concepts}};
  return doc.dump(2) + "\n";
}

Repository load_repository_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("repository file: ") + e.what());
  }
  Repository repo;
  try {
    if (doc.at("format").get<std::string>() != kFormat) {
      throw Error(Errc::ParseError, "not a repository file");
    }
    if (doc.at("version").get<int>() != kVersion) {
      throw Error(Errc::ParseError, "unsupported repository version");
    }
    for (const auto& jc : doc.at("concepts")) repo.add(concept_from_json(jc));
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("repository file: ") + e.what());
  }
  return repo;
}

void save_repository_file(const Repository& repo, const std::filesystem::path& path) {
  const std::string text = save_repository_json(repo);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0) throw Error(Errc::IoError, "cannot write " + tmp.string() + ": " + std::strerror(errno));
  std::size_t written = 0;
  while (written < text.size()) {
    ssize_t n = ::write(fd, text.data() + written, text.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      ::close(fd);
      throw Error(Errc::IoError, "write failed: " + std::string(std::strerror(errno)));
    }
    written += static_cast<std::size_t>(n);
  }
  ::fsync(fd);
  ::close(fd);
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(Errc::IoError, "rename failed: " + ec.message());
}

Repository load_repository_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return Repository{};
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_repository_json(ss.str());
}

}  // namespace cobuild
