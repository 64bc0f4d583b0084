// Copyright 2026 The cobuild Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cobuild/oracle.hpp"

#include <algorithm>

#include "cobuild/error.hpp"

namespace cobuild {

OracleArchitect::OracleArchitect(std::vector<std::string> params, Truth truth,
                                 std::map<std::string, std::string> slot_values,
                                 const Replies& replies)
    : params_(std::move(params)),
      truth_(std::move(truth)),
      slots_(std::move(slot_values)),
      replies_(replies) {}

OracleArchitect::OracleArchitect(const ConceptDefinition& def, const Repository& repo,
                                 std::map<std::string, std::string> slot_values,
                                 const Replies& replies)
    : OracleArchitect(
          def.params,
          [def, repo](const Valuation& v) {
            std::vector<int> dims;
            for (const auto& p : def.params) dims.push_back(v.at(p));
            Repository r = repo;
            if (!r.contains(def.name)) r.add(def);
            return r.extent(def.name, dims, {0, 0, 0});
          },
          std::move(slot_values), replies) {}

bool OracleArchitect::count_matches(const Valuation& v, std::size_t count) const {
  return truth_(v).size() == count;
}

Valuation OracleArchitect::parse_valuation(std::string_view text) const {
  Valuation v;
  std::string rest(text);
  while (!rest.empty()) {
    auto sep = rest.find(" and ");
    std::string piece = rest.substr(0, sep);
    rest = sep == std::string::npos ? "" : rest.substr(sep + 5);
    auto m = replies_.match("query.valuation", piece);
    if (!m) throw Error(Errc::UnanswerableQuestion, "cannot read valuation '" + piece + "'");
    const std::string& param = m->at("param");
    const std::string& value = m->at("value");
    if (std::find(params_.begin(), params_.end(), param) == params_.end()) {
      throw Error(Errc::UnanswerableQuestion, "unknown parameter '" + param + "'");
    }
    try {
      v[param] = std::stoi(value);
    } catch (const std::exception&) {
      throw Error(Errc::UnanswerableQuestion, "bad value '" + value + "'");
    }
  }
  if (v.size() != params_.size()) {
    throw Error(Errc::UnanswerableQuestion, "query does not fix every parameter");
  }
  return v;
}

std::string OracleArchitect::respond(std::string_view builder_text) const {
  if (auto m = replies_.match("query", builder_text)) {
    Valuation v = parse_valuation(m->at("valuation"));
    std::size_t count = 0;
    try {
      count = static_cast<std::size_t>(std::stoul(m->at("count")));
    } catch (const std::exception&) {
      throw Error(Errc::UnanswerableQuestion, "bad count in '" + std::string(builder_text) + "'");
    }
    return count_matches(v, count) ? "yes" : "no";
  }
  for (const auto& [slot, value] : slots_) {
    std::string key = "ask." + slot;
    if (replies_.has(key) && replies_.match(key, builder_text)) return value;
  }
  throw Error(Errc::UnanswerableQuestion, "cannot answer '" + std::string(builder_text) + "'");
}

}  // namespace cobuild
