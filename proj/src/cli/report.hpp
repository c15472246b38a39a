#pragma once

#include <string>

#include <json.hpp>

#include "linrank/equivalence.hpp"
#include "linrank/ranking.hpp"

namespace linrank::cli {

using nlohmann::json;

json to_json(const Rational& r);
json to_json(const QVector& v);
json to_json(const RankingFunction& f);
json to_json(const RankingSpace& s);
json to_json(const CrossCheckReport& r);

/// Inverses used by tests to check the schema round-trips.
Rational rational_from_json(const json& j);
RankingSpace space_from_json(const json& j, SpaceKind kind);

std::string render(const RankingFunction& f, const std::vector<std::string>& vars);
std::string render(const RankingSpace& s);
std::string render(const CrossCheckReport& r);

} // namespace linrank::cli
