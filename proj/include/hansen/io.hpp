/**
 * @file io.hpp
 * @brief Scenario CSV and market JSON readers, JSON report writers
 *
 * Scenario CSV: two columns `probability,value`, optional header line.
 *
 * Market JSON, one of
 *   {"kind":"universe","mu":[...],"sigma":[[...],...]}
 *   {"kind":"gram","G":[[...],...],"m":[...],"p":[...]}
 *   {"kind":"scenarios","probabilities":[...],"payoffs":[[...],...],"p":[...]}
 *   {"kind":"sequence","beta":0.5,"horizon":64,"probabilities":[[...],...],
 *    "cash_flows":[[[...],...],...],"p":[...]}
 */

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "hansen/frontier.hpp"
#include "hansen/kernel.hpp"
#include "hansen/market.hpp"
#include "hansen/moments.hpp"
#include "hansen/monotone.hpp"
#include "hansen/multiperiod.hpp"

namespace hansen::io {

using Json = nlohmann::ordered_json;

ScenarioPayoff parse_scenario_csv(std::istream& in, bool renormalize = false);
ScenarioPayoff read_scenario_csv(const std::string& path, bool renormalize = false);

GramMarket parse_market_json(const Json& doc, bool renormalize = false);
GramMarket read_market_json(const std::string& path, bool renormalize = false);

Json to_json(const Vector& v);
Json to_json(const SpecialPortfolios& sp);
Json to_json(const FrontierCoefficients& fc);
Json to_json(const HansenBoundReport& hb);
Json to_json(const MultiperiodStats& mp);
Json to_json(const MonotoneResult& mr);
Json to_json(const KernelDiagnostics& kd);
Json to_json(const HJBoundReport& hj);
Json to_json(const MonotoneHJReport& mh);
Json to_json(const SequenceMetadata& sm);

/// Deterministic rendering: insertion-ordered keys, shortest round-trip doubles.
std::string dump(const Json& doc);

/// CSV with header `mu,omega,sigma`, doubles at 17 significant digits max.
void write_points_csv(std::ostream& out, const std::vector<FrontierPoint>& points);

/// Shortest round-trip decimal for a double.
std::string format_double(double x);

}  // namespace hansen::io
