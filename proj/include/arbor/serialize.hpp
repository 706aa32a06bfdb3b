#ifndef ARBOR_SERIALIZE_HPP
#define ARBOR_SERIALIZE_HPP

#include <arbor/cayley.hpp>
#include <arbor/chains.hpp>
#include <arbor/core_maps.hpp>
#include <arbor/displacement.hpp>
#include <arbor/metric_core.hpp>
#include <arbor/stallings.hpp>

#include <json.hpp>

#include <string>

namespace arbor {

using Json = nlohmann::ordered_json;

/// Integers stay numbers; other values become "p/q" strings.
Json rational_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json to_json(const Presentation& p, const CayleyBall& b);
std::string to_dot(const Presentation& p, const CayleyBall& b);

Json to_json(const Presentation& p, const StallingsGraph& g);
StallingsGraph stallings_from_json(const Presentation& p, const Json& j);
std::string to_dot(const Presentation& p, const StallingsGraph& g);

Json to_json(const MetricCore& c);
MetricCore core_from_json(const Presentation& p, const Json& j);
std::string to_dot(const MetricCore& c);

Json to_json(const QiEstimate& q);
QiEstimate qi_from_json(const Json& j);
Json to_json(const MetricCore& c, const FoldMove& m);
Json to_json(const PredictedConstants& pc);
Json to_json(const CoreMap& m);
std::string to_dot(const CoreMap& m);

Json to_json(const Presentation& p, const GeneratingTuple& t);
Json to_json(const Presentation& p, const ChainRecord& r);
ChainRecord chain_record_from_json(const Presentation& p, const Json& j);
Json to_json(const Presentation& p, const ReducedChain& r);

Json words_json(const Presentation& p, const std::vector<Word>& ws);
std::vector<Word> words_from_json(const Presentation& p, const Json& j);

}  // namespace arbor

#endif
