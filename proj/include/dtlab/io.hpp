#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"

#include "dtlab/bounds.hpp"
#include "dtlab/boolfn.hpp"
#include "dtlab/dtree.hpp"
#include "dtlab/pmf.hpp"
#include "dtlab/reduction.hpp"

namespace dtlab {

/// Keys keep insertion order so emitted files read top-down.
using Json = nlohmann::ordered_json;

/// {"q": i, "0": <node>, "1": <node>} internal, {"leaf": 0|1} terminal.
Json tree_to_json(const DecisionTree& t);
/// Throws Parse on malformed input, and InvalidArgument when a query index
/// is out of range for `width` (if given).
DecisionTree tree_from_json(const Json& j, std::optional<std::size_t> width = {});

/// [{"x": "0101", "label": 1}, ...].
Json fn_to_json(const PartialFn& f);
PartialFn fn_from_json(const Json& j, std::size_t width);

/// [{"x": "0101", "p": "1/6"}, ...].
Json pmf_to_json(const Pmf& pmf);
Pmf pmf_from_json(const Json& j);

Json report_to_json(const BoundReport& rep);
Json params_to_json(const ReductionParams& p);
Json transcript_to_json(const VcTranscript& t);

Json instance_to_json(const DatasetMinInstance& inst);
DatasetMinInstance instance_from_json(const Json& j);

/// Reads a whole stream as JSON. Throws Parse.
Json read_json(std::istream& in);

}  // namespace dtlab
