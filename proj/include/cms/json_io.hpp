#ifndef CMS_JSON_IO_HPP
#define CMS_JSON_IO_HPP

#include <json.hpp>

#include "cms/deviation.hpp"
#include "cms/gauss.hpp"
#include "cms/gibbs.hpp"
#include "cms/montecarlo.hpp"
#include "cms/potential.hpp"
#include "cms/pressure.hpp"
#include "cms/rate.hpp"
#include "cms/shift.hpp"
#include "cms/tightness.hpp"

namespace cms {

using Json = nlohmann::json;

// Readers throw ConfigInvalid on missing keys or wrong types; the built
// objects apply their own validation.

/// {"alphabet_size": M, "transition": "full" | [[0/1, ...], ...], "witness_search_depth": N?}
ShiftSpec shift_from_json(const Json& j);
/// {"depth": r, "values": {"0,1": v, ...}}
LocallyConstantTable table_from_json(const Json& j);
/// {"kind": "constant"|"bernoulli"|"gauss_log"|"locally_constant"|"tilted", ...}
Potential potential_from_json(const Json& j);
/// {"kind": "indicator", "symbol": k | "digit": d} | {"kind": "symbol_values", "values": [...]}
/// | {"kind": "locally_constant", "depth": r, "values": {...}}
Observable observable_from_json(const Json& j);
/// {"kind": "bernoulli"|"geometric"|"gauss"|"markov", ...}
GibbsModel model_from_json(const Json& j);
/// {"prefix": [symbols], "value": y}
Anchor anchor_from_json(const Json& j);
/// {"grid_size": G, "iterations": n, "tail": "bounded"|"truncated"}
TransferOptions transfer_from_json(const Json& j);
/// "p/q", a decimal string, an integer, or {"num": p, "den": q}; exact.
Rational rational_from_json(const Json& j);
Comparison comparison_from_json(const Json& j);

/// Finite numbers as numbers; ±inf as "inf"/"-inf"; NaN as null.
Json real_to_json(double x);
/// {"num": p, "den": q}, as integers when they fit in 64 bits, else strings.
Json rational_to_json(const Rational& r);
Json word_to_json(std::span<const Symbol> w);

Json to_json(const PressureEstimate& e);
Json to_json(const DeviationRate& r);
Json to_json(const RateCurve& c);
Json to_json(const McResult& r);
Json to_json(const GibbsEstimate& e);
Json to_json(const DistortionReport& r);
Json to_json(const MixingReport& r);

}  // namespace cms

#endif  // CMS_JSON_IO_HPP
