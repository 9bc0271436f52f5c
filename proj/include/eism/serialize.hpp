#pragma once

#include <json.hpp>

#include "eism/function_space.hpp"
#include "eism/qexp.hpp"

namespace eism {

using Json = nlohmann::ordered_json;

inline constexpr int kJsonSchemaVersion = 1;

// [re, w-coefficient] pairs, row by row.
Json to_json(const HermitianMatrix& beta);
// p-adic: {val, unit, N}; exact: {val, unit, N: null} with unit = value / p^val.
Json to_json(const Coeff& c, unsigned long p);
Json to_json(const QExpansion& Q);

// {level, support, ring, entries: [{x_coset, y_coset, value}]}.
Json to_json(const LCFunction& F);
// Values are integers or "a/b" strings; the ring is p-adic at the given
// precision unless the table says "rational".
LCFunction lc_function_from_json(const Json& j, const FieldData& field, int n);

}  // namespace eism
