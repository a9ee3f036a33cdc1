#pragma once

#include <json.hpp>
#include <string>

#include "kstiefel/series.hpp"
#include "kstiefel/splitting.hpp"
#include "kstiefel/stiefel.hpp"

namespace kst {

// Wire encodings.  Scalars: R as a plain number, C as [re, im], H as
// [re, i, j, k].  Matrices: {"field", "rows", "cols", "entries"} with
// entries a row-major nested array.  All numbers must be finite.
nlohmann::json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(Field f, const nlohmann::json& j);

nlohmann::json matrix_to_json(const KMatrix& m);
KMatrix matrix_from_json(const nlohmann::json& j);

// {"n", "m", "f"}
nlohmann::json stiefel_to_json(const StiefelPoint& p);
StiefelPoint stiefel_from_json(const nlohmann::json& j,
                               const Tolerance& tol = {});

// {"Y", "X"}
nlohmann::json cayley_to_json(const CayleyCoords& c);
CayleyCoords cayley_from_json(const nlohmann::json& j);

// {"psi", "Y", "X"}
nlohmann::json stratum_to_json(const StratumCoords& s);
StratumCoords stratum_from_json(const nlohmann::json& j);

nlohmann::json series_to_json(const SeriesComparison& cmp);

// FNV-1a 64 over the canonical dump, as 16 lowercase hex digits.  Used to
// fingerprint failing verify inputs in reports.
std::string digest_json(const nlohmann::json& j);

}  // namespace kst
