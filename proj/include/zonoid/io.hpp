#pragma once

#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>

#include <json.hpp>

#include "zonoid/ergodic.hpp"
#include "zonoid/grid.hpp"
#include "zonoid/invariance.hpp"
#include "zonoid/laws.hpp"
#include "zonoid/lepage.hpp"
#include "zonoid/levy.hpp"
#include "zonoid/mean_width.hpp"
#include "zonoid/process.hpp"
#include "zonoid/sequence.hpp"
#include "zonoid/support.hpp"
#include "zonoid/zonotope.hpp"

namespace zonoid
{

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

//---------------------------------------------------------------------------//
/*!
 * Fail-closed reader for JSON objects: every key must be consumed through
 * required()/optional() before finish(), otherwise ConfigError names the
 * unknown field.
 */
class ObjectReader
{
public:
    ObjectReader(const Json& j, std::string what);

    const Json& required(const std::string& key);
    const Json* optional(const std::string& key);
    void finish() const;

private:
    const Json& j_;
    std::string what_;
    std::set<std::string> seen_;
};

/// Top-level documents carry "schema": 1.
void check_schema(const Json& j, const std::string& what);

double number_of(const Json& j, const std::string& what);
Vector vector_of(const Json& j, const std::string& what);
Matrix matrix_of(const Json& j, const std::string& what);
std::vector<Vector> vectors_of(const Json& j, const std::string& what);

Json to_json(const Vector& v);
Json to_json(const Matrix& m);
/// Infinite values become the strings "inf" / "-inf".
Json number_json(double x);

//---------------------------------------------------------------------------//
// Model specifications
//---------------------------------------------------------------------------//

LawModel law_from_json(const Json& j);
Json to_json(const LawModel& law);

LevyTriplet triplet_from_json(const Json& j);
Json to_json(const LevyTriplet& t);

SequenceModel sequence_from_json(const Json& j);
Json to_json(const SequenceModel& model);

GaussianProcess process_from_json(const Json& j);
Json to_json(const GaussianProcess& gp);

LocationScaleLaw::Base base_from_string(const std::string& s);
std::string to_string(LocationScaleLaw::Base b);

//---------------------------------------------------------------------------//
// Reports
//---------------------------------------------------------------------------//

Json to_json(const SupportEstimate& e);
Json to_json(const EquivalenceReport& r);
Json to_json(const MaxEquivalenceReport& r);
Json to_json(const SwapReport& r);
Json to_json(const PositivityDiagnostic& r);
Json to_json(const RelationsReport& r);
Json to_json(const EvenHomogeneousReport& r);
Json to_json(const LevyCheckReport& r);
Json to_json(const LognormalCheckReport& r);
Json to_json(const CfCriterionReport& r);
Json to_json(const EllipticalCheckReport& r);
Json to_json(const LocationScaleRecovery& r);
Json to_json(const BrownResnickReport& r);
Json to_json(const CfReport& r);
Json to_json(const TwoSampleReport& r);
Json to_json(const StationarityCrossCheck& r);
Json to_json(const MeanWidthCheck& r);
Json to_json(const Zonotope2D& z);
Json to_json(const L1Diagnostic& r);
Json to_json(const CauchyDiagnostic& r);
Json to_json(const LimitFormulaReport& r);

//---------------------------------------------------------------------------//
// Files and run manifest
//---------------------------------------------------------------------------//

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// FNV-1a 64 of the canonical (sorted-key) dump, as 16 hex digits.
std::string config_hash(const Json& config);

/// {"seed", "version", "config_hash", "timestamp"}.
Json run_manifest(std::optional<std::uint64_t> seed, const Json& config);

}  // namespace zonoid
