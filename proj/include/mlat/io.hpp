#pragma once

#include "mlat/constraints.hpp"
#include "mlat/model.hpp"
#include "mlat/quadrics.hpp"
#include "mlat/simulate.hpp"
#include "mlat/solver.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>

namespace mlat {

using Json = nlohmann::ordered_json;

/// Parse or schema error; the message names the offending field or line.
class ParseError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

struct ScenarioFile {
  Scenario scenario;
  std::optional<AffineConstraint> constraint;
};

ScenarioFile scenario_from_json(const Json& doc);
Json scenario_to_json(const ScenarioFile& file);

struct SimulationConfig {
  TrialConfig trial;
  int trials = 1000;
};

SimulationConfig simulation_from_json(const Json& doc);

/// Reads and parses a JSON document; syntax errors report the line.
Json read_json_file(const std::string& path);

Json to_json(const Vector& v);
Json to_json(const LiftedPoint& p);
Json to_json(const Frame& frame);
Json to_json(const ShapeParameters& p);
Json to_json(const SolutionSet& sol);
Json to_json(const FeasibleSolutionSet& feasible);
Json to_json(const QuadricDescriptor& q);
Json to_json(const SatelliteLocus& locus);
Json to_json(const DualityReport& r);
Json to_json(const Candidate& c);
Json to_json(const ErrorStats& s);

QuadricDescriptor descriptor_from_json(const Json& doc);
SolutionSet solution_set_from_json(const Json& doc);

/// JSON text with every double written with 17 significant digits.
std::string dump(const Json& doc, int indent = 2);

/// CSV with header `x,y,E`, one row per grid node in index order. x and y
/// are the plane coordinates (y = 0 for a one-axis region).
void write_surface_csv(std::ostream& out, const CostSurface& surface);

}  // namespace mlat
