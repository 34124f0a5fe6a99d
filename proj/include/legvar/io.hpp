#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "legvar/sphere.hpp"
#include "legvar/surfaces.hpp"

namespace legvar {

/// Malformed input; line() is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

using json = nlohmann::json;

json to_json(const HPoint& p);  // [z1, z2, z3, z4, phi]
HPoint point_from_json(const json& j);
/// {base, Z1, Z2} with Z1, Z2 ambient vectors.
json to_json(const LegendrianPlane& pl);
LegendrianPlane plane_from_json(const json& j);

json to_json(const GridDomain& d);
json to_json(const GridSurface& s);
json to_json(const SurfaceReport& r);
json to_json(const DensityReport& r);
json to_json(const CounterexampleRow& r);

/// Columns b1..b5, z1_1..z1_5, z2_1..z2_5, weight with a header line.
void write_varifold_csv(std::ostream& os, const DiscreteVarifold& v);
/// Accepts an optional header and '#' comments. Throws ParseError with the
/// offending line for bad field counts, non-numbers, non-Legendrian planes or
/// non-positive weights.
DiscreteVarifold read_varifold_csv(std::istream& is);

/// x1,x2,z1..z4,phi,N per node in index order.
void write_surface_csv(std::ostream& os, const GridSurface& s);
/// theta,phi,Re/Im of w1..w3 per node.
void write_sphere_csv(std::ostream& os, const SphereSurface& s);

}  // namespace legvar
