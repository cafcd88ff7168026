#pragma once

#include <string>

#include "wittenlab/grid.hpp"

namespace wittenlab {

// CSV format: header line `topology,<kind>,<N>[,<Ny>],<spacing>`, then one
// value per line.  Values print with %.17g, so write(parse(write(f))) ==
// write(f) byte for byte and parse(write(f)) recovers f exactly.
std::string field_to_csv(const SampledField& field);
SampledField field_from_csv(const std::string& text);

void write_field_csv(const SampledField& field, const std::string& path);
SampledField read_field_csv(const std::string& path);

// Equivalent JSON schema:
//   {"topology":{"kind":"circle","n":8,"spacing":0.78...},"values":[...]}
// (torus adds "ny").
std::string field_to_json(const SampledField& field);
SampledField field_from_json(const std::string& text);

void write_field_json(const SampledField& field, const std::string& path);
SampledField read_field_json(const std::string& path);

// dispatch on extension (.csv / .json)
SampledField read_field_auto(const std::string& path);

}  // namespace wittenlab
