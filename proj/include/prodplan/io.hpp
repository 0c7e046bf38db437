#pragma once

#include <string>
#include <vector>

#include "prodplan/grid.hpp"
#include "prodplan/model.hpp"

namespace prodplan {

// Shortest decimal representation that round-trips a double ("%.17g"),
// used for every number written to CSV so outputs are reproducible
// byte for byte.
std::string format_double(double value);

// Writes a CSV table with a header row, '\n' line endings, and all numbers
// rendered by format_double.  rows[i].size() must equal columns.size().
// Throws ConfigError on I/O failure or ragged rows.
void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

// Solved field serialized with its derived value function:
// columns r, u, z, dz_dr, d2z_dr2.
void write_value_field_csv(const std::string& path, const DiscreteField& field,
                           const ValueField& vf);

// Reads a CSV produced by write_value_field_csv back into a field + value
// pair; validates the header and the uniform node spacing.
struct StoredField {
    DiscreteField field;
    ValueField values;
};

StoredField read_value_field_csv(const std::string& path);

}  // namespace prodplan
