#ifndef BETAFRECHET_DATASETS_HPP
#define BETAFRECHET_DATASETS_HPP

#include <string>
#include <vector>

#include "betafrechet/errors.hpp"

namespace bf {

struct Dataset {
    std::string name;
    std::vector<double> values;
    std::string source;

    std::size_t n() const { return values.size(); }
};

/// Embedded study datasets: "carbon_fibres" (n=100) and "glass_fibres" (n=63).
const Dataset& builtin_dataset(const std::string& name);

std::vector<std::string> builtin_dataset_names();

// One observation per line, or a single-column CSV with an optional header
// line; also accepts the JSON document written by write_dataset.
Dataset read_dataset(const std::string& path);

enum class FileFormat { csv, json };

/// Writes values losslessly (round-trips bit-identical through read_dataset).
void write_dataset(const std::string& path, const Dataset& ds, FileFormat fmt);

} // namespace bf

#endif
