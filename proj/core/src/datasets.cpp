#include "betafrechet/datasets.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bf {

namespace {

// Nichols & Padgett (2006): breaking stress of 100 carbon fibres, in the
// source's listing order ("Gba" is the unit label printed there).
const Dataset kCarbon{
    "carbon_fibres",
    {3.7,  2.74, 2.73, 2.5,  3.6,  3.11, 3.27, 2.87, 1.47, 3.11,
     4.42, 2.41, 3.19, 3.22, 1.69, 3.28, 3.09, 1.87, 3.15, 4.9,
     3.75, 2.43, 2.95, 2.97, 3.39, 2.96, 2.53, 2.67, 2.93, 3.22,
     3.39, 2.81, 4.2,  3.33, 2.55, 3.31, 3.31, 2.85, 2.56, 3.56,
     3.15, 2.35, 2.55, 2.59, 2.38, 2.81, 2.77, 2.17, 2.83, 1.92,
     1.41, 3.68, 2.97, 1.36, 0.98, 2.76, 4.91, 3.68, 1.84, 1.59,
     3.19, 1.57, 0.81, 5.56, 1.73, 1.59, 2.0,  1.22, 1.12, 1.71,
     2.17, 1.17, 5.08, 2.48, 1.18, 3.51, 2.17, 1.69, 1.25, 4.38,
     1.84, 0.39, 3.68, 2.48, 0.85, 1.61, 2.79, 4.7,  2.03, 1.8,
     1.57, 1.08, 2.03, 1.61, 2.12, 1.89, 2.88, 2.82, 2.05, 3.65},
    "Nichols & Padgett (2006), breaking stress of carbon fibres (Gba)",
};

// Smith & Naylor (1987): strengths of 63 glass fibres of length 1.5 cm,
// measured at the National Physical Laboratory (units not given).
const Dataset kGlass{
    "glass_fibres",
    {0.55, 0.93, 1.25, 1.36, 1.49, 1.52, 1.58, 1.61, 1.64, 1.68, 1.73, 1.81, 2.0,
     0.74, 1.04, 1.27, 1.39, 1.49, 1.53, 1.59, 1.61, 1.66, 1.68, 1.76, 1.82, 2.01,
     0.77, 1.11, 1.28, 1.42, 1.5,  1.54, 1.6,  1.62, 1.66, 1.69, 1.76, 1.84, 2.24,
     0.81, 1.13, 1.29, 1.48, 1.5,  1.55, 1.61, 1.62, 1.66, 1.7,  1.77, 1.84,
     0.84, 1.24, 1.3,  1.48, 1.51, 1.55, 1.61, 1.63, 1.67, 1.7,  1.78, 1.89},
    "Smith & Naylor (1987), strengths of 1.5 cm glass fibres (units unknown)",
};

bool parse_number(const std::string& token, double& out) {
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str()) return false;
    while (end && *end && std::isspace(static_cast<unsigned char>(*end))) ++end;
    if (end && *end) return false;
    out = v;
    return true;
}

} // namespace

const Dataset& builtin_dataset(const std::string& name) {
    if (name == "carbon_fibres") return kCarbon;
    if (name == "glass_fibres") return kGlass;
    throw data_error("builtin_dataset: unknown dataset '" + name +
                     "' (have carbon_fibres, glass_fibres)");
}

std::vector<std::string> builtin_dataset_names() {
    return {"carbon_fibres", "glass_fibres"};
}

Dataset read_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw data_error("read_dataset: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();

    Dataset ds;
    ds.name = path;
    ds.source = "file:" + path;

    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        const auto j = nlohmann::json::parse(text);
        if (j.contains("name")) ds.name = j["name"].get<std::string>();
        if (j.contains("source")) ds.source = j["source"].get<std::string>();
        ds.values = j.at("values").get<std::vector<double>>();
    } else {
        std::istringstream lines(text);
        std::string line;
        bool first_line = true;
        while (std::getline(lines, line)) {
            // single-column CSV: strip a trailing comma / CR
            while (!line.empty() && (line.back() == '\r' || line.back() == ',' ||
                                     std::isspace(static_cast<unsigned char>(line.back()))))
                line.pop_back();
            std::size_t start = 0;
            while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start])))
                ++start;
            line = line.substr(start);
            if (line.empty()) continue;
            double v;
            if (!parse_number(line, v)) {
                if (first_line) { // header
                    first_line = false;
                    continue;
                }
                throw data_error("read_dataset: unparseable line '" + line + "'");
            }
            first_line = false;
            ds.values.push_back(v);
        }
    }
    if (ds.values.empty())
        throw data_error("read_dataset: no observations in '" + path + "'");
    for (double v : ds.values)
        if (!(v > 0.0))
            throw data_error("read_dataset: observations must be positive");
    return ds;
}

void write_dataset(const std::string& path, const Dataset& ds, FileFormat fmt) {
    std::ofstream out(path);
    if (!out)
        throw data_error("write_dataset: cannot open '" + path + "' for writing");
    if (fmt == FileFormat::json) {
        nlohmann::json j;
        j["name"] = ds.name;
        j["source"] = ds.source;
        j["values"] = ds.values;
        out << j.dump(2) << "\n";
        return;
    }
    out << "value\n";
    char buf[64];
    for (double v : ds.values) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf << "\n";
    }
}

} // namespace bf
