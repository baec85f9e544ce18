#ifndef BETAFRECHET_REPRODUCE_HPP
#define BETAFRECHET_REPRODUCE_HPP

#include <string>
#include <vector>

#include "betafrechet/inference.hpp"

namespace bf {

// One quantitative check of the study reproduction: an achieved number, the
// published target, and the tolerance it is held to.
struct Comparison {
    std::string name;
    double target;
    double achieved;
    std::string tolerance;
    bool pass;
    std::string note;
};

struct DatasetReport {
    std::string dataset;
    std::vector<FitResult> fits;     // Frechet, EF, BF
    std::vector<double> score_sup;   // free-parameter score sup-norm per fit
    std::vector<LRTest> lr_tests;    // vs Frechet, vs EF
};

struct ReproductionReport {
    std::vector<DatasetReport> datasets;
    std::vector<Comparison> comparisons;
    bool all_pass;

    std::string to_json() const;
    std::string to_text() const;
};

// Fits BF/EF/Frechet to both embedded datasets, runs both LR tests each,
// and checks every cell against the published values. Fit failures are
// marked per-cell; the report is always produced.
ReproductionReport run_reproduction(const FitOptions& opts = {});

enum class FigureKind { pdf, hazard, skewness, kurtosis };

struct FigureGrid {
    double lo = 0.0;   // 0 means kind-specific default
    double hi = 0.0;
    int points = 0;
    char axis = 0;     // 'a' or 'b' for the shape figures
};

// Delimiter-separated curve data for external plotting. Moment existence
// failures become empty cells with the reason in the final column.
std::string emit_figure_data(FigureKind which, const FigureGrid& grid = {});

/// Round to two significant figures (the p-value comparison rule).
double round_2sig(double x);

} // namespace bf

#endif
