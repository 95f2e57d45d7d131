#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hypcc/chart.hpp"
#include "hypcc/model.hpp"
#include "hypcc/numeric.hpp"

namespace hypcc::verify {

/// Explicit constants of the bilipschitz comparisons, all derived from the
/// hyperbolicity constant delta = 2 ln((1+sqrt 5)/2) of the hyperbolic plane.
struct PaperConstants {
    double delta = 0.0;
    double c1 = 0.0;        // 2 e^{-(1+delta)}
    double c2 = 0.0;        // sqrt(17 sinh delta)
    double c3 = 0.0;        // ln(sinh(2+3 delta)/2)
    double c2_prime = 0.0;  // c2 e^{c3}
    double diameter = kInf; // measured boundary diameter (spherical metric)

    double c2_double_prime() const;
    static PaperConstants standard();
};

enum class ModelId { RealH2, RealH3, ComplexH2 };
enum class Format { Csv, Json };

ModelId parse_model(const std::string& name);          // throws ConfigError
Format parse_format(const std::string& name);          // throws ConfigError
std::string model_name(ModelId id);

struct VerifyConfig {
    ModelId model = ModelId::ComplexH2;
    std::string suite = "all";  // thm1 | thm2 | lemmas | axioms | all
    int samples = 100;
    std::uint64_t seed = 1;
    std::vector<std::pair<std::string, double>> tolerances;
    std::string output;  // empty writes to stdout
    Format format = Format::Csv;

    double tolerance(const std::string& name, double fallback) const;
};

/// One sampled configuration: the checked scalar with its effective bounds
/// (tolerances already folded in), recomputable from the stored fields alone.
struct BoundCheckRecord {
    std::string suite;
    int index = 0;
    std::vector<std::pair<std::string, double>> inputs;
    std::vector<std::pair<std::string, double>> quantities;
    double ratio = 0.0;
    double lower = -kInf;
    double upper = kInf;
    bool pass = false;
    bool soft_failure = false;  // solver non-convergence; excluded from bound stats
    bool antecedent = true;     // implication checks pass vacuously when false
    std::string note;

    /// pass recomputed from the stored fields.
    bool recompute_pass() const {
        if (soft_failure) return true;
        if (!antecedent) return true;
        return ratio >= lower && ratio <= upper;
    }
    void finalize() { pass = recompute_pass(); }
};

struct SuiteSummary {
    std::string suite;
    int total = 0;
    int passed = 0;
    int hard_failures = 0;
    int soft_failures = 0;
    double min_ratio = kInf;
    double max_ratio = -kInf;
};

struct RunResult {
    std::vector<BoundCheckRecord> records;
    std::vector<SuiteSummary> summaries;
    PaperConstants constants;
    bool hard_failure() const;
};

/// Fixed ambient scene for one model: base point o and the reference boundary
/// chart (center omega_0, basepoint o) all suites sample through.
struct Scene {
    model::ModelSpace space;
    model::ProjectivePoint origin;
    corr::BoundaryChart boundary;

    static Scene make(ModelId id);
};

/// Deterministic boundary/interior sampling for a scene.
class Sampler {
public:
    Sampler(const Scene& scene, std::uint64_t seed) : scene_(scene), rng_(seed) {}

    Rng& rng() { return rng_; }
    /// Boundary point; for the complex model from Heisenberg coordinates with
    /// z uniform on a disk of radius R and t uniform on [-R^2, R^2].
    model::IdealPoint ideal(double R);
    /// Pair with bounded separation; occasionally a dilation-orbit pair.
    std::pair<model::IdealPoint, model::IdealPoint> separated_pair(int index);
    /// Pair biased toward small spherical distance (near-diagonal regime).
    std::pair<model::IdealPoint, model::IdealPoint> near_pair();
    /// Interior point at bounded distance from the origin.
    model::ProjectivePoint interior(double radius);
    heis::HeisPoint heis_point(double R);

private:
    const Scene& scene_;
    Rng rng_;
};

// ---- individual checks -------------------------------------------------------

BoundCheckRecord check_thm1(const Scene& scene, const model::IdealPoint& xi,
                            const model::IdealPoint& eta, const PaperConstants& c,
                            double tol);

BoundCheckRecord check_thm2(const Scene& scene, const model::IdealPoint& xi,
                            const model::IdealPoint& eta, const PaperConstants& c,
                            double tol, int resolution);

/// Sub-records for the Gromov-product gap, the small-distance implication and
/// the intermediate spherical bound, with omega opposite xi with respect to o.
std::array<BoundCheckRecord, 3> check_lemma_chain(const Scene& scene,
                                                  const model::IdealPoint& xi,
                                                  const model::IdealPoint& eta,
                                                  const PaperConstants& c, double tol,
                                                  int resolution);

/// Max of the spherical distance over a pair sample, plus a 5% margin.
double measure_boundary_diameter(const Scene& scene, int pairs, std::uint64_t seed,
                                 int resolution);

RunResult run_suite(const VerifyConfig& config);

// ---- reports -------------------------------------------------------------------

std::string format_double(double v);  // 17 significant digits
void write_report(const RunResult& result, const VerifyConfig& config, std::ostream& os);

} // namespace hypcc::verify
