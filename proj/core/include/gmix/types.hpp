#ifndef GMIX_TYPES_HPP
#define GMIX_TYPES_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmix {

// Structural misuse of the API (dimension mismatch, bad weights, ...).
struct StructuralError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A query that is undefined for the given inputs (h on a non-response
// outcome, truncated density off the response set, ...).
struct InvalidQueryError : std::domain_error {
    using std::domain_error::domain_error;
};

inline constexpr double kMinusInfinity = -std::numeric_limits<double>::infinity();

enum class CensoringMode { Full, Truncated, Censored };

std::string to_string(CensoringMode mode);

/// One candidate parameter value theta, stored as an ordered coordinate
/// tuple. The meaning of each coordinate is model-specific, e.g. (pi, p)
/// for the strata-binomial model or (pi, p_1, ..., p_S) for the survey
/// model.
struct ParameterAtom {
    std::vector<double> coords;

    ParameterAtom() = default;
    explicit ParameterAtom(std::vector<double> c) : coords(std::move(c)) {}
    ParameterAtom(std::initializer_list<double> c) : coords(c) {}

    double operator[](std::size_t i) const { return coords[i]; }
    std::size_t dim() const { return coords.size(); }

    friend bool operator==(const ParameterAtom& a, const ParameterAtom& b) {
        return a.coords == b.coords;
    }
    friend bool operator<(const ParameterAtom& a, const ParameterAtom& b) {
        return a.coords < b.coords;
    }
};

/// Finite set of candidate atoms with a fixed iteration order.
class ParameterGrid {
  public:
    explicit ParameterGrid(std::vector<ParameterAtom> atoms);

    const std::vector<ParameterAtom>& atoms() const { return atoms_; }
    const ParameterAtom& atom(std::size_t j) const { return atoms_[j]; }
    std::size_t size() const { return atoms_.size(); }

  private:
    std::vector<ParameterAtom> atoms_;
};

using GridPtr = std::shared_ptr<const ParameterGrid>;

/// Probability weights over a ParameterGrid; the object G (and its
/// estimates G-hat).
class MixingDistribution {
  public:
    MixingDistribution(GridPtr grid, std::vector<double> weights);

    /// Uniform weights over the grid.
    static MixingDistribution uniform(GridPtr grid);

    const ParameterGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    const std::vector<double>& weights() const { return weights_; }
    double weight(std::size_t j) const { return weights_[j]; }
    std::size_t size() const { return weights_.size(); }

  private:
    GridPtr grid_;
    std::vector<double> weights_;
};

enum class OutcomeKind : std::uint8_t {
    Observed,
    NonResponse,
    // Lump outcome holding the truncated Poisson tail mass; never observed
    // with value detail, never in A.
    Overflow,
};

/// One observable value y. Observed outcomes carry up to two integer
/// components whose meaning is model-specific: (X, kappa_obs) for the
/// binomial-type models, (category s, attempt k) for the survey model,
/// (y) for Bernoulli.
struct Outcome {
    OutcomeKind kind = OutcomeKind::NonResponse;
    std::array<int, 2> v{0, 0};

    static Outcome observed(int a, int b = 0) {
        return Outcome{OutcomeKind::Observed, {a, b}};
    }
    static Outcome non_response() { return Outcome{OutcomeKind::NonResponse, {0, 0}}; }
    static Outcome overflow() { return Outcome{OutcomeKind::Overflow, {0, 0}}; }

    bool is_observed() const { return kind == OutcomeKind::Observed; }

    friend bool operator==(const Outcome& a, const Outcome& b) {
        return a.kind == b.kind && a.v == b.v;
    }
    friend bool operator<(const Outcome& a, const Outcome& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.v < b.v;
    }
};

std::string to_string(const Outcome& y);

/// Deduplicated observations: distinct outcomes with multiplicities.
class ObservationSet {
  public:
    using Entry = std::pair<Outcome, long>;

    explicit ObservationSet(std::vector<Entry> entries);

    /// Deduplicates raw draws; entries are ordered canonically (sorted by
    /// outcome) so the result is reproducible regardless of input order.
    static ObservationSet from_draws(const std::vector<Outcome>& draws);

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t n_rows() const { return entries_.size(); }
    long n() const { return n_; }

  private:
    std::vector<Entry> entries_;
    long n_ = 0;
};

/// Dense per-(outcome row, grid atom) component densities under the
/// active censoring mode. Row order follows an ObservationSet.
class LikelihoodMatrix {
  public:
    LikelihoodMatrix(std::size_t rows, std::size_t cols, CensoringMode mode);

    double& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const double* row(std::size_t i) const { return data_.data() + i * cols_; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    CensoringMode mode() const { return mode_; }

    /// Rejects non-finite or negative entries and all-zero rows.
    void validate() const;

  private:
    std::size_t rows_, cols_;
    CensoringMode mode_;
    std::vector<double> data_;
};

}  // namespace gmix

#endif  // GMIX_TYPES_HPP
