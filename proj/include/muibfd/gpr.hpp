#pragma once

#include <cstddef>
#include <string>
#include <memory>
#include <vector>

namespace muibfd {

/// Scattered samples in 1, 2 or 3 dimensions. coords is row-major n x dim;
/// values holds one scalar per point (interpolation runs in the dB domain).
struct SampleSet {
    int dim = 3;
    std::vector<double> coords;
    std::vector<double> values;
    std::string unit = "dBm";

    std::size_t size() const { return values.size(); }
    const double* point(std::size_t i) const { return coords.data() + static_cast<std::size_t>(dim) * i; }
};

/// Squared-exponential kernel hyperparameters with per-axis length scales:
/// k(a, b) = signal_var * exp(-1/2 * sum(((a_i - b_i) / length_scales[i])^2)).
struct GprHyperparams {
    std::vector<double> length_scales; // meters, one per axis
    double signal_var = 1.0;           // (unit)^2
    double noise_var = 0.0;            // (unit)^2
    double prior_mean = 0.0;           // unit
    bool degenerate = false;           // set by fit_hyperparams on constant data
};

struct GprPrediction {
    std::vector<double> mean;
    std::vector<double> variance;
};

/// Fitted model: holds the training set, the Cholesky factor of K + noise*I
/// and the precomputed weight vector. Immutable once built; predictions from
/// several threads are safe.
class GprModel {
public:
    const GprHyperparams& hyperparams() const { return hyper_; }
    std::size_t training_size() const { return n_; }
    int dim() const { return dim_; }
    /// Diagonal jitter that had to be added for a stable factorization (0 in
    /// the normal case).
    double jitter() const { return jitter_; }
    /// Max relative elementwise deviation of L*L^T from K + noise*I.
    double factorization_residual() const { return residual_; }

    friend GprModel fit(const SampleSet&, const GprHyperparams&);
    friend GprPrediction predict(const GprModel&, const SampleSet&);

private:
    GprHyperparams hyper_;
    int dim_ = 0;
    std::size_t n_ = 0;
    std::vector<double> coords_;
    std::vector<double> chol_;  // lower-triangular factor, row-major n x n
    std::vector<double> alpha_; // (K + noise I)^-1 (y - prior_mean)
    double jitter_ = 0.0;
    double residual_ = 0.0;
    double log_marginal_ = 0.0;

    friend double log_marginal_likelihood(const GprModel&);
};

inline constexpr std::size_t kGprMaxSamples = 2000;

/// Builds the dense kernel system and factorizes it. On a factorization
/// failure the diagonal jitter escalates through 1e-8, 1e-7 and 1e-6 times
/// signal_var (three attempts); if none succeeds, throws conditioning_error.
/// Exactly duplicated points with conflicting values and zero noise are a
/// conditioning_error up front (the system is singular by construction).
GprModel fit(const SampleSet& samples, const GprHyperparams& hyperparams);

/// Posterior mean and variance at the query points (only coords/dim of the
/// query SampleSet are used). Variances are clamped at zero against round-off.
GprPrediction predict(const GprModel& model, const SampleSet& query);

double log_marginal_likelihood(const GprModel& model);

/// Grid search maximizing the log marginal likelihood over a fixed
/// logarithmic grid: length scales 5..500 m (8 steps per axis), noise
/// variance 0.01..10 (6 steps). signal_var is set to the sample variance and
/// prior_mean to the sample mean. Ties break toward the smallest length
/// scales, then the smallest noise. Needs at least 4 samples.
/// Constant-valued samples return flat-prior hyperparameters with the
/// degenerate flag set instead of searching.
GprHyperparams fit_hyperparams(const SampleSet& samples);

} // namespace muibfd
