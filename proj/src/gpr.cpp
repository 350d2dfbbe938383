#include "muibfd/gpr.hpp"

#include "muibfd/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace muibfd {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

void check_samples(const SampleSet& s) {
    if (s.dim < 1 || s.dim > 3) throw error("gpr: dim must be 1, 2 or 3");
    if (s.values.empty()) throw error("gpr: need at least one sample");
    if (s.coords.size() != s.values.size() * static_cast<std::size_t>(s.dim))
        throw error("gpr: coords/values length mismatch");
    if (s.size() > kGprMaxSamples)
        throw error("gpr: sample count " + std::to_string(s.size()) + " exceeds the dense-solve cap of " +
                    std::to_string(kGprMaxSamples));
    for (double v : s.values)
        if (!std::isfinite(v)) throw error("gpr: non-finite sample value");
    for (double c : s.coords)
        if (!std::isfinite(c)) throw error("gpr: non-finite sample coordinate");
}

void check_hyper(const GprHyperparams& h, int dim) {
    if (static_cast<int>(h.length_scales.size()) != dim)
        throw error("gpr: expected one length scale per axis");
    for (double l : h.length_scales)
        if (!(l > 0.0)) throw error("gpr: length scales must be > 0");
    if (h.signal_var < 0.0 || h.noise_var < 0.0) throw error("gpr: variances must be >= 0");
}

double kernel(const GprHyperparams& h, int dim, const double* a, const double* b) {
    double q = 0.0;
    for (int k = 0; k < dim; ++k) {
        const double d = (a[k] - b[k]) / h.length_scales[k];
        q += d * d;
    }
    return h.signal_var * std::exp(-0.5 * q);
}

Eigen::MatrixXd kernel_matrix(const GprHyperparams& h, const SampleSet& s) {
    const std::size_t n = s.size();
    Eigen::MatrixXd k(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double v = kernel(h, s.dim, s.point(i), s.point(j));
            k(i, j) = v;
            k(j, i) = v;
        }
    }
    return k;
}

} // namespace

GprModel fit(const SampleSet& samples, const GprHyperparams& hyperparams) {
    check_samples(samples);
    check_hyper(hyperparams, samples.dim);
    const std::size_t n = samples.size();

    // Exact duplicates with conflicting values make K + 0*I singular by
    // construction; report that as conditioning instead of jittering over it.
    if (hyperparams.noise_var == 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                bool same = true;
                for (int k = 0; k < samples.dim; ++k)
                    same = same && samples.point(i)[k] == samples.point(j)[k];
                if (same && samples.values[i] != samples.values[j])
                    throw conditioning_error(
                        "gpr fit: duplicated point with conflicting values and zero noise");
            }
        }
    }

    const Eigen::MatrixXd k = kernel_matrix(hyperparams, samples);
    Eigen::VectorXd y(n);
    for (std::size_t i = 0; i < n; ++i) y(i) = samples.values[i] - hyperparams.prior_mean;

    const double jitters[] = {0.0, 1e-8, 1e-7, 1e-6};
    Eigen::LLT<Eigen::MatrixXd> llt;
    double used_jitter = -1.0;
    for (double scale : jitters) {
        const double j = scale * hyperparams.signal_var;
        Eigen::MatrixXd a = k;
        a.diagonal().array() += hyperparams.noise_var + j;
        llt.compute(a);
        if (llt.info() == Eigen::Success && llt.matrixLLT().diagonal().minCoeff() > 0.0) {
            used_jitter = j;
            break;
        }
    }
    if (used_jitter < 0.0)
        throw conditioning_error("gpr fit: kernel factorization failed after jitter escalation");

    GprModel m;
    m.hyper_ = hyperparams;
    m.dim_ = samples.dim;
    m.n_ = n;
    m.coords_ = samples.coords;
    m.jitter_ = used_jitter;

    const Eigen::MatrixXd l = llt.matrixL();
    m.chol_.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) m.chol_[i * n + j] = l(i, j);

    const Eigen::VectorXd alpha = llt.solve(y);
    m.alpha_.assign(alpha.data(), alpha.data() + n);

    // Reconstruction check of the stored factorization against K + noise*I.
    Eigen::MatrixXd target = k;
    target.diagonal().array() += hyperparams.noise_var + used_jitter;
    const double denom = std::max(target.cwiseAbs().maxCoeff(), 1e-300);
    m.residual_ = ((l * l.transpose()) - target).cwiseAbs().maxCoeff() / denom;

    double log_det_half = 0.0;
    for (std::size_t i = 0; i < n; ++i) log_det_half += std::log(l(i, i));
    m.log_marginal_ = -0.5 * y.dot(alpha) - log_det_half - 0.5 * n * std::log(kTwoPi);
    return m;
}

GprPrediction predict(const GprModel& model, const SampleSet& query) {
    if (model.n_ == 0) throw error("gpr predict: model is not fitted");
    if (query.dim != model.dim_) throw error("gpr predict: query dimension mismatch");
    const std::size_t nq = query.coords.size() / static_cast<std::size_t>(query.dim);
    const std::size_t n = model.n_;

    GprPrediction out;
    out.mean.resize(nq);
    out.variance.resize(nq);

    std::vector<double> kstar(n), v(n);
    for (std::size_t q = 0; q < nq; ++q) {
        const double* qp = query.coords.data() + q * query.dim;
        for (std::size_t i = 0; i < n; ++i)
            kstar[i] = kernel(model.hyper_, model.dim_, qp, model.coords_.data() + i * model.dim_);

        double mean = model.hyper_.prior_mean;
        for (std::size_t i = 0; i < n; ++i) mean += kstar[i] * model.alpha_[i];
        out.mean[q] = mean;

        // Forward-substitute L v = k*; posterior variance is sigma_f^2 - v.v.
        for (std::size_t i = 0; i < n; ++i) {
            double s = kstar[i];
            for (std::size_t j = 0; j < i; ++j) s -= model.chol_[i * n + j] * v[j];
            v[i] = s / model.chol_[i * n + i];
        }
        double var = model.hyper_.signal_var - std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
        if (var < 0.0) var = 0.0; // round-off clamp
        out.variance[q] = var;
    }
    return out;
}

double log_marginal_likelihood(const GprModel& model) { return model.log_marginal_; }

GprHyperparams fit_hyperparams(const SampleSet& samples) {
    check_samples(samples);
    if (samples.size() < 4) throw error("fit_hyperparams: need at least 4 samples");

    const std::size_t n = samples.size();
    const double mean = std::accumulate(samples.values.begin(), samples.values.end(), 0.0) / n;
    double var = 0.0;
    for (double v : samples.values) var += (v - mean) * (v - mean);
    var /= n;

    if (var == 0.0) {
        // Constant data: nothing to learn. Flat prior at the constant.
        GprHyperparams h;
        h.length_scales.assign(samples.dim, 50.0);
        h.signal_var = 0.0;
        h.noise_var = 1e-6;
        h.prior_mean = mean;
        h.degenerate = true;
        return h;
    }

    std::vector<double> length_grid(8), noise_grid(6);
    for (int i = 0; i < 8; ++i) length_grid[i] = 5.0 * std::pow(500.0 / 5.0, i / 7.0);
    for (int i = 0; i < 6; ++i) noise_grid[i] = 0.01 * std::pow(10.0 / 0.01, i / 5.0);

    GprHyperparams best;
    double best_lml = -std::numeric_limits<double>::infinity();
    bool found = false;

    // Lexicographic iteration order realizes the smallest-length-scale,
    // then smallest-noise tie-break: only strict improvements are kept.
    std::vector<int> idx(samples.dim, 0);
    while (true) {
        GprHyperparams h;
        h.length_scales.resize(samples.dim);
        for (int k = 0; k < samples.dim; ++k) h.length_scales[k] = length_grid[idx[k]];
        h.signal_var = var;
        h.prior_mean = mean;
        for (double nv : noise_grid) {
            h.noise_var = nv;
            try {
                const GprModel m = fit(samples, h);
                const double lml = log_marginal_likelihood(m);
                if (!found || lml > best_lml) {
                    found = true;
                    best_lml = lml;
                    best = h;
                }
            } catch (const conditioning_error&) {
                // skip ill-conditioned grid corners
            }
        }
        int k = samples.dim - 1;
        while (k >= 0 && ++idx[k] == 8) idx[k--] = 0;
        if (k < 0) break;
    }

    if (!found) throw conditioning_error("fit_hyperparams: every grid point failed to factorize");
    return best;
}

} // namespace muibfd
