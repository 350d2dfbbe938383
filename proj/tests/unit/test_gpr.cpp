#include <doctest.h>

#include "muibfd/errors.hpp"
#include "muibfd/gpr.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace muibfd;

namespace {

double kernel_ref(const GprHyperparams& h, int dim, const double* a, const double* b) {
    double q = 0.0;
    for (int k = 0; k < dim; ++k) {
        const double d = (a[k] - b[k]) / h.length_scales[k];
        q += d * d;
    }
    return h.signal_var * std::exp(-0.5 * q);
}

/// Independent dense oracle: Gauss-Jordan elimination in long double for
/// mean = k*' (K + sn I)^-1 (y - prior) and var = sf - k*' (K + sn I)^-1 k*.
struct DenseOracle {
    int dim;
    GprHyperparams h;
    std::vector<double> coords;
    std::vector<double> values;
    std::vector<std::vector<long double>> inv;

    DenseOracle(const SampleSet& s, const GprHyperparams& hyper) : dim(s.dim), h(hyper) {
        coords = s.coords;
        values = s.values;
        const std::size_t n = s.size();
        std::vector<std::vector<long double>> a(n, std::vector<long double>(2 * n, 0.0L));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j)
                a[i][j] = kernel_ref(h, dim, s.point(i), s.point(j));
            a[i][i] += h.noise_var;
            a[i][n + i] = 1.0L;
        }
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t pivot = col;
            for (std::size_t r = col + 1; r < n; ++r)
                if (std::fabs(static_cast<double>(a[r][col])) >
                    std::fabs(static_cast<double>(a[pivot][col])))
                    pivot = r;
            std::swap(a[col], a[pivot]);
            const long double d = a[col][col];
            for (std::size_t c = 0; c < 2 * n; ++c) a[col][c] /= d;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == col) continue;
                const long double f = a[r][col];
                for (std::size_t c = 0; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
            }
        }
        inv.assign(n, std::vector<long double>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    }

    std::pair<double, double> predict(const double* q) const {
        const std::size_t n = values.size();
        std::vector<long double> ks(n);
        for (std::size_t i = 0; i < n; ++i)
            ks[i] = kernel_ref(h, dim, q, coords.data() + i * dim);
        long double mean = h.prior_mean;
        for (std::size_t i = 0; i < n; ++i) {
            long double w = 0.0L;
            for (std::size_t j = 0; j < n; ++j)
                w += inv[i][j] * (values[j] - h.prior_mean);
            mean += ks[i] * w;
        }
        long double quad = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            long double w = 0.0L;
            for (std::size_t j = 0; j < n; ++j) w += inv[i][j] * ks[j];
            quad += ks[i] * w;
        }
        return {static_cast<double>(mean), static_cast<double>(h.signal_var - quad)};
    }
};

GprHyperparams hyper_1d(double len, double sig, double noise, double prior = 0.0) {
    GprHyperparams h;
    h.length_scales = {len};
    h.signal_var = sig;
    h.noise_var = noise;
    h.prior_mean = prior;
    return h;
}

} // namespace

TEST_CASE("single sample with zero noise interpolates exactly") {
    SampleSet s;
    s.dim = 1;
    s.coords = {12.5};
    s.values = {-84.2};
    const GprModel m = fit(s, hyper_1d(50.0, 4.0, 0.0));
    const GprPrediction p = predict(m, s);
    CHECK(p.mean[0] == doctest::Approx(-84.2).epsilon(1e-12));
    CHECK(p.variance[0] >= 0.0);
    CHECK(p.variance[0] < 1e-9);
}

TEST_CASE("conflicting duplicates at zero noise are a conditioning error") {
    SampleSet s;
    s.dim = 1;
    s.coords = {10.0, 10.0};
    s.values = {-80.0, -70.0};
    CHECK_THROWS_AS(fit(s, hyper_1d(50.0, 4.0, 0.0)), conditioning_error);
}

TEST_CASE("three-point posterior matches the dense oracle") {
    SampleSet s;
    s.dim = 1;
    s.coords = {0.0, 40.0, 90.0};
    s.values = {-92.0, -85.5, -88.0};
    const GprHyperparams h = hyper_1d(35.0, 9.0, 0.01, -90.0);
    const GprModel m = fit(s, h);
    const DenseOracle oracle(s, h);

    SampleSet q;
    q.dim = 1;
    q.coords = {20.0};
    q.values = {0.0};
    const GprPrediction p = predict(m, q);
    const auto [om, ov] = oracle.predict(q.coords.data());
    CHECK(std::abs(p.mean[0] - om) <= 1e-9 * std::max(1.0, std::abs(om)));
    CHECK(std::abs(p.variance[0] - ov) <= 1e-9 * std::max(1.0, std::abs(ov)));
}

TEST_CASE("training points are reproduced and far queries fall back to the prior") {
    SampleSet s;
    s.dim = 1;
    s.coords = {0.0, 25.0, 60.0, 110.0};
    s.values = {-90.0, -84.0, -88.0, -95.0};
    const GprHyperparams h = hyper_1d(40.0, 16.0, 0.0, -90.0);
    const GprModel m = fit(s, h);

    SUBCASE("interpolation property at zero noise") {
        const GprPrediction p = predict(m, s);
        for (std::size_t i = 0; i < s.size(); ++i) {
            CHECK(std::abs(p.mean[i] - s.values[i]) <= 1e-9 * std::abs(s.values[i]));
            CHECK(p.variance[i] <= 1e-6); // sigma_n^2 + tolerance
        }
    }

    SUBCASE("ten length scales away the prior takes over") {
        SampleSet q;
        q.dim = 1;
        q.coords = {110.0 + 10.0 * 40.0};
        q.values = {0.0};
        const GprPrediction p = predict(m, q);
        CHECK(p.mean[0] == doctest::Approx(-90.0).epsilon(1e-6));
        CHECK(p.variance[0] == doctest::Approx(16.0).epsilon(1e-6));
    }
}

TEST_CASE("dense transect resampling matches the oracle pointwise") {
    // A measurement-like 1-D transect, resampled on a fine grid.
    std::mt19937_64 rng(2023);
    std::uniform_real_distribution<double> jitter(-3.0, 3.0);
    SampleSet s;
    s.dim = 1;
    for (int i = 0; i < 18; ++i) {
        const double x = 30.0 * i + jitter(rng);
        s.coords.push_back(x);
        s.values.push_back(-85.0 + 8.0 * std::sin(x / 90.0) + 0.5 * jitter(rng));
    }
    const GprHyperparams h = hyper_1d(60.0, 25.0, 0.25, -85.0);
    const GprModel m = fit(s, h);
    const DenseOracle oracle(s, h);

    SampleSet q;
    q.dim = 1;
    for (double x = 0.0; x <= 510.0; x += 5.0) q.coords.push_back(x);
    q.values.assign(q.coords.size(), 0.0);
    const GprPrediction p = predict(m, q);
    for (std::size_t i = 0; i < q.coords.size(); ++i) {
        const auto [om, ov] = oracle.predict(&q.coords[i]);
        CHECK(std::abs(p.mean[i] - om) <= 1e-9 * std::max(1.0, std::abs(om)));
        CHECK(std::abs(p.variance[i] - ov) <= 1e-9 * std::max(1.0, std::abs(ov)));
    }
}

TEST_CASE("kernel matrices stay positive semi-definite") {
    std::mt19937_64 rng(555);
    std::uniform_real_distribution<double> coord(-500.0, 500.0);
    std::uniform_int_distribution<int> count(2, 50);
    for (int rep = 0; rep < 10; ++rep) {
        const int n = count(rng);
        GprHyperparams h;
        h.length_scales = {80.0, 120.0};
        h.signal_var = 9.0;
        h.noise_var = 0.0;
        Eigen::MatrixXd k(n, n);
        std::vector<double> pts(2 * n);
        for (double& v : pts) v = coord(rng);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                k(i, j) = kernel_ref(h, 2, &pts[2 * i], &pts[2 * j]);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
        CHECK(es.eigenvalues().minCoeff() >= -1e-8 * h.signal_var);
    }
}

TEST_CASE("predictions are linear in the training values") {
    std::mt19937_64 rng(808);
    std::uniform_real_distribution<double> coord(0.0, 300.0), val(-10.0, 10.0);
    SampleSet a, b;
    a.dim = b.dim = 1;
    for (int i = 0; i < 12; ++i) {
        const double x = coord(rng);
        a.coords.push_back(x);
        b.coords.push_back(x);
        a.values.push_back(val(rng));
        b.values.push_back(val(rng));
    }
    SampleSet sum = a;
    for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += b.values[i];

    const GprHyperparams h = hyper_1d(70.0, 4.0, 0.1, 0.0);
    SampleSet q;
    q.dim = 1;
    q.coords = {15.0, 150.0, 280.0};
    q.values = {0, 0, 0};

    const GprPrediction pa = predict(fit(a, h), q);
    const GprPrediction pb = predict(fit(b, h), q);
    const GprPrediction ps = predict(fit(sum, h), q);
    for (std::size_t i = 0; i < q.coords.size(); ++i)
        CHECK(std::abs(ps.mean[i] - (pa.mean[i] + pb.mean[i])) < 1e-9);
}

TEST_CASE("permuting the samples leaves predictions unchanged") {
    SampleSet s;
    s.dim = 2;
    s.coords = {0, 0, 50, 10, 120, -40, 200, 25, 260, 5};
    s.values = {-90, -86, -88, -92, -85};
    SampleSet rev;
    rev.dim = 2;
    for (int i = 4; i >= 0; --i) {
        rev.coords.push_back(s.coords[2 * i]);
        rev.coords.push_back(s.coords[2 * i + 1]);
        rev.values.push_back(s.values[i]);
    }
    GprHyperparams h;
    h.length_scales = {90.0, 60.0};
    h.signal_var = 8.0;
    h.noise_var = 0.05;
    h.prior_mean = -88.0;

    SampleSet q;
    q.dim = 2;
    q.coords = {80.0, 0.0, 190.0, 15.0};
    q.values = {0, 0};
    const GprPrediction p1 = predict(fit(s, h), q);
    const GprPrediction p2 = predict(fit(rev, h), q);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(std::abs(p1.mean[i] - p2.mean[i]) < 1e-9);
        CHECK(std::abs(p1.variance[i] - p2.variance[i]) < 1e-9);
    }
}

TEST_CASE("hyperparameter grid search") {
    SUBCASE("recovers a known length scale within one grid step") {
        // Synthesize from a GP with l = 100 m via a seeded Cholesky draw.
        const int n = 40;
        GprHyperparams truth = hyper_1d(100.0, 9.0, 0.01);
        SampleSet s;
        s.dim = 1;
        for (int i = 0; i < n; ++i) s.coords.push_back(25.0 * i);
        Eigen::MatrixXd k(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                k(i, j) = kernel_ref(truth, 1, &s.coords[i], &s.coords[j]);
        k.diagonal().array() += truth.noise_var;
        const Eigen::MatrixXd l = k.llt().matrixL();
        std::mt19937_64 rng(31415);
        std::normal_distribution<double> z(0.0, 1.0);
        Eigen::VectorXd draw(n);
        for (int i = 0; i < n; ++i) draw(i) = z(rng);
        const Eigen::VectorXd y = l * draw;
        for (int i = 0; i < n; ++i) s.values.push_back(y(i));

        const GprHyperparams fitted = fit_hyperparams(s);
        // one step on the 8-point log grid from 5 to 500 m
        const double grid_ratio = std::pow(100.0, 1.0 / 7.0);
        CHECK(std::abs(std::log(fitted.length_scales[0] / 100.0)) <=
              std::log(grid_ratio) + 1e-9);
        CHECK_FALSE(fitted.degenerate);
    }

    SUBCASE("constant samples are flagged degenerate") {
        SampleSet s;
        s.dim = 1;
        s.coords = {0.0, 10.0, 20.0, 30.0};
        s.values = {-90.0, -90.0, -90.0, -90.0};
        const GprHyperparams h = fit_hyperparams(s);
        CHECK(h.degenerate);
        const GprPrediction p = predict(fit(s, h), s);
        for (double m : p.mean) CHECK(m == doctest::Approx(-90.0).epsilon(1e-12));
    }

    SUBCASE("rerunning gives an identical result") {
        std::mt19937_64 rng(99);
        std::uniform_real_distribution<double> coord(0.0, 400.0), val(-95.0, -80.0);
        SampleSet s;
        s.dim = 1;
        for (int i = 0; i < 10; ++i) {
            s.coords.push_back(coord(rng));
            s.values.push_back(val(rng));
        }
        const GprHyperparams a = fit_hyperparams(s);
        const GprHyperparams b = fit_hyperparams(s);
        CHECK(a.length_scales == b.length_scales);
        CHECK(a.signal_var == b.signal_var);
        CHECK(a.noise_var == b.noise_var);
        CHECK(a.prior_mean == b.prior_mean);
    }

    SUBCASE("needs at least four samples") {
        SampleSet s;
        s.dim = 1;
        s.coords = {0.0, 1.0, 2.0};
        s.values = {1.0, 2.0, 3.0};
        CHECK_THROWS_AS(fit_hyperparams(s), error);
    }
}

TEST_CASE("stored factorization reproduces the kernel system") {
    std::mt19937_64 rng(246);
    std::uniform_real_distribution<double> coord(0.0, 200.0), val(-9.0, 9.0);
    SampleSet s;
    s.dim = 1;
    for (int i = 0; i < 20; ++i) {
        s.coords.push_back(coord(rng));
        s.values.push_back(val(rng));
    }
    const GprModel m = fit(s, hyper_1d(45.0, 4.0, 0.2));
    CHECK(m.factorization_residual() <= 1e-8);
    CHECK(m.jitter() == 0.0);
}

TEST_CASE("sample cap is an explicit error") {
    SampleSet s;
    s.dim = 1;
    s.coords.assign(2001, 0.0);
    for (int i = 0; i < 2001; ++i) s.coords[i] = i;
    s.values.assign(2001, 1.0);
    CHECK_THROWS_AS(fit(s, hyper_1d(50.0, 1.0, 0.1)), error);
}
