#include "hnf/regression.hpp"

#include <cmath>

namespace hnf {

double FitResult::coeff_of(const std::string& feature_name) const {
    for (std::size_t i = 0; i < features.size(); ++i)
        if (features[i].name() == feature_name) return coeffs(static_cast<long>(i));
    throw std::invalid_argument("no feature named " + feature_name);
}

bool FitResult::in_support(const std::string& feature_name) const {
    for (int i : support)
        if (features[i].name() == feature_name) return true;
    return false;
}

namespace {

Eigen::VectorXd to_vec(std::span<const double> v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<long>(v.size()));
}

double mse_of(const Eigen::MatrixXd& Phi, const Eigen::VectorXd& y,
              const Eigen::VectorXd& c) {
    return (y - Phi * c).squaredNorm() / static_cast<double>(y.size());
}

}  // namespace

FitResult stlsq(const BasisLibrary& lib, std::span<const double> target, double threshold,
                int max_iter) {
    if (static_cast<long>(target.size()) != lib.Phi.rows())
        throw std::invalid_argument("stlsq: target length != library rows");
    if (lib.Phi.rows() < lib.Phi.cols())
        throw std::invalid_argument("stlsq: need at least as many samples as features");
    const Eigen::VectorXd y = to_vec(target);
    const int k = lib.cols();

    FitResult fit;
    fit.features = lib.features;
    fit.threshold = threshold;
    fit.coeffs = Eigen::VectorXd::Zero(k);

    std::vector<int> active(k);
    for (int i = 0; i < k; ++i) active[i] = i;

    for (int iter = 0; iter < max_iter; ++iter) {
        if (active.empty()) break;
        Eigen::MatrixXd sub(lib.Phi.rows(), active.size());
        for (std::size_t j = 0; j < active.size(); ++j) sub.col(j) = lib.Phi.col(active[j]);

        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(sub);
        if (cod.rank() < static_cast<long>(active.size())) fit.rank_warning = true;
        const Eigen::VectorXd c = cod.solve(y);

        std::vector<int> keep;
        for (std::size_t j = 0; j < active.size(); ++j)
            if (std::abs(c(static_cast<long>(j))) >= threshold) keep.push_back(active[j]);

        fit.coeffs.setZero();
        for (std::size_t j = 0; j < active.size(); ++j)
            fit.coeffs(active[j]) = c(static_cast<long>(j));

        if (keep.size() == active.size()) break;  // fixed point
        active = keep;
        if (active.empty()) {
            fit.coeffs.setZero();
            break;
        }
        // refit on the reduced set before the next threshold pass
        if (iter == max_iter - 1) break;
    }
    // final hard zeroing outside the support
    fit.support.clear();
    for (int i = 0; i < k; ++i) {
        if (std::abs(fit.coeffs(i)) >= threshold)
            fit.support.push_back(i);
        else
            fit.coeffs(i) = 0.0;
    }
    // one clean refit on the final support
    if (!fit.support.empty()) {
        Eigen::MatrixXd sub(lib.Phi.rows(), fit.support.size());
        for (std::size_t j = 0; j < fit.support.size(); ++j)
            sub.col(j) = lib.Phi.col(fit.support[j]);
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(sub);
        const Eigen::VectorXd c = cod.solve(y);
        fit.coeffs.setZero();
        for (std::size_t j = 0; j < fit.support.size(); ++j)
            fit.coeffs(fit.support[j]) = c(static_cast<long>(j));
    }
    fit.mse = mse_of(lib.Phi, y, fit.coeffs);
    return fit;
}

namespace {

struct StandardizedProblem {
    Eigen::MatrixXd G;      // X~^T X~ / N on standardized, centered columns
    Eigen::VectorXd b;      // X~^T y~ / N
    Eigen::VectorXd mean, std;
    std::vector<int> cols;  // library columns behind each standardized column
    double y_mean = 0.0;
    double yy = 0.0;        // ||y~||^2 / N
    long N = 0;
    int intercept_col = -1;  // library index of the constant column, if any
};

StandardizedProblem standardize(const BasisLibrary& lib, const Eigen::VectorXd& y) {
    StandardizedProblem sp;
    sp.N = lib.Phi.rows();
    const int k = lib.cols();
    const double n = static_cast<double>(sp.N);

    Eigen::VectorXd mean = lib.Phi.colwise().mean();
    Eigen::VectorXd var(k);
    for (int j = 0; j < k; ++j)
        var(j) = lib.Phi.col(j).squaredNorm() / n - mean(j) * mean(j);

    for (int j = 0; j < k; ++j) {
        if (lib.features[j].kind == FeatureDescriptor::Kind::Constant || var(j) <= 1e-14) {
            if (sp.intercept_col < 0) sp.intercept_col = j;
            continue;
        }
        sp.cols.push_back(j);
    }
    const int m = static_cast<int>(sp.cols.size());
    sp.mean.resize(m);
    sp.std.resize(m);
    Eigen::MatrixXd X(sp.N, m);
    for (int j = 0; j < m; ++j) {
        sp.mean(j) = mean(sp.cols[j]);
        sp.std(j) = std::sqrt(var(sp.cols[j]));
        X.col(j) = (lib.Phi.col(sp.cols[j]).array() - sp.mean(j)) / sp.std(j);
    }
    sp.y_mean = y.mean();
    const Eigen::VectorXd yc = y.array() - sp.y_mean;
    sp.G = X.transpose() * X / n;
    sp.b = X.transpose() * yc / n;
    sp.yy = yc.squaredNorm() / n;
    return sp;
}

// covariance-form coordinate descent; returns standardized coefficients
Eigen::VectorXd cd_lasso(const StandardizedProblem& sp, double penalty, double gap_tol,
                         int max_iter, bool& converged) {
    const int m = static_cast<int>(sp.cols.size());
    Eigen::VectorXd c = Eigen::VectorXd::Zero(m);
    Eigen::VectorXd grad = sp.b;  // b - G c
    converged = false;

    auto soft = [](double x, double s) {
        if (x > s) return x - s;
        if (x < -s) return x + s;
        return 0.0;
    };

    for (int iter = 0; iter < max_iter; ++iter) {
        double max_delta = 0.0;
        for (int j = 0; j < m; ++j) {
            const double gjj = sp.G(j, j);
            if (gjj <= 0.0) continue;
            const double cj_old = c(j);
            const double rho = grad(j) + gjj * cj_old;
            const double cj = soft(rho, penalty) / gjj;
            if (cj != cj_old) {
                grad -= sp.G.col(j) * (cj - cj_old);
                c(j) = cj;
                max_delta = std::max(max_delta, std::abs(cj - cj_old));
            }
        }
        if (iter % 8 == 0 || max_delta == 0.0) {
            // duality gap for (1/2N)||y - Xc||^2 + pen ||c||_1
            const double cGc = c.dot(sp.G * c);
            const double primal =
                0.5 * (sp.yy - 2.0 * c.dot(sp.b) + cGc) + penalty * c.lpNorm<1>();
            const double grad_inf = grad.lpNorm<Eigen::Infinity>();
            const double scale = grad_inf > penalty ? penalty / grad_inf : 1.0;
            // dual point: scaled residual
            const double rr = sp.yy - 2.0 * c.dot(sp.b) + cGc;      // ||r||^2/N
            const double ry = sp.yy - c.dot(sp.b);                  // <r, y~>/N
            const double dual = scale * ry - 0.5 * scale * scale * rr;
            if (primal - dual <= gap_tol * std::max(1.0, primal)) {
                converged = true;
                return c;
            }
        }
    }
    return c;
}

FitResult finish_lasso(const BasisLibrary& lib, const Eigen::VectorXd& y,
                       const StandardizedProblem& sp, const Eigen::VectorXd& cstd,
                       double penalty, bool debias, bool converged) {
    const int k = lib.cols();
    FitResult fit;
    fit.features = lib.features;
    fit.penalty = penalty;
    fit.rank_warning = !converged;
    fit.coeffs = Eigen::VectorXd::Zero(k);

    double intercept = sp.y_mean;
    for (int j = 0; j < static_cast<int>(sp.cols.size()); ++j) {
        const double cj = cstd(j) / sp.std(j);
        fit.coeffs(sp.cols[j]) = cj;
        intercept -= cj * sp.mean(j);
    }
    if (sp.intercept_col >= 0) fit.coeffs(sp.intercept_col) = intercept;

    for (int i = 0; i < k; ++i)
        if (fit.coeffs(i) != 0.0) fit.support.push_back(i);

    if (debias && !fit.support.empty()) {
        Eigen::MatrixXd sub(lib.Phi.rows(), fit.support.size());
        for (std::size_t j = 0; j < fit.support.size(); ++j)
            sub.col(j) = lib.Phi.col(fit.support[j]);
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(sub);
        const Eigen::VectorXd c = cod.solve(y);
        fit.coeffs.setZero();
        for (std::size_t j = 0; j < fit.support.size(); ++j)
            fit.coeffs(fit.support[j]) = c(static_cast<long>(j));
    }
    fit.mse = mse_of(lib.Phi, y, fit.coeffs);
    return fit;
}

}  // namespace

FitResult lasso(const BasisLibrary& lib, std::span<const double> target, double penalty,
                bool debias, double gap_tol, int max_iter) {
    if (static_cast<long>(target.size()) != lib.Phi.rows())
        throw std::invalid_argument("lasso: target length != library rows");
    const Eigen::VectorXd y = to_vec(target);
    const StandardizedProblem sp = standardize(lib, y);
    bool converged = false;
    const Eigen::VectorXd cstd = cd_lasso(sp, penalty, gap_tol, max_iter, converged);
    if (!converged)
        throw std::runtime_error("lasso: coordinate descent did not reach the gap tolerance");
    return finish_lasso(lib, y, sp, cstd, penalty, debias, converged);
}

FitResult lasso_auto(const BasisLibrary& lib, std::span<const double> target,
                     double mse_factor, int path_points, bool debias,
                     bool relative_to_explainable) {
    if (static_cast<long>(target.size()) != lib.Phi.rows())
        throw std::invalid_argument("lasso_auto: target length != library rows");
    const Eigen::VectorXd y = to_vec(target);
    const StandardizedProblem sp = standardize(lib, y);

    // unpenalized reference: least squares on all columns
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(lib.Phi);
    const Eigen::VectorXd c_ls = cod.solve(y);
    const double mse_best = mse_of(lib.Phi, y, c_ls);

    double mse_cut = mse_factor * mse_best;
    if (relative_to_explainable) {
        // baseline: constant + drift columns only
        std::vector<int> base;
        for (int j = 0; j < lib.cols(); ++j)
            if (lib.features[j].kind == FeatureDescriptor::Kind::Constant ||
                lib.features[j].kind == FeatureDescriptor::Kind::Drift)
                base.push_back(j);
        double mse_base = sp.yy + sp.y_mean * 0.0;  // variance if no baseline columns
        {
            Eigen::MatrixXd sub(lib.Phi.rows(), base.empty() ? 1 : base.size());
            if (base.empty())
                sub.setOnes();
            else
                for (std::size_t j = 0; j < base.size(); ++j)
                    sub.col(static_cast<long>(j)) = lib.Phi.col(base[j]);
            Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> bcod(sub);
            mse_base = (y - sub * bcod.solve(y)).squaredNorm() /
                       static_cast<double>(y.size());
        }
        mse_cut = mse_best + (mse_factor - 1.0) * std::max(0.0, mse_base - mse_best);
    }

    const double pen_max = sp.b.lpNorm<Eigen::Infinity>();  // all-zero above this
    const double pen_min = pen_max * 1e-6;

    FitResult chosen;
    bool found = false;
    for (int i = 0; i < path_points; ++i) {
        const double pen =
            pen_max * std::pow(pen_min / pen_max,
                               static_cast<double>(i) / (path_points - 1));
        bool converged = false;
        const Eigen::VectorXd cstd = cd_lasso(sp, pen, 1e-8, 200000, converged);
        FitResult fit = finish_lasso(lib, y, sp, cstd, pen, debias, converged);
        if (fit.mse <= mse_cut) {
            chosen = std::move(fit);  // largest penalty passing the rule
            found = true;
            break;
        }
    }
    if (!found) {
        bool converged = false;
        const Eigen::VectorXd cstd = cd_lasso(sp, pen_min, 1e-8, 200000, converged);
        chosen = finish_lasso(lib, y, sp, cstd, pen_min, debias, converged);
    }
    return chosen;
}

std::vector<TripletAmplitude> triplet_amplitudes(const FitResult& fit) {
    std::vector<TripletAmplitude> out;
    for (std::size_t i = 0; i < fit.features.size(); ++i) {
        const auto& f = fit.features[i];
        if (f.kind != FeatureDescriptor::Kind::Sin) continue;
        double c = fit.coeffs(static_cast<long>(i));
        double d = 0.0;
        for (std::size_t j = 0; j < fit.features.size(); ++j)
            if (fit.features[j].kind == FeatureDescriptor::Kind::Cos &&
                fit.features[j].same_phase(f))
                d = fit.coeffs(static_cast<long>(j));
        TripletAmplitude ta;
        ta.combo = f.combo;
        ta.harmonic = f.harmonic;
        ta.amplitude = std::hypot(c, d);
        out.push_back(std::move(ta));
    }
    return out;
}

}  // namespace hnf
