#include "qcorr/nelder_mead.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace qcorr {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& objective,
                             const Eigen::VectorXd& start, const NelderMeadOptions& options) {
    const int n = static_cast<int>(start.size());
    long evaluations = 0;
    auto eval = [&](const Eigen::VectorXd& x) {
        ++evaluations;
        return objective(x);
    };

    NelderMeadResult result;
    if (n == 0) {
        result.x = start;
        result.value = eval(start);
        result.converged = true;
        result.evaluations = evaluations;
        return result;
    }

    std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(n) + 1, start);
    std::vector<double> vals(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i) + 1](i) += options.step;
    for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = eval(pts[i]);

    std::vector<int> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    auto sort_simplex = [&] {
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return vals[static_cast<std::size_t>(a)] <
                                                    vals[static_cast<std::size_t>(b)]; });
    };

    constexpr double alpha = 1.0;  // reflection
    constexpr double gamma = 2.0;  // expansion
    constexpr double beta = 0.5;   // contraction
    constexpr double delta = 0.5;  // shrink

    int iter = 0;
    bool converged = false;
    for (; iter < options.max_iterations; ++iter) {
        sort_simplex();
        const int best = order.front();
        const int worst = order.back();
        const int second_worst = order[order.size() - 2];

        if (vals[static_cast<std::size_t>(worst)] - vals[static_cast<std::size_t>(best)] <=
            options.tolerance) {
            converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int idx : order)
            if (idx != worst) centroid += pts[static_cast<std::size_t>(idx)];
        centroid /= static_cast<double>(n);

        const Eigen::VectorXd reflected =
            centroid + alpha * (centroid - pts[static_cast<std::size_t>(worst)]);
        const double f_reflected = eval(reflected);

        if (f_reflected < vals[static_cast<std::size_t>(best)]) {
            const Eigen::VectorXd expanded = centroid + gamma * (reflected - centroid);
            const double f_expanded = eval(expanded);
            if (f_expanded < f_reflected) {
                pts[static_cast<std::size_t>(worst)] = expanded;
                vals[static_cast<std::size_t>(worst)] = f_expanded;
            } else {
                pts[static_cast<std::size_t>(worst)] = reflected;
                vals[static_cast<std::size_t>(worst)] = f_reflected;
            }
            continue;
        }
        if (f_reflected < vals[static_cast<std::size_t>(second_worst)]) {
            pts[static_cast<std::size_t>(worst)] = reflected;
            vals[static_cast<std::size_t>(worst)] = f_reflected;
            continue;
        }

        const bool outside = f_reflected < vals[static_cast<std::size_t>(worst)];
        const Eigen::VectorXd contracted =
            outside ? centroid + beta * (reflected - centroid)
                    : centroid + beta * (pts[static_cast<std::size_t>(worst)] - centroid);
        const double f_contracted = eval(contracted);
        if (f_contracted <
            std::min(f_reflected, vals[static_cast<std::size_t>(worst)])) {
            pts[static_cast<std::size_t>(worst)] = contracted;
            vals[static_cast<std::size_t>(worst)] = f_contracted;
            continue;
        }

        // Shrink toward the best vertex.
        for (int idx : order) {
            if (idx == order.front()) continue;
            auto& p = pts[static_cast<std::size_t>(idx)];
            p = pts[static_cast<std::size_t>(order.front())] +
                delta * (p - pts[static_cast<std::size_t>(order.front())]);
            vals[static_cast<std::size_t>(idx)] = eval(p);
        }
    }

    sort_simplex();
    result.x = pts[static_cast<std::size_t>(order.front())];
    result.value = vals[static_cast<std::size_t>(order.front())];
    result.converged = converged;
    result.iterations = iter;
    result.evaluations = evaluations;
    return result;
}

} // namespace qcorr
