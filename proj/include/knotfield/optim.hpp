#ifndef KNOTFIELD_OPTIM_HPP
#define KNOTFIELD_OPTIM_HPP

#include <algorithm>
#include <functional>
#include <vector>

namespace knotfield {

// Nelder-Mead downhill simplex. Good enough for the low-dimensional local
// refinements used here (energy-maximum polish, null-combination search).
struct NelderMeadResult {
    std::vector<double> x;
    double fmin = 0.0;
    int iterations = 0;
};

inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> x0, double step, double xtol,
                                    int max_iter = 2000) {
    const std::size_t n = x0.size();
    std::vector<std::vector<double>> pts(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = f(pts[i]);

    int it = 0;
    for (; it < max_iter; ++it) {
        // order ascending by value
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = idx[0], worst = idx[n], second = idx[n - 1];

        double extent = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            extent = std::max(extent, std::abs(pts[worst][i] - pts[best][i]));
        if (extent < xtol) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t k = 0; k <= n; ++k) {
            if (k == worst) continue;
            for (std::size_t i = 0; i < n; ++i) centroid[i] += pts[k][i];
        }
        for (std::size_t i = 0; i < n; ++i) centroid[i] /= double(n);

        auto blend = [&](double alpha) {
            std::vector<double> p(n);
            for (std::size_t i = 0; i < n; ++i)
                p[i] = centroid[i] + alpha * (pts[worst][i] - centroid[i]);
            return p;
        };

        auto refl = blend(-1.0);
        const double fr = f(refl);
        if (fr < fv[best]) {
            auto exp_ = blend(-2.0);
            const double fe = f(exp_);
            if (fe < fr) { pts[worst] = exp_; fv[worst] = fe; }
            else { pts[worst] = refl; fv[worst] = fr; }
        } else if (fr < fv[second]) {
            pts[worst] = refl; fv[worst] = fr;
        } else {
            auto con = blend(0.5);
            const double fc = f(con);
            if (fc < fv[worst]) { pts[worst] = con; fv[worst] = fc; }
            else {
                for (std::size_t k = 0; k <= n; ++k) {
                    if (k == best) continue;
                    for (std::size_t i = 0; i < n; ++i)
                        pts[k][i] = 0.5 * (pts[k][i] + pts[best][i]);
                    fv[k] = f(pts[k]);
                }
            }
        }
    }
    std::size_t bi = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (fv[i] < fv[bi]) bi = i;
    return {pts[bi], fv[bi], it};
}

}  // namespace knotfield

#endif
