#include "freelip/random_gen.hpp"

#include <algorithm>
#include <string>

namespace freelip {

std::vector<int> RandomSource::sample(std::vector<int> pool, int count) {
    std::vector<int> out;
    for (int k = 0; k < count && !pool.empty(); ++k) {
        const int at = uniform_int(0, static_cast<int>(pool.size()) - 1);
        out.push_back(pool[at]);
        pool.erase(pool.begin() + at);
    }
    std::sort(out.begin(), out.end());
    return out;
}

FiniteSpace<Rational> random_metric_space(RandomSource& rng, int n) {
    if (n < 1) throw std::invalid_argument("random space needs at least one point");
    std::vector<std::vector<Rational>> d(n, std::vector<Rational>(n, Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) d[i][j] = d[j][i] = rng.dyadic(Rational(1), Rational(3));
    // shortest-path closure restores the triangle inequality exactly
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                d[i][j] = std::min(d[i][j], Rational(d[i][k] + d[k][j]));
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back("p" + std::to_string(i));
    return FiniteSpace<Rational>::from_matrix(std::move(ids), std::move(d), 0);
}

}  // namespace freelip
