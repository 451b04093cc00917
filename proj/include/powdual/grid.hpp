#pragma once

#include <cmath>
#include <vector>

#include "powdual/errors.hpp"

namespace powdual {

/// Strictly increasing positive radial abscissas with a declared spacing rule.
struct RadialGrid {
    enum class Rule { uniform, geometric, mixed };

    std::vector<double> points;
    Rule rule = Rule::uniform;
    double r_min = 0.0;
    double r_max = 0.0;

    static RadialGrid make_uniform(double r_min, double r_max, int n) {
        check(r_min, r_max, n);
        RadialGrid g{{}, Rule::uniform, r_min, r_max};
        g.points.resize(n);
        const double h = (r_max - r_min) / (n - 1);
        for (int i = 0; i < n; ++i) g.points[i] = r_min + h * i;
        g.points.back() = r_max;
        return g;
    }

    static RadialGrid make_geometric(double r_min, double r_max, int n) {
        check(r_min, r_max, n);
        RadialGrid g{{}, Rule::geometric, r_min, r_max};
        g.points.resize(n);
        const double h = (std::log(r_max) - std::log(r_min)) / (n - 1);
        for (int i = 0; i < n; ++i) g.points[i] = std::exp(std::log(r_min) + h * i);
        g.points.back() = r_max;
        return g;
    }

    /// Geometric spacing below `split` (kernel boundary layer), uniform above.
    static RadialGrid make_mixed(double r_min, double r_max, int n, double split = 1.0) {
        check(r_min, r_max, n);
        if (!(split > r_min) || !(split < r_max))
            throw DomainError("RadialGrid: split must lie inside (r_min, r_max)");
        RadialGrid g{{}, Rule::mixed, r_min, r_max};
        const int n1 = n / 3;
        const double hg = (std::log(split) - std::log(r_min)) / n1;
        for (int i = 0; i < n1; ++i) g.points.push_back(std::exp(std::log(r_min) + hg * i));
        const int n2 = n - n1;
        const double hu = (r_max - split) / (n2 - 1);
        for (int i = 0; i < n2; ++i) g.points.push_back(split + hu * i);
        g.points.back() = r_max;
        return g;
    }

    int size() const { return static_cast<int>(points.size()); }

private:
    static void check(double r_min, double r_max, int n) {
        if (!(r_min > 0.0)) throw DomainError("RadialGrid: r_min must be positive");
        if (!(r_max > r_min)) throw DomainError("RadialGrid: r_max must exceed r_min");
        if (n < 16) throw DomainError("RadialGrid: needs at least 16 points");
    }
};

}  // namespace powdual
