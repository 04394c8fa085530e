#include "breaktime/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "breaktime/errors.hpp"

namespace breaktime {
namespace {

// Kronrod-15 abscissae on [-1, 1] (positive half); even indices are the
// embedded Gauss-7 nodes.
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};

constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};

constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Segment {
    double lo;
    double hi;
    double value;
    double error;
};

// One G7/K15 evaluation; error estimate scaled per QUADPACK's qk15.
Segment evaluate_segment(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);

    double fv[15];
    fv[7] = f(center);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kNodes[j];
        fv[j] = f(center - dx);
        fv[14 - j] = f(center + dx);
    }

    double result_kronrod = kKronrodWeights[7] * fv[7];
    double result_gauss = kGaussWeights[3] * fv[7];
    for (int j = 0; j < 7; ++j) {
        result_kronrod += kKronrodWeights[j] * (fv[j] + fv[14 - j]);
    }
    for (int j = 0; j < 3; ++j) {
        result_gauss += kGaussWeights[j] * (fv[2 * j + 1] + fv[13 - 2 * j]);
    }

    const double mean = 0.5 * result_kronrod;
    double resasc = kKronrodWeights[7] * std::fabs(fv[7] - mean);
    for (int j = 0; j < 7; ++j) {
        resasc += kKronrodWeights[j] * (std::fabs(fv[j] - mean) + std::fabs(fv[14 - j] - mean));
    }
    resasc *= half;

    double error = std::fabs(result_kronrod - result_gauss) * half;
    if (resasc != 0.0 && error != 0.0) {
        error = resasc * std::min(1.0, std::pow(200.0 * error / resasc, 1.5));
    }
    return {lo, hi, result_kronrod * half, error};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           double abs_tol, const std::vector<double>& breakpoints,
                           int max_segments) {
    if (!(lo <= hi)) throw InvalidParameter("integrate: requires lo <= hi");
    if (lo == hi) return {0.0, 0.0, 0};

    std::vector<double> edges{lo, hi};
    for (double b : breakpoints) {
        if (b > lo && b < hi) edges.push_back(b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    auto worse = [](const Segment& s1, const Segment& s2) { return s1.error < s2.error; };
    std::priority_queue<Segment, std::vector<Segment>, decltype(worse)> queue(worse);

    double total_error = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        Segment seg = evaluate_segment(f, edges[i], edges[i + 1]);
        if (!std::isfinite(seg.value)) {
            throw QuadratureFailure("integrate: non-finite integrand", seg.error);
        }
        total_error += seg.error;
        queue.push(seg);
    }

    while (total_error > abs_tol && static_cast<int>(queue.size()) < max_segments) {
        const Segment worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) {
            // interval at floating-point resolution; cannot split further
            queue.push({worst.lo, worst.hi, worst.value, 0.0});
            total_error -= worst.error;
            continue;
        }
        Segment left = evaluate_segment(f, worst.lo, mid);
        Segment right = evaluate_segment(f, mid, worst.hi);
        if (!std::isfinite(left.value) || !std::isfinite(right.value)) {
            throw QuadratureFailure("integrate: non-finite integrand", total_error);
        }
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }

    // Drain and sum in interval order so the result does not depend on the
    // heap layout.
    std::vector<Segment> segments;
    segments.reserve(queue.size());
    while (!queue.empty()) {
        segments.push_back(queue.top());
        queue.pop();
    }
    std::sort(segments.begin(), segments.end(),
              [](const Segment& s1, const Segment& s2) { return s1.lo < s2.lo; });

    double value = 0.0;
    double compensation = 0.0;
    double error = 0.0;
    for (const Segment& seg : segments) {
        // Neumaier compensated accumulation
        const double t = value + seg.value;
        if (std::fabs(value) >= std::fabs(seg.value)) {
            compensation += (value - t) + seg.value;
        } else {
            compensation += (seg.value - t) + value;
        }
        value = t;
        error += seg.error;
    }
    value += compensation;

    if (error > abs_tol) {
        throw QuadratureFailure("integrate: tolerance not reached", error);
    }
    return {value, error, static_cast<int>(segments.size())};
}

}  // namespace breaktime
