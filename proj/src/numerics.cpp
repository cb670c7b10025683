#include "zerolab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace zerolab {

namespace {

// Classical G7/K15 pair (QUADPACK constants).  Kronrod abscissae in
// decreasing order; odd-indexed entries are the embedded Gauss-7 nodes.
constexpr double kx[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kw[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double gw[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GkResult {
    double kronrod;
    double err;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double resk = kw[7] * fc;
    double resg = gw[3] * fc;
    for (int j = 0; j < 7; ++j) {
        double x = h * kx[j];
        double f1 = f(c - x);
        double f2 = f(c + x);
        resk += kw[j] * (f1 + f2);
        if (j % 2 == 1) resg += gw[j / 2] * (f1 + f2);
    }
    double diff = std::abs((resk - resg) * h);
    // QUADPACK-style sharpened error estimate.
    double err = diff;
    if (diff > 0.0) err = std::min(diff, std::pow(200.0 * diff, 1.5));
    return {resk * h, std::max(err, 1e-300)};
}

struct Interval {
    double a, b, value, err;
    bool operator<(const Interval& o) const { return err < o.err; }
};

}  // namespace

double integrate_gk(const std::function<double(double)>& f, double a, double b,
                    double abs_tol, int max_intervals) {
    if (a == b) return 0.0;
    double sign = 1.0;
    if (b < a) {
        std::swap(a, b);
        sign = -1.0;
    }
    std::priority_queue<Interval> heap;
    GkResult r0 = gk15(f, a, b);
    heap.push({a, b, r0.kronrod, r0.err});
    double total_err = r0.err;
    int used = 1;
    while (total_err > abs_tol && used < max_intervals) {
        Interval worst = heap.top();
        heap.pop();
        total_err -= worst.err;
        double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Interval at floating-point resolution; keep its estimate.
            heap.push(worst);
            total_err += worst.err * 1e-3;
            break;
        }
        GkResult rl = gk15(f, worst.a, mid);
        GkResult rr = gk15(f, mid, worst.b);
        heap.push({worst.a, mid, rl.kronrod, rl.err});
        heap.push({mid, worst.b, rr.kronrod, rr.err});
        total_err += rl.err + rr.err;
        ++used;
    }
    if (total_err > abs_tol && used >= max_intervals)
        throw numeric_error("integrate_gk: interval budget exhausted, error " +
                            std::to_string(total_err) + " > tol " +
                            std::to_string(abs_tol));
    kahan<double> acc;
    while (!heap.empty()) {
        acc.add(heap.top().value);
        heap.pop();
    }
    return sign * acc.value();
}

GaussRule gauss_legendre(int n) {
    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.x[i] = -x;
        rule.x[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.w[i] = w;
        rule.w[n - 1 - i] = w;
    }
    return rule;
}

double solve_monotone(const std::function<double(double)>& f,
                      const std::function<double(double)>& df, double lo,
                      double hi, double rel_tol) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw numeric_error("solve_monotone: endpoints do not bracket a root");
    bool increasing = fhi > flo;
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        double fx = f(x);
        if ((fx > 0.0) == increasing)
            hi = x;
        else
            lo = x;
        double d = df(x);
        double step = (d != 0.0) ? fx / d : 0.0;
        double xn = x - step;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);  // bisection fallback
        double scale = std::max({std::abs(x), std::abs(xn), 1.0});
        if (std::abs(xn - x) <= rel_tol * scale) return xn;
        x = xn;
    }
    return x;
}

Pchip::Pchip(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
        throw validation_error("Pchip: need at least two matching knots");
    for (std::size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1]))
            throw validation_error("Pchip: abscissae must be strictly increasing");

    std::vector<double> d(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        d[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);

    m_.assign(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] == 0.0 || d[i] == 0.0 || (d[i - 1] > 0) != (d[i] > 0)) {
            m_[i] = 0.0;
        } else {
            // Weighted harmonic mean (Fritsch-Carlson).
            double h0 = x_[i] - x_[i - 1];
            double h1 = x_[i + 1] - x_[i];
            double w1 = 2.0 * h1 + h0;
            double w2 = h1 + 2.0 * h0;
            m_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    auto endpoint = [&](double h0, double h1, double d0, double d1) {
        double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (d0 == 0.0 || (m > 0) != (d0 > 0))
            m = 0.0;
        else if ((d0 > 0) != (d1 > 0) && std::abs(m) > 3.0 * std::abs(d0))
            m = 3.0 * d0;
        return m;
    };
    if (n == 2) {
        m_[0] = m_[1] = d[0];
    } else {
        m_[0] = endpoint(x_[1] - x_[0], x_[2] - x_[1], d[0], d[1]);
        m_[n - 1] = endpoint(x_[n - 1] - x_[n - 2], x_[n - 2] - x_[n - 3],
                             d[n - 2], d[n - 3]);
    }

    // Exact integral of the cubic on each segment.
    cum_.assign(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double h = x_[i + 1] - x_[i];
        cum_[i + 1] = cum_[i] + h * (0.5 * (y_[i] + y_[i + 1]) +
                                     h * (m_[i] - m_[i + 1]) / 12.0);
    }
}

std::size_t Pchip::segment(double t) const {
    if (t < x_.front() || t > x_.back())
        throw validation_error("Pchip: abscissa outside tabulated grid");
    auto it = std::upper_bound(x_.begin(), x_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - x_.begin());
    if (i > 0) --i;
    if (i + 1 >= x_.size()) i = x_.size() - 2;
    return i;
}

double Pchip::operator()(double t) const {
    std::size_t i = segment(t);
    double h = x_[i + 1] - x_[i];
    double s = (t - x_[i]) / h;
    double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    double h10 = s * (1 - s) * (1 - s);
    double h01 = s * s * (3 - 2 * s);
    double h11 = s * s * (s - 1);
    return h00 * y_[i] + h10 * h * m_[i] + h01 * y_[i + 1] + h11 * h * m_[i + 1];
}

double Pchip::prime(double t) const {
    std::size_t i = segment(t);
    double h = x_[i + 1] - x_[i];
    double s = (t - x_[i]) / h;
    double d00 = 6 * s * (s - 1) / h;
    double d10 = (1 - s) * (1 - 3 * s);
    double d01 = -d00;
    double d11 = s * (3 * s - 2);
    return d00 * y_[i] + d10 * m_[i] + d01 * y_[i + 1] + d11 * m_[i + 1];
}

double Pchip::second(double t) const {
    std::size_t i = segment(t);
    double h = x_[i + 1] - x_[i];
    double s = (t - x_[i]) / h;
    double d00 = (12 * s - 6) / (h * h);
    double d10 = (6 * s - 4) / h;
    double d01 = -d00;
    double d11 = (6 * s - 2) / h;
    return d00 * y_[i] + d10 * m_[i] + d01 * y_[i + 1] + d11 * m_[i + 1];
}

double Pchip::integral(double t) const {
    std::size_t i = segment(t);
    double h = x_[i + 1] - x_[i];
    double s = (t - x_[i]) / h;
    // Antiderivatives of the Hermite basis in s, times h.
    double H00 = s - s * s * s + 0.5 * s * s * s * s - 0.0;
    // int h00 = int (1+2s)(1-s)^2 = s - s^3 + s^4/2
    double H10 = s * s * (0.5 - (2.0 / 3.0) * s + 0.25 * s * s);
    double H01 = s * s * s * (1.0 - 0.5 * s);
    double H11 = s * s * s * (0.25 * s - 1.0 / 3.0);
    return cum_[i] + h * (H00 * y_[i] + H10 * h * m_[i] + H01 * y_[i + 1] +
                          H11 * h * m_[i + 1]);
}

double Pchip::inverse(double y, double rel_tol) const {
    if (y < std::min(y_.front(), y_.back()) || y > std::max(y_.front(), y_.back()))
        throw validation_error("Pchip: ordinate outside tabulated range");
    return solve_monotone([&](double t) { return (*this)(t) - y; },
                          [&](double t) { return prime(t); }, x_.front(),
                          x_.back(), rel_tol);
}

}  // namespace zerolab
