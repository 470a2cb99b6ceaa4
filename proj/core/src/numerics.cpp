#include "molopt/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace molopt::numerics {

namespace {

constexpr double kPivotRel = 1e-14;

double cube_root(double x) { return std::cbrt(x); }

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

std::vector<Complex> mat_vec(const ComplexMatrix& a, std::span<const Complex> x) {
    std::vector<Complex> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

std::vector<Complex> solve_complex_linear(ComplexMatrix a, std::vector<Complex> b) {
    if (a.rows() != a.cols()) throw std::invalid_argument("solve_complex_linear: matrix not square");
    const std::size_t n = a.rows();
    if (b.size() != n) throw std::invalid_argument("solve_complex_linear: size mismatch");
    if (n == 0) return {};

    double max_entry = 0.0;
    for (const Complex& v : a.entries()) max_entry = std::max(max_entry, std::abs(v));
    const double pivot_floor = kPivotRel * max_entry;

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot_row = k;
        double pivot_mag = std::abs(a(k, k));
        for (std::size_t r = k + 1; r < n; ++r) {
            const double m = std::abs(a(r, k));
            if (m > pivot_mag) {
                pivot_mag = m;
                pivot_row = r;
            }
        }
        if (pivot_mag < pivot_floor || pivot_mag == 0.0) {
            std::ostringstream os;
            os << "solve_complex_linear: pivot " << pivot_mag << " below threshold "
               << pivot_floor << " at column " << k;
            throw SingularMatrixError(os.str());
        }
        if (pivot_row != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot_row, j));
            std::swap(b[k], b[pivot_row]);
        }
        const Complex pivot = a(k, k);
        for (std::size_t r = k + 1; r < n; ++r) {
            const Complex factor = a(r, k) / pivot;
            if (factor == Complex(0.0)) continue;
            a(r, k) = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) a(r, j) -= factor * a(k, j);
            b[r] -= factor * b[k];
        }
    }

    std::vector<Complex> x(n);
    for (std::size_t i = n; i-- > 0;) {
        Complex acc = b[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
        x[i] = acc / a(i, i);
    }
    return x;
}

double RealPolynomial::operator()(double x) const {
    double acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

Complex RealPolynomial::operator()(const Complex& z) const {
    Complex acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * z + coeffs[i];
    return acc;
}

namespace {

// One Newton step on the original cubic; falls back to the input when the
// derivative is too small (multiple root).
double polish_cubic(double r, double c0, double c1, double c2, double c3) {
    const double p = ((c3 * r + c2) * r + c1) * r + c0;
    const double dp = (3.0 * c3 * r + 2.0 * c2) * r + c1;
    if (std::abs(dp) < 1e-300) return r;
    const double next = r - p / dp;
    return std::isfinite(next) ? next : r;
}

std::vector<double> dedupe_sorted(std::vector<double> roots) {
    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots) {
        if (out.empty() || std::abs(r - out.back()) > 1e-7 * (1.0 + std::abs(r))) {
            out.push_back(r);
        }
    }
    return out;
}

}  // namespace

std::vector<double> real_cubic_roots(double c0, double c1, double c2, double c3) {
    if (c0 == 0.0 && c1 == 0.0 && c2 == 0.0 && c3 == 0.0) {
        throw DegenerateAllZeroError("real_cubic_roots: all coefficients zero");
    }
    if (c3 == 0.0) {
        if (c2 == 0.0) {
            if (c1 == 0.0) return {};  // nonzero constant, no roots
            return {-c0 / c1};
        }
        // quadratic
        const double disc = c1 * c1 - 4.0 * c2 * c0;
        if (disc < 0.0) return {};
        const double s = std::sqrt(disc);
        const double q = -0.5 * (c1 + std::copysign(s, c1));
        std::vector<double> roots;
        if (q != 0.0) {
            roots.push_back(q / c2);
            roots.push_back(c0 / q);
        } else {
            roots.push_back(0.0);
            roots.push_back(-c1 / c2);
        }
        return dedupe_sorted(std::move(roots));
    }

    // depressed cubic t^3 + p t + q via x = t - b/3
    const double b = c2 / c3;
    const double c = c1 / c3;
    const double d = c0 / c3;
    const double p = c - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
    const double shift = -b / 3.0;

    const double disc = -4.0 * p * p * p - 27.0 * q * q;
    const double disc_scale = 4.0 * std::abs(p * p * p) + 27.0 * q * q;

    std::vector<double> roots;
    if (disc_scale == 0.0) {
        // p == q == 0: triple root
        roots.push_back(shift);
    } else if (disc > 1e-12 * disc_scale) {
        // three distinct real roots (p < 0 here)
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
        const double theta = std::acos(arg);
        for (int k = 0; k < 3; ++k) {
            roots.push_back(shift + m * std::cos((theta - 2.0 * M_PI * k) / 3.0));
        }
    } else if (disc < -1e-12 * disc_scale) {
        // one real root (Cardano)
        const double s = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
        const double t = cube_root(-q / 2.0 + s) + cube_root(-q / 2.0 - s);
        roots.push_back(shift + t);
    } else {
        // borderline discriminant: repeated roots
        if (std::abs(p) < 1e-300) {
            roots.push_back(shift + cube_root(-q));
        } else {
            roots.push_back(shift - 3.0 * q / (2.0 * p));  // double root
            roots.push_back(shift + 3.0 * q / p);          // simple root
        }
    }

    for (double& r : roots) r = polish_cubic(r, c0, c1, c2, c3);
    return dedupe_sorted(std::move(roots));
}

std::vector<Complex> poly_roots(const RealPolynomial& p) {
    std::vector<double> c = p.coeffs;
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    const int n = static_cast<int>(c.size()) - 1;
    if (n < 1) {
        if (!c.empty() && c[0] == 0.0) {
            throw DegenerateAllZeroError("poly_roots: zero polynomial");
        }
        throw std::invalid_argument("poly_roots: degree >= 1 required");
    }

    // monic coefficients
    std::vector<double> a(n + 1);
    for (int i = 0; i <= n; ++i) a[i] = c[i] / c[n];

    // root-magnitude bound, used to scale the iteration to O(1)
    double radius = 0.0;
    for (int k = 1; k <= n; ++k) {
        radius = std::max(radius, std::pow(std::abs(a[n - k]), 1.0 / k));
    }
    radius = std::max(2.0 * radius, 1e-3);

    std::vector<double> scaled(n + 1);
    for (int i = 0; i <= n; ++i) scaled[i] = a[i] / std::pow(radius, n - i);

    const auto eval = [](const std::vector<double>& poly, const Complex& z) {
        Complex acc = 0.0;
        for (std::size_t i = poly.size(); i-- > 0;) acc = acc * z + poly[i];
        return acc;
    };

    // perturbed-circle initial guesses
    std::vector<Complex> w(n);
    const Complex seed(0.4, 0.9);
    Complex v = seed;
    for (int i = 0; i < n; ++i) {
        w[i] = v;
        v *= seed;
    }

    bool converged = false;
    for (int iter = 0; iter < 500 && !converged; ++iter) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            Complex denom = 1.0;
            for (int j = 0; j < n; ++j) {
                if (j != i) denom *= w[i] - w[j];
            }
            if (std::abs(denom) < 1e-300) {
                w[i] += Complex(1e-6, 1e-6);  // nudge collided iterates apart
                converged = false;
                continue;
            }
            const Complex step = eval(scaled, w[i]) / denom;
            w[i] -= step;
            // convergence measured in original scale
            if (std::abs(step) * radius >= 1e-12 * (1.0 + std::abs(w[i]) * radius)) {
                converged = false;
            }
        }
    }

    std::vector<Complex> roots(n);
    for (int i = 0; i < n; ++i) roots[i] = w[i] * radius;

    // Newton polish on the monic polynomial
    std::vector<double> da(n);
    for (int i = 1; i <= n; ++i) da[i - 1] = a[i] * i;
    for (Complex& r : roots) {
        for (int it = 0; it < 2; ++it) {
            const Complex pv = eval(a, r);
            const Complex dv = eval(da, r);
            if (std::abs(dv) < 1e-300) break;
            const Complex next = r - pv / dv;
            if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
            r = next;
        }
    }

    double worst = 0.0;
    for (const Complex& r : roots) {
        double scale = 0.0;
        double zp = 1.0;
        const double zm = std::abs(r);
        for (int i = 0; i <= n; ++i) {
            scale += std::abs(a[i]) * zp;
            zp *= zm;
        }
        worst = std::max(worst, std::abs(eval(a, r)) / std::max(scale, 1e-300));
    }
    if (!converged && worst > 1e-8) {
        std::ostringstream os;
        os << "poly_roots: Durand-Kerner hit the iteration cap, best relative residual " << worst
           << ", best iterates:";
        for (const Complex& r : roots) os << " (" << r.real() << "," << r.imag() << ")";
        throw NoConvergenceError(os.str(), worst);
    }

    std::sort(roots.begin(), roots.end(), [](const Complex& x, const Complex& y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return roots;
}

GoldenMax golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                             double tol) {
    if (!(lo < hi)) throw InvalidBracketError("golden_section_max: lo >= hi");
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    const double xm = 0.5 * (a + b);
    const double fm = f(xm);
    if (fm >= f1 && fm >= f2) return {xm, fm};
    return f1 >= f2 ? GoldenMax{x1, f1} : GoldenMax{x2, f2};
}

FwhmResult fwhm(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("fwhm: size mismatch");
    if (xs.size() < 3) throw std::invalid_argument("fwhm: need at least 3 samples");
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] > xs[i - 1])) throw std::invalid_argument("fwhm: xs must be strictly ascending");
    }

    std::size_t peak = 0;
    for (std::size_t i = 1; i < ys.size(); ++i) {
        if (ys[i] > ys[peak]) peak = i;
    }
    const double half = 0.5 * ys[peak];

    FwhmResult res;
    res.peak_index = peak;
    res.peak_value = ys[peak];

    // outermost left crossing: first rise through half when walking in from the left edge
    res.left_truncated = true;
    res.left = xs.front();
    for (std::size_t i = 0; i < peak; ++i) {
        if (ys[i] < half && ys[i + 1] >= half) {
            const double t = (half - ys[i]) / (ys[i + 1] - ys[i]);
            res.left = xs[i] + t * (xs[i + 1] - xs[i]);
            res.left_truncated = false;
            break;
        }
    }

    // outermost right crossing: first fall through half when walking in from the right edge
    res.right_truncated = true;
    res.right = xs.back();
    for (std::size_t i = xs.size() - 1; i > peak; --i) {
        if (ys[i] < half && ys[i - 1] >= half) {
            const double t = (ys[i - 1] - half) / (ys[i - 1] - ys[i]);
            res.right = xs[i - 1] + t * (xs[i] - xs[i - 1]);
            res.right_truncated = false;
            break;
        }
    }

    res.width = res.right - res.left;
    return res;
}

}  // namespace molopt::numerics
