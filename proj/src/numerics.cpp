#include "geomtomo/numerics.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace geomtomo {

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dot: dimension mismatch");
    double s = 0;
    for (std::size_t i = 0; i < a.size(); i++) s += a[i] * b[i];
    return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

Vec normalized(const Vec& a) {
    double r = norm(a);
    if (r < 1e-300)
        throw std::domain_error("normalized: zero vector");
    Vec out(a);
    for (double& x : out) x /= r;
    return out;
}

Vec scaled(const Vec& a, double s) {
    Vec out(a);
    for (double& x : out) x *= s;
    return out;
}

Vec sum(const Vec& a, const Vec& b) {
    Vec out(a);
    for (std::size_t i = 0; i < b.size(); i++) out[i] += b[i];
    return out;
}

Vec diff(const Vec& a, const Vec& b) {
    Vec out(a);
    for (std::size_t i = 0; i < b.size(); i++) out[i] -= b[i];
    return out;
}

void axpy(double s, const Vec& x, Vec& y) {
    for (std::size_t i = 0; i < x.size(); i++) y[i] += s * x[i];
}

double pairwise_sum(std::span<const double> v) {
    // recursion keeps the reduction tree fixed by input order only
    if (v.size() <= 8) {
        double s = 0;
        for (double x : v) s += x;
        return s;
    }
    std::size_t half = v.size() / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

std::vector<Vec> orthonormalize(const std::vector<Vec>& v) {
    std::vector<Vec> q;
    for (const Vec& x : v) {
        Vec w(x);
        for (int pass = 0; pass < 2; pass++)        // twice is enough (Kahan)
            for (const Vec& u : q) axpy(-dot(w, u), u, w);
        double r = norm(w);
        if (r < 1e-10 * (norm(x) + 1e-30))
            throw std::invalid_argument("orthonormalize: rank-deficient input");
        for (double& c : w) c /= r;
        q.push_back(std::move(w));
    }
    return q;
}

std::vector<Vec> complete_basis(const std::vector<Vec>& basis, int n) {
    std::vector<Vec> q = orthonormalize(basis);
    for (int i = 0; i < n && (int)q.size() < n; i++) {
        Vec e(n, 0.0);
        e[i] = 1.0;
        Vec w(e);
        for (int pass = 0; pass < 2; pass++)
            for (const Vec& u : q) axpy(-dot(w, u), u, w);
        double r = norm(w);
        if (r < 1e-8) continue;    // e_i nearly in the span, try the next one
        for (double& c : w) c /= r;
        q.push_back(std::move(w));
    }
    if ((int)q.size() != n)
        throw std::logic_error("complete_basis: failed to reach full rank");
    return q;
}

Vec solve_linear(std::vector<Vec> a, Vec b) {
    const int n = (int)b.size();
    double scale = 0;
    for (const Vec& row : a)
        for (double x : row) scale = std::max(scale, std::fabs(x));
    for (int col = 0; col < n; col++) {
        int piv = col;
        for (int r = col + 1; r < n; r++)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        if (std::fabs(a[piv][col]) < 1e-12 * (scale + 1e-300)) return {};
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (int r = col + 1; r < n; r++) {
            double f = a[r][col] / a[col][col];
            for (int c = col; c < n; c++) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    Vec x(n);
    for (int r = n - 1; r >= 0; r--) {
        double s = b[r];
        for (int c = r + 1; c < n; c++) s -= a[r][c] * x[c];
        x[r] = s / a[r][r];
    }
    return x;
}

double spd_determinant(std::vector<Vec> a) {
    const int n = (int)a.size();
    double det = 1.0;
    for (int c = 0; c < n; c++) {
        double d = a[c][c];
        for (int k = 0; k < c; k++) d -= a[c][k] * a[c][k];
        if (d <= 0)
            throw std::domain_error("spd_determinant: matrix not positive definite");
        double l = std::sqrt(d);
        a[c][c] = l;
        det *= d;
        for (int r = c + 1; r < n; r++) {
            double s = a[r][c];
            for (int k = 0; k < c; k++) s -= a[r][k] * a[c][k];
            a[r][c] = s / l;
        }
    }
    return det;
}

double unit_ball_volume(int n) {
    if (n < 0) throw std::invalid_argument("unit_ball_volume: negative dimension");
    if (n == 0) return 1.0;
    return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double sphere_area(int n) { return n * unit_ball_volume(n); }

double gamma_p(double a, double x) {
    if (x <= 0) return 0.0;
    return boost::math::gamma_p(a, x);
}

double gaussian_radial_moment(int m, double s, double T) {
    if (T <= 0) return 0.0;
    // substitute u = r^2/(2 s^2)
    double a = 0.5 * (m + 1);
    double full = std::pow(s, m + 1) * std::pow(2.0, 0.5 * (m - 1)) * std::tgamma(a);
    return full * gamma_p(a, T * T / (2 * s * s));
}

double cone_sphere_moment(int n, double alpha) {
    if (n < 2) throw std::invalid_argument("cone_sphere_moment: dimension < 2");
    // integral over the hemisphere of <u,w>^alpha; reduces to a Beta integral
    double logv = std::log(sphere_area(n - 1)) + std::lgamma(0.5 * (alpha + 1)) +
                  std::lgamma(0.5 * (n - 1)) - std::log(2.0) -
                  std::lgamma(0.5 * (alpha + n));
    return std::exp(logv);
}

namespace {

std::map<int, std::pair<std::vector<double>, std::vector<double>>> g_gauss_cache;
std::mutex g_gauss_mutex;

void gauss_legendre_compute(int m, std::vector<double>& x, std::vector<double>& w) {
    x.resize(m);
    w.resize(m);
    for (int i = 0; i < (m + 1) / 2; i++) {
        double z = std::cos(M_PI * (i + 0.75) / (m + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; it++) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < m; j++) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) * z * p1 - j * p2) / (j + 1);
            }
            pp = m * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::fabs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[m - 1 - i] = z;
        w[i] = w[m - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

}  // namespace

void gauss_legendre(int m, std::vector<double>& nodes, std::vector<double>& weights) {
    if (m < 1) throw std::invalid_argument("gauss_legendre: order < 1");
    std::lock_guard<std::mutex> lock(g_gauss_mutex);
    auto it = g_gauss_cache.find(m);
    if (it == g_gauss_cache.end()) {
        std::pair<std::vector<double>, std::vector<double>> rule;
        gauss_legendre_compute(m, rule.first, rule.second);
        it = g_gauss_cache.emplace(m, std::move(rule)).first;
    }
    nodes = it->second.first;
    weights = it->second.second;
}

void gauss_legendre_on(int m, double a, double b,
                       std::vector<double>& nodes, std::vector<double>& weights) {
    gauss_legendre(m, nodes, weights);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < m; i++) {
        nodes[i] = mid + half * nodes[i];
        weights[i] *= half;
    }
}

double bisect_root(const std::function<double(double)>& f,
                   double lo, double hi, double tol) {
    double flo = f(lo);
    if (flo > 0) throw std::domain_error("bisect_root: no sign change at lower end");
    for (int it = 0; it < 200 && hi - lo > tol; it++) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) <= 0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double golden_max(const std::function<double(double)>& f,
                  double lo, double hi, double tol) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

double Rng::uniform() {
    // 53-bit mantissa from the top bits of one 64-bit draw
    return (gen_() >> 11) * (1.0 / 9007199254740992.0);
}

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = 0;
    do {
        u1 = uniform();
    } while (u1 <= 1e-300);
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2 * M_PI * u2);
    have_spare_ = true;
    return r * std::cos(2 * M_PI * u2);
}

Vec Rng::gaussian_vector(int n) {
    Vec v(n);
    for (double& x : v) x = normal();
    return v;
}

Vec Rng::sphere_point(int n) {
    for (;;) {
        Vec v = gaussian_vector(n);
        double r = norm(v);
        if (r > 1e-8) {
            for (double& x : v) x /= r;
            return v;
        }
    }
}

std::uint64_t Rng::child_seed(std::uint64_t index) const {
    // splitmix64 on a copy of the base state; does not disturb this stream
    std::uint64_t z = base_ + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::span<const unsigned char> bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string digest_hex(std::uint64_t h) {
    std::ostringstream os;
    os << std::hex;
    for (int i = 15; i >= 0; i--) os << ((h >> (4 * i)) & 0xf);
    return os.str();
}

}  // namespace geomtomo
