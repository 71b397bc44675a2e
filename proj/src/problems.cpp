#include "mogd/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mogd {

namespace {

constexpr double kPi = 3.14159265358979323846;

Vec constant_box(int n, double v) {
    return Vec::Constant(n, v);
}

// --- Ackley form: c1 + e - c1 exp(-c2 sqrt(mean z^2)) - exp(mean cos(c3 z))

double ackley_value(const Vec& z, double c1, double c2, double c3) {
    const double n = static_cast<double>(z.size());
    const double u = std::sqrt(z.squaredNorm() / n);
    const double w = z.array().unaryExpr([&](double v) { return std::cos(c3 * v); }).mean();
    return c1 + std::exp(1.0) - c1 * std::exp(-c2 * u) - std::exp(w);
}

Vec ackley_grad(const Vec& z, double c1, double c2, double c3) {
    const double n = static_cast<double>(z.size());
    const double u = std::sqrt(z.squaredNorm() / n);
    const double w = z.array().unaryExpr([&](double v) { return std::cos(c3 * v); }).mean();
    Vec g(z.size());
    const double radial = (u > 1e-12) ? c1 * c2 * std::exp(-c2 * u) / (n * u) : 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i)
        g[i] = radial * z[i] + (c3 / n) * std::sin(c3 * z[i]) * std::exp(w);
    return g;
}

// --- Levy form: (pi/n)[k sin^2(pi z1) + sum (z_i-a)^2 (1+k sin^2(pi z_{i+1})) + (z_n-a)^2]

double levy_value(const Vec& z, double k, double a) {
    const int n = static_cast<int>(z.size());
    double s = k * std::pow(std::sin(kPi * z[0]), 2);
    for (int i = 0; i + 1 < n; ++i) {
        const double si = std::sin(kPi * z[i + 1]);
        s += (z[i] - a) * (z[i] - a) * (1.0 + k * si * si);
    }
    s += (z[n - 1] - a) * (z[n - 1] - a);
    return (kPi / n) * s;
}

Vec levy_grad(const Vec& z, double k, double a) {
    const int n = static_cast<int>(z.size());
    Vec g = Vec::Zero(n);
    g[0] += k * kPi * std::sin(2.0 * kPi * z[0]);
    for (int i = 0; i + 1 < n; ++i) {
        const double si = std::sin(kPi * z[i + 1]);
        g[i] += 2.0 * (z[i] - a) * (1.0 + k * si * si);
        g[i + 1] += (z[i] - a) * (z[i] - a) * k * kPi * std::sin(2.0 * kPi * z[i + 1]);
    }
    g[n - 1] += 2.0 * (z[n - 1] - a);
    return (kPi / n) * g;
}

// --- AL2's second objective (Levy variant with distinct frequencies)

double al2_f2_value(const Vec& z, double l0, double l1, double k0, double k1, double a) {
    const int n = static_cast<int>(z.size());
    double s = std::pow(std::sin(kPi * l0 * z[0]), 2);
    for (int i = 0; i + 1 < n; ++i) {
        const double si = std::sin(kPi * l1 * z[i + 1]);
        s += (z[i] - a) * (z[i] - a) * (1.0 + k0 * si * si);
    }
    const double sn = std::sin(2.0 * kPi * l1 * z[n - 1]);
    s += (z[n - 1] - a) * (z[n - 1] - a) * (1.0 + k0 * sn * sn);
    return k1 * s;
}

Vec al2_f2_grad(const Vec& z, double l0, double l1, double k0, double k1, double a) {
    const int n = static_cast<int>(z.size());
    Vec g = Vec::Zero(n);
    g[0] += kPi * l0 * std::sin(2.0 * kPi * l0 * z[0]);
    for (int i = 0; i + 1 < n; ++i) {
        const double si = std::sin(kPi * l1 * z[i + 1]);
        g[i] += 2.0 * (z[i] - a) * (1.0 + k0 * si * si);
        g[i + 1] += (z[i] - a) * (z[i] - a) * k0 * kPi * l1 * std::sin(2.0 * kPi * l1 * z[i + 1]);
    }
    const double zn = z[n - 1];
    const double sn = std::sin(2.0 * kPi * l1 * zn);
    g[n - 1] += 2.0 * (zn - a) * (1.0 + k0 * sn * sn) +
                (zn - a) * (zn - a) * k0 * 2.0 * kPi * l1 * std::sin(4.0 * kPi * l1 * zn);
    return k1 * g;
}

// --- ZDT family helpers (n >= 2, box [0,1]^n)

double zdt_g(const Vec& z) {
    const double n = static_cast<double>(z.size());
    return 1.0 + 9.0 / (n - 1.0) * z.tail(z.size() - 1).sum();
}

// --- DTLZ family (m objectives, k = n - m + 1 distance variables)

double dtlz1_g(const Vec& z, int m) {
    const int n = static_cast<int>(z.size());
    const int k = n - m + 1;
    double s = static_cast<double>(k);
    for (int i = m - 1; i < n; ++i) {
        const double t = z[i] - 0.5;
        s += t * t - std::cos(20.0 * kPi * t);
    }
    return 100.0 * s;
}

double dtlz1_g_deriv(double zi) {
    const double t = zi - 0.5;
    return 100.0 * (2.0 * t + 20.0 * kPi * std::sin(20.0 * kPi * t));
}

double dtlz2_g(const Vec& z, int m) {
    double s = 0;
    for (Eigen::Index i = m - 1; i < z.size(); ++i) s += (z[i] - 0.5) * (z[i] - 0.5);
    return s;
}

// DTLZ1 objectives for general m:
//   f_1 = 0.5 (1+g) z1...z_{m-1}
//   f_i = 0.5 (1+g) z1...z_{m-i} (1 - z_{m-i+1})
//   f_m = 0.5 (1+g) (1 - z1)
Vec dtlz1_positional(const Vec& z, int m) {
    Vec p(m);
    for (int i = 0; i < m; ++i) {
        double prod = 0.5;
        for (int j = 0; j < m - 1 - i; ++j) prod *= z[j];
        if (i > 0) prod *= (1.0 - z[m - 1 - i]);
        p[i] = prod;
    }
    return p;
}

Mat dtlz1_positional_grad(const Vec& z, int m) {
    // derivative of the positional products wrt z_0..z_{m-2}
    Mat dp = Mat::Zero(m, m - 1);
    for (int i = 0; i < m; ++i) {
        for (int d = 0; d < m - 1; ++d) {
            double prod = 0.5;
            bool involved = false;
            for (int j = 0; j < m - 1 - i; ++j) {
                if (j == d)
                    involved = true;
                else
                    prod *= z[j];
            }
            if (i > 0) {
                if (m - 1 - i == d) {
                    prod *= -1.0;
                    involved = true;
                } else {
                    prod *= (1.0 - z[m - 1 - i]);
                }
            }
            dp(i, d) = involved ? prod : 0.0;
        }
    }
    return dp;
}

// DTLZ2/3 objectives with theta_j = z_j pi/2:
//   f_1 = (1+g) cos t1 ... cos t_{m-1}
//   f_i = (1+g) cos t1 ... cos t_{m-i} sin t_{m-i+1}
//   f_m = (1+g) sin t1
Vec dtlz2_positional(const Vec& z, int m) {
    Vec p(m);
    for (int i = 0; i < m; ++i) {
        double prod = 1.0;
        for (int j = 0; j < m - 1 - i; ++j) prod *= std::cos(z[j] * kPi / 2.0);
        if (i > 0) prod *= std::sin(z[m - 1 - i] * kPi / 2.0);
        p[i] = prod;
    }
    return p;
}

Mat dtlz2_positional_grad(const Vec& z, int m) {
    Mat dp = Mat::Zero(m, m - 1);
    const double h = kPi / 2.0;
    for (int i = 0; i < m; ++i) {
        for (int d = 0; d < m - 1; ++d) {
            double prod = 1.0;
            bool involved = false;
            for (int j = 0; j < m - 1 - i; ++j) {
                if (j == d) {
                    prod *= -h * std::sin(z[j] * h);
                    involved = true;
                } else {
                    prod *= std::cos(z[j] * h);
                }
            }
            if (i > 0) {
                if (m - 1 - i == d) {
                    prod *= h * std::cos(z[m - 1 - i] * h);
                    involved = true;
                } else {
                    prod *= std::sin(z[m - 1 - i] * h);
                }
            }
            dp(i, d) = involved ? prod : 0.0;
        }
    }
    return dp;
}

BoxProblem make_dtlz(const std::string& name, int m, int n, int variant) {
    // variant: 1 = DTLZ1, 2 = DTLZ2, 3 = DTLZ3 (DTLZ2 shape, DTLZ1 g)
    BoxProblem p;
    p.name = name;
    p.m = m;
    p.n = n;
    p.lb = constant_box(n, 0.0);
    p.ub = constant_box(n, 1.0);
    p.eval = [m, variant](const Vec& z) {
        const double g = (variant == 1) ? dtlz1_g(z, m) : (variant == 2) ? dtlz2_g(z, m) : dtlz1_g(z, m);
        const Vec pos = (variant == 1) ? dtlz1_positional(z, m) : dtlz2_positional(z, m);
        return Vec((1.0 + g) * pos);
    };
    p.jac = [m, n, variant](const Vec& z) {
        const bool g1 = (variant != 2);
        const double g = g1 ? dtlz1_g(z, m) : dtlz2_g(z, m);
        const Vec pos = (variant == 1) ? dtlz1_positional(z, m) : dtlz2_positional(z, m);
        const Mat dpos = (variant == 1) ? dtlz1_positional_grad(z, m) : dtlz2_positional_grad(z, m);
        Mat J = Mat::Zero(m, n);
        for (int i = 0; i < m; ++i) {
            for (int d = 0; d < m - 1; ++d) J(i, d) = (1.0 + g) * dpos(i, d);
            for (int d = m - 1; d < n; ++d) {
                const double dg = g1 ? dtlz1_g_deriv(z[d]) : 2.0 * (z[d] - 0.5);
                J(i, d) = dg * pos[i];
            }
        }
        return J;
    };
    return p;
}

// --- GDTEST building blocks

double gd1_ripple(double z) {
    return gdtest::kRippleAmp * (1.0 - std::cos(gdtest::kRippleFreq * kPi * z));
}

double gd1_ripple_deriv(double z) {
    return gdtest::kRippleAmp * gdtest::kRippleFreq * kPi * std::sin(gdtest::kRippleFreq * kPi * z);
}

double gd2_distance(double x2) {
    return gdtest::kDistAmp * (x2 * x2 + 1.0 - std::cos(gdtest::kDistFreq * kPi * x2));
}

double gd2_distance_deriv(double x2) {
    return gdtest::kDistAmp * (2.0 * x2 + gdtest::kDistFreq * kPi * std::sin(gdtest::kDistFreq * kPi * x2));
}

// --- front samplers

std::vector<Vec> line_front(int count, const std::function<Vec(double)>& param) {
    std::vector<Vec> pts;
    const int c = std::max(count, 1);
    pts.reserve(c);
    for (int i = 0; i < c; ++i) {
        const double u = (c == 1) ? 0.0 : static_cast<double>(i) / (c - 1);
        pts.push_back(param(u));
    }
    return pts;
}

std::vector<Vec> zdt3_front(int count) {
    // dense samples of the curve, filtered to the nondominated subset
    const int dense = std::max(2000, 20 * count);
    std::vector<Vec> curve;
    curve.reserve(dense + 1);
    for (int i = 0; i <= dense; ++i) {
        const double t = static_cast<double>(i) / dense;
        Vec f(2);
        f << t, 1.0 - std::sqrt(t) - t * std::sin(10.0 * kPi * t);
        curve.push_back(f);
    }
    std::vector<Vec> nd;
    for (const auto& a : curve) {
        bool dominated = false;
        for (const auto& b : curve) {
            if (dominates(b, a)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) nd.push_back(a);
    }
    std::vector<Vec> out;
    const int c = std::max(count, 1);
    for (int i = 0; i < c; ++i) {
        const std::size_t idx = (c == 1) ? 0 : (i * (nd.size() - 1)) / (c - 1);
        out.push_back(nd[idx]);
    }
    return out;
}

std::vector<Vec> simplex_front(int count, double total) {
    // triangular grid on f1+f2+f3 = total
    int g = 1;
    while ((g + 1) * (g + 2) / 2 < count) ++g;
    std::vector<Vec> pts;
    for (int i = 0; i <= g; ++i) {
        for (int j = 0; i + j <= g; ++j) {
            Vec f(3);
            f << total * i / g, total * j / g, total * (g - i - j) / g;
            pts.push_back(f);
        }
    }
    return pts;
}

std::vector<Vec> sphere_front(int count) {
    int g = 1;
    while ((g + 1) * (g + 1) < count) ++g;
    std::vector<Vec> pts;
    for (int i = 0; i <= g; ++i) {
        for (int j = 0; j <= g; ++j) {
            const double t1 = (kPi / 2.0) * i / g;
            const double t2 = (kPi / 2.0) * j / g;
            Vec f(3);
            f << std::cos(t1) * std::cos(t2), std::cos(t1) * std::sin(t2), std::sin(t1);
            pts.push_back(f);
        }
    }
    return pts;
}

std::map<std::string, ProblemSpec> build_registry() {
    std::map<std::string, ProblemSpec> reg;

    // AL1: Ackley + Levy, n = 20
    {
        BoxProblem p;
        p.name = "AL1";
        p.m = 2;
        p.n = 20;
        p.lb = constant_box(20, -0.5);
        p.ub = constant_box(20, 1.5);
        const double c1 = 20, c2 = 0.2, c3 = 2 * kPi, k = 10, a = 1;
        p.eval = [=](const Vec& z) {
            Vec f(2);
            f << ackley_value(z, c1, c2, c3), levy_value(z, k, a);
            return f;
        };
        p.jac = [=](const Vec& z) {
            Mat J(2, z.size());
            J.row(0) = ackley_grad(z, c1, c2, c3);
            J.row(1) = levy_grad(z, k, a);
            return J;
        };
        reg["AL1"] = {p, true, "appendix A.1"};
    }

    // AL2: Ackley + Levy variant, n = 50
    {
        BoxProblem p;
        p.name = "AL2";
        p.m = 2;
        p.n = 50;
        p.lb = constant_box(50, -0.5);
        p.ub = constant_box(50, 1.5);
        const double c1 = 20, c2 = 0.2, c3 = 2 * kPi, l0 = 3, l1 = 2, k0 = 1, k1 = 0.1, a = 1;
        p.eval = [=](const Vec& z) {
            Vec f(2);
            f << ackley_value(z, c1, c2, c3), al2_f2_value(z, l0, l1, k0, k1, a);
            return f;
        };
        p.jac = [=](const Vec& z) {
            Mat J(2, z.size());
            J.row(0) = ackley_grad(z, c1, c2, c3);
            J.row(1) = al2_f2_grad(z, l0, l1, k0, k1, a);
            return J;
        };
        reg["AL2"] = {p, true, "appendix A.2"};
    }

    // LP1: Levy + Styblinski-style quartic, n = 50
    {
        BoxProblem p;
        p.name = "LP1";
        p.m = 2;
        p.n = 50;
        p.lb = constant_box(50, -3.0);
        p.ub = constant_box(50, 2.0);
        const double k = 10, a = 1;
        p.eval = [=](const Vec& z) {
            Vec f(2);
            double q = 0;
            for (Eigen::Index i = 0; i < z.size(); ++i)
                q += z[i] * z[i] * z[i] * z[i] - 16.0 * z[i] * z[i] + 5.0 * z[i];
            f << levy_value(z, k, a), 0.5 * q;
            return f;
        };
        p.jac = [=](const Vec& z) {
            Mat J(2, z.size());
            J.row(0) = levy_grad(z, k, a);
            for (Eigen::Index i = 0; i < z.size(); ++i)
                J(1, i) = 2.0 * z[i] * z[i] * z[i] - 16.0 * z[i] + 2.5;
            return J;
        };
        reg["LP1"] = {p, true, "appendix A.3"};
    }

    // LR1: Levy + Rastrigin, n = 50
    {
        BoxProblem p;
        p.name = "LR1";
        p.m = 2;
        p.n = 50;
        p.lb = constant_box(50, -2.0);
        p.ub = constant_box(50, 2.0);
        const double k = 10, a = 1, A = 10, omega = 2 * kPi;
        p.eval = [=](const Vec& z) {
            Vec f(2);
            double rast = A * static_cast<double>(z.size());
            for (Eigen::Index i = 0; i < z.size(); ++i)
                rast += z[i] * z[i] - A * std::cos(omega * z[i]);
            f << levy_value(z, k, a), rast;
            return f;
        };
        p.jac = [=](const Vec& z) {
            Mat J(2, z.size());
            J.row(0) = levy_grad(z, k, a);
            for (Eigen::Index i = 0; i < z.size(); ++i)
                J(1, i) = 2.0 * z[i] + A * omega * std::sin(omega * z[i]);
            return J;
        };
        reg["LR1"] = {p, true, "appendix A.4"};
    }

    // ZDT1/2/3, n = 30
    for (int variant : {1, 2, 3}) {
        BoxProblem p;
        p.name = "ZDT" + std::to_string(variant);
        p.m = 2;
        p.n = 30;
        p.lb = constant_box(30, 0.0);
        p.ub = constant_box(30, 1.0);
        p.eval = [variant](const Vec& z) {
            const double f1 = z[0];
            const double g = zdt_g(z);
            Vec f(2);
            if (variant == 1)
                f << f1, g - std::sqrt(f1 * g);
            else if (variant == 2)
                f << f1, g - f1 * f1 / g;
            else
                f << f1, g - std::sqrt(f1 * g) - f1 * std::sin(10.0 * kPi * f1);
            return f;
        };
        p.jac = [variant](const Vec& z) {
            const int n = static_cast<int>(z.size());
            const double f1 = std::max(z[0], 1e-12);  // sqrt singular exactly at z1 = 0
            const double g = zdt_g(z);
            const double coef = 9.0 / (n - 1.0);
            Mat J = Mat::Zero(2, n);
            J(0, 0) = 1.0;
            if (variant == 1 || variant == 3) {
                J(1, 0) = -0.5 * std::sqrt(g / f1);
                for (int i = 1; i < n; ++i) J(1, i) = coef * (1.0 - 0.5 * std::sqrt(f1 / g));
                if (variant == 3)
                    J(1, 0) += -std::sin(10.0 * kPi * z[0]) -
                               10.0 * kPi * z[0] * std::cos(10.0 * kPi * z[0]);
            } else {
                J(1, 0) = -2.0 * z[0] / g;
                for (int i = 1; i < n; ++i) J(1, i) = coef * (1.0 + (z[0] / g) * (z[0] / g));
            }
            return J;
        };
        ProblemSpec spec{p, false, "zitzler2000"};
        if (variant == 1)
            spec.problem.front_oracle = [](int c) {
                return line_front(c, [](double u) {
                    Vec f(2);
                    f << u * u, 1.0 - u;
                    return f;
                });
            };
        else if (variant == 2)
            spec.problem.front_oracle = [](int c) {
                return line_front(c, [](double u) {
                    Vec f(2);
                    f << u, 1.0 - u * u;
                    return f;
                });
            };
        else
            spec.problem.front_oracle = [](int c) { return zdt3_front(c); };
        reg[p.name] = spec;
    }

    // DTLZ problems
    {
        auto add = [&reg](const std::string& name, int m, int n, int variant, bool multimodal) {
            ProblemSpec spec{make_dtlz(name, m, n, variant), multimodal, "deb2002scalable"};
            if (variant == 1) {
                if (m == 2)
                    spec.problem.front_oracle = [](int c) {
                        return line_front(c, [](double u) {
                            Vec f(2);
                            f << 0.5 * u, 0.5 * (1.0 - u);
                            return f;
                        });
                    };
                else
                    spec.problem.front_oracle = [](int c) { return simplex_front(c, 0.5); };
            } else {
                if (m == 2)
                    spec.problem.front_oracle = [](int c) {
                        return line_front(c, [](double u) {
                            Vec f(2);
                            f << std::cos(u * kPi / 2.0), std::sin(u * kPi / 2.0);
                            return f;
                        });
                    };
                else
                    spec.problem.front_oracle = [](int c) { return sphere_front(c); };
            }
            reg[name] = spec;
        };
        add("DTLZ1", 3, 7, 1, true);
        add("DTLZ2", 3, 12, 2, false);
        add("DTLZ1n2", 2, 2, 1, true);
        add("DTLZ2n2", 2, 2, 2, false);
        add("DTLZ3n2", 2, 2, 3, true);
    }

    // MOP2 (Fonseca-Fleming), n = 4
    {
        BoxProblem p;
        p.name = "MOP2";
        p.m = 2;
        p.n = 4;
        p.lb = constant_box(4, -4.0);
        p.ub = constant_box(4, 4.0);
        const double s = 1.0 / std::sqrt(4.0);
        p.eval = [s](const Vec& z) {
            Vec f(2);
            f << 1.0 - std::exp(-(z.array() - s).square().sum()),
                1.0 - std::exp(-(z.array() + s).square().sum());
            return f;
        };
        p.jac = [s](const Vec& z) {
            const double e1 = std::exp(-(z.array() - s).square().sum());
            const double e2 = std::exp(-(z.array() + s).square().sum());
            Mat J(2, z.size());
            J.row(0) = 2.0 * e1 * (z.array() - s);
            J.row(1) = 2.0 * e2 * (z.array() + s);
            return J;
        };
        p.front_oracle = [s](int c) {
            return line_front(c, [s](double u) {
                const double t = -s + 2.0 * s * u;
                const double n = 4.0;
                Vec f(2);
                f << 1.0 - std::exp(-n * (t - s) * (t - s)), 1.0 - std::exp(-n * (t + s) * (t + s));
                return f;
            });
        };
        reg["MOP2"] = {p, false, "fonseca1995"};
    }

    // GDTEST1: parabola pair plus an equal-level ripple.  Ripple wedges east
    // of the second well are locally weak efficient, strictly dominated by
    // the wedges inside [0, 2.5].
    {
        BoxProblem p;
        p.name = "GDTEST1";
        p.m = 2;
        p.n = 1;
        p.lb = constant_box(1, gdtest::kBox1Lo);
        p.ub = constant_box(1, gdtest::kBox1Hi);
        const double w = gdtest::kWellOffset;
        p.eval = [w](const Vec& z) {
            const double b = gd1_ripple(z[0]);
            Vec f(2);
            f << z[0] * z[0] + b, (z[0] - w) * (z[0] - w) + b;
            return f;
        };
        p.jac = [w](const Vec& z) {
            const double db = gd1_ripple_deriv(z[0]);
            Mat J(2, 1);
            J << 2.0 * z[0] + db, 2.0 * (z[0] - w) + db;
            return J;
        };
        // the front is a union of wedge intervals; sample it by filtering a
        // dense curve sample (sort-by-f1 sweep)
        p.front_oracle = [w](int c) {
            const int dense = 40001;
            std::vector<Vec> curve;
            curve.reserve(dense);
            for (int i = 0; i < dense; ++i) {
                const double z = gdtest::kBox1Lo + (gdtest::kBox1Hi - gdtest::kBox1Lo) * i / (dense - 1);
                const double b = gd1_ripple(z);
                Vec f(2);
                f << z * z + b, (z - w) * (z - w) + b;
                curve.push_back(f);
            }
            std::sort(curve.begin(), curve.end(), [](const Vec& a, const Vec& b) {
                return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
            });
            std::vector<Vec> nd;
            double best_f2 = std::numeric_limits<double>::infinity();
            for (const auto& f : curve) {
                if (f[1] < best_f2) {
                    nd.push_back(f);
                    best_f2 = f[1];
                }
            }
            std::vector<Vec> out;
            const int cc = std::max(c, 1);
            for (int i = 0; i < cc; ++i)
                out.push_back(nd[(cc == 1) ? 0 : (i * (nd.size() - 1)) / (cc - 1)]);
            return out;
        };
        reg["GDTEST1"] = {p, true, "synthetic"};
    }

    // GDTEST2: positional variable x1 against a multi-level rippled distance
    // q(x2); wells of q above level zero carry the dominated local fronts.
    {
        BoxProblem p;
        p.name = "GDTEST2";
        p.m = 2;
        p.n = 2;
        p.lb = Vec(2);
        p.ub = Vec(2);
        p.lb << 0.0, -1.0;
        p.ub << 1.0, 1.0;
        p.eval = [](const Vec& z) {
            const double q = gd2_distance(z[1]);
            Vec f(2);
            f << z[0] * (1.0 + q), (1.0 - z[0]) * (1.0 + q);
            return f;
        };
        p.jac = [](const Vec& z) {
            const double q = gd2_distance(z[1]);
            const double dq = gd2_distance_deriv(z[1]);
            Mat J(2, 2);
            J << 1.0 + q, z[0] * dq, -(1.0 + q), (1.0 - z[0]) * dq;
            return J;
        };
        p.front_oracle = [](int c) {
            return line_front(c, [](double u) {
                Vec f(2);
                f << u, 1.0 - u;
                return f;
            });
        };
        reg["GDTEST2"] = {p, true, "synthetic"};
    }

    for (auto& [name, spec] : reg) spec.problem.validate();
    return reg;
}

}  // namespace

const std::map<std::string, ProblemSpec>& registry() {
    static const std::map<std::string, ProblemSpec> reg = build_registry();
    return reg;
}

const ProblemSpec& lookup(const std::string& name) {
    const auto& reg = registry();
    auto it = reg.find(name);
    if (it == reg.end()) throw NotFoundError("unknown problem: " + name);
    return it->second;
}

std::vector<std::string> problem_names() {
    std::vector<std::string> names;
    for (const auto& [name, spec] : registry()) names.push_back(name);
    return names;
}

std::optional<std::vector<Vec>> true_front_sample(const ProblemSpec& spec, int count) {
    if (!spec.problem.front_oracle) return std::nullopt;
    return spec.problem.front_oracle(count);
}

}  // namespace mogd
