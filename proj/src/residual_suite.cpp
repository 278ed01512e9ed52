#include "dds/problems.hpp"

#include <cmath>
#include <vector>

namespace dds {
namespace {

constexpr double kPi = 3.14159265358979323846;

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<int>(v.size()));
  int i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

VectorResidualProblem rosenbrock() {
  VectorResidualProblem p;
  p.name = "rosenbrock";
  p.n = 2;
  p.m = 2;
  p.x0 = vec({-1.2, 1.0});
  p.residual = [](const Vector& x) {
    Vector f(2);
    f << 10.0 * (x(1) - x(0) * x(0)), 1.0 - x(0);
    return f;
  };
  p.jacobian = [](const Vector& x) {
    Matrix j(2, 2);
    j << -20.0 * x(0), 10.0, -1.0, 0.0;
    return j;
  };
  return p;
}

VectorResidualProblem freudenstein_roth() {
  VectorResidualProblem p;
  p.name = "freudenstein_roth";
  p.n = 2;
  p.m = 2;
  p.x0 = vec({0.5, -2.0});
  p.residual = [](const Vector& x) {
    Vector f(2);
    f << -13.0 + x(0) + ((5.0 - x(1)) * x(1) - 2.0) * x(1),
        -29.0 + x(0) + ((x(1) + 1.0) * x(1) - 14.0) * x(1);
    return f;
  };
  p.jacobian = [](const Vector& x) {
    Matrix j(2, 2);
    j << 1.0, 10.0 * x(1) - 3.0 * x(1) * x(1) - 2.0, 1.0,
        3.0 * x(1) * x(1) + 2.0 * x(1) - 14.0;
    return j;
  };
  return p;
}

VectorResidualProblem powell_badly_scaled() {
  VectorResidualProblem p;
  p.name = "powell_badly_scaled";
  p.n = 2;
  p.m = 2;
  p.x0 = vec({0.0, 1.0});
  p.residual = [](const Vector& x) {
    Vector f(2);
    f << 1e4 * x(0) * x(1) - 1.0,
        std::exp(-x(0)) + std::exp(-x(1)) - 1.0001;
    return f;
  };
  p.jacobian = [](const Vector& x) {
    Matrix j(2, 2);
    j << 1e4 * x(1), 1e4 * x(0), -std::exp(-x(0)), -std::exp(-x(1));
    return j;
  };
  return p;
}

VectorResidualProblem brown_badly_scaled() {
  VectorResidualProblem p;
  p.name = "brown_badly_scaled";
  p.n = 2;
  p.m = 3;
  p.x0 = vec({1.0, 1.0});
  p.residual = [](const Vector& x) {
    Vector f(3);
    f << x(0) - 1e6, x(1) - 2e-6, x(0) * x(1) - 2.0;
    return f;
  };
  p.jacobian = [](const Vector& x) {
    Matrix j(3, 2);
    j << 1.0, 0.0, 0.0, 1.0, x(1), x(0);
    return j;
  };
  return p;
}

VectorResidualProblem beale() {
  VectorResidualProblem p;
  p.name = "beale";
  p.n = 2;
  p.m = 3;
  p.x0 = vec({1.0, 1.0});
  p.residual = [](const Vector& x) {
    const double y[3] = {1.5, 2.25, 2.625};
    Vector f(3);
    for (int i = 0; i < 3; ++i)
      f(i) = y[i] - x(0) * (1.0 - std::pow(x(1), i + 1));
    return f;
  };
  p.jacobian = [](const Vector& x) {
    Matrix j(3, 2);
    for (int i = 0; i < 3; ++i) {
      j(i, 0) = -(1.0 - std::pow(x(1), i + 1));
      j(i, 1) = x(0) * (i + 1) * std::pow(x(1), i);
    }
    return j;
  };
  return p;
}

VectorResidualProblem jennrich_sampson() {
  VectorResidualProblem p;
  p.name = "jennrich_sampson";
  p.n = 2;
  p.m = 10;
  p.x0 = vec({0.3, 0.4});
  p.residual = [](const Vector& x) {
    Vector f(10);
    for (int i = 1; i <= 10; ++i)
      f(i - 1) = 2.0 + 2.0 * i - (std::exp(i * x(0)) + std::exp(i * x(1)));
    return f;
  };
  p.jacobian = [](const Vector& x) {
    Matrix j(10, 2);
    for (int i = 1; i <= 10; ++i) {
      j(i - 1, 0) = -i * std::exp(i * x(0));
      j(i - 1, 1) = -i * std::exp(i * x(1));
    }
    return j;
  };
  return p;
}

double helical_theta(double x1, double x2) {
  if (x1 > 0.0) return std::atan(x2 / x1) / (2.0 * kPi);
  if (x1 < 0.0) return std::atan(x2 / x1) / (2.0 * kPi) + 0.5;
  return x2 >= 0.0 ? 0.25 : -0.25;
}

VectorResidualProblem helical_valley() {
  VectorResidualProblem p;
  p.name = "helical_valley";
  p.n = 3;
  p.m = 3;
  p.x0 = vec({-1.0, 0.0, 0.0});
  p.residual = [](const Vector& x) {
    Vector f(3);
    f << 10.0 * (x(2) - 10.0 * helical_theta(x(0), x(1))),
        10.0 * (std::sqrt(x(0) * x(0) + x(1) * x(1)) - 1.0), x(2);
    return f;
  };
  p.jacobian = [](const Vector& x) {
    double r2 = x(0) * x(0) + x(1) * x(1);
    double r = std::sqrt(r2);
    Matrix j(3, 3);
    j << 50.0 / kPi * x(1) / r2, -50.0 / kPi * x(0) / r2, 10.0,
        10.0 * x(0) / r, 10.0 * x(1) / r, 0.0,
        0.0, 0.0, 1.0;
    return j;
  };
  return p;
}

VectorResidualProblem bard() {
  VectorResidualProblem p;
  p.name = "bard";
  p.n = 3;
  p.m = 15;
  p.x0 = vec({1.0, 1.0, 1.0});
  static const double y[15] = {0.14, 0.18, 0.22, 0.25, 0.29,
                               0.32, 0.35, 0.39, 0.37, 0.58,
                               0.73, 0.96, 1.34, 2.10, 4.39};
  p.residual = [](const Vector& x) {
    Vector f(15);
    for (int i = 1; i <= 15; ++i) {
      double u = i, v = 16.0 - i, w = std::min(u, v);
      f(i - 1) = y[i - 1] - (x(0) + u / (v * x(1) + w * x(2)));
    }
    return f;
  };
  p.jacobian = [](const Vector& x) {
    Matrix j(15, 3);
    for (int i = 1; i <= 15; ++i) {
      double u = i, v = 16.0 - i, w = std::min(u, v);
      double d = v * x(1) + w * x(2);
      j(i - 1, 0) = -1.0;
      j(i - 1, 1) = u * v / (d * d);
      j(i - 1, 2) = u * w / (d * d);
    }
    return j;
  };
  return p;
}

VectorResidualProblem gaussian_fit() {
  VectorResidualProblem p;
  p.name = "gaussian";
  p.n = 3;
  p.m = 15;
  p.x0 = vec({0.4, 1.0, 0.0});
  static const double y[15] = {0.0009, 0.0044, 0.0175, 0.0540, 0.1295,
                               0.2420, 0.3521, 0.3989, 0.3521, 0.2420,
                               0.1295, 0.0540, 0.0175, 0.0044, 0.0009};
  p.residual = [](const Vector& x) {
    Vector f(15);
    for (int i = 1; i <= 15; ++i) {
      double t = (8.0 - i) / 2.0;
      double s = t - x(2);
      f(i - 1) = x(0) * std::exp(-x(1) * s * s / 2.0) - y[i - 1];
    }
    return f;
  };
  p.jacobian = [](const Vector& x) {
    Matrix j(15, 3);
    for (int i = 1; i <= 15; ++i) {
      double t = (8.0 - i) / 2.0;
      double s = t - x(2);
      double e = std::exp(-x(1) * s * s / 2.0);
      j(i - 1, 0) = e;
      j(i - 1, 1) = -x(0) * s * s / 2.0 * e;
      j(i - 1, 2) = x(0) * x(1) * s * e;
    }
    return j;
  };
  return p;
}

VectorResidualProblem box_3d() {
  VectorResidualProblem p;
  p.name = "box_3d";
  p.n = 3;
  p.m = 10;
  p.x0 = vec({0.0, 10.0, 20.0});
  p.residual = [](const Vector& x) {
    Vector f(10);
    for (int i = 1; i <= 10; ++i) {
      double t = 0.1 * i;
      f(i - 1) = std::exp(-t * x(0)) - std::exp(-t * x(1)) -
                 x(2) * (std::exp(-t) - std::exp(-10.0 * t));
    }
    return f;
  };
  p.jacobian = [](const Vector& x) {
    Matrix j(10, 3);
    for (int i = 1; i <= 10; ++i) {
      double t = 0.1 * i;
      j(i - 1, 0) = -t * std::exp(-t * x(0));
      j(i - 1, 1) = t * std::exp(-t * x(1));
      j(i - 1, 2) = -(std::exp(-t) - std::exp(-10.0 * t));
    }
    return j;
  };
  return p;
}

VectorResidualProblem powell_singular() {
  VectorResidualProblem p;
  p.name = "powell_singular";
  p.n = 4;
  p.m = 4;
  p.x0 = vec({3.0, -1.0, 0.0, 1.0});
  p.residual = [](const Vector& x) {
    Vector f(4);
    f << x(0) + 10.0 * x(1), std::sqrt(5.0) * (x(2) - x(3)),
        (x(1) - 2.0 * x(2)) * (x(1) - 2.0 * x(2)),
        std::sqrt(10.0) * (x(0) - x(3)) * (x(0) - x(3));
    return f;
  };
  p.jacobian = [](const Vector& x) {
    Matrix j = Matrix::Zero(4, 4);
    j(0, 0) = 1.0;
    j(0, 1) = 10.0;
    j(1, 2) = std::sqrt(5.0);
    j(1, 3) = -std::sqrt(5.0);
    j(2, 1) = 2.0 * (x(1) - 2.0 * x(2));
    j(2, 2) = -4.0 * (x(1) - 2.0 * x(2));
    j(3, 0) = 2.0 * std::sqrt(10.0) * (x(0) - x(3));
    j(3, 3) = -2.0 * std::sqrt(10.0) * (x(0) - x(3));
    return j;
  };
  return p;
}

VectorResidualProblem wood() {
  VectorResidualProblem p;
  p.name = "wood";
  p.n = 4;
  p.m = 6;
  p.x0 = vec({-3.0, -1.0, -3.0, -1.0});
  p.residual = [](const Vector& x) {
    Vector f(6);
    f << 10.0 * (x(1) - x(0) * x(0)), 1.0 - x(0),
        std::sqrt(90.0) * (x(3) - x(2) * x(2)), 1.0 - x(2),
        std::sqrt(10.0) * (x(1) + x(3) - 2.0), (x(1) - x(3)) / std::sqrt(10.0);
    return f;
  };
  p.jacobian = [](const Vector& x) {
    Matrix j = Matrix::Zero(6, 4);
    j(0, 0) = -20.0 * x(0);
    j(0, 1) = 10.0;
    j(1, 0) = -1.0;
    j(2, 2) = -2.0 * std::sqrt(90.0) * x(2);
    j(2, 3) = std::sqrt(90.0);
    j(3, 2) = -1.0;
    j(4, 1) = std::sqrt(10.0);
    j(4, 3) = std::sqrt(10.0);
    j(5, 1) = 1.0 / std::sqrt(10.0);
    j(5, 3) = -1.0 / std::sqrt(10.0);
    return j;
  };
  return p;
}

VectorResidualProblem kowalik_osborne() {
  VectorResidualProblem p;
  p.name = "kowalik_osborne";
  p.n = 4;
  p.m = 11;
  p.x0 = vec({0.25, 0.39, 0.415, 0.39});
  static const double y[11] = {0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627,
                               0.0456, 0.0342, 0.0323, 0.0235, 0.0246};
  static const double u[11] = {4.0000, 2.0000, 1.0000, 0.5000, 0.2500, 0.1670,
                               0.1250, 0.1000, 0.0833, 0.0714, 0.0625};
  p.residual = [](const Vector& x) {
    Vector f(11);
    for (int i = 0; i < 11; ++i) {
      double num = u[i] * u[i] + u[i] * x(1);
      double den = u[i] * u[i] + u[i] * x(2) + x(3);
      f(i) = y[i] - x(0) * num / den;
    }
    return f;
  };
  p.jacobian = [](const Vector& x) {
    Matrix j(11, 4);
    for (int i = 0; i < 11; ++i) {
      double num = u[i] * u[i] + u[i] * x(1);
      double den = u[i] * u[i] + u[i] * x(2) + x(3);
      j(i, 0) = -num / den;
      j(i, 1) = -x(0) * u[i] / den;
      j(i, 2) = x(0) * num * u[i] / (den * den);
      j(i, 3) = x(0) * num / (den * den);
    }
    return j;
  };
  return p;
}

VectorResidualProblem brown_dennis() {
  VectorResidualProblem p;
  p.name = "brown_dennis";
  p.n = 4;
  p.m = 20;
  p.x0 = vec({25.0, 5.0, -5.0, -1.0});
  p.residual = [](const Vector& x) {
    Vector f(20);
    for (int i = 1; i <= 20; ++i) {
      double t = i / 5.0;
      double a = x(0) + t * x(1) - std::exp(t);
      double b = x(2) + x(3) * std::sin(t) - std::cos(t);
      f(i - 1) = a * a + b * b;
    }
    return f;
  };
  p.jacobian = [](const Vector& x) {
    Matrix j(20, 4);
    for (int i = 1; i <= 20; ++i) {
      double t = i / 5.0;
      double a = x(0) + t * x(1) - std::exp(t);
      double b = x(2) + x(3) * std::sin(t) - std::cos(t);
      j(i - 1, 0) = 2.0 * a;
      j(i - 1, 1) = 2.0 * a * t;
      j(i - 1, 2) = 2.0 * b;
      j(i - 1, 3) = 2.0 * b * std::sin(t);
    }
    return j;
  };
  return p;
}

VectorResidualProblem osborne1() {
  VectorResidualProblem p;
  p.name = "osborne1";
  p.n = 5;
  p.m = 33;
  p.x0 = vec({0.5, 1.5, -1.0, 0.01, 0.02});
  static const double y[33] = {
      0.844, 0.908, 0.932, 0.936, 0.925, 0.908, 0.881, 0.850, 0.818,
      0.784, 0.751, 0.718, 0.685, 0.658, 0.628, 0.603, 0.580, 0.558,
      0.538, 0.522, 0.506, 0.490, 0.478, 0.467, 0.457, 0.448, 0.438,
      0.431, 0.424, 0.420, 0.414, 0.411, 0.406};
  p.residual = [](const Vector& x) {
    Vector f(33);
    for (int i = 0; i < 33; ++i) {
      double t = 10.0 * i;
      f(i) = y[i] - (x(0) + x(1) * std::exp(-t * x(3)) +
                     x(2) * std::exp(-t * x(4)));
    }
    return f;
  };
  p.jacobian = [](const Vector& x) {
    Matrix j(33, 5);
    for (int i = 0; i < 33; ++i) {
      double t = 10.0 * i;
      double e1 = std::exp(-t * x(3));
      double e2 = std::exp(-t * x(4));
      j(i, 0) = -1.0;
      j(i, 1) = -e1;
      j(i, 2) = -e2;
      j(i, 3) = x(1) * t * e1;
      j(i, 4) = x(2) * t * e2;
    }
    return j;
  };
  return p;
}

VectorResidualProblem extended_rosenbrock(int n) {
  VectorResidualProblem p;
  p.name = "ext_rosenbrock_" + std::to_string(n);
  p.n = n;
  p.m = n;
  p.x0 = Vector(n);
  for (int i = 0; i < n; i += 2) {
    p.x0(i) = -1.2;
    p.x0(i + 1) = 1.0;
  }
  p.residual = [n](const Vector& x) {
    Vector f(n);
    for (int i = 0; i < n; i += 2) {
      f(i) = 10.0 * (x(i + 1) - x(i) * x(i));
      f(i + 1) = 1.0 - x(i);
    }
    return f;
  };
  p.jacobian = [n](const Vector& x) {
    Matrix j = Matrix::Zero(n, n);
    for (int i = 0; i < n; i += 2) {
      j(i, i) = -20.0 * x(i);
      j(i, i + 1) = 10.0;
      j(i + 1, i) = -1.0;
    }
    return j;
  };
  return p;
}

VectorResidualProblem extended_powell(int n) {
  VectorResidualProblem p;
  p.name = "ext_powell_" + std::to_string(n);
  p.n = n;
  p.m = n;
  p.x0 = Vector(n);
  for (int i = 0; i < n; i += 4) {
    p.x0(i) = 3.0;
    p.x0(i + 1) = -1.0;
    p.x0(i + 2) = 0.0;
    p.x0(i + 3) = 1.0;
  }
  p.residual = [n](const Vector& x) {
    Vector f(n);
    for (int i = 0; i < n; i += 4) {
      f(i) = x(i) + 10.0 * x(i + 1);
      f(i + 1) = std::sqrt(5.0) * (x(i + 2) - x(i + 3));
      f(i + 2) = (x(i + 1) - 2.0 * x(i + 2)) * (x(i + 1) - 2.0 * x(i + 2));
      f(i + 3) = std::sqrt(10.0) * (x(i) - x(i + 3)) * (x(i) - x(i + 3));
    }
    return f;
  };
  p.jacobian = [n](const Vector& x) {
    Matrix j = Matrix::Zero(n, n);
    for (int i = 0; i < n; i += 4) {
      j(i, i) = 1.0;
      j(i, i + 1) = 10.0;
      j(i + 1, i + 2) = std::sqrt(5.0);
      j(i + 1, i + 3) = -std::sqrt(5.0);
      j(i + 2, i + 1) = 2.0 * (x(i + 1) - 2.0 * x(i + 2));
      j(i + 2, i + 2) = -4.0 * (x(i + 1) - 2.0 * x(i + 2));
      j(i + 3, i) = 2.0 * std::sqrt(10.0) * (x(i) - x(i + 3));
      j(i + 3, i + 3) = -2.0 * std::sqrt(10.0) * (x(i) - x(i + 3));
    }
    return j;
  };
  return p;
}

VectorResidualProblem penalty1(int n) {
  VectorResidualProblem p;
  p.name = "penalty1_" + std::to_string(n);
  p.n = n;
  p.m = n + 1;
  p.x0 = Vector(n);
  for (int i = 0; i < n; ++i) p.x0(i) = i + 1.0;
  const double sa = std::sqrt(1e-5);
  p.residual = [n, sa](const Vector& x) {
    Vector f(n + 1);
    for (int i = 0; i < n; ++i) f(i) = sa * (x(i) - 1.0);
    f(n) = x.squaredNorm() - 0.25;
    return f;
  };
  p.jacobian = [n, sa](const Vector& x) {
    Matrix j = Matrix::Zero(n + 1, n);
    for (int i = 0; i < n; ++i) j(i, i) = sa;
    j.row(n) = 2.0 * x.transpose();
    return j;
  };
  return p;
}

VectorResidualProblem variably_dimensioned(int n) {
  VectorResidualProblem p;
  p.name = "variably_dimensioned_" + std::to_string(n);
  p.n = n;
  p.m = n + 2;
  p.x0 = Vector(n);
  for (int i = 0; i < n; ++i) p.x0(i) = 1.0 - (i + 1.0) / n;
  p.residual = [n](const Vector& x) {
    Vector f(n + 2);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      f(i) = x(i) - 1.0;
      s += (i + 1.0) * (x(i) - 1.0);
    }
    f(n) = s;
    f(n + 1) = s * s;
    return f;
  };
  p.jacobian = [n](const Vector& x) {
    Matrix j = Matrix::Zero(n + 2, n);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += (i + 1.0) * (x(i) - 1.0);
    for (int i = 0; i < n; ++i) {
      j(i, i) = 1.0;
      j(n, i) = i + 1.0;
      j(n + 1, i) = 2.0 * s * (i + 1.0);
    }
    return j;
  };
  return p;
}

VectorResidualProblem trigonometric(int n) {
  VectorResidualProblem p;
  p.name = "trigonometric_" + std::to_string(n);
  p.n = n;
  p.m = n;
  p.x0 = Vector::Constant(n, 1.0 / n);
  p.residual = [n](const Vector& x) {
    double sumcos = x.array().cos().sum();
    Vector f(n);
    for (int i = 0; i < n; ++i)
      f(i) = n - sumcos + (i + 1.0) * (1.0 - std::cos(x(i))) - std::sin(x(i));
    return f;
  };
  p.jacobian = [n](const Vector& x) {
    Matrix j(n, n);
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        j(i, l) = std::sin(x(l));
        if (l == i)
          j(i, l) += (i + 1.0) * std::sin(x(i)) - std::cos(x(i));
      }
    return j;
  };
  return p;
}

VectorResidualProblem broyden_tridiagonal(int n) {
  VectorResidualProblem p;
  p.name = "broyden_tridiagonal_" + std::to_string(n);
  p.n = n;
  p.m = n;
  p.x0 = Vector::Constant(n, -1.0);
  p.residual = [n](const Vector& x) {
    Vector f(n);
    for (int i = 0; i < n; ++i) {
      f(i) = (3.0 - 2.0 * x(i)) * x(i) + 1.0;
      if (i > 0) f(i) -= x(i - 1);
      if (i < n - 1) f(i) -= 2.0 * x(i + 1);
    }
    return f;
  };
  p.jacobian = [n](const Vector& x) {
    Matrix j = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      j(i, i) = 3.0 - 4.0 * x(i);
      if (i > 0) j(i, i - 1) = -1.0;
      if (i < n - 1) j(i, i + 1) = -2.0;
    }
    return j;
  };
  return p;
}

VectorResidualProblem broyden_banded(int n) {
  VectorResidualProblem p;
  p.name = "broyden_banded_" + std::to_string(n);
  p.n = n;
  p.m = n;
  p.x0 = Vector::Constant(n, -1.0);
  p.residual = [n](const Vector& x) {
    Vector f(n);
    for (int i = 0; i < n; ++i) {
      f(i) = x(i) * (2.0 + 5.0 * x(i) * x(i)) + 1.0;
      for (int l = std::max(0, i - 5); l <= std::min(n - 1, i + 1); ++l)
        if (l != i) f(i) -= x(l) * (1.0 + x(l));
    }
    return f;
  };
  p.jacobian = [n](const Vector& x) {
    Matrix j = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      j(i, i) = 2.0 + 15.0 * x(i) * x(i);
      for (int l = std::max(0, i - 5); l <= std::min(n - 1, i + 1); ++l)
        if (l != i) j(i, l) = -(1.0 + 2.0 * x(l));
    }
    return j;
  };
  return p;
}

VectorResidualProblem linear_full_rank(int n, int m) {
  VectorResidualProblem p;
  p.name = "linear_full_rank_" + std::to_string(n) + "_" + std::to_string(m);
  p.n = n;
  p.m = m;
  p.x0 = Vector::Ones(n);
  p.residual = [n, m](const Vector& x) {
    double s = x.sum();
    Vector f(m);
    for (int i = 0; i < m; ++i)
      f(i) = (i < n ? x(i) : 0.0) - 2.0 * s / m - 1.0;
    return f;
  };
  p.jacobian = [n, m](const Vector&) {
    Matrix j = Matrix::Constant(m, n, -2.0 / m);
    for (int i = 0; i < n; ++i) j(i, i) += 1.0;
    return j;
  };
  return p;
}

std::vector<VectorResidualProblem> make_suite() {
  std::vector<VectorResidualProblem> s;
  s.push_back(rosenbrock());
  s.push_back(freudenstein_roth());
  s.push_back(powell_badly_scaled());
  s.push_back(brown_badly_scaled());
  s.push_back(beale());
  s.push_back(jennrich_sampson());
  s.push_back(helical_valley());
  s.push_back(bard());
  s.push_back(gaussian_fit());
  s.push_back(box_3d());
  s.push_back(powell_singular());
  s.push_back(wood());
  s.push_back(kowalik_osborne());
  s.push_back(brown_dennis());
  s.push_back(osborne1());
  s.push_back(extended_rosenbrock(10));
  s.push_back(extended_powell(12));
  s.push_back(penalty1(10));
  s.push_back(variably_dimensioned(10));
  s.push_back(trigonometric(10));
  s.push_back(broyden_tridiagonal(30));
  s.push_back(broyden_banded(30));
  s.push_back(linear_full_rank(9, 45));
  return s;
}

}  // namespace

const std::vector<VectorResidualProblem>& residual_suite() {
  static const std::vector<VectorResidualProblem> suite = make_suite();
  return suite;
}

const VectorResidualProblem* find_residual(const std::string& name) {
  for (const auto& p : residual_suite())
    if (p.name == name) return &p;
  return nullptr;
}

}  // namespace dds
