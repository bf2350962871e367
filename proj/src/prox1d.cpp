#include "snake/prox1d.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace snake::prox1d {

namespace {

void check_inputs(std::span<const double> y, double scale, std::span<const double> weights,
                  std::span<double> out, const char* who) {
  if (y.empty()) throw std::invalid_argument(std::string(who) + ": empty input");
  if (out.size() != y.size()) throw std::invalid_argument(std::string(who) + ": output size mismatch");
  if (!(scale >= 0.0) || !std::isfinite(scale))
    throw std::invalid_argument(std::string(who) + ": step must be finite and >= 0");
  for (double v : y)
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(who) + ": non-finite input");
  if (!weights.empty()) {
    if (weights.size() != y.size() - 1)
      throw std::invalid_argument(std::string(who) + ": weight count must equal edge count");
    for (double w : weights)
      if (!(w > 0.0) || !std::isfinite(w))
        throw std::invalid_argument(std::string(who) + ": weights must be positive and finite");
  }
}

struct HullPoint {
  std::int64_t pos;
  double val;
};

// slope(anchor -> a) < slope(anchor -> b), by cross multiplication.
bool slope_less(std::int64_t ap, double av, const HullPoint& a, const HullPoint& b) {
  return (a.val - av) * static_cast<double>(b.pos - ap) <
         (b.val - av) * static_cast<double>(a.pos - ap);
}

}  // namespace

void tv_prox_path(std::span<const double> y, double alpha, std::span<const double> weights,
                  std::span<double> out) {
  check_inputs(y, alpha, weights, out, "tv_prox_path");
  const std::int64_t n = static_cast<std::int64_t>(y.size());
  if (n == 1 || alpha == 0.0) {
    std::copy(y.begin(), y.end(), out.begin());
    return;
  }

  // Running sums r_0..r_n and tube half-widths at interior breakpoints.
  std::vector<double> r(static_cast<std::size_t>(n) + 1);
  r[0] = 0.0;
  for (std::int64_t k = 1; k <= n; ++k) r[k] = r[k - 1] + y[k - 1];
  const auto half_width = [&](std::int64_t k) {
    return alpha * (weights.empty() ? 1.0 : weights[k - 1]);
  };

  std::int64_t anchor_pos = 0;
  double anchor_val = 0.0;
  std::vector<HullPoint> upper, lower;  // convex minorant / concave majorant

  while (anchor_pos < n) {
    upper.clear();
    lower.clear();
    HullPoint contact{n, r[n]};
    bool found = false;

    for (std::int64_t k = anchor_pos + 1; k <= n && !found; ++k) {
      double hi, lo;
      if (k == n) {
        hi = lo = r[n];  // the tube is pinned at the right end
      } else {
        const double h = half_width(k);
        hi = r[k] + h;
        lo = r[k] - h;
      }

      // Greatest convex minorant of the upper bounds: slopes nondecreasing.
      while (!upper.empty()) {
        const HullPoint& p1 = upper.back();
        const std::int64_t p0 = upper.size() >= 2 ? upper[upper.size() - 2].pos : anchor_pos;
        const double v0 = upper.size() >= 2 ? upper[upper.size() - 2].val : anchor_val;
        if ((p1.val - v0) * static_cast<double>(k - p1.pos) >=
            (hi - p1.val) * static_cast<double>(p1.pos - p0)) {
          upper.pop_back();
        } else {
          break;
        }
      }
      upper.push_back({k, hi});
      // The string cannot start flatter than the lower hull demands and
      // steeper than the upper hull allows; when those cross, it must first
      // touch the lower tube at the lower hull's leading vertex.
      if (!lower.empty() &&
          slope_less(anchor_pos, anchor_val, upper.front(), lower.front())) {
        contact = lower.front();
        found = true;
        break;
      }

      // Least concave majorant of the lower bounds: slopes nonincreasing.
      while (!lower.empty()) {
        const HullPoint& p1 = lower.back();
        const std::int64_t p0 = lower.size() >= 2 ? lower[lower.size() - 2].pos : anchor_pos;
        const double v0 = lower.size() >= 2 ? lower[lower.size() - 2].val : anchor_val;
        if ((p1.val - v0) * static_cast<double>(k - p1.pos) <=
            (lo - p1.val) * static_cast<double>(p1.pos - p0)) {
          lower.pop_back();
        } else {
          break;
        }
      }
      lower.push_back({k, lo});
      if (slope_less(anchor_pos, anchor_val, upper.front(), lower.front())) {
        contact = upper.front();
        found = true;
        break;
      }
    }

    // The string runs straight from the anchor to the contact; increments of
    // the string are the solution values.
    const double slope =
        (contact.val - anchor_val) / static_cast<double>(contact.pos - anchor_pos);
    for (std::int64_t i = anchor_pos; i < contact.pos; ++i) out[i] = slope;
    anchor_pos = contact.pos;
    anchor_val = contact.val;
  }
}

void laplacian_prox_path(std::span<const double> y, double lambda,
                         std::span<const double> weights, std::span<double> out) {
  check_inputs(y, lambda, weights, out, "laplacian_prox_path");
  const std::int64_t n = static_cast<std::int64_t>(y.size());
  if (n == 1 || lambda == 0.0) {
    std::copy(y.begin(), y.end(), out.begin());
    return;
  }

  // Tridiagonal I + 2*lambda*L: diagonal 1 + 2*lambda*(w_{k-1}+w_k), off
  // diagonals -2*lambda*w_k.
  const auto w = [&](std::int64_t k) { return weights.empty() ? 1.0 : weights[k]; };
  std::vector<double> cp(static_cast<std::size_t>(n) - 1), dp(static_cast<std::size_t>(n));

  double diag = 1.0 + 2.0 * lambda * w(0);
  cp[0] = -2.0 * lambda * w(0) / diag;
  dp[0] = y[0] / diag;
  for (std::int64_t i = 1; i < n; ++i) {
    const double wl = w(i - 1);
    const double wr = i < n - 1 ? w(i) : 0.0;
    const double a = -2.0 * lambda * wl;  // subdiagonal entry
    diag = 1.0 + 2.0 * lambda * (wl + wr);
    const double m = diag - a * cp[i - 1];
    if (i < n - 1) cp[i] = -2.0 * lambda * wr / m;
    dp[i] = (y[i] - a * dp[i - 1]) / m;
  }
  out[n - 1] = dp[n - 1];
  for (std::int64_t i = n - 2; i >= 0; --i) out[i] = dp[i] - cp[i] * out[i + 1];
}

void laplacian_prox_dct(std::span<const double> y, double lambda, std::span<double> out) {
  check_inputs(y, lambda, {}, out, "laplacian_prox_dct");
  const std::int64_t n = static_cast<std::int64_t>(y.size());
  if (n == 1 || lambda == 0.0) {
    std::copy(y.begin(), y.end(), out.begin());
    return;
  }
  const double pi = std::acos(-1.0);

  // DCT-II through a length-n complex FFT on the even/odd reordering
  // (Makhoul 1980): X_k = Re(exp(-i pi k / (2n)) * FFT(v)_k).
  std::vector<std::complex<double>> v(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; 2 * j < n; ++j) v[j] = y[2 * j];
  for (std::int64_t j = 0; 2 * j + 1 < n; ++j) v[n - 1 - j] = y[2 * j + 1];

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, v);

  std::vector<double> coeff(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) {
    const std::complex<double> rot = std::polar(1.0, -pi * k / (2.0 * n));
    coeff[k] = (rot * spectrum[k]).real() /
               (1.0 + 4.0 * lambda * (1.0 - std::cos(pi * k / n)));
  }

  // Inverse: the spectrum of a real sequence obeys A_{n-k} = -i conj(A_k) in
  // these rotated coordinates, so Im A_k = -X_{n-k} recovers the full FFT.
  std::vector<std::complex<double>> back(static_cast<std::size_t>(n));
  back[0] = coeff[0];
  for (std::int64_t k = 1; k < n; ++k)
    back[k] = std::polar(1.0, pi * k / (2.0 * n)) *
              std::complex<double>(coeff[k], -coeff[n - k]);
  std::vector<std::complex<double>> restored;
  fft.inv(restored, back);

  for (std::int64_t j = 0; 2 * j < n; ++j) out[2 * j] = restored[j].real();
  for (std::int64_t j = 0; 2 * j + 1 < n; ++j) out[2 * j + 1] = restored[n - 1 - j].real();
}

Eigen::VectorXd tv_prox_path(const Eigen::Ref<const Eigen::VectorXd>& y, double alpha,
                             std::span<const double> weights) {
  Eigen::VectorXd x(y.size());
  tv_prox_path(std::span<const double>(y.data(), y.size()), alpha, weights,
               std::span<double>(x.data(), x.size()));
  return x;
}

Eigen::VectorXd laplacian_prox_path(const Eigen::Ref<const Eigen::VectorXd>& y, double lambda,
                                    std::span<const double> weights) {
  Eigen::VectorXd x(y.size());
  laplacian_prox_path(std::span<const double>(y.data(), y.size()), lambda, weights,
                      std::span<double>(x.data(), x.size()));
  return x;
}

Eigen::VectorXd laplacian_prox_dct(const Eigen::Ref<const Eigen::VectorXd>& y, double lambda) {
  Eigen::VectorXd x(y.size());
  laplacian_prox_dct(std::span<const double>(y.data(), y.size()), lambda,
                     std::span<double>(x.data(), x.size()));
  return x;
}

}  // namespace snake::prox1d
