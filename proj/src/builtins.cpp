#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "tvo/errors.hpp"
#include "tvo/fusion_system.hpp"

namespace tvo {

namespace detail {
std::vector<std::array<int, 3>> f_axis_left(const FusionRing&, int, int, int,
                                            int);
std::vector<std::array<int, 3>> f_axis_right(const FusionRing&, int, int, int,
                                             int);
}  // namespace detail

namespace {

// Writes the identity matrix into every admissible block with a unit outer
// label (the unit-triangle gauge); both axes enumerate the same multiplicity
// space in these cases.
void fill_unit_blocks(FusionSystem& fs) {
  const auto& ring = fs.ring;
  const int rank = ring.rank();
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      for (int k = 0; k < rank; ++k) {
        if (i != 0 && j != 0 && k != 0) continue;
        for (int l = 0; l < rank; ++l) {
          auto left = detail::f_axis_left(ring, i, j, k, l);
          auto right = detail::f_axis_right(ring, i, j, k, l);
          for (size_t t = 0; t < left.size(); ++t)
            fs.F[{i, j, k, l, left[t][0], left[t][1], left[t][2], right[t][0],
                  right[t][1], right[t][2]}] = 1.0;
        }
      }
}

FusionSystem finish(FusionSystem fs) {
  fs.dims = quantum_dims(fs.ring);
  return fs;
}

}  // namespace

FusionSystem vec_omega_cyclic(int n, int k) {
  if (n <= 0) throw Error(ErrorKind::BadInput, "group order must be positive");
  k = ((k % n) + n) % n;
  FusionSystem fs;
  fs.ring = FusionRing::with_rank(
      "vec_z" + std::to_string(n) + "_" + std::to_string(k), n);
  for (int a = 0; a < n; ++a) {
    fs.ring.dual[a] = (n - a) % n;
    for (int b = 0; b < n; ++b) fs.ring.N[a][b][(a + b) % n] = 1;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        // omega(a,b,c) = exp(2 pi i k a floor((b+c)/n) / n)
        long long num = static_cast<long long>(k) * a * ((b + c) / n);
        fs.F[{a, b, c, (a + b + c) % n, (a + b) % n, 0, 0, (b + c) % n, 0, 0}] =
            unit_root(num, n);
      }
  return finish(std::move(fs));
}

FusionSystem fibonacci() {
  FusionSystem fs;
  fs.ring = FusionRing::with_rank("fibonacci", 2);
  fs.ring.labels = {"1", "tau"};
  fs.ring.dual = {0, 1};
  fs.ring.N[0][0][0] = 1;
  fs.ring.N[0][1][1] = fs.ring.N[1][0][1] = 1;
  fs.ring.N[1][1][0] = fs.ring.N[1][1][1] = 1;
  fill_unit_blocks(fs);
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double s = 1.0 / std::sqrt(phi);
  // F^{tau,tau,tau}_tau over intermediates {1, tau} on both sides.
  fs.F[{1, 1, 1, 1, 0, 0, 0, 0, 0, 0}] = 1.0 / phi;
  fs.F[{1, 1, 1, 1, 0, 0, 0, 1, 0, 0}] = s;
  fs.F[{1, 1, 1, 1, 1, 0, 0, 0, 0, 0}] = s;
  fs.F[{1, 1, 1, 1, 1, 0, 0, 1, 0, 0}] = -1.0 / phi;
  // F^{tau,tau,tau}_1 is the 1x1 identity on the tau channel.
  fs.F[{1, 1, 1, 0, 1, 0, 0, 1, 0, 0}] = 1.0;
  return finish(std::move(fs));
}

FusionSystem tambara_yamagami(int n, int chi, int sign) {
  if (n <= 0) throw Error(ErrorKind::BadInput, "group order must be positive");
  if (std::gcd(((chi % n) + n) % n, n) != 1)
    throw Error(ErrorKind::BadInput,
                "bicharacter parameter must be coprime to the group order");
  if (sign != 1 && sign != -1)
    throw Error(ErrorKind::BadInput, "Frobenius-Schur sign must be +-1");
  const int m = n;  // index of the self-dual object
  FusionSystem fs;
  fs.ring = FusionRing::with_rank(
      "ty" + std::to_string(n) + "_" + std::to_string(((chi % n) + n) % n) +
          (sign > 0 ? "_plus" : "_minus"),
      n + 1);
  fs.ring.labels[m] = "m";
  for (int a = 0; a < n; ++a) {
    fs.ring.dual[a] = (n - a) % n;
    for (int b = 0; b < n; ++b) fs.ring.N[a][b][(a + b) % n] = 1;
    fs.ring.N[a][m][m] = fs.ring.N[m][a][m] = 1;
    fs.ring.N[m][m][a] = 1;
  }
  fs.ring.dual[m] = m;

  auto bichar = [&](int a, int b) {
    return unit_root(static_cast<long long>(chi) * a * b, n);
  };

  fill_unit_blocks(fs);
  // Group-only associator is trivial.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        fs.F[{a, b, c, (a + b + c) % n, (a + b) % n, 0, 0, (b + c) % n, 0, 0}] =
            1.0;
  // Blocks with m legs; for a = 0 or b = 0 the bicharacter degenerates to 1
  // and these agree with the unit-gauge fill.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      fs.F[{a, b, m, m, (a + b) % n, 0, 0, m, 0, 0}] = 1.0;
      fs.F[{m, a, b, m, m, 0, 0, (a + b) % n, 0, 0}] = 1.0;
      fs.F[{a, m, b, m, m, 0, 0, m, 0, 0}] = bichar(a, b);
      fs.F[{m, a, m, b, m, 0, 0, m, 0, 0}] = bichar(a, b);
      fs.F[{m, m, a, (b + a) % n, b, 0, 0, m, 0, 0}] = 1.0;
      fs.F[{a, m, m, b, m, 0, 0, ((b - a) % n + n) % n, 0, 0}] = 1.0;
      // F^{mmm}_m over group intermediates a (left), b (right).
      fs.F[{m, m, m, m, a, 0, 0, b, 0, 0}] =
          (static_cast<double>(sign) / std::sqrt(static_cast<double>(n))) *
          std::conj(bichar(a, b));
    }
  return finish(std::move(fs));
}

FusionSystem ising() {
  FusionSystem fs = tambara_yamagami(2, 1, +1);
  fs.ring.name = "ising";
  fs.ring.labels = {"1", "psi", "sigma"};
  return fs;
}

namespace {

Mat random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Mat a(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) a(r, c) = cd(g(rng), g(rng));
  Eigen::HouseholderQR<Mat> qr(a);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < dim; ++c) {
    cd d = r(c, c);
    q.col(c) *= (std::abs(d) > 0 ? d / std::abs(d) : cd(1.0));
  }
  return q;
}

}  // namespace

FusionSystem apply_tree_unitaries(const FusionSystem& fs, std::uint64_t seed) {
  const auto& ring = fs.ring;
  const int rank = ring.rank();
  std::mt19937_64 rng(seed);

  // One unitary per fusion vertex space (i,j,k); identity when a label is the
  // unit so that the triangle gauge survives.
  std::map<std::array<int, 3>, Mat> u;
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      for (int k = 0; k < rank; ++k) {
        const int nn = ring.n(i, j, k);
        if (nn == 0) continue;
        u[{i, j, k}] = (i == 0 || j == 0 || k == 0)
                           ? Mat::Identity(nn, nn)
                           : random_unitary(nn, rng);
      }

  FusionSystem out = fs;
  out.ring.name = fs.ring.name + "_retree";
  out.F.clear();

  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      for (int k = 0; k < rank; ++k)
        for (int l = 0; l < rank; ++l) {
          auto left = detail::f_axis_left(ring, i, j, k, l);
          auto right = detail::f_axis_right(ring, i, j, k, l);
          if (left.empty()) continue;
          Mat f = Mat::Zero(left.size(), right.size());
          for (size_t r = 0; r < left.size(); ++r)
            for (size_t c = 0; c < right.size(); ++c) {
              auto it = fs.F.find({i, j, k, l, left[r][0], left[r][1],
                                   left[r][2], right[c][0], right[c][1],
                                   right[c][2]});
              if (it != fs.F.end()) f(r, c) = it->second;
            }
          // New vertex bases are columns of u: T'^{m,a'} = sum_a u[a,a'] T^{m,a}.
          Mat fp = Mat::Zero(f.rows(), f.cols());
          for (size_t r2 = 0; r2 < left.size(); ++r2)
            for (size_t c2 = 0; c2 < right.size(); ++c2) {
              const auto [mm, ap, bp] = left[r2];
              const auto [nn, cp, dp] = right[c2];
              const Mat& u1 = u.at({i, j, mm});
              const Mat& u2 = u.at({mm, k, l});
              const Mat& u3 = u.at({j, k, nn});
              const Mat& u4 = u.at({i, nn, l});
              cd acc = 0.0;
              for (size_t r = 0; r < left.size(); ++r) {
                if (left[r][0] != mm) continue;
                for (size_t c = 0; c < right.size(); ++c) {
                  if (right[c][0] != nn) continue;
                  acc += u1(left[r][1], ap) * u2(left[r][2], bp) *
                         std::conj(u3(right[c][1], cp)) *
                         std::conj(u4(right[c][2], dp)) * f(r, c);
                }
              }
              fp(r2, c2) = acc;
            }
          for (size_t r = 0; r < left.size(); ++r)
            for (size_t c = 0; c < right.size(); ++c)
              out.F[{i, j, k, l, left[r][0], left[r][1], left[r][2],
                     right[c][0], right[c][1], right[c][2]}] = fp(r, c);
        }
  return out;
}

}  // namespace tvo
