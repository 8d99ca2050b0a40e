#include "mubforge/intertwiner.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "mubforge/rng.hpp"

namespace mubforge {

namespace {

// D0 * X(g), X given as signed permutation.
Eigen::MatrixXd mul_right(const Eigen::MatrixXd& m, const SignedPermMatrix& x) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (int j = 0; j < x.dim(); ++j) out.col(j) = x.sign(j) * m.col(x.row(j));
  return out;
}

// X(g) * D0.
Eigen::MatrixXd mul_left(const SignedPermMatrix& x, const Eigen::MatrixXd& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (int k = 0; k < x.dim(); ++k) out.row(x.row(k)) = x.sign(k) * m.row(k);
  return out;
}

// acc += X(s.(v,0)) * A * X((v,0))^T for one vector v.
void accumulate_term(Eigen::MatrixXd& acc, const Eigen::MatrixXd& a, const SignedPermMatrix& p,
                     const SignedPermMatrix& q_inv) {
  const int d = p.dim();
  for (int j = 0; j < d; ++j) {
    const int cj = q_inv.row(j);
    const double cs = q_inv.sign(j);
    for (int k = 0; k < d; ++k) acc(p.row(k), j) += cs * p.sign(k) * a(k, cj);
  }
}

Eigen::MatrixXd averaged_sum(const InducedRep& rep, const Isometry& s, const Eigen::MatrixXd& a,
                             int threads) {
  const FieldSpec& F = rep.field();
  const int d = rep.dim();
  const std::uint64_t terms = static_cast<std::uint64_t>(F.order()) * F.order();

  // Fixed chunking plus in-order reduction keeps the floating-point sum
  // identical for every worker count.
  const std::uint64_t chunk_size = (terms + 63) / 64;
  const std::uint64_t chunks = (terms + chunk_size - 1) / chunk_size;
  std::vector<Eigen::MatrixXd> partial(chunks);

  std::atomic<std::uint64_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) return;
      Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(d, d);
      const std::uint64_t hi = std::min(terms, (c + 1) * chunk_size);
      for (std::uint64_t t = c * chunk_size; t < hi; ++t) {
        const Vec2 v = vec_at(F, t);
        const GroupElement g{v, F.zero()};
        const GroupElement gs{s.apply(v), F.zero()};
        accumulate_term(acc, a, rep.matrix(gs), rep.matrix(g).transpose());
      }
      partial[c] = std::move(acc);
    }
  };

  const int workers = std::min<int>(resolve_thread_count(threads), static_cast<int>(chunks));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d, d);
  for (const Eigen::MatrixXd& p : partial) sum += p;
  return sum;
}

void check_intertwining(const InducedRep& rep, const Isometry& s, const Eigen::MatrixXd& d0,
                        std::uint64_t seed) {
  const FieldSpec& F = rep.field();
  const double bound = 1e-9 * d0.cwiseAbs().maxCoeff();
  Xorshift64Star rng(seed ^ 0x9E3779B97F4A7C15ull);
  for (int i = 0; i < 100; ++i) {
    const GroupElement x = element_at(F, rng.next_u64() % group_order(F));
    const Eigen::MatrixXd lhs = mul_right(d0, rep.matrix(x));
    const Eigen::MatrixXd rhs = mul_left(rep.matrix(apply_isometry(s, x)), d0);
    const double residual = (lhs - rhs).cwiseAbs().maxCoeff();
    if (residual > bound)
      throw IntegrityError("intertwining",
                           "residual " + std::to_string(residual) + " exceeds bound " +
                               std::to_string(bound));
  }
}

}  // namespace

int resolve_thread_count(int requested) {
  int count = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (count < 1) count = 1;
  if (const char* env = std::getenv("MUBFORGE_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0 && cap < count) count = static_cast<int>(cap);
  }
  return count;
}

Eigen::MatrixXd average_intertwiner(const InducedRep& rep, const Isometry& s, std::uint64_t seed,
                                    const AveragingOptions& opts) {
  if (!is_isometry(s)) throw std::invalid_argument("intertwiner: s is not an isometry");
  const int d = rep.dim();

  for (int attempt = 0; attempt <= opts.max_retries; ++attempt) {
    const std::uint64_t cur_seed = seed + static_cast<std::uint64_t>(attempt);
    Xorshift64Star rng(cur_seed);
    Eigen::MatrixXd a(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) a(i, j) = rng.next_symmetric();

    Eigen::MatrixXd d0 = averaged_sum(rep, s, a, opts.threads);

    Eigen::BDCSVD<Eigen::MatrixXd> svd(d0);
    const auto& sv = svd.singularValues();
    if (sv(0) <= 0.0 || sv(sv.size() - 1) <= 1e-6 * sv(0)) continue;

    check_intertwining(rep, s, d0, cur_seed);
    return d0;
  }
  throw IntegrityError("intertwiner_singular",
                       "averaged matrix singular for " + std::to_string(opts.max_retries + 1) +
                           " consecutive seeds");
}

Eigen::MatrixXd normalize_intertwiner(const Eigen::MatrixXd& d0, int q) {
  if (d0.rows() != d0.cols() || d0.rows() == 0)
    throw std::invalid_argument("intertwiner: matrix must be square");
  const int d = static_cast<int>(d0.rows());
  const double m = d0.cwiseAbs().maxCoeff();
  if (m == 0.0) throw IntegrityError("intertwiner_singular", "zero matrix");
  Eigen::MatrixXd b = d0 / m;

  Eigen::MatrixXd p = b;
  for (int k = 1; k < q + 1; ++k) p = p * b;
  const double scalar = p.diagonal().mean();
  Eigen::MatrixXd off = p;
  off.diagonal().setZero();
  const double off_max = off.cwiseAbs().maxCoeff();
  const double diag_dev = (p.diagonal().array() - scalar).abs().maxCoeff();
  if (std::abs(scalar) < 1e-12 || off_max > 1e-8 * std::abs(scalar) ||
      diag_dev > 1e-8 * std::abs(scalar))
    throw IntegrityError("scalar_power", "power q+1 is not a scalar matrix");

  // q + 1 is odd, so the real root keeps the scalar's sign.
  const double root =
      std::copysign(std::pow(std::abs(scalar), 1.0 / (q + 1)), scalar);
  Eigen::MatrixXd out = b / root;

  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  double defect = (out * out.transpose() - id).cwiseAbs().maxCoeff();
  if (defect > 1e-10) {
    // Polar projection onto the orthogonal group; removes accumulated
    // floating-point drift without moving the matrix materially.
    Eigen::BDCSVD<Eigen::MatrixXd> svd(out, Eigen::ComputeThinU | Eigen::ComputeThinV);
    out = svd.matrixU() * svd.matrixV().transpose();
    defect = (out * out.transpose() - id).cwiseAbs().maxCoeff();
    if (defect > 1e-10)
      throw IntegrityError("orthogonality",
                           "defect " + std::to_string(defect) + " after polar correction");
  }
  return out;
}

Report certify_uniqueness(const InducedRep& rep, const Isometry& s, const Eigen::MatrixXd& d,
                          const std::vector<std::uint64_t>& seeds, const AveragingOptions& opts) {
  if (seeds.empty()) throw std::invalid_argument("intertwiner: no certification seeds");
  Report report;
  const int q = static_cast<int>(rep.field().q());
  for (const std::uint64_t seed : seeds) {
    const Eigen::MatrixXd redone =
        normalize_intertwiner(average_intertwiner(rep, s, seed, opts), q);
    const double dev = (redone - d).cwiseAbs().maxCoeff();
    report.push_back({"uniqueness_seed_" + std::to_string(seed), dev <= 1e-8,
                      "max deviation " + std::to_string(dev)});
  }
  return report;
}

}  // namespace mubforge
