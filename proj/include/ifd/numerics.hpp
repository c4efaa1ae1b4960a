#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace ifd {

using Vector = std::vector<double>;

// Row-major dense matrix of 64-bit reals.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    std::size_t size() const { return data.size(); }
    bool empty() const { return data.empty(); }
};

// Probability floor used inside log() so saturated softmax outputs cannot
// produce an infinite loss.
inline constexpr double kProbFloor = 1e-12;
// Below this Frobenius norm a gradient counts as degenerate for the
// cosine-based measures.
inline constexpr double kNormFloor = 1e-12;

void ensure_finite(const Vector& v, const char* what);
void ensure_finite(const Matrix& m, const char* what);
void ensure_same_size(const Vector& a, const Vector& b, const char* what);

double dot(const Vector& a, const Vector& b);
double norm2(const Vector& v);
void axpy(double alpha, const Vector& x, Vector& y);  // y += alpha * x
Vector matvec(const Matrix& m, const Vector& v);
Vector matTvec(const Matrix& m, const Vector& v);
Matrix outer(const Vector& a, const Vector& b);

// Numerically stable softmax (max subtraction). Rejects empty or non-finite
// input; output entries are positive and sum to 1.
Vector softmax(const Vector& logits);

// -log(probs[label]) with the kProbFloor clamp. `probs` must be normalized.
double cross_entropy(const Vector& probs, int label);

struct CgResult {
    Vector x;
    int iterations = 0;
    bool converged = false;
    double rel_residual = 0.0;
};

using LinearOperator = std::function<void(const Vector&, Vector&)>;

// Conjugate gradient for symmetric positive definite operators, matrix-free.
// Stops when ||Ax - b|| <= tol * ||b||; otherwise returns the best iterate
// with converged = false. rel_residual is recomputed from a final operator
// application, not the recurrence.
CgResult cg_solve(const LinearOperator& apply_a, const Vector& b, double tol, int max_iter);

// Pure 64-bit mixing function (splitmix64 finalizer). Used for deriving
// independent stream ids from (seed, stream) pairs.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Deterministic seeded generator: xoshiro256** state seeded via splitmix64
// from (seed, stream_id). Identical (seed, stream_id) gives an identical
// integer draw sequence on every platform.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    static constexpr const char* kAlgorithm = "xoshiro256**";

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }
    std::uint64_t position() const { return draws_; }

    // Independent child stream; children with distinct substream ids do not
    // overlap with the parent or each other in practice.
    RngStream derive(std::uint64_t substream) const;

    std::uint64_t next_u64();
    double uniform01();  // [0, 1)
    double uniform(double lo, double hi);
    std::uint64_t uniform_int(std::uint64_t n);  // [0, n), rejection sampled
    double normal();                             // Box-Muller, cached spare
    double normal(double mean, double stddev);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_int(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct values from [0, n), in draw order.
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

private:
    std::uint64_t seed_ = 0;
    std::uint64_t stream_id_ = 0;
    std::uint64_t state_[4] = {};
    std::uint64_t draws_ = 0;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Runs fn(i) for i in [0, n). jobs <= 0 means hardware concurrency, 1 runs
// inline. fn must write only to disjoint per-index slots.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace ifd
