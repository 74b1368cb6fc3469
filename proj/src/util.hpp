// Small shared utilities: deterministic RNG, compensated accumulation,
// and a chunked parallel map with deterministic reduction order.
#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include "types.hpp"

namespace lchs {

// SplitMix64 counter generator. Each (seed, stream) pair yields an
// independent deterministic sequence; values depend only on the counter,
// never on platform library details.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : base_(mix(seed ^ (stream * 0x9E3779B97F4A7C15ULL) ^ 0xD1B54A32D192ED03ULL)) {}

    std::uint64_t next_u64() {
        std::uint64_t z = base_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
        return mix(z);
    }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // standard normal via Box-Muller
    double normal() {
        if (spare_) {
            double v = *spare_;
            spare_.reset();
            return v;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        return r * std::cos(a);
    }

    // index in [0, n)
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t base_;
    std::uint64_t counter_ = 0;
    std::optional<double> spare_;
};

// Neumaier compensated sum for scalars.
template <typename T>
class CompensatedSum {
public:
    void add(T value) {
        T t = sum_ + value;
        if (std::abs(sum_) >= std::abs(value)) {
            comp_ += (sum_ - t) + value;
        } else {
            comp_ += (value - t) + sum_;
        }
        sum_ = t;
    }
    T value() const { return sum_ + comp_; }

private:
    T sum_{};
    T comp_{};
};

// Componentwise compensated sum of complex values.
class ComplexCompensatedSum {
public:
    void add(Complex value) {
        re_.add(value.real());
        im_.add(value.imag());
    }
    Complex value() const { return {re_.value(), im_.value()}; }

private:
    CompensatedSum<double> re_;
    CompensatedSum<double> im_;
};

// Entrywise compensated matrix accumulator.
class MatrixAccumulator {
public:
    explicit MatrixAccumulator(Eigen::Index rows, Eigen::Index cols)
        : sum_(Matrix::Zero(rows, cols)), comp_(Matrix::Zero(rows, cols)) {}

    void add(const Matrix& value, Complex weight) {
        for (Eigen::Index i = 0; i < sum_.rows(); ++i) {
            for (Eigen::Index j = 0; j < sum_.cols(); ++j) {
                add_entry(i, j, weight * value(i, j));
            }
        }
    }

    void add_entry(Eigen::Index i, Eigen::Index j, Complex v) {
        Complex s = sum_(i, j);
        Complex t = s + v;
        Complex c;
        c.real(std::abs(s.real()) >= std::abs(v.real()) ? (s.real() - t.real()) + v.real()
                                                        : (v.real() - t.real()) + s.real());
        c.imag(std::abs(s.imag()) >= std::abs(v.imag()) ? (s.imag() - t.imag()) + v.imag()
                                                        : (v.imag() - t.imag()) + s.imag());
        sum_(i, j) = t;
        comp_(i, j) += c;
    }

    Matrix value() const { return sum_ + comp_; }

private:
    Matrix sum_;
    Matrix comp_;
};

// Runs fn(i) for i in [0, n). Work items must be independent; results should
// be written into preallocated slots so the caller can reduce in index order.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t workers = std::min<std::size_t>(hw == 0 ? 1 : hw, n);
    if (workers <= 1 || n < 16) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::atomic<std::size_t> next{0};
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace lchs
