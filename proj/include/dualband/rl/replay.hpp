// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dualband/rng.hpp"

#include <unordered_set>
#include <vector>

namespace dualband {

/// Fixed-capacity ring buffer with uniform minibatch sampling without
/// replacement (within one minibatch).
template <typename T> class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {}

    void push(T item) {
        if (data_.size() < capacity_) {
            data_.push_back(std::move(item));
        } else {
            data_[write_] = std::move(item);
        }
        write_ = (write_ + 1) % capacity_;
    }

    std::size_t size() const { return data_.size(); }
    std::size_t capacity() const { return capacity_; }
    const T& operator[](std::size_t i) const { return data_[i]; }

    /// n distinct uniform indices; n must not exceed size().
    std::vector<std::size_t> sample_indices(std::size_t n, Rng& rng) const {
        std::vector<std::size_t> out;
        out.reserve(n);
        std::unordered_set<std::size_t> used;
        while (out.size() < n) {
            const std::size_t i = rng.uniform_int(data_.size());
            if (used.insert(i).second)
                out.push_back(i);
        }
        return out;
    }

private:
    std::size_t capacity_;
    std::size_t write_ = 0;
    std::vector<T> data_;
};

} // namespace dualband
