#pragma once

#include "reeb/errors.hpp"

#include <atomic>
#include <memory>

namespace reeb {

// Cooperative cancellation handle. Default-constructed tokens can never
// fire; long-running kernels call check() inside their outer loops.
class CancelToken {
public:
    CancelToken() = default;
    explicit CancelToken(std::shared_ptr<std::atomic_bool> flag) : flag_(std::move(flag)) {}

    static CancelToken fired() {
        auto flag = std::make_shared<std::atomic_bool>(true);
        return CancelToken(flag);
    }

    bool is_cancelled() const { return flag_ && flag_->load(std::memory_order_relaxed); }
    void check() const {
        if (is_cancelled()) throw OperationCancelled();
    }

private:
    std::shared_ptr<std::atomic_bool> flag_;
};

} // namespace reeb
