#include "lagspec/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace lagspec {

void EstimatorTrace::record(double cutoff, double value, std::string witness, bool certified) {
    if (!shells_.empty() && cutoff < shells_.back().cutoff) {
        throw std::invalid_argument("estimator cutoffs must be nondecreasing");
    }
    if (!shells_.empty()) {
        const Shell& prev = shells_.back();
        const bool improves = dir_ == Direction::Min ? value < prev.value : value > prev.value;
        if (!improves) {
            value = prev.value;
            witness = prev.witness;
        }
    }
    shells_.push_back({cutoff, value, std::move(witness), certified});
}

const Shell& EstimatorTrace::last() const {
    if (shells_.empty()) throw std::logic_error("empty estimator trace");
    return shells_.back();
}

bool EstimatorTrace::is_monotone() const {
    for (std::size_t i = 1; i < shells_.size(); ++i) {
        const double a = shells_[i - 1].value;
        const double b = shells_[i].value;
        if (dir_ == Direction::Min ? b > a : b < a) return false;
        if (shells_[i].cutoff < shells_[i - 1].cutoff) return false;
    }
    return true;
}

double EstimatorTrace::relative_change(double factor) const {
    if (shells_.size() < 2) return 0.0;
    const Shell& fin = shells_.back();
    const double limit = fin.cutoff / factor;
    const Shell* ref = nullptr;
    for (const auto& s : shells_) {
        if (s.cutoff <= limit) ref = &s;
    }
    if (ref == nullptr) return 0.0;
    if (fin.value == 0.0) return ref->value == 0.0 ? 0.0 : INFINITY;
    return std::abs(fin.value - ref->value) / std::abs(fin.value);
}

}  // namespace lagspec
