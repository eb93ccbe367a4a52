#pragma once

// Cutoff-indexed running extremum, used for every windowed liminf/limsup.

#include <cstddef>
#include <string>
#include <vector>

namespace lagspec {

enum class Direction { Min, Max };

struct Shell {
    double cutoff = 0;
    double value = 0;  // running extremum up to and including this cutoff
    std::string witness;
    bool certified = false;
};

class EstimatorTrace {
public:
    explicit EstimatorTrace(Direction dir = Direction::Min) : dir_(dir) {}

    Direction direction() const { return dir_; }
    /// Appends a shell. The stored value is folded into the running extremum,
    /// and the witness is kept from whichever shell attained it. Cutoffs must
    /// not decrease.
    void record(double cutoff, double value, std::string witness, bool certified);

    bool empty() const { return shells_.empty(); }
    std::size_t size() const { return shells_.size(); }
    const std::vector<Shell>& shells() const { return shells_; }
    const Shell& last() const;
    double value() const { return last().value; }
    bool certified() const { return !empty() && last().certified; }

    bool is_monotone() const;
    /// |v_last - v_ref| / |v_last| where v_ref is the last shell with
    /// cutoff <= last cutoff / factor. Returns 0 when no such shell exists.
    double relative_change(double factor) const;

private:
    Direction dir_;
    std::vector<Shell> shells_;
};

}  // namespace lagspec
