#pragma once

#include <map>
#include <vector>

#include "segtrend/time_series.hpp"

namespace segtrend {

// Triangular table of per-span simple-line residual sums of squares,
// rss(i, j) for 1 <= i < j <= n (1-based, inclusive). Built in O(n^2)
// with running-moment updates.
class SegmentRssTable {
public:
    explicit SegmentRssTable(const TimeSeries& ts);

    double rss(int first, int last) const;
    int n() const { return n_; }

    // Total sum of squares around the mean; scale reference for the
    // zero-residual guard in model selection.
    double total_ss() const { return total_ss_; }

private:
    int n_;
    double total_ss_;
    std::vector<double> flat_;
};

SegmentRssTable precompute_segment_rss(const TimeSeries& ts);

// Least-squares partition of 1..n into m+1 contiguous spans of length
// >= h, minimizing the summed per-span line RSS. Returns the m segment
// end indices (the last span ends at n and is implicit). Ties go to the
// lexicographically smallest breakpoint vector.
std::vector<int> dp_breaks(const SegmentRssTable& table, int m, int h);
std::vector<int> dp_breaks(const TimeSeries& ts, int m, int h);

struct BreakInit {
    int chosen_m = 0;
    std::vector<int> breakpoint_indices;
    std::map<int, double> rss_by_m;
    std::map<int, double> bic_by_m;
    int min_segment = 0;
};

// Runs dp_breaks for m = 0..max_m (skipping infeasible m) and picks the
// break count by BIC(m) = n ln(rss_m/n) + p_m ln(n), p_m = 3(m+1) + m.
// Zero-residual fits short-circuit to the smallest such m.
BreakInit select_num_breaks(const TimeSeries& ts, int max_m, int h);

}  // namespace segtrend
