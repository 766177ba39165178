#pragma once

#include "labourflow/rng.hpp"

#include <deque>
#include <vector>

namespace labourflow {

// Open vacancies of one node bucketed by age in timesteps. Ages at or
// beyond `age_cap` share one bucket, so queries are valid for
// thresholds up to the cap. Count type is templated so the stochastic
// engine tracks integers and the mean-field engine tracks reals.
template <typename Count>
class VacancyAges {
public:
    explicit VacancyAges(int age_cap = 1) : cap_(age_cap < 1 ? 1 : age_cap) {}

    void reset(Count initial) {
        buckets_.assign(1, initial);
    }

    Count total() const {
        Count t = 0;
        for (Count c : buckets_) t += c;
        return t;
    }

    Count at_least(int age_steps) const {
        Count t = 0;
        for (std::size_t a = static_cast<std::size_t>(age_steps);
             a < buckets_.size(); ++a) {
            t += buckets_[a];
        }
        return t;
    }

    // Advances every vacancy's age by one step and opens `fresh` new
    // vacancies at age 0.
    void age_and_open(Count fresh) {
        buckets_.push_front(fresh);
        if (buckets_.size() > static_cast<std::size_t>(cap_) + 1) {
            Count spill = buckets_.back();
            buckets_.pop_back();
            buckets_.back() += spill;
        }
    }

    const std::deque<Count>& buckets() const { return buckets_; }
    std::deque<Count>& buckets() { return buckets_; }

private:
    int cap_;
    std::deque<Count> buckets_;
};

using VacancyBook = VacancyAges<long long>;
using VacancyBookReal = VacancyAges<double>;

// Removes `n` filled vacancies drawn uniformly without replacement
// across the age buckets.
void remove_vacancies_uniform(VacancyBook& book, long long n, Rng& rng);

// Removes `amount` of vacancy mass proportionally across buckets.
void remove_vacancies_proportional(VacancyBookReal& book, double amount);

} // namespace labourflow
