#include "labourflow/state.hpp"

#include "labourflow/errors.hpp"

namespace labourflow {

void remove_vacancies_uniform(VacancyBook& book, long long n, Rng& rng) {
    long long remaining = book.total();
    if (n > remaining) {
        throw InternalFault("removing more vacancies than are open");
    }
    auto& buckets = book.buckets();
    for (long long k = 0; k < n; ++k) {
        long long pick =
            static_cast<long long>(rng.uniform_index(
                static_cast<std::size_t>(remaining)));
        for (auto& bucket : buckets) {
            if (pick < bucket) {
                --bucket;
                break;
            }
            pick -= bucket;
        }
        --remaining;
    }
}

void remove_vacancies_proportional(VacancyBookReal& book, double amount) {
    double total = book.total();
    if (amount <= 0.0) return;
    if (amount > total * (1.0 + 1e-9)) {
        throw InternalFault("removing more vacancy mass than is open");
    }
    double factor = amount >= total ? 0.0 : (total - amount) / total;
    for (auto& bucket : book.buckets()) bucket *= factor;
}

} // namespace labourflow
