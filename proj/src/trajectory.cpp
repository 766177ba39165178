#include "labourflow/trajectory.hpp"

#include "labourflow/csv.hpp"
#include "labourflow/errors.hpp"

#include <cmath>
#include <cstdio>
#include <set>

namespace labourflow {

int threshold_steps(int months, int steps_per_year, bool* exact) {
    long long num = static_cast<long long>(months) * steps_per_year;
    bool divides = num % 12 == 0;
    if (exact) *exact = divides;
    return static_cast<int>((num + 11) / 12);
}

void Trajectory::allocate(int steps) {
    n_steps = steps;
    std::size_t cells = static_cast<std::size_t>(steps) * index.size();
    employed.assign(cells, 0.0);
    unemployed.assign(cells, 0.0);
    vacancies.assign(cells, 0.0);
    for (auto& series : v_age_ge) series.assign(cells, 0.0);
    separations.assign(cells, 0.0);
    openings.assign(cells, 0.0);
    hires_in.assign(cells, 0.0);
    hires_out.assign(cells, 0.0);
}

namespace {

void append_value(std::string& out, double v, bool integer_counts) {
    if (integer_counts) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%lld",
                      static_cast<long long>(std::llround(v)));
        out += buf;
    } else {
        out += fmt_double(v);
    }
}

} // namespace

std::string Trajectory::to_csv() const {
    std::string out =
        "timestep,occupation,region,employed,unemployed,vacancies,"
        "vacancies_age_ge_3,vacancies_age_ge_6,vacancies_age_ge_12\n";
    const std::size_t n = index.size();
    for (int t = 0; t < n_steps; ++t) {
        for (std::size_t i = 0; i < n; ++i) {
            const OccRegion& node = index.node(i);
            out += std::to_string(t);
            out += ',';
            out += node.occupation;
            out += ',';
            out += node.region;
            std::size_t c = cell(t, i);
            for (const std::vector<double>* series :
                 {&employed, &unemployed, &vacancies, &v_age_ge[0],
                  &v_age_ge[1], &v_age_ge[2]}) {
                out += ',';
                append_value(out, (*series)[c], integer_counts);
            }
            out += '\n';
        }
    }
    return out;
}

Trajectory trajectory_from_csv(const std::string& path, int steps_per_year,
                               int first_year) {
    CsvReader reader(path,
                     "timestep,occupation,region,employed,unemployed,"
                     "vacancies,vacancies_age_ge_3,vacancies_age_ge_6,"
                     "vacancies_age_ge_12");
    struct Row {
        int t;
        OccRegion node;
        double values[6];
    };
    std::vector<Row> rows;
    std::set<OccRegion> node_set;
    int max_t = -1;
    std::vector<std::string> f;
    while (reader.next(f)) {
        std::string ctx = path + ":" + std::to_string(reader.row_number());
        Row r;
        r.t = parse_int(f[0], ctx);
        if (r.t < 0) reader.fail("negative timestep");
        r.node = {f[1], f[2]};
        for (int k = 0; k < 6; ++k) {
            r.values[k] = parse_real(f[3 + k], ctx);
            if (r.values[k] < 0.0) reader.fail("negative count");
        }
        node_set.insert(r.node);
        max_t = std::max(max_t, r.t);
        rows.push_back(std::move(r));
    }
    if (rows.empty()) throw InputError(path + ": no trajectory rows");

    Trajectory traj;
    traj.index = NodeIndex({node_set.begin(), node_set.end()});
    traj.steps_per_year = steps_per_year;
    traj.first_year = first_year;
    traj.integer_counts = false;
    traj.allocate(max_t + 1);
    std::vector<char> seen(traj.employed.size(), 0);
    for (const auto& r : rows) {
        std::size_t c = traj.cell(r.t, traj.index.id_of(r.node));
        if (seen[c]) {
            throw InputError(path + ": duplicate row for " + r.node.token() +
                             " at step " + std::to_string(r.t));
        }
        seen[c] = 1;
        traj.employed[c] = r.values[0];
        traj.unemployed[c] = r.values[1];
        traj.vacancies[c] = r.values[2];
        for (int k = 0; k < 3; ++k) traj.v_age_ge[k][c] = r.values[3 + k];
    }
    for (char s : seen) {
        if (!s) throw InputError(path + ": incomplete trajectory grid");
    }
    return traj;
}

} // namespace labourflow
