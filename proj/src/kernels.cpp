#include "sdn5g/mobility.hpp"

#include <cstddef>

namespace sdn5g::kernels {

namespace {

void rsrp_row(std::span<const CellConfig> cells, const UeState& ue, const PathlossParams& p,
              std::uint64_t tick, double* row) {
    for (std::size_t c = 0; c < cells.size(); ++c)
        row[c] = rsrp(cells[c], ue.position, p, ShadowKey{static_cast<std::uint32_t>(c), ue.id, tick});
}

void rate_of(std::span<const CellConfig> cells, const UeState& ue, const double* row,
             std::span<const std::uint32_t> n_active, const RadioParams& r, double& sinr,
             double& rate) {
    if (!ue.serving_cell) {
        sinr = 0;
        rate = 0;
        return;
    }
    const std::size_t c = *ue.serving_cell;
    const CellConfig& cell = cells[c];
    sinr = sinr_db(c, std::span<const double>(row, cells.size()), noise_dbm(cell.bandwidth_hz, r));
    rate = ue_throughput(ue.demand_bps, cell.bandwidth_hz, sinr, n_active[c], r.efficiency_cap);
}

// Reference loops.
void measure_rsrp_serial(std::span<const CellConfig> cells, std::span<const UeState> ues,
                         const PathlossParams& p, std::uint64_t tick, std::span<double> rsrp) {
    for (std::size_t u = 0; u < ues.size(); ++u)
        rsrp_row(cells, ues[u], p, tick, rsrp.data() + u * cells.size());
}

void compute_rates_serial(std::span<const CellConfig> cells, std::span<const UeState> ues,
                          std::span<const double> rsrp, std::span<const std::uint32_t> n_active,
                          const RadioParams& r, std::span<double> sinr, std::span<double> rate) {
    for (std::size_t u = 0; u < ues.size(); ++u)
        rate_of(cells, ues[u], rsrp.data() + u * cells.size(), n_active, r, sinr[u], rate[u]);
}

// UE rows are independent; each iteration writes only its own slots.
void measure_rsrp_omp(std::span<const CellConfig> cells, std::span<const UeState> ues,
                      const PathlossParams& p, std::uint64_t tick, std::span<double> rsrp) {
    const auto n = static_cast<std::ptrdiff_t>(ues.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t u = 0; u < n; ++u)
        rsrp_row(cells, ues[u], p, tick, rsrp.data() + u * cells.size());
}

void compute_rates_omp(std::span<const CellConfig> cells, std::span<const UeState> ues,
                       std::span<const double> rsrp, std::span<const std::uint32_t> n_active,
                       const RadioParams& r, std::span<double> sinr, std::span<double> rate) {
    const auto n = static_cast<std::ptrdiff_t>(ues.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t u = 0; u < n; ++u)
        rate_of(cells, ues[u], rsrp.data() + u * cells.size(), n_active, r, sinr[u], rate[u]);
}

} // namespace

void measure_rsrp(std::span<const CellConfig> cells, std::span<const UeState> ues,
                  const PathlossParams& p, std::uint64_t tick, std::span<double> rsrp, Exec exec) {
    if (exec == Exec::Serial)
        measure_rsrp_serial(cells, ues, p, tick, rsrp);
    else
        measure_rsrp_omp(cells, ues, p, tick, rsrp);
}

void compute_rates(std::span<const CellConfig> cells, std::span<const UeState> ues,
                   std::span<const double> rsrp, std::span<const std::uint32_t> n_active,
                   const RadioParams& r, std::span<double> sinr, std::span<double> rate,
                   Exec exec) {
    if (exec == Exec::Serial)
        compute_rates_serial(cells, ues, rsrp, n_active, r, sinr, rate);
    else
        compute_rates_omp(cells, ues, rsrp, n_active, r, sinr, rate);
}

} // namespace sdn5g::kernels
