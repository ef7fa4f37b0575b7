#ifndef GFJSP_ENERGY_HPP
#define GFJSP_ENERGY_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gfjsp {

// Aligned per-time-step electricity price (EUR/MWh) and emission factor
// (gCO2eq/kWh) series. Prices may be negative; emission factors never are.
class EnergyProfile {
public:
    EnergyProfile() = default;
    EnergyProfile(int step_minutes, std::vector<double> price, std::vector<double> emission);

    int step_minutes() const { return step_minutes_; }
    std::size_t size() const { return price_.size(); }
    const std::vector<double>& price() const { return price_; }
    const std::vector<double>& emission() const { return emission_; }

    double min_price() const;
    double max_price() const;
    double min_emission() const;
    double max_emission() const;

    // Series value at step s of a horizon extended by cyclic tiling (s may
    // exceed size(); the base pattern repeats).
    double price_at(std::size_t s) const { return price_[s % price_.size()]; }
    double emission_at(std::size_t s) const { return emission_[s % emission_.size()]; }

private:
    int step_minutes_ = 15;
    std::vector<double> price_;
    std::vector<double> emission_;
};

// Ingests hourly market data with header "timestamp,price_eur_mwh,emission_g_per_kwh"
// (ISO-8601 timestamps, '.' decimals). Each hourly value is replicated
// 60/step_minutes times. Throws Error(Parse) with the offending row number.
EnergyProfile load_energy_profile(std::string_view csv, int step_minutes);

// Parameters for the synthetic market generator (stand-in for real market data).
struct SyntheticMarketParams {
    std::uint64_t seed = 0;
    int hours = 24;
    double price_mean = 120.0;
    double price_sd = 60.0;
    double emission_mean = 400.0;
    double emission_sd = 120.0;
    double correlation = 0.72;
    int step_minutes = 15;
};

// Hourly synthetic series before replication; emissions clamped at zero.
struct HourlyMarket {
    std::vector<double> price;
    std::vector<double> emission;
};

// Deterministic for a fixed seed. Draws correlated Gaussian pairs per hour.
HourlyMarket generate_hourly_market(const SyntheticMarketParams& p);

// generate_hourly_market followed by replication to step resolution.
EnergyProfile generate_synthetic_profile(const SyntheticMarketParams& p);

// Renders an hourly market series to the ingestion CSV format. Timestamps are
// synthetic UTC hours starting at `start_iso_hour` (e.g. "2022-02-01T00:00:00Z").
std::string render_market_csv(const HourlyMarket& m, const std::string& start_iso_hour);

// Sample Pearson coefficient of the price and emission series.
// Throws Error(Param) if fewer than two steps or either variance is zero.
double price_emission_correlation(const EnergyProfile& profile);

// Sample Pearson of two equal-length series (shared helper, same error contract).
double pearson(const std::vector<double>& a, const std::vector<double>& b);

} // namespace gfjsp

#endif
