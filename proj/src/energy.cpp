#include "gfjsp/energy.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "gfjsp/error.hpp"

namespace gfjsp {

EnergyProfile::EnergyProfile(int step_minutes, std::vector<double> price,
                             std::vector<double> emission)
    : step_minutes_(step_minutes), price_(std::move(price)), emission_(std::move(emission)) {
    if (step_minutes_ <= 0) throw param_error("step_minutes must be positive");
    if (price_.size() != emission_.size())
        throw param_error("price and emission series must have equal length");
    if (price_.empty()) throw param_error("energy profile must not be empty");
    for (double e : emission_)
        if (e < 0.0) throw param_error("emission factors must be non-negative");
}

double EnergyProfile::min_price() const { return *std::min_element(price_.begin(), price_.end()); }
double EnergyProfile::max_price() const { return *std::max_element(price_.begin(), price_.end()); }
double EnergyProfile::min_emission() const {
    return *std::min_element(emission_.begin(), emission_.end());
}
double EnergyProfile::max_emission() const {
    return *std::max_element(emission_.begin(), emission_.end());
}

namespace {

struct CsvRow {
    std::string_view timestamp;
    double price = 0.0;
    double emission = 0.0;
};

double parse_double_field(std::string_view field, std::size_t row, const char* name) {
    double v = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end)
        throw parse_error("row " + std::to_string(row) + ": non-numeric " + name + " value '" +
                          std::string(field) + "'");
    return v;
}

std::vector<std::string_view> split_csv_line(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Seconds since epoch for an ISO-8601 timestamp "YYYY-MM-DDTHH:MM[:SS][Z]".
// A trailing zone offset is accepted and applied. Space instead of 'T' allowed.
long long parse_iso_timestamp(std::string_view ts, std::size_t row) {
    auto fail = [&]() -> long long {
        throw parse_error("row " + std::to_string(row) + ": invalid timestamp '" + std::string(ts) +
                          "'");
    };
    auto digits = [&](std::size_t pos, int n) -> long long {
        if (pos + static_cast<std::size_t>(n) > ts.size()) fail();
        long long v = 0;
        for (int i = 0; i < n; ++i) {
            char c = ts[pos + static_cast<std::size_t>(i)];
            if (c < '0' || c > '9') fail();
            v = v * 10 + (c - '0');
        }
        return v;
    };

    long long year = digits(0, 4);
    if (ts.size() < 16 || ts[4] != '-' || ts[7] != '-') fail();
    long long month = digits(5, 2);
    if (ts[10] != 'T' && ts[10] != ' ') fail();
    long long day = digits(8, 2);
    long long hour = digits(11, 2);
    if (ts[13] != ':') fail();
    long long minute = digits(14, 2);
    std::size_t pos = 16;
    long long second = 0;
    if (pos < ts.size() && ts[pos] == ':') {
        second = digits(pos + 1, 2);
        pos += 3;
    }
    long long offset = 0;
    if (pos < ts.size()) {
        char c = ts[pos];
        if (c == 'Z') {
            ++pos;
        } else if (c == '+' || c == '-') {
            long long oh = digits(pos + 1, 2);
            std::size_t mpos = pos + 3;
            if (mpos < ts.size() && ts[mpos] == ':') ++mpos;
            long long om = digits(mpos, 2);
            offset = (oh * 3600 + om * 60) * (c == '+' ? 1 : -1);
            pos = mpos + 2;
        }
    }
    if (pos != ts.size()) fail();
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 || second > 60)
        fail();

    // Days from civil date (Howard Hinnant's algorithm).
    long long y = year - (month <= 2 ? 1 : 0);
    long long era = (y >= 0 ? y : y - 399) / 400;
    long long yoe = y - era * 400;
    long long doy = (153 * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1;
    long long doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    long long days = era * 146097 + doe - 719468;
    return days * 86400 + hour * 3600 + minute * 60 + second - offset;
}

} // namespace

EnergyProfile load_energy_profile(std::string_view csv, int step_minutes) {
    if (step_minutes <= 0 || 60 % step_minutes != 0)
        throw param_error("step_minutes must be a positive divisor of 60");
    const std::size_t repeat = static_cast<std::size_t>(60 / step_minutes);

    std::vector<double> price;
    std::vector<double> emission;

    std::size_t row = 0;
    std::size_t start = 0;
    bool header_seen = false;
    int ts_col = -1, price_col = -1, em_col = -1;
    long long prev_epoch = 0;
    bool have_prev = false;

    while (start <= csv.size()) {
        std::size_t nl = csv.find('\n', start);
        std::string_view line =
            nl == std::string_view::npos ? csv.substr(start) : csv.substr(start, nl - start);
        start = nl == std::string_view::npos ? csv.size() + 1 : nl + 1;
        if (trim(line).empty()) continue;
        ++row;
        auto fields = split_csv_line(line);

        if (!header_seen) {
            for (std::size_t i = 0; i < fields.size(); ++i) {
                auto f = trim(fields[i]);
                if (f == "timestamp") ts_col = static_cast<int>(i);
                else if (f == "price_eur_mwh") price_col = static_cast<int>(i);
                else if (f == "emission_g_per_kwh") em_col = static_cast<int>(i);
            }
            if (ts_col < 0) throw parse_error("row 1: missing column 'timestamp'");
            if (price_col < 0) throw parse_error("row 1: missing column 'price_eur_mwh'");
            if (em_col < 0) throw parse_error("row 1: missing column 'emission_g_per_kwh'");
            header_seen = true;
            continue;
        }

        std::size_t needed = static_cast<std::size_t>(std::max({ts_col, price_col, em_col})) + 1;
        if (fields.size() < needed)
            throw parse_error("row " + std::to_string(row) + ": expected " + std::to_string(needed) +
                              " columns, got " + std::to_string(fields.size()));

        long long epoch = parse_iso_timestamp(trim(fields[static_cast<std::size_t>(ts_col)]), row);
        if (have_prev && epoch != prev_epoch + 3600)
            throw parse_error("row " + std::to_string(row) +
                              ": timestamps must be hourly and strictly increasing without gaps");
        prev_epoch = epoch;
        have_prev = true;

        double p = parse_double_field(trim(fields[static_cast<std::size_t>(price_col)]), row,
                                      "price_eur_mwh");
        double e = parse_double_field(trim(fields[static_cast<std::size_t>(em_col)]), row,
                                      "emission_g_per_kwh");
        if (e < 0.0)
            throw parse_error("row " + std::to_string(row) + ": emission factor must be >= 0");

        for (std::size_t r = 0; r < repeat; ++r) {
            price.push_back(p);
            emission.push_back(e);
        }
    }

    if (!header_seen) throw parse_error("row 1: missing header line");
    if (price.empty()) throw parse_error("market CSV has no data rows");
    return EnergyProfile(step_minutes, std::move(price), std::move(emission));
}

HourlyMarket generate_hourly_market(const SyntheticMarketParams& p) {
    if (p.hours < 1) throw param_error("hours must be >= 1");
    if (p.price_sd < 0.0 || p.emission_sd < 0.0) throw param_error("standard deviations must be >= 0");
    if (p.correlation < -1.0 || p.correlation > 1.0)
        throw param_error("correlation must lie in [-1, 1]");

    std::mt19937_64 rng(p.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double rho = p.correlation;
    const double tail = std::sqrt(std::max(0.0, 1.0 - rho * rho));

    HourlyMarket m;
    m.price.reserve(static_cast<std::size_t>(p.hours));
    m.emission.reserve(static_cast<std::size_t>(p.hours));
    for (int h = 0; h < p.hours; ++h) {
        double z1 = normal(rng);
        double z2 = rho * z1 + tail * normal(rng);
        m.price.push_back(p.price_mean + p.price_sd * z1);
        m.emission.push_back(std::max(0.0, p.emission_mean + p.emission_sd * z2));
    }
    return m;
}

EnergyProfile generate_synthetic_profile(const SyntheticMarketParams& p) {
    if (p.step_minutes <= 0 || 60 % p.step_minutes != 0)
        throw param_error("step_minutes must be a positive divisor of 60");
    HourlyMarket m = generate_hourly_market(p);
    const std::size_t repeat = static_cast<std::size_t>(60 / p.step_minutes);
    std::vector<double> price;
    std::vector<double> emission;
    price.reserve(m.price.size() * repeat);
    emission.reserve(m.price.size() * repeat);
    for (std::size_t h = 0; h < m.price.size(); ++h) {
        for (std::size_t r = 0; r < repeat; ++r) {
            price.push_back(m.price[h]);
            emission.push_back(m.emission[h]);
        }
    }
    return EnergyProfile(p.step_minutes, std::move(price), std::move(emission));
}

std::string render_market_csv(const HourlyMarket& m, const std::string& start_iso_hour) {
    long long epoch = parse_iso_timestamp(start_iso_hour, 0);
    std::ostringstream out;
    out << "timestamp,price_eur_mwh,emission_g_per_kwh\n";
    char ts[64];
    char num[64];
    for (std::size_t h = 0; h < m.price.size(); ++h) {
        long long t = epoch + static_cast<long long>(h) * 3600;
        long long days = t / 86400;
        long long secs = t % 86400;
        if (secs < 0) {
            secs += 86400;
            --days;
        }
        // Civil date from days (inverse of the epoch conversion above).
        long long z = days + 719468;
        long long era = (z >= 0 ? z : z - 146096) / 146097;
        long long doe = z - era * 146097;
        long long yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
        long long y = yoe + era * 400;
        long long doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
        long long mp = (5 * doy + 2) / 153;
        long long day = doy - (153 * mp + 2) / 5 + 1;
        long long month = mp + (mp < 10 ? 3 : -9);
        y += (month <= 2 ? 1 : 0);
        std::snprintf(ts, sizeof(ts), "%04lld-%02lld-%02lldT%02lld:%02lld:00Z", y, month, day,
                      secs / 3600, (secs % 3600) / 60);
        out << ts;
        auto [p_end, ec1] = std::to_chars(num, num + sizeof(num), m.price[h]);
        out << ',' << std::string_view(num, static_cast<std::size_t>(p_end - num));
        auto [e_end, ec2] = std::to_chars(num, num + sizeof(num), m.emission[h]);
        out << ',' << std::string_view(num, static_cast<std::size_t>(e_end - num)) << '\n';
    }
    return out.str();
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw param_error("series lengths differ");
    if (a.size() < 2) throw param_error("correlation needs at least two samples");
    const double n = static_cast<double>(a.size());
    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= n;
    mean_b /= n;
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double da = a[i] - mean_a;
        double db = b[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0)
        throw param_error("correlation undefined: a series has zero variance");
    return cov / std::sqrt(var_a * var_b);
}

double price_emission_correlation(const EnergyProfile& profile) {
    return pearson(profile.price(), profile.emission());
}

} // namespace gfjsp
