#include "gfjsp/instance.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "gfjsp/error.hpp"

namespace gfjsp {

int OperationSpec::duration_on(int machine) const {
    for (const auto& opt : options) {
        if (opt.machine == machine) return opt.duration;
    }
    return -1;
}

Instance::Instance(std::vector<Job> jobs, int machine_count)
    : jobs_(std::move(jobs)), machine_count_(machine_count) {
    if (machine_count_ <= 0) throw param_error("machine count must be positive");
    if (jobs_.empty()) throw param_error("instance must have at least one job");
    for (const auto& job : jobs_) {
        if (job.operations.empty())
            throw param_error("job " + std::to_string(job.index) + " has no operations");
        for (const auto& op : job.operations) {
            if (op.options.empty())
                throw param_error("operation (" + std::to_string(op.job) + "," +
                                  std::to_string(op.position) + ") has no eligible machines");
            for (const auto& opt : op.options) {
                if (opt.machine < 1 || opt.machine > machine_count_)
                    throw param_error("machine index out of range in operation (" +
                                      std::to_string(op.job) + "," + std::to_string(op.position) + ")");
                if (opt.duration <= 0)
                    throw param_error("non-positive duration in operation (" +
                                      std::to_string(op.job) + "," + std::to_string(op.position) + ")");
            }
        }
    }
    index_operations();
}

void Instance::index_operations() {
    total_ops_ = 0;
    flat_.clear();
    job_offset_.clear();
    for (std::size_t j = 0; j < jobs_.size(); ++j) {
        job_offset_.push_back(total_ops_);
        for (std::size_t o = 0; o < jobs_[j].operations.size(); ++o) {
            flat_.push_back({j, o});
            ++total_ops_;
        }
    }
}

std::size_t Instance::flat_index(int job, int position) const {
    return job_offset_[static_cast<std::size_t>(job - 1)] + static_cast<std::size_t>(position - 1);
}

const OperationSpec& Instance::operation(int job, int position) const {
    return operation(flat_index(job, position));
}

namespace {

// Whitespace-delimited integer reader that tracks the current line for error messages.
class TokenReader {
public:
    explicit TokenReader(std::string_view text) : text_(text) {}

    bool next(long& out) {
        skip_ws();
        if (pos_ >= text_.size()) return false;
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        auto [ptr, ec] = std::from_chars(begin, end, out);
        if (ec != std::errc() || (ptr != end && !is_space(*ptr)))
            throw parse_error("line " + std::to_string(line_) + ": expected an integer");
        pos_ += static_cast<std::size_t>(ptr - begin);
        return true;
    }

    long require(const char* what) {
        long v;
        if (!next(v))
            throw parse_error("line " + std::to_string(line_) + ": unexpected end of file, expected " +
                              std::string(what));
        return v;
    }

    int line() const { return line_; }

    bool at_end() {
        skip_ws();
        return pos_ >= text_.size();
    }

private:
    static bool is_space(char c) {
        return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
    }

    void skip_ws() {
        while (pos_ < text_.size() && is_space(text_[pos_])) {
            if (text_[pos_] == '\n') ++line_;
            ++pos_;
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
};

} // namespace

Instance parse_instance(std::string_view text) {
    TokenReader rd(text);

    long job_count = rd.require("job count");
    long machine_count = rd.require("machine count");
    if (job_count <= 0 || machine_count <= 0)
        throw parse_error("line 1: job and machine counts must be positive");

    // The optional third header token (average machines per operation) is accepted
    // and ignored; the public mk01-mk15 files carry it. Job lines start on line >= 2,
    // so a further token on line 1 belongs to the header.
    std::vector<Job> jobs;
    jobs.reserve(static_cast<std::size_t>(job_count));

    long maybe = 0;
    bool have_pending = false;
    if (rd.next(maybe) && rd.line() > 1) have_pending = true;

    auto next_token = [&](const char* what) -> long {
        if (have_pending) {
            have_pending = false;
            return maybe;
        }
        return rd.require(what);
    };

    for (long j = 1; j <= job_count; ++j) {
        Job job;
        job.index = static_cast<int>(j);
        long nops = next_token("operation count");
        if (nops <= 0)
            throw parse_error("line " + std::to_string(rd.line()) + ": job " + std::to_string(j) +
                              " must have at least one operation");
        for (long p = 1; p <= nops; ++p) {
            OperationSpec op;
            op.job = static_cast<int>(j);
            op.position = static_cast<int>(p);
            long nopt = next_token("option count");
            if (nopt <= 0)
                throw parse_error("line " + std::to_string(rd.line()) + ": operation (" +
                                  std::to_string(j) + "," + std::to_string(p) +
                                  ") must have at least one machine option");
            for (long o = 0; o < nopt; ++o) {
                long m = next_token("machine index");
                long d = next_token("duration");
                if (m < 1 || m > machine_count)
                    throw parse_error("line " + std::to_string(rd.line()) + ": machine index " +
                                      std::to_string(m) + " out of range [1," +
                                      std::to_string(machine_count) + "]");
                if (d <= 0)
                    throw parse_error("line " + std::to_string(rd.line()) +
                                      ": duration must be positive");
                if (op.duration_on(static_cast<int>(m)) >= 0)
                    throw parse_error("line " + std::to_string(rd.line()) + ": duplicate machine " +
                                      std::to_string(m) + " in operation (" + std::to_string(j) +
                                      "," + std::to_string(p) + ")");
                op.options.push_back({static_cast<int>(m), static_cast<int>(d)});
            }
            job.operations.push_back(std::move(op));
        }
        jobs.push_back(std::move(job));
    }

    if (have_pending || !rd.at_end())
        throw parse_error("line " + std::to_string(rd.line()) + ": trailing data after last job");

    return Instance(std::move(jobs), static_cast<int>(machine_count));
}

std::string serialize_instance(const Instance& inst) {
    std::ostringstream out;
    out << inst.job_count() << ' ' << inst.machine_count() << '\n';
    for (const auto& job : inst.jobs()) {
        out << job.operations.size();
        for (const auto& op : job.operations) {
            out << ' ' << op.options.size();
            for (const auto& opt : op.options) out << ' ' << opt.machine << ' ' << opt.duration;
        }
        out << '\n';
    }
    return out.str();
}

} // namespace gfjsp
