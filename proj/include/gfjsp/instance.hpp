#ifndef GFJSP_INSTANCE_HPP
#define GFJSP_INSTANCE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace gfjsp {

// One eligible (machine, duration) pair of an operation. Machines are 1-based.
struct MachineOption {
    int machine = 0;
    int duration = 0; // time steps, > 0
};

// Operation (i,j): position j within job i, both 1-based.
struct OperationSpec {
    int job = 0;
    int position = 0;
    std::vector<MachineOption> options;

    // Duration on a given machine; -1 if the machine is not eligible.
    int duration_on(int machine) const;
};

struct Job {
    int index = 0; // 1-based
    std::vector<OperationSpec> operations;
};

// A flexible job shop instance. Operations of a job form a precedence chain.
class Instance {
public:
    Instance() = default;
    Instance(std::vector<Job> jobs, int machine_count);

    const std::vector<Job>& jobs() const { return jobs_; }
    int machine_count() const { return machine_count_; }
    std::size_t job_count() const { return jobs_.size(); }
    std::size_t total_operations() const { return total_ops_; }

    // Flat operation id in job-major order: job 1's ops first, then job 2's, ...
    std::size_t flat_index(int job, int position) const;
    const OperationSpec& operation(std::size_t flat) const {
        const auto& [job, pos] = flat_[flat];
        return jobs_[job].operations[pos];
    }
    const OperationSpec& operation(int job, int position) const;

private:
    void index_operations();

    std::vector<Job> jobs_;
    int machine_count_ = 0;
    std::size_t total_ops_ = 0;
    std::vector<std::pair<std::size_t, std::size_t>> flat_; // (job idx, op idx) in jobs_
    std::vector<std::size_t> job_offset_;                   // flat index of (i, 1) per job
};

// Parses the classic FJSP text layout:
//   line 1: "<jobs> <machines> [<avg machines per op>]"
//   then one line per job:
//   "<#ops> { <#options> { <machine(1-based)> <duration> } x#options } x#ops"
// Throws Error(Parse) naming the offending line number.
Instance parse_instance(std::string_view text);

// Debug writer emitting the same layout; parse(serialize(x)) preserves all counts.
std::string serialize_instance(const Instance& inst);

} // namespace gfjsp

#endif
