#include "gfjsp/milp.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "gfjsp/error.hpp"

namespace gfjsp {

namespace {

std::string num(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

// One linear expression built term by term with LP-style signs.
class Row {
public:
    Row& term(double coef, const std::string& var) {
        if (coef == 0.0) return *this;
        if (first_) {
            if (coef < 0.0) out_ << "- ";
            first_ = false;
        } else {
            out_ << (coef < 0.0 ? " - " : " + ");
        }
        double mag = std::abs(coef);
        if (mag != 1.0) out_ << num(mag) << ' ';
        out_ << var;
        return *this;
    }

    std::string done(const char* rel, double rhs) {
        out_ << ' ' << rel << ' ' << num(rhs);
        return out_.str();
    }

private:
    std::ostringstream out_;
    bool first_ = true;
};

std::string vx(int i, int j, int k) {
    return "x_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k);
}
std::string vs(int i, int j, int k) {
    return "s_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k);
}
std::string vc(int i, int j, int k) {
    return "c_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k);
}
std::string vp(int i, int j, int k, std::size_t t) {
    return "p_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(k) + "_" +
           std::to_string(t);
}
std::string vy(int i, int j, int i2, int j2, int k) {
    return "y_" + std::to_string(i) + "_" + std::to_string(j) + "_" + std::to_string(i2) + "_" +
           std::to_string(j2) + "_" + std::to_string(k);
}

} // namespace

std::string emit_milp(const EnrichedInstance& e, const MilpEmission& m) {
    const Instance& inst = e.instance();
    const std::size_t n_ops = inst.total_operations();
    const std::size_t n_machines = static_cast<std::size_t>(inst.machine_count());
    const std::size_t horizon = e.horizon();

    const std::size_t p_vars = n_ops * n_machines * horizon;
    if (p_vars > m.p_variable_cap)
        throw limit_error("milp emitter refused: " + std::to_string(p_vars) +
                          " start-indicator variables exceed the cap of " +
                          std::to_string(m.p_variable_cap) + " (|O|=" + std::to_string(n_ops) +
                          ", |M|=" + std::to_string(n_machines) +
                          ", |T|=" + std::to_string(horizon) + ")");

    double big_l = m.big_l;
    if (big_l == 0.0) big_l = 2.0 * static_cast<double>(horizon);
    if (big_l < 2.0 * static_cast<double>(horizon))
        throw param_error("big_l must be at least 2*|T| = " + num(2.0 * static_cast<double>(horizon)));

    const char* objective_var = nullptr;
    switch (m.objective) {
        case MilpObjective::Makespan: objective_var = "cmax"; break;
        case MilpObjective::Cost: objective_var = "psum"; break;
        case MilpObjective::Emissions: objective_var = "esum"; break;
    }
    if ((m.objective == MilpObjective::Makespan && m.eps_makespan) ||
        (m.objective == MilpObjective::Cost && m.eps_cost) ||
        (m.objective == MilpObjective::Emissions && m.eps_emissions))
        throw param_error("epsilon bound on the objective itself");

    // Flat list of operations in job-major order.
    std::vector<const OperationSpec*> ops;
    for (const auto& job : inst.jobs())
        for (const auto& op : job.operations) ops.push_back(&op);

    std::ostringstream out;
    out << "\\ flexible job shop MILP: makespan, energy cost, emissions\n";
    out << "\\ |O|=" << n_ops << " |M|=" << n_machines << " |T|=" << horizon << " L=" << num(big_l)
        << "\n";
    out << "Minimize\n obj: " << objective_var << "\n";
    out << "Subject To\n";

    auto emit = [&](const std::string& name, std::string row) {
        out << ' ' << name << ": " << row << '\n';
    };

    // Makespan covers every end time.
    for (const auto* op : ops)
        for (std::size_t k = 1; k <= n_machines; ++k)
            emit("ms_" + std::to_string(op->job) + "_" + std::to_string(op->position) + "_" +
                     std::to_string(k),
                 Row()
                     .term(1.0, "cmax")
                     .term(-1.0, vc(op->job, op->position, static_cast<int>(k)))
                     .done(">=", 0.0));

    // Total energy cost and emissions as equalities over the start indicators.
    {
        Row cost;
        cost.term(1.0, "psum");
        Row em;
        em.term(1.0, "esum");
        for (const auto* op : ops) {
            for (const auto& opt : op->options) {
                for (std::size_t t = 0; t + static_cast<std::size_t>(opt.duration) <= horizon; ++t) {
                    StepCost c = op_cost_tiled(e, op->job, opt.duration, t, horizon);
                    cost.term(-c.cost_eur, vp(op->job, op->position, opt.machine, t));
                    em.term(-c.emissions_g, vp(op->job, op->position, opt.machine, t));
                }
            }
        }
        emit("cost", cost.done("=", 0.0));
        emit("em", em.done("=", 0.0));
    }

    // Each operation is assigned to exactly one machine.
    for (const auto* op : ops) {
        Row r;
        for (std::size_t k = 1; k <= n_machines; ++k)
            r.term(1.0, vx(op->job, op->position, static_cast<int>(k)));
        emit("assign_" + std::to_string(op->job) + "_" + std::to_string(op->position),
             r.done("=", 1.0));
    }

    // Start/end only live on the assigned machine copy; duration on assignment.
    for (const auto* op : ops) {
        for (std::size_t k = 1; k <= n_machines; ++k) {
            const int ki = static_cast<int>(k);
            const std::string tag =
                std::to_string(op->job) + "_" + std::to_string(op->position) + "_" + std::to_string(k);
            emit("alloc_" + tag, Row()
                                     .term(1.0, vs(op->job, op->position, ki))
                                     .term(1.0, vc(op->job, op->position, ki))
                                     .term(-big_l, vx(op->job, op->position, ki))
                                     .done("<=", 0.0));
            int tau = op->duration_on(ki);
            if (tau < 0) tau = 0;
            emit("dur_" + tag, Row()
                                   .term(1.0, vc(op->job, op->position, ki))
                                   .term(-1.0, vs(op->job, op->position, ki))
                                   .term(-big_l, vx(op->job, op->position, ki))
                                   .done(">=", static_cast<double>(tau) - big_l));
        }
    }

    // Job precedence chains.
    for (const auto* op : ops) {
        if (op->position < 2) continue;
        Row r;
        for (std::size_t k = 1; k <= n_machines; ++k)
            r.term(1.0, vs(op->job, op->position, static_cast<int>(k)));
        for (std::size_t k = 1; k <= n_machines; ++k)
            r.term(-1.0, vc(op->job, op->position - 1, static_cast<int>(k)));
        emit("prec_" + std::to_string(op->job) + "_" + std::to_string(op->position),
             r.done(">=", 0.0));
    }

    // Machine disjunction, once per unordered distinct operation pair per machine.
    for (std::size_t a = 0; a < ops.size(); ++a) {
        for (std::size_t b = a + 1; b < ops.size(); ++b) {
            const auto* oa = ops[a];
            const auto* ob = ops[b];
            for (std::size_t k = 1; k <= n_machines; ++k) {
                const int ki = static_cast<int>(k);
                const std::string y = vy(oa->job, oa->position, ob->job, ob->position, ki);
                const std::string tag = std::to_string(oa->job) + "_" + std::to_string(oa->position) +
                                        "_" + std::to_string(ob->job) + "_" +
                                        std::to_string(ob->position) + "_" + std::to_string(k);
                emit("disj1_" + tag, Row()
                                         .term(1.0, vs(oa->job, oa->position, ki))
                                         .term(-1.0, vc(ob->job, ob->position, ki))
                                         .term(big_l, y)
                                         .done(">=", 0.0));
                emit("disj2_" + tag, Row()
                                         .term(1.0, vs(ob->job, ob->position, ki))
                                         .term(-1.0, vc(oa->job, oa->position, ki))
                                         .term(-big_l, y)
                                         .done(">=", -big_l));
            }
        }
    }

    // Start indicators: sum matches assignment, and pin the start time.
    for (const auto* op : ops) {
        for (std::size_t k = 1; k <= n_machines; ++k) {
            const int ki = static_cast<int>(k);
            const std::string tag =
                std::to_string(op->job) + "_" + std::to_string(op->position) + "_" + std::to_string(k);
            Row link;
            link.term(1.0, vx(op->job, op->position, ki));
            for (std::size_t t = 0; t < horizon; ++t)
                link.term(-1.0, vp(op->job, op->position, ki, t));
            emit("linkxp_" + tag, link.done("=", 0.0));
            for (std::size_t t = 0; t < horizon; ++t) {
                emit("start1_" + tag + "_" + std::to_string(t),
                     Row()
                         .term(1.0, vs(op->job, op->position, ki))
                         .term(-big_l, vp(op->job, op->position, ki, t))
                         .done(">=", static_cast<double>(t) - big_l));
                emit("start2_" + tag + "_" + std::to_string(t),
                     Row()
                         .term(1.0, vs(op->job, op->position, ki))
                         .term(big_l, vp(op->job, op->position, ki, t))
                         .done("<=", static_cast<double>(t) + big_l));
            }
        }
    }

    if (m.eps_makespan) emit("eps_ms", Row().term(1.0, "cmax").done("<=", *m.eps_makespan));
    if (m.eps_cost) emit("eps_ec", Row().term(1.0, "psum").done("<=", *m.eps_cost));
    if (m.eps_emissions) emit("eps_em", Row().term(1.0, "esum").done("<=", *m.eps_emissions));

    // psum can be negative under negative market prices; everything else keeps
    // the default non-negative bound. Ineligible machine copies get x fixed to
    // zero (which zeroes their p via linkxp); starts that would overrun the
    // horizon on an eligible machine get their indicator fixed directly.
    out << "Bounds\n psum free\n";
    for (const auto* op : ops) {
        for (std::size_t k = 1; k <= n_machines; ++k) {
            const int ki = static_cast<int>(k);
            int tau = op->duration_on(ki);
            if (tau < 0) {
                out << ' ' << vx(op->job, op->position, ki) << " = 0\n";
            } else {
                for (std::size_t t = horizon - std::min(horizon, static_cast<std::size_t>(tau) - 1);
                     t < horizon; ++t)
                    out << ' ' << vp(op->job, op->position, ki, t) << " = 0\n";
            }
        }
    }

    out << "Binary\n";
    for (const auto* op : ops)
        for (std::size_t k = 1; k <= n_machines; ++k)
            out << ' ' << vx(op->job, op->position, static_cast<int>(k)) << '\n';
    for (std::size_t a = 0; a < ops.size(); ++a)
        for (std::size_t b = a + 1; b < ops.size(); ++b)
            for (std::size_t k = 1; k <= n_machines; ++k)
                out << ' '
                    << vy(ops[a]->job, ops[a]->position, ops[b]->job, ops[b]->position,
                          static_cast<int>(k))
                    << '\n';
    for (const auto* op : ops)
        for (std::size_t k = 1; k <= n_machines; ++k)
            for (std::size_t t = 0; t < horizon; ++t)
                out << ' ' << vp(op->job, op->position, static_cast<int>(k), t) << '\n';
    out << "End\n";
    return out.str();
}

} // namespace gfjsp
