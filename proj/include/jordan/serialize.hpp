#ifndef JORDAN_SERIALIZE_HPP
#define JORDAN_SERIALIZE_HPP

#include <json.hpp>

#include "core.hpp"
#include "oracle.hpp"
#include "verify.hpp"

namespace jordan {

inline void to_json(nlohmann::json& j, const BlockGroup& g) {
    j = nlohmann::json{{"multiplicity", g.multiplicity}, {"part", g.part}};
}

inline void from_json(const nlohmann::json& j, BlockGroup& g) {
    j.at("multiplicity").get_to(g.multiplicity);
    j.at("part").get_to(g.part);
}

inline void to_json(nlohmann::json& j, const Failure& f) {
    j = nlohmann::json{{"m", f.m}, {"n", f.n}, {"p", f.p}, {"expected", f.expected}, {"actual", f.actual}};
}

inline void from_json(const nlohmann::json& j, Failure& f) {
    j.at("m").get_to(f.m);
    j.at("n").get_to(f.n);
    j.at("p").get_to(f.p);
    j.at("expected").get_to(f.expected);
    j.at("actual").get_to(f.actual);
}

inline void to_json(nlohmann::json& j, const VerifyReport& r) {
    j = nlohmann::json{{"suite", r.suite},
                       {"cases_checked", r.cases_checked},
                       {"failure_count", r.failure_count},
                       {"failures", r.failures},
                       {"elapsed_ms", r.elapsed.count()},
                       {"passed", r.passed()}};
}

inline void from_json(const nlohmann::json& j, VerifyReport& r) {
    j.at("suite").get_to(r.suite);
    j.at("cases_checked").get_to(r.cases_checked);
    j.at("failures").get_to(r.failures);
    r.failure_count = j.value("failure_count", r.failures.size());
    r.elapsed = std::chrono::milliseconds(j.at("elapsed_ms").get<std::int64_t>());
}

/// {m, n, p, composition, multiplicity_form, partition, standard}
inline nlohmann::json partition_document(const BlockPair& pair, const Prime& p, const Composition& comp,
                                         const JordanDecomposition& dec) {
    return nlohmann::json{{"m", pair.m()},
                          {"n", pair.n()},
                          {"p", p.value()},
                          {"composition", comp.parts()},
                          {"multiplicity_form", dec.groups()},
                          {"partition", dec.partition()},
                          {"standard", is_standard(dec, pair.m(), pair.n())}};
}

}  // namespace jordan

#endif  // JORDAN_SERIALIZE_HPP
