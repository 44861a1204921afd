#pragma once

// JSON serialization of derivation traces, analysis tuples and suite
// reports. The trace schema is frozen:
//
// { "initial": str, "final": str,
//   "steps": [ { "kind": "dB"|"ls", "position": str,
//                "size": int, "es_count": int, "duplicated"?: str } ],
//   "db_count": int, "ls_count": int, "exhausted": bool }

#include <json.hpp>

#include "lsc/analysis.hpp"
#include "lsc/engine.hpp"
#include "lsc/suites.hpp"
#include "lsc/syntax.hpp"

namespace lsc {

inline nlohmann::ordered_json trace_to_json(const DerivationTrace& trace) {
    nlohmann::ordered_json j;
    j["initial"] = print(trace.initial);
    j["final"] = print(trace.final_term);
    j["steps"] = nlohmann::ordered_json::array();
    for (const TraceStep& s : trace.steps) {
        nlohmann::ordered_json step;
        step["kind"] = to_string(s.redex.kind);
        step["position"] = to_string(s.redex.position);
        step["size"] = s.result_measure.size;
        step["es_count"] = s.result_measure.es_count;
        if (s.duplicated) step["duplicated"] = print(s.duplicated);
        j["steps"].push_back(std::move(step));
    }
    j["db_count"] = trace.db_count();
    j["ls_count"] = trace.ls_count();
    j["exhausted"] = trace.exhausted;
    return j;
}

inline nlohmann::ordered_json analysis_to_json(const AnalysisTuple& t) {
    nlohmann::ordered_json j;
    j["nature"] = to_string(t.nature);
    j["has_redex"] = t.has_redex;
    auto names = [](const NameSet& s) {
        std::vector<std::string> out;
        for (const Name& n : s) out.push_back(n.uid ? n.text + "#" + std::to_string(n.uid) : n.text);
        return out;
    };
    j["apvars"] = names(t.apvars);
    j["freevars"] = names(t.freevars);
    return j;
}

inline nlohmann::ordered_json report_to_json(const SuiteReport& r) {
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["cases"] = r.cases_run;
    j["skipped"] = r.skipped;
    j["failures"] = nlohmann::ordered_json::array();
    for (const SuiteFailure& f : r.failures) {
        nlohmann::ordered_json jf;
        jf["index"] = f.index;
        jf["message"] = f.message;
        j["failures"].push_back(std::move(jf));
    }
    j["pass"] = r.pass();
    return j;
}

inline nlohmann::ordered_json verify_report_to_json(const TraceReport& r) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const CheckOutcome& c : r.checks) {
        nlohmann::ordered_json jc;
        jc["check"] = c.name;
        jc["pass"] = c.pass;
        if (!c.detail.empty()) jc["detail"] = c.detail;
        j.push_back(std::move(jc));
    }
    return j;
}

}  // namespace lsc
