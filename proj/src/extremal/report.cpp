#include <cmath>
#include <cstdio>

#include "hyperspec/extremal.hpp"

namespace hyperspec {

const char* to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::confirmed: return "confirmed";
        case Verdict::refuted: return "refuted";
        case Verdict::indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

const Detail* SearchReport::find(const std::string& key) const {
    for (const auto& d : details)
        if (d.key == key) return &d;
    return nullptr;
}

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10f", v);
    std::string s = buf;
    if (s == "-0.0000000000") s.erase(0, 1);
    return s;
}

std::string render_detail(const Detail& d) {
    struct Visitor {
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(long long x) const { return std::to_string(x); }
        std::string operator()(double x) const { return format_real(x); }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, d.value);
}

std::vector<std::pair<std::string, std::string>> report_fields(const SearchReport& r) {
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("question", r.question);
    out.emplace_back("k", std::to_string(r.k));
    out.emplace_back("n", std::to_string(r.n));
    if (r.alpha) out.emplace_back("alpha", format_real(*r.alpha));
    const bool counting = r.question == "ex" || r.question == "ex_s" || r.question == "universal";
    out.emplace_back("optimum", counting ? std::to_string(static_cast<long long>(std::llround(r.optimum_value)))
                                         : format_real(r.optimum_value));
    if (r.witness) {
        out.emplace_back("witness_edges", std::to_string(r.witness->size()));
        out.emplace_back("witness", edges_compact(*r.witness));
    }
    out.emplace_back("witness_iso_class_count", std::to_string(r.witness_iso_class_count));
    for (const auto& d : r.details) out.emplace_back(d.key, render_detail(d));
    out.emplace_back("verdict", to_string(r.verdict));
    if (r.counterexample) {
        out.emplace_back("counterexample_edges", std::to_string(r.counterexample->size()));
        out.emplace_back("counterexample", edges_compact(*r.counterexample));
    }
    return out;
}

}  // namespace hyperspec
