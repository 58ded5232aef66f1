#include "apnkit/report.hpp"

namespace apnkit::report {

namespace {

json hex_list(const Field& field, const std::vector<Elem>& v) {
    json out = json::array();
    for (Elem e : v) out.push_back(field.to_hex(e));
    return out;
}

json counts_json(const polyzero::ZeroCounts& c) { return {{"m0", c.m0}, {"m1", c.m1}, {"m3", c.m3}}; }

json check_json(const apnfam::CheckResult& c) { return c.passed; }

}  // namespace

json field_json(const Field& field) {
    return {{"n", field.degree()}, {"modulus", hex_string(field.modulus())}};
}

json field_summary(const Field& field) {
    json j = {{"kind", "field"},
              {"n", field.degree()},
              {"modulus", hex_string(field.modulus())},
              {"generator", field.to_hex(field.generator())},
              {"group_order", field.group_order()}};
    if (const auto ci = field.cube_index())
        j["cube_index"] = *ci;
    else
        j["cube_index"] = nullptr;
    return j;
}

json to_json(const Field& field, const polyzero::ZeroDistribution& d) {
    return {{"kind", "zero_distribution"},
            {"field", field_json(field)},
            {"s", d.s},
            {"counts", counts_json(d.counts)},
            {"expected", counts_json(d.expected)},
            {"other", d.other},
            {"matches_closed_form", d.matches_closed_form},
            {"elapsed_ms", d.elapsed_ms}};
}

json to_json(const Field& field, const polyzero::ImageReport& r) {
    json witnesses = json::array();
    for (const auto& w : r.witnesses)
        witnesses.push_back({{"kind", w.kind}, {"a", field.to_hex(w.a)}, {"preimages", hex_list(field, w.preimages)}});
    return {{"kind", "image_report"},
            {"field", field_json(field)},
            {"s", r.s},
            {"k_even", r.k_even},
            {"noncube_count", r.noncube_count},
            {"image_size", r.image_size},
            {"expected_image_size", r.expected_image_size},
            {"two_to_one", r.two_to_one},
            {"all_zero_free", r.all_zero_free},
            {"converse_holds", r.converse_holds},
            {"image_claim_holds", r.image_claim_holds()},
            {"witnesses", std::move(witnesses)},
            {"elapsed_ms", r.elapsed_ms}};
}

json to_json(const Field& field, const polyzero::CubicReport& r) {
    return {{"kind", "cubic_table"},
            {"field", field_json(field)},
            {"rootless_count", r.rootless.size()},
            {"from_noncubes_count", r.from_noncubes.size()},
            {"sets_equal", r.sets_equal},
            {"rootless", hex_list(field, r.rootless)},
            {"from_noncubes", hex_list(field, r.from_noncubes)}};
}

json params_json(const Field& field, const apnfam::FamilyParams& p) {
    return {{"k", p.k},
            {"s", p.s},
            {"omega", field.to_hex(p.omega)},
            {"beta", field.to_hex(p.beta)},
            {"gamma", field.to_hex(p.gamma)},
            {"delta", field.to_hex(p.delta)},
            {"c1", field.to_hex(p.c1)},
            {"c2", field.to_hex(p.c2)}};
}

json to_json(const Field& field, const apnfam::FamilyParams& p) {
    return {{"kind", "family_params"}, {"field", field_json(field)}, {"params", params_json(field, p)}};
}

json to_json(const Field& field, const apnfam::ApnCertificate& c) {
    return {{"kind", "apn_certificate"},
            {"field", field_json(field)},
            {"params", params_json(field, c.params)},
            {"checks",
             {{"lemma_identity", check_json(c.lemma_identity)},
              {"norm_condition", check_json(c.norm_condition)},
              {"g_total_zero_free", check_json(c.g_total_zero_free)},
              {"g_unit_circle_zero_free", check_json(c.g_unit_circle_zero_free)},
              {"differential_uniformity_is_2", check_json(c.differential_uniformity_is_2)}}},
            {"details",
             {{"g_total_zeros", c.g_total_zeros},
              {"g_unit_circle_zeros", c.g_unit_circle_zeros},
              {"differential_uniformity", c.differential_uniformity},
              {"differential_method", c.differential_method}}},
            {"valid", c.valid()},
            {"timings_ms",
             {{"lemma_identity", c.lemma_identity.elapsed_ms},
              {"norm_condition", c.norm_condition.elapsed_ms},
              {"g_zero_count", c.g_total_zero_free.elapsed_ms},
              {"differential_uniformity", c.differential_uniformity_is_2.elapsed_ms}}}};
}

json to_json(const analysis::SpectrumReport& r, const std::string& label) {
    json counts = json::array();
    for (const auto& [value, count] : r.value_counts) counts.push_back({{"value", value}, {"count", count}});
    json j = {{"kind", "walsh_spectrum"},
              {"n", r.n},
              {"label", label},
              {"value_counts", std::move(counts)},
              {"value_set", r.value_set()},
              {"parseval_holds", r.parseval_holds},
              {"quadratic_shaped", analysis::walsh_values_are_quadratic_shaped(r)},
              {"elapsed_ms", r.elapsed_ms}};
    if (r.is_gold_like)
        j["is_gold_like"] = *r.is_gold_like;
    else
        j["is_gold_like"] = nullptr;
    return j;
}

json to_json(const analysis::DifferentialReport& r, const std::string& label) {
    json dims = json::array();
    for (const auto& [dim, count] : r.kernel_dims) dims.push_back({{"dim", dim}, {"count", count}});
    return {{"kind", "differential_report"},
            {"n", r.n},
            {"label", label},
            {"uniformity", r.uniformity},
            {"is_apn", r.is_apn()},
            {"worst_a", hex_string(r.worst_a, (r.n + 3) / 4)},
            {"method", analysis::method_name(r.method)},
            {"kernel_dims", std::move(dims)},
            {"elapsed_ms", r.elapsed_ms}};
}

json gamma_rank_json(int n, std::uint64_t rank, const std::string& label, analysis::GammaConvention convention,
                     double elapsed_ms) {
    return {{"kind", "gamma_rank"},
            {"n", n},
            {"label", label},
            {"convention", analysis::convention_name(convention)},
            {"gamma_rank", rank},
            {"elapsed_ms", elapsed_ms}};
}

json error_json(const std::string& code, const std::string& message) {
    return {{"error", code}, {"message", message}};
}

json strip_timing(json j) {
    if (j.is_object()) {
        j.erase("elapsed_ms");
        j.erase("timings_ms");
        for (auto& [key, value] : j.items()) value = strip_timing(std::move(value));
    } else if (j.is_array()) {
        for (auto& v : j) v = strip_timing(std::move(v));
    }
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace apnkit::report
