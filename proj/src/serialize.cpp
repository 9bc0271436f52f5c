#include "eism/serialize.hpp"

#include "eism/error.hpp"

namespace eism {

namespace {

Json rational_json(const mpq_class& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
    return q.get_str();
}

mpq_class rational_from_json(const Json& v) {
    if (v.is_number_integer()) return mpq_class(v.get<long>());
    if (v.is_string()) {
        mpq_class q(v.get<std::string>());
        q.canonicalize();
        return q;
    }
    fail(ErrorKind::InvalidArgument, "table value must be an integer or an \"a/b\" string");
}

}  // namespace

Json to_json(const HermitianMatrix& beta) {
    Json rows = Json::array();
    for (int i = 0; i < beta.size(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < beta.size(); ++j) {
            const KElt& e = beta(i, j);
            row.push_back(Json::array({rational_json(e.a), rational_json(e.b)}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const Coeff& c, unsigned long p) {
    Json out;
    switch (c.ring()) {
        case RingKind::padic: {
            const PadicElt& v = c.padic();
            if (v.is_zero()) {
                out["val"] = v.precision();
                out["unit"] = "0";
            } else {
                out["val"] = v.valuation();
                out["unit"] = v.unit_part().get_str();
            }
            out["N"] = v.precision();
            break;
        }
        case RingKind::rational: {
            const mpq_class& q = c.rational();
            if (q == 0) {
                out["val"] = nullptr;
                out["unit"] = "0";
            } else {
                int v = c.valuation(p);
                mpq_class u = q;
                if (v > 0) u /= mpq_class(prime_power(p, v));
                if (v < 0) u *= mpq_class(prime_power(p, -v));
                out["val"] = v;
                out["unit"] = u.get_str();
            }
            out["N"] = nullptr;
            break;
        }
        case RingKind::cyclotomic:
            out["val"] = nullptr;
            out["unit"] = c.to_string();
            out["N"] = nullptr;
            break;
    }
    return out;
}

Json to_json(const QExpansion& Q) {
    Json out;
    out["schema"] = kJsonSchemaVersion;
    out["cusp"] = Q.cusp;
    out["p"] = Q.field.p;
    out["precision"] = Q.ring.kind == RingKind::padic ? Json(Q.ring.precision) : Json(nullptr);
    out["trace_bound"] = Q.trace_bound;
    out["n"] = Q.n;
    out["field"] = Q.field.field_label();
    out["ring"] = ring_name(Q.ring.kind);
    Json terms = Json::array();
    for (const auto& [beta, c] : Q.coeffs) {
        Json t;
        t["beta"] = to_json(beta);
        t["coeff"] = to_json(c, Q.field.p);
        terms.push_back(std::move(t));
    }
    out["terms"] = std::move(terms);
    return out;
}

Json to_json(const LCFunction& F) {
    Json out;
    out["schema"] = kJsonSchemaVersion;
    out["level"] = F.level();
    out["support"] = F.support() == YSupport::invertible ? "invertible" : "all";
    out["ring"] = ring_name(F.ring().kind);
    if (F.ring().kind == RingKind::padic) out["precision"] = F.ring().precision;
    std::vector<CosetKey> keys;
    for (const auto& [key, v] : F.entries()) keys.push_back(key);
    std::sort(keys.begin(), keys.end());
    const std::size_t xc = F.field().x_components();
    Json entries = Json::array();
    for (const auto& key : keys) {
        Json e;
        e["x_coset"] = std::vector<std::int64_t>(key.begin(), key.begin() + static_cast<long>(xc));
        e["y_coset"] = std::vector<std::int64_t>(key.begin() + static_cast<long>(xc), key.end());
        const Coeff v = F.at(key);
        if (v.is_padic()) {
            e["value"] = v.padic().residue().get_str();
        } else if (v.ring() == RingKind::rational) {
            e["value"] = rational_json(v.rational());
        } else {
            e["value"] = v.to_string();
        }
        entries.push_back(std::move(e));
    }
    out["entries"] = std::move(entries);
    return out;
}

LCFunction lc_function_from_json(const Json& j, const FieldData& field, int n) {
    try {
        const int level = j.at("level").get<int>();
        const std::string support = j.value("support", "invertible");
        if (support != "invertible" && support != "all") fail(ErrorKind::InvalidArgument, "support must be invertible or all");
        const std::string ring_label = j.value("ring", "padic");
        RingSpec ring;
        if (ring_label == "rational") {
            ring = RingSpec::rational();
        } else if (ring_label == "padic") {
            ring = RingSpec::padic(field.p, j.value("precision", field.precision));
        } else {
            fail(ErrorKind::InvalidArgument, "table ring must be padic or rational");
        }
        LCFunction F(field, n, level, ring, support == "all" ? YSupport::all : YSupport::invertible);
        for (const auto& e : j.at("entries")) {
            CosetKey key = e.at("x_coset").get<std::vector<std::int64_t>>();
            auto y = e.at("y_coset").get<std::vector<std::int64_t>>();
            key.insert(key.end(), y.begin(), y.end());
            F.set(key, ring.from_rational(rational_from_json(e.at("value"))));
        }
        return F;
    } catch (const nlohmann::json::exception& ex) {
        fail(ErrorKind::InvalidArgument, std::string("malformed function table: ") + ex.what());
    }
}

}  // namespace eism
