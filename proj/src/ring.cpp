#include "schur/ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace schur {

namespace {

bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

bool valid_identifier(std::string_view s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

}  // namespace

RingSpecPtr RingSpec::integers() {
    static const RingSpecPtr instance(new RingSpec(RingKind::integers));
    return instance;
}

RingSpecPtr RingSpec::rationals() {
    static const RingSpecPtr instance(new RingSpec(RingKind::rationals));
    return instance;
}

RingSpecPtr RingSpec::localized_integers(std::vector<unsigned long> primes) {
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (unsigned long p : primes)
        if (!is_prime(p))
            throw std::invalid_argument("inverted element " + std::to_string(p) + " is not prime");
    auto* spec = new RingSpec(RingKind::localized_integers);
    spec->primes_ = std::move(primes);
    return RingSpecPtr(spec);
}

RingSpecPtr RingSpec::polynomials(std::vector<std::string> indeterminates) {
    if (indeterminates.empty())
        throw std::invalid_argument("polynomial spec needs at least one indeterminate");
    for (const auto& v : indeterminates)
        if (!valid_identifier(v))
            throw std::invalid_argument("bad indeterminate name '" + v + "'");
    auto sorted = indeterminates;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("duplicate indeterminate name");
    auto* spec = new RingSpec(RingKind::polynomials);
    spec->vars_ = std::move(indeterminates);
    return RingSpecPtr(spec);
}

RingSpecPtr RingSpec::parse(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s == "Z") return integers();
    if (s == "Q") return rationals();
    if (s.size() >= 3 && s.rfind("Z[", 0) == 0 && s.back() == ']') {
        std::string body = s.substr(2, s.size() - 3);
        std::vector<std::string> items;
        size_t start = 0;
        while (start <= body.size()) {
            size_t comma = body.find(',', start);
            if (comma == std::string::npos) {
                items.push_back(body.substr(start));
                break;
            }
            items.push_back(body.substr(start, comma - start));
            start = comma + 1;
        }
        bool inverted = !items.empty() && items[0].rfind("1/", 0) == 0;
        if (inverted) {
            std::vector<unsigned long> primes;
            for (const auto& item : items) {
                if (item.rfind("1/", 0) != 0)
                    throw ParseError("expected 1/p item in localized ring", 0);
                const std::string digits = item.substr(2);
                if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) {
                        return std::isdigit(static_cast<unsigned char>(c));
                    }))
                    throw ParseError("expected a prime after 1/", 0);
                primes.push_back(std::stoul(digits));
            }
            try {
                return localized_integers(std::move(primes));
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), 0);
            }
        }
        try {
            return polynomials(std::move(items));
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), 0);
        }
    }
    throw ParseError("unrecognized ring '" + std::string(text) + "'", 0);
}

std::optional<size_t> RingSpec::indeterminate_index(std::string_view name) const {
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    return std::nullopt;
}

std::string RingSpec::to_string() const {
    switch (kind_) {
        case RingKind::integers: return "Z";
        case RingKind::rationals: return "Q";
        case RingKind::localized_integers: {
            std::string out = "Z[";
            for (size_t i = 0; i < primes_.size(); ++i) {
                if (i) out += ",";
                out += "1/" + std::to_string(primes_[i]);
            }
            return out + "]";
        }
        case RingKind::polynomials: {
            std::string out = "Z[";
            for (size_t i = 0; i < vars_.size(); ++i) {
                if (i) out += ",";
                out += vars_[i];
            }
            return out + "]";
        }
    }
    return "?";
}

bool same_spec(const RingSpecPtr& a, const RingSpecPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

namespace {

using detail::LocalizedValue;
using detail::PolyValue;

void require_same_spec(const RingElement& a, const RingElement& b) {
    if (!same_spec(a.spec(), b.spec()))
        throw SpecMismatchError("ring mismatch: " + a.spec()->to_string() + " vs " + b.spec()->to_string());
}

// Strips every inverted prime of `spec` out of num, raising the denominator
// exponents accordingly, and drops zero exponents.  Canonicalizes in place.
void reduce_localized(const RingSpec& spec, LocalizedValue& v) {
    if (v.num == 0) {
        v.denom.clear();
        return;
    }
    std::vector<std::pair<unsigned long, unsigned>> out;
    for (unsigned long p : spec.inverted_primes()) {
        long carried = 0;
        for (auto& [q, e] : v.denom)
            if (q == p) carried = e;
        mpz_class reduced;
        mp_bitcnt_t removed = mpz_remove(reduced.get_mpz_t(), v.num.get_mpz_t(), mpz_class(p).get_mpz_t());
        long e = carried - static_cast<long>(removed);
        if (e < 0) {
            // More p-factors in num than the denominator holds; put the rest back.
            mpz_class back;
            mpz_ui_pow_ui(back.get_mpz_t(), p, static_cast<unsigned long>(-e));
            reduced *= back;
            e = 0;
        }
        v.num = reduced;
        if (e > 0) out.emplace_back(p, static_cast<unsigned>(e));
    }
    v.denom = std::move(out);
}

mpz_class denom_product(const LocalizedValue& v) {
    mpz_class d = 1;
    for (auto& [p, e] : v.denom) {
        mpz_class pe;
        mpz_ui_pow_ui(pe.get_mpz_t(), p, e);
        d *= pe;
    }
    return d;
}

void poly_add_term(PolyValue& p, const std::vector<unsigned>& exps, const mpz_class& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = p.terms.emplace(exps, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) p.terms.erase(it);
    }
}

PolyValue poly_mul(const PolyValue& a, const PolyValue& b) {
    PolyValue out;
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms) {
            std::vector<unsigned> e(ea.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            poly_add_term(out, e, ca * cb);
        }
    return out;
}

std::string format_mpz(const mpz_class& z) { return z.get_str(); }

std::string format_poly(const RingSpec& spec, const PolyValue& p) {
    if (p.terms.empty()) return "0";
    std::string out;
    // Descending lex so the leading term comes first.
    for (auto it = p.terms.rbegin(); it != p.terms.rend(); ++it) {
        const auto& [exps, coeff] = *it;
        mpz_class abs_coeff = abs(coeff);
        if (out.empty()) {
            if (coeff < 0) out += "-";
        } else {
            out += coeff < 0 ? " - " : " + ";
        }
        bool has_vars = std::any_of(exps.begin(), exps.end(), [](unsigned e) { return e > 0; });
        bool coeff_shown = !has_vars || abs_coeff != 1;
        if (coeff_shown) out += format_mpz(abs_coeff);
        bool first_factor = !coeff_shown;
        for (size_t i = 0; i < exps.size(); ++i) {
            if (exps[i] == 0) continue;
            if (!first_factor) out += "*";
            first_factor = false;
            out += spec.indeterminates()[i];
            if (exps[i] > 1) out += "^" + std::to_string(exps[i]);
        }
    }
    return out;
}

}  // namespace

RingElement::RingElement() : spec_(RingSpec::integers()), value_(mpz_class(0)) {}

RingElement RingElement::zero(RingSpecPtr spec) { return from_int(std::move(spec), 0); }

RingElement RingElement::one(RingSpecPtr spec) { return from_int(std::move(spec), 1); }

RingElement RingElement::from_int(RingSpecPtr spec, long value) {
    return from_mpz(std::move(spec), mpz_class(value));
}

RingElement RingElement::from_mpz(RingSpecPtr spec, mpz_class value) {
    switch (spec->kind()) {
        case RingKind::integers: return RingElement(std::move(spec), std::move(value));
        case RingKind::rationals: return RingElement(std::move(spec), mpq_class(std::move(value)));
        case RingKind::localized_integers: {
            LocalizedValue v{std::move(value), {}};
            return RingElement(std::move(spec), std::move(v));
        }
        case RingKind::polynomials: {
            PolyValue p;
            if (value != 0) p.terms.emplace(std::vector<unsigned>(spec->indeterminates().size(), 0), std::move(value));
            return RingElement(std::move(spec), std::move(p));
        }
    }
    throw std::logic_error("unreachable");
}

RingElement RingElement::from_mpq(RingSpecPtr spec, mpq_class value) {
    value.canonicalize();
    switch (spec->kind()) {
        case RingKind::rationals: return RingElement(std::move(spec), std::move(value));
        case RingKind::integers:
            if (value.get_den() != 1) throw NotDivisibleError("fraction " + value.get_str() + " is not an integer");
            return from_mpz(std::move(spec), value.get_num());
        case RingKind::localized_integers: {
            LocalizedValue v{value.get_num(), {}};
            mpz_class den = value.get_den();
            for (unsigned long p : spec->inverted_primes()) {
                mpz_class reduced;
                mp_bitcnt_t e = mpz_remove(reduced.get_mpz_t(), den.get_mpz_t(), mpz_class(p).get_mpz_t());
                if (e > 0) v.denom.emplace_back(p, static_cast<unsigned>(e));
                den = reduced;
            }
            if (den != 1 && den != -1)
                throw NotDivisibleError("denominator " + value.get_den().get_str() + " is not a unit in " +
                                        spec->to_string());
            if (den == -1) v.num = -v.num;
            reduce_localized(*spec, v);
            return RingElement(std::move(spec), std::move(v));
        }
        case RingKind::polynomials:
            if (value.get_den() != 1) throw NotDivisibleError("fraction in polynomial ring");
            return from_mpz(std::move(spec), value.get_num());
    }
    throw std::logic_error("unreachable");
}

RingElement RingElement::indeterminate(RingSpecPtr spec, size_t index) {
    if (spec->kind() != RingKind::polynomials) throw SpecMismatchError("indeterminate needs a polynomial ring");
    if (index >= spec->indeterminates().size()) throw std::out_of_range("indeterminate index");
    std::vector<unsigned> exps(spec->indeterminates().size(), 0);
    exps[index] = 1;
    return monomial(std::move(spec), 1, std::move(exps));
}

RingElement RingElement::monomial(RingSpecPtr spec, mpz_class coeff, std::vector<unsigned> exponents) {
    if (spec->kind() != RingKind::polynomials) throw SpecMismatchError("monomial needs a polynomial ring");
    if (exponents.size() != spec->indeterminates().size()) throw std::invalid_argument("exponent vector length");
    PolyValue p;
    if (coeff != 0) p.terms.emplace(std::move(exponents), std::move(coeff));
    return RingElement(std::move(spec), std::move(p));
}

bool RingElement::is_zero() const {
    switch (spec_->kind()) {
        case RingKind::integers: return std::get<mpz_class>(value_) == 0;
        case RingKind::rationals: return std::get<mpq_class>(value_) == 0;
        case RingKind::localized_integers: return std::get<LocalizedValue>(value_).num == 0;
        case RingKind::polynomials: return std::get<PolyValue>(value_).terms.empty();
    }
    return false;
}

bool RingElement::is_one() const { return *this == one(spec_); }

RingElement RingElement::operator-() const {
    RingElement out = *this;
    switch (spec_->kind()) {
        case RingKind::integers: std::get<mpz_class>(out.value_) = -std::get<mpz_class>(out.value_); break;
        case RingKind::rationals: std::get<mpq_class>(out.value_) = -std::get<mpq_class>(out.value_); break;
        case RingKind::localized_integers: std::get<LocalizedValue>(out.value_).num *= -1; break;
        case RingKind::polynomials:
            for (auto& [e, c] : std::get<PolyValue>(out.value_).terms) c = -c;
            break;
    }
    return out;
}

RingElement& RingElement::operator+=(const RingElement& o) {
    require_same_spec(*this, o);
    switch (spec_->kind()) {
        case RingKind::integers: std::get<mpz_class>(value_) += std::get<mpz_class>(o.value_); break;
        case RingKind::rationals: std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_); break;
        case RingKind::localized_integers: {
            const auto& a = std::get<LocalizedValue>(value_);
            const auto& b = std::get<LocalizedValue>(o.value_);
            LocalizedValue sum;
            // Common denominator via per-prime max exponent.
            mpz_class scale_a = 1, scale_b = 1;
            for (unsigned long p : spec_->inverted_primes()) {
                unsigned ea = 0, eb = 0;
                for (auto& [q, e] : a.denom)
                    if (q == p) ea = e;
                for (auto& [q, e] : b.denom)
                    if (q == p) eb = e;
                unsigned em = std::max(ea, eb);
                if (em > 0) sum.denom.emplace_back(p, em);
                mpz_class pe;
                mpz_ui_pow_ui(pe.get_mpz_t(), p, em - ea);
                scale_a *= pe;
                mpz_ui_pow_ui(pe.get_mpz_t(), p, em - eb);
                scale_b *= pe;
            }
            sum.num = a.num * scale_a + b.num * scale_b;
            reduce_localized(*spec_, sum);
            value_ = std::move(sum);
            break;
        }
        case RingKind::polynomials: {
            auto& mine = std::get<PolyValue>(value_);
            for (const auto& [e, c] : std::get<PolyValue>(o.value_).terms) poly_add_term(mine, e, c);
            break;
        }
    }
    return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) { return *this += -o; }

RingElement& RingElement::operator*=(const RingElement& o) {
    require_same_spec(*this, o);
    switch (spec_->kind()) {
        case RingKind::integers: std::get<mpz_class>(value_) *= std::get<mpz_class>(o.value_); break;
        case RingKind::rationals: std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_); break;
        case RingKind::localized_integers: {
            auto& a = std::get<LocalizedValue>(value_);
            const auto& b = std::get<LocalizedValue>(o.value_);
            LocalizedValue prod;
            prod.num = a.num * b.num;
            if (prod.num != 0) {
                // Neither factor's num is divisible by a listed prime, so the
                // product stays reduced; exponents just add.
                for (unsigned long p : spec_->inverted_primes()) {
                    unsigned ea = 0, eb = 0;
                    for (auto& [q, e] : a.denom)
                        if (q == p) ea = e;
                    for (auto& [q, e] : b.denom)
                        if (q == p) eb = e;
                    if (ea + eb > 0) prod.denom.emplace_back(p, ea + eb);
                }
            }
            value_ = std::move(prod);
            break;
        }
        case RingKind::polynomials:
            value_ = poly_mul(std::get<PolyValue>(value_), std::get<PolyValue>(o.value_));
            break;
    }
    return *this;
}

RingElement RingElement::pow(unsigned long e) const {
    RingElement acc = one(spec_);
    RingElement base = *this;
    while (e > 0) {
        if (e & 1) acc *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return acc;
}

bool operator==(const RingElement& a, const RingElement& b) {
    if (!same_spec(a.spec_, b.spec_)) return false;
    return a.value_ == b.value_;
}

std::string RingElement::to_string() const {
    switch (spec_->kind()) {
        case RingKind::integers: return format_mpz(std::get<mpz_class>(value_));
        case RingKind::rationals: {
            const auto& q = std::get<mpq_class>(value_);
            if (q.get_den() == 1) return q.get_num().get_str();
            return q.get_str();
        }
        case RingKind::localized_integers: {
            const auto& v = std::get<LocalizedValue>(value_);
            if (v.denom.empty()) return format_mpz(v.num);
            return format_mpz(v.num) + "/" + format_mpz(denom_product(v));
        }
        case RingKind::polynomials: return format_poly(*spec_, std::get<PolyValue>(value_));
    }
    return "?";
}

mpq_class RingElement::to_rational() const {
    switch (spec_->kind()) {
        case RingKind::integers: return mpq_class(std::get<mpz_class>(value_));
        case RingKind::rationals: return std::get<mpq_class>(value_);
        case RingKind::localized_integers: {
            const auto& v = std::get<LocalizedValue>(value_);
            mpq_class q(v.num, denom_product(v));
            q.canonicalize();
            return q;
        }
        case RingKind::polynomials: {
            const auto& p = std::get<PolyValue>(value_);
            if (p.terms.empty()) return mpq_class(0);
            if (p.terms.size() == 1) {
                const auto& [e, c] = *p.terms.begin();
                if (std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; })) return mpq_class(c);
            }
            throw std::domain_error("non-constant polynomial has no rational value");
        }
    }
    throw std::logic_error("unreachable");
}

const mpz_class& RingElement::integer_value() const { return std::get<mpz_class>(value_); }
const mpq_class& RingElement::rational_value() const { return std::get<mpq_class>(value_); }
const detail::LocalizedValue& RingElement::localized_value() const { return std::get<LocalizedValue>(value_); }
const detail::PolyValue& RingElement::poly_value() const { return std::get<PolyValue>(value_); }

namespace {

// Leading-term elimination; works in any number of variables because exact
// divisibility is all we ever need.
PolyValue poly_exact_div(const PolyValue& a, const PolyValue& b) {
    if (b.terms.empty()) throw std::domain_error("polynomial division by zero");
    PolyValue quotient;
    PolyValue rem = a;
    const auto& [lead_e, lead_c] = *b.terms.rbegin();
    while (!rem.terms.empty()) {
        const auto& [re, rc] = *rem.terms.rbegin();
        std::vector<unsigned> qe(re.size());
        for (size_t i = 0; i < re.size(); ++i) {
            if (re[i] < lead_e[i]) throw NotDivisibleError("polynomial quotient is not exact");
            qe[i] = re[i] - lead_e[i];
        }
        mpz_class qc, r;
        mpz_tdiv_qr(qc.get_mpz_t(), r.get_mpz_t(), rc.get_mpz_t(), lead_c.get_mpz_t());
        if (r != 0) throw NotDivisibleError("polynomial quotient is not exact");
        poly_add_term(quotient, qe, qc);
        // rem -= (qc, qe) * b
        for (const auto& [be, bc] : b.terms) {
            std::vector<unsigned> e(be.size());
            for (size_t i = 0; i < e.size(); ++i) e[i] = be[i] + qe[i];
            poly_add_term(rem, e, -(bc * qc));
        }
    }
    return quotient;
}

}  // namespace

RingElement exact_div(const RingElement& a, const RingElement& b) {
    require_same_spec(a, b);
    if (b.is_zero()) throw std::domain_error("division by zero");
    const auto& spec = a.spec();
    switch (spec->kind()) {
        case RingKind::integers: {
            mpz_class q, r;
            mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.integer_value().get_mpz_t(), b.integer_value().get_mpz_t());
            if (r != 0)
                throw NotDivisibleError(b.to_string() + " does not divide " + a.to_string() + " in Z");
            return RingElement::from_mpz(spec, std::move(q));
        }
        case RingKind::rationals: {
            mpq_class q = a.rational_value() / b.rational_value();
            return RingElement::from_mpq(spec, std::move(q));
        }
        case RingKind::localized_integers: {
            mpq_class q = a.to_rational() / b.to_rational();
            return RingElement::from_mpq(spec, std::move(q));  // unit check happens inside
        }
        case RingKind::polynomials: {
            detail::PolyValue q = poly_exact_div(a.poly_value(), b.poly_value());
            RingElement out = RingElement::zero(spec);
            for (auto& [e, c] : q.terms) out += RingElement::monomial(spec, c, e);
            return out;
        }
    }
    throw std::logic_error("unreachable");
}

bool is_unit(const RingElement& a) {
    switch (a.spec()->kind()) {
        case RingKind::integers: {
            const auto& z = a.integer_value();
            return z == 1 || z == -1;
        }
        case RingKind::rationals: return a.rational_value() != 0;
        case RingKind::localized_integers: {
            mpz_class n = abs(a.localized_value().num);
            if (n == 0) return false;
            for (unsigned long p : a.spec()->inverted_primes()) {
                mpz_class reduced;
                mpz_remove(reduced.get_mpz_t(), n.get_mpz_t(), mpz_class(p).get_mpz_t());
                n = reduced;
            }
            return n == 1;
        }
        case RingKind::polynomials: {
            const auto& terms = a.poly_value().terms;
            if (terms.size() != 1) return false;
            const auto& [e, c] = *terms.begin();
            if (!std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; })) return false;
            return c == 1 || c == -1;
        }
    }
    return false;
}

namespace {

struct ScalarParser {
    std::string_view text;
    size_t pos = 0;
    const RingSpecPtr& spec;

    explicit ScalarParser(std::string_view t, const RingSpecPtr& s) : text(t), spec(s) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    mpz_class parse_integer() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected an integer");
        return mpz_class(std::string(text.substr(start, pos - start)));
    }

    std::string parse_identifier() {
        skip_ws();
        size_t start = pos;
        if (pos < text.size() &&
            (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (pos == start) fail("expected an identifier");
        return std::string(text.substr(start, pos - start));
    }

    // One product of factors; returns its value.
    RingElement parse_term(bool negative) {
        skip_ws();
        RingElement acc = RingElement::one(spec);
        bool first = true;
        while (true) {
            skip_ws();
            if (pos >= text.size()) {
                if (first) fail("expected a term");
                break;
            }
            char c = text[pos];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                mpz_class n = parse_integer();
                skip_ws();
                if (pos < text.size() && text[pos] == '/') {
                    ++pos;
                    mpz_class d = parse_integer();
                    if (d == 0) fail("zero denominator");
                    if (spec->kind() != RingKind::rationals && spec->kind() != RingKind::localized_integers)
                        fail("fractions are not elements of " + spec->to_string());
                    mpq_class q(n, d);
                    q.canonicalize();
                    acc *= RingElement::from_mpq(spec, q);
                } else {
                    acc *= RingElement::from_mpz(spec, n);
                }
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                size_t name_pos = pos;
                std::string name = parse_identifier();
                if (spec->kind() != RingKind::polynomials) {
                    pos = name_pos;
                    fail("variables are not elements of " + spec->to_string());
                }
                auto idx = spec->indeterminate_index(name);
                if (!idx) {
                    pos = name_pos;
                    fail("unknown indeterminate '" + name + "'");
                }
                unsigned long e = 1;
                skip_ws();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    e = parse_integer().get_ui();
                }
                std::vector<unsigned> exps(spec->indeterminates().size(), 0);
                exps[*idx] = static_cast<unsigned>(e);
                acc *= RingElement::monomial(spec, 1, std::move(exps));
            } else {
                if (first) fail("expected a term");
                break;
            }
            first = false;
            skip_ws();
            if (pos < text.size() && text[pos] == '*') {
                ++pos;
                continue;
            }
            break;
        }
        return negative ? -acc : acc;
    }

    RingElement parse() {
        skip_ws();
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        RingElement acc = parse_term(neg);
        while (true) {
            skip_ws();
            if (pos >= text.size()) break;
            if (eat('+'))
                acc += parse_term(false);
            else if (eat('-'))
                acc += parse_term(true);
            else
                fail("unexpected character '" + std::string(1, text[pos]) + "'");
        }
        return acc;
    }
};

}  // namespace

RingElement parse_scalar(std::string_view text, const RingSpecPtr& spec) {
    ScalarParser parser(text, spec);
    return parser.parse();
}

}  // namespace schur
