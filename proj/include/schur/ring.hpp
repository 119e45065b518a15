#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace schur {

struct SpecMismatchError : std::invalid_argument {
    explicit SpecMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

struct NotDivisibleError : std::domain_error {
    explicit NotDivisibleError(const std::string& what) : std::domain_error(what) {}
};

/// Syntax error in a scalar, ring or expression string; `position` is a byte
/// offset into the offending input.
struct ParseError : std::runtime_error {
    size_t position;
    ParseError(const std::string& what, size_t pos) : std::runtime_error(what), position(pos) {}
};

enum class RingKind { integers, rationals, localized_integers, polynomials };

class RingSpec;
using RingSpecPtr = std::shared_ptr<const RingSpec>;

/// One of four scalar domains: Z, Q, Z with a set of primes inverted, or
/// multivariate polynomials over Z.  Elements carry a pointer to their spec
/// and mixed-spec arithmetic is rejected.
class RingSpec {
public:
    static RingSpecPtr integers();
    static RingSpecPtr rationals();
    static RingSpecPtr localized_integers(std::vector<unsigned long> primes);
    static RingSpecPtr polynomials(std::vector<std::string> indeterminates);

    /// Accepts "Z", "Q", "Z[1/p,...]" and "Z[v1,...,vk]".
    static RingSpecPtr parse(std::string_view text);

    RingKind kind() const { return kind_; }
    const std::vector<unsigned long>& inverted_primes() const { return primes_; }
    const std::vector<std::string>& indeterminates() const { return vars_; }
    std::optional<size_t> indeterminate_index(std::string_view name) const;
    std::string to_string() const;

    friend bool operator==(const RingSpec& a, const RingSpec& b) {
        return a.kind_ == b.kind_ && a.primes_ == b.primes_ && a.vars_ == b.vars_;
    }
    friend bool operator!=(const RingSpec& a, const RingSpec& b) { return !(a == b); }

private:
    explicit RingSpec(RingKind k) : kind_(k) {}

    RingKind kind_;
    std::vector<unsigned long> primes_;  // sorted, distinct, each > 1 and prime
    std::vector<std::string> vars_;      // distinct identifiers, order fixes the term order
};

bool same_spec(const RingSpecPtr& a, const RingSpecPtr& b);

namespace detail {

/// Integer divided by a product of powers of the inverted primes.  Kept
/// reduced: while the exponent of p is positive, p does not divide num.
struct LocalizedValue {
    mpz_class num;
    std::vector<std::pair<unsigned long, unsigned>> denom;  // (prime, exponent>0), sorted

    friend bool operator==(const LocalizedValue& a, const LocalizedValue& b) {
        return a.num == b.num && a.denom == b.denom;
    }
};

/// Sparse multivariate polynomial: exponent vector -> nonzero coefficient.
/// Keys all have length #indeterminates; map order is lex on exponents, so
/// rbegin() is the leading term.
struct PolyValue {
    std::map<std::vector<unsigned>, mpz_class> terms;

    friend bool operator==(const PolyValue& a, const PolyValue& b) { return a.terms == b.terms; }
};

}  // namespace detail

class RingElement {
public:
    /// Default-constructed element is the integer 0; containers need this.
    RingElement();

    static RingElement zero(RingSpecPtr spec);
    static RingElement one(RingSpecPtr spec);
    static RingElement from_int(RingSpecPtr spec, long value);
    static RingElement from_mpz(RingSpecPtr spec, mpz_class value);
    /// Fractions embed into Q and, when the denominator factors over the
    /// inverted primes, into a localized spec; otherwise NotDivisibleError.
    static RingElement from_mpq(RingSpecPtr spec, mpq_class value);
    static RingElement indeterminate(RingSpecPtr spec, size_t index);
    static RingElement monomial(RingSpecPtr spec, mpz_class coeff, std::vector<unsigned> exponents);

    const RingSpecPtr& spec() const { return spec_; }
    bool is_zero() const;
    bool is_one() const;

    RingElement operator-() const;
    RingElement& operator+=(const RingElement& o);
    RingElement& operator-=(const RingElement& o);
    RingElement& operator*=(const RingElement& o);
    friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
    friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
    friend RingElement operator*(RingElement a, const RingElement& b) { return a *= b; }

    RingElement pow(unsigned long e) const;

    friend bool operator==(const RingElement& a, const RingElement& b);
    friend bool operator!=(const RingElement& a, const RingElement& b) { return !(a == b); }

    std::string to_string() const;

    /// Value as an exact rational; throws for polynomials.
    mpq_class to_rational() const;

    const mpz_class& integer_value() const;
    const mpq_class& rational_value() const;
    const detail::LocalizedValue& localized_value() const;
    const detail::PolyValue& poly_value() const;

private:
    RingElement(RingSpecPtr spec, std::variant<mpz_class, mpq_class, detail::LocalizedValue, detail::PolyValue> v)
        : spec_(std::move(spec)), value_(std::move(v)) {}

    RingSpecPtr spec_;
    std::variant<mpz_class, mpq_class, detail::LocalizedValue, detail::PolyValue> value_;
};

/// Exact quotient a / b; throws NotDivisibleError when b does not divide a
/// within the ring, and std::domain_error when b is zero.
RingElement exact_div(const RingElement& a, const RingElement& b);

bool is_unit(const RingElement& a);

/// Parses a scalar in the syntax to_string() emits: optionally signed integer
/// literals, fractions "p/q" (Q and localized specs), and sums of terms
/// "c*v1^e1*...*vk^ek" for polynomial specs.  Whitespace is insignificant.
RingElement parse_scalar(std::string_view text, const RingSpecPtr& spec);

}  // namespace schur
