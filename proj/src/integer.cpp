#include <zhorn/integer.hpp>

#include <cctype>

namespace zhorn {

Int floor_mod(const Int & a, const Int & m)
{
    Int r;
    Int am = abs(m);
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), am.get_mpz_t());
    return r;
}

Int floor_div(const Int & a, const Int & b)
{
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Int gcd(const Int & a, const Int & b)
{
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Int lcm(const Int & a, const Int & b)
{
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

ExtendedGcd extended_gcd(const Int & a, const Int & b)
{
    ExtendedGcd r;
    mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

std::optional<Int> mod_inverse(const Int & a, const Int & m)
{
    if (m < 1)
        throw InvalidArgument("mod_inverse: modulus must be positive");
    if (m == 1)
        return Int(0);
    auto e = extended_gcd(floor_mod(a, m), m);
    if (e.g != 1)
        return std::nullopt;
    return floor_mod(e.s, m);
}

bool divides(const Int & d, const Int & n)
{
    if (d == 0)
        return n == 0;
    return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

Int power(const Int & a, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
    return r;
}

std::string to_string(const Int & v)
{
    return v.get_str(10);
}

Int parse_int(std::string_view text)
{
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+'))
        ++i;
    if (i == text.size())
        throw InvalidArgument("not an integer: '" + std::string(text) + "'");
    for (std::size_t j = i; j < text.size(); ++j)
        if (! std::isdigit(static_cast<unsigned char>(text[j])))
            throw InvalidArgument("not an integer: '" + std::string(text) + "'");
    std::string s(text);
    if (s[0] == '+')
        s.erase(0, 1);
    return Int(s, 10);
}

std::optional<std::int64_t> to_int64(const Int & v)
{
    if (! v.fits_slong_p())
        return std::nullopt;
    return static_cast<std::int64_t>(v.get_si());
}

} // namespace zhorn
