#include "twoclass/forms.hpp"

#include <algorithm>
#include <stdexcept>

namespace twoclass::quadfield {

namespace {

using i128 = __int128;

std::int64_t floor_mod(std::int64_t x, std::int64_t m)
{
    std::int64_t r = x % m;
    return r < 0 ? r + m : r;
}

/* g = gcd(a, b) >= 0 with x a + y b = g */
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t & x, std::int64_t & y)
{
    std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        std::int64_t q = a / b;
        std::int64_t t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    x = x0;
    y = y0;
    return a;
}

std::int64_t narrow(i128 v)
{
    if (v > INT64_MAX || v < INT64_MIN)
        throw std::overflow_error("form coefficient overflow");
    return static_cast<std::int64_t>(v);
}

} // namespace

std::string Form::str() const
{
    return "(" + std::to_string(a) + ", " + std::to_string(b) + ", " + std::to_string(c) + ")";
}

FormArithmetic::FormArithmetic(std::int64_t disc) : D(disc), s(0)
{
    if (D <= 0 || D >= max_form_disc)
        throw domain_error("form discriminant out of range: " + std::to_string(D));
    if (D % 4 == 2 || D % 4 == 3)
        throw domain_error("not a discriminant: " + std::to_string(D));
    s = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(D)));
    if (s * s == D)
        throw domain_error("square discriminant: " + std::to_string(D));
}

bool FormArithmetic::is_reduced(Form const & f) const
{
    std::int64_t const a2 = 2 * (f.a < 0 ? -f.a : f.a);
    return f.b > 0 && f.b <= s && a2 > s - f.b && a2 <= s + f.b;
}

Form FormArithmetic::rho(Form const & f) const
{
    std::int64_t const c = f.c;
    std::int64_t const ac = c < 0 ? -c : c;
    std::int64_t const m = 2 * ac;
    std::int64_t r;
    if (ac > s) {
        r = floor_mod(-f.b, m);
        if (r > ac)
            r -= m;
    } else {
        r = s - floor_mod(s + f.b, m);
    }
    i128 num = static_cast<i128>(r) * r - D;
    i128 den = static_cast<i128>(4) * c;
    if (num % den != 0)
        throw std::logic_error("rho: non-integral coefficient for " + f.str());
    return Form{c, r, narrow(num / den)};
}

Form FormArithmetic::reduce(Form f) const
{
    if (f.discriminant() != D)
        throw domain_error("reduce: form " + f.str() + " has wrong discriminant");
    for (int guard = 0; !is_reduced(f); ++guard) {
        if (guard > 100000)
            throw std::logic_error("reduce: no progress on " + f.str());
        f = rho(f);
    }
    return f;
}

Form FormArithmetic::compose(Form const & f, Form const & g) const
{
    std::int64_t const h = (f.b + g.b) / 2;
    std::int64_t x, y, u2, w;
    std::int64_t g1 = ext_gcd(f.a, g.a, x, y);
    std::int64_t e = ext_gcd(g1, h, u2, w);
    i128 const u = static_cast<i128>(u2) * x;
    i128 const v = static_cast<i128>(u2) * y;
    i128 const half = (static_cast<i128>(f.b) * g.b + D) / 2;
    i128 B = (static_cast<i128>(f.a) * g.b * u + static_cast<i128>(g.a) * f.b * v + half * w);
    if (B % e != 0)
        throw std::logic_error("compose: inexact division");
    B /= e;
    i128 A = static_cast<i128>(f.a) * g.a / (static_cast<i128>(e) * e);
    i128 const m = 2 * (A < 0 ? -A : A);
    B %= m;
    if (B < 0)
        B += m;
    i128 num = B * B - D;
    if (num % (4 * A) != 0)
        throw std::logic_error("compose: non-integral c");
    return Form{narrow(A), narrow(B), narrow(num / (4 * A))};
}

Form FormArithmetic::principal() const
{
    std::int64_t const b0 = D % 2;
    return reduce(Form{1, b0, (b0 - D) / 4});
}

Form FormArithmetic::negative_principal() const
{
    std::int64_t const b0 = D % 2;
    return reduce(Form{-1, b0, (D - b0) / 4});
}

std::optional<Form> FormArithmetic::prime_form(std::uint64_t p) const
{
    std::int64_t b;
    if (p == 2) {
        switch (D % 8) {
        case 1: b = 1; break;
        case 0: b = 0; break;
        case 4: b = 2; break;
        default: return std::nullopt;
        }
    } else {
        auto t = sqrt_mod_prime(static_cast<std::uint64_t>(D) % p, p);
        if (!t)
            return std::nullopt;
        b = static_cast<std::int64_t>(*t);
        if (b % 2 != D % 2)
            b = static_cast<std::int64_t>(p) - b;
    }
    std::int64_t const pp = static_cast<std::int64_t>(p);
    i128 num = static_cast<i128>(b) * b - D;
    return Form{pp, b, narrow(num / (4 * static_cast<i128>(pp)))};
}

std::vector<Form> FormArithmetic::cycle(Form const & f) const
{
    std::vector<Form> out{f};
    for (Form g = rho(f); !(g == f); g = rho(g))
        out.push_back(g);
    return out;
}

FormClassRegistry::FormClassRegistry(std::int64_t D) : arith(D) {}

int FormClassRegistry::identify_reduced(Form const & f)
{
    auto it = index.find(f);
    if (it != index.end())
        return it->second;
    int const id = static_cast<int>(canonical.size());
    auto cyc = arith.cycle(f);
    for (auto const & g : cyc)
        index.emplace(g, id);
    canonical.push_back(*std::min_element(cyc.begin(), cyc.end()));
    cycle_len.push_back(cyc.size());
    return id;
}

int FormClassRegistry::identify(Form const & f)
{
    return identify_reduced(arith.reduce(f));
}

int FormClassRegistry::multiply(int x, int y)
{
    return identify(arith.compose(canonical.at(x), canonical.at(y)));
}

} // namespace twoclass::quadfield
