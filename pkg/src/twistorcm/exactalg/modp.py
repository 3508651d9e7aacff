"""Polynomial arithmetic over GF(p) for the modular irreducibility sieve and
split-prime searches.  Polynomials are int lists, lowest degree first."""
import random


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce_mod(coeffs, p):
    return trim([c % p for c in coeffs])


def sub(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def divmod_(a, b, p):
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], p - 2, p)
    if len(a) - 1 < db:
        return [], a
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] * inv % p
        q[k] = c
        if c:
            for j in range(db + 1):
                a[k + j] = (a[k + j] - c * b[j]) % p
    return trim(q), trim(a[:db])


def mod(a, b, p):
    return divmod_(a, b, p)[1]


def monic(a, p):
    if not a:
        return a
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def gcd(a, b, p):
    a, b = trim(list(a)), trim(list(b))
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)


def powmod(base, e, f, p):
    result = [1]
    base = mod(base, f, p)
    while e:
        if e & 1:
            result = mod(mul(result, base, p), f, p)
        base = mod(mul(base, base, p), f, p)
        e >>= 1
    return result


def derivative(a, p):
    return trim([(i * c) % p for i, c in enumerate(a)][1:])


def is_squarefree(f, p):
    d = derivative(f, p)
    return bool(d) and len(gcd(f, d, p)) == 1


def distinct_degree_degrees(f, p):
    """Degrees of the irreducible factors of a squarefree monic f over GF(p)."""
    degrees = []
    f = monic(list(f), p)
    h = [0, 1]
    k = 0
    while len(f) - 1 >= 2 * (k + 1):
        k += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, [0, 1], p), p)
        dg = len(g) - 1
        if dg > 0:
            degrees.extend([k] * (dg // k))
            f = divmod_(f, g, p)[0]
            h = mod(h, f, p)
    if len(f) - 1 > 0:
        degrees.append(len(f) - 1)
    return degrees


def roots(f, p, rng=None):
    """All roots in GF(p) of f (p odd prime)."""
    f = monic(trim(list(f)), p)
    if len(f) <= 1:
        return []
    g = gcd(f, sub(powmod([0, 1], p, f, p), [0, 1], p), p)
    rng = rng or random.Random(p)
    out = []
    _split_linear(g, p, rng, out)
    return sorted(out)


def _split_linear(g, p, rng, out):
    d = len(g) - 1
    if d <= 0:
        return
    if d == 1:
        out.append((-g[0]) % p)
        return
    while True:
        a = rng.randrange(p)
        h = sub(powmod([a, 1], (p - 1) // 2, g, p), [1], p)
        u = gcd(g, h, p)
        if 0 < len(u) - 1 < d:
            _split_linear(u, p, rng, out)
            _split_linear(divmod_(g, u, p)[0], p, rng, out)
            return


def primes(limit_count, start=3):
    out = []
    n = start
    while len(out) < limit_count:
        if n > 1 and all(n % q for q in range(2, int(n ** 0.5) + 1)):
            out.append(n)
        n += 1
    return out
